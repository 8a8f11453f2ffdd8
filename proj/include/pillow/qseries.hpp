#pragma once

#include <map>
#include <string>

#include "pillow/rational.hpp"

namespace pillow {

// Truncated formal power series in q^{1/2}, exact rational coefficients.
// Exponents are stored in half-units (numerator over denominator 2), so a
// series in integer powers of q round-trips without denominator noise.
// Every series carries its own cutoff (max half-exponent represented);
// arithmetic narrows to the common valid window.
class QSeries {
  public:
    QSeries() : cutoff2_(0) {}
    explicit QSeries(long cutoff2) : cutoff2_(cutoff2) {
        if (cutoff2 < 0) throw std::invalid_argument("QSeries: negative cutoff");
    }

    static QSeries zero(long cutoff2) { return QSeries(cutoff2); }
    static QSeries one(long cutoff2) {
        QSeries s(cutoff2);
        s.set_half(0, 1);
        return s;
    }
    // monomial q^{e2/2}
    static QSeries monomial(long e2, const Rat& coeff, long cutoff2);

    long cutoff2() const { return cutoff2_; }
    // coefficient of q^{e2/2}
    Rat coeff_half(long e2) const;
    // coefficient of q^d (integer exponent)
    Rat coeff(long d) const { return coeff_half(2 * d); }
    void set_half(long e2, const Rat& v);
    void add_half(long e2, const Rat& v);

    const std::map<long, Rat>& terms() const { return c_; }
    bool integer_exponents_only() const;

    QSeries truncated(long cutoff2) const;

    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator*(const Rat& s) const;
    QSeries pow(long e) const;
    // exact division; the divisor must have unit lowest term at exponent 0
    QSeries div(const QSeries& o) const;
    // D_q = q d/dq: multiplies the coefficient of q^e by e
    QSeries d_q() const;

    bool operator==(const QSeries& o) const { return cutoff2_ == o.cutoff2_ && c_ == o.c_; }

    std::string str() const;

  private:
    long cutoff2_;
    std::map<long, Rat> c_;
};

// Bernoulli numbers B_0..B_n (B_1 = -1/2 convention).
const std::vector<Rat>& bernoulli_numbers(int n);
inline Rat bernoulli(int n) { return bernoulli_numbers(n)[n]; }

// zeta(-l) = -B_{l+1}/(l+1) for l >= 0
Rat zeta_negative(int l);

enum class EisensteinScale { Half, One, Two };

// q-expansion of G_{k2}(s tau) = -B_{k2}/(2 k2) + sum sigma_{k2-1}(n) q^{sn},
// to the given half-exponent cutoff.
QSeries eisenstein(int k2, EisensteinScale scale, long cutoff2);

// independent divisor-sum oracle for tests
long long divisor_sum(int k, long n);

}  // namespace pillow
