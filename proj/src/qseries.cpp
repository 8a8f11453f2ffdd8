#include "pillow/qseries.hpp"

#include <sstream>
#include <vector>

namespace pillow {

QSeries QSeries::monomial(long e2, const Rat& coeff, long cutoff2) {
    QSeries s(cutoff2);
    if (e2 < 0) throw std::invalid_argument("QSeries: negative exponent");
    if (e2 <= cutoff2) s.set_half(e2, coeff);
    return s;
}

Rat QSeries::coeff_half(long e2) const {
    if (e2 > cutoff2_) throw std::out_of_range("QSeries: coefficient beyond cutoff");
    auto it = c_.find(e2);
    return it == c_.end() ? Rat(0) : it->second;
}

void QSeries::set_half(long e2, const Rat& v) {
    if (e2 < 0) throw std::invalid_argument("QSeries: negative exponent");
    if (e2 > cutoff2_) return;
    if (v == 0)
        c_.erase(e2);
    else
        c_[e2] = v;
}

void QSeries::add_half(long e2, const Rat& v) {
    if (e2 < 0) throw std::invalid_argument("QSeries: negative exponent");
    if (e2 > cutoff2_ || v == 0) return;
    Rat& t = c_[e2];
    t += v;
    if (t == 0) c_.erase(e2);
}

bool QSeries::integer_exponents_only() const {
    for (auto& [e, v] : c_)
        if (e % 2 != 0) return false;
    return true;
}

QSeries QSeries::truncated(long cutoff2) const {
    QSeries out(std::min(cutoff2, cutoff2_));
    for (auto& [e, v] : c_)
        if (e <= out.cutoff2_) out.c_[e] = v;
    return out;
}

QSeries QSeries::operator+(const QSeries& o) const {
    QSeries out(std::min(cutoff2_, o.cutoff2_));
    for (auto& [e, v] : c_)
        if (e <= out.cutoff2_) out.add_half(e, v);
    for (auto& [e, v] : o.c_)
        if (e <= out.cutoff2_) out.add_half(e, v);
    return out;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + o * Rat(-1); }

QSeries QSeries::operator*(const QSeries& o) const {
    long cut = std::min(cutoff2_, o.cutoff2_);
    if (cut < 0) throw std::domain_error("QSeries: empty valid window");
    QSeries out(cut);
    for (auto& [e1, v1] : c_) {
        if (e1 > cut) break;
        for (auto& [e2, v2] : o.c_) {
            if (e1 + e2 > cut) break;
            out.add_half(e1 + e2, v1 * v2);
        }
    }
    return out;
}

QSeries QSeries::operator*(const Rat& s) const {
    QSeries out(cutoff2_);
    if (s == 0) return out;
    for (auto& [e, v] : c_) out.c_[e] = v * s;
    return out;
}

QSeries QSeries::pow(long e) const {
    if (e < 0) throw std::invalid_argument("QSeries::pow: negative power");
    QSeries r = QSeries::one(cutoff2_);
    QSeries b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

QSeries QSeries::div(const QSeries& o) const {
    long cut = std::min(cutoff2_, o.cutoff2_);
    Rat lead = o.coeff_half(0);
    if (lead == 0) throw std::domain_error("QSeries::div: divisor has no constant term");
    QSeries out(cut);
    // q^{1/2}-adic long division
    std::vector<Rat> num(cut + 1, Rat(0)), den(cut + 1, Rat(0)), res(cut + 1, Rat(0));
    for (auto& [e, v] : c_)
        if (e <= cut) num[e] = v;
    for (auto& [e, v] : o.c_)
        if (e <= cut) den[e] = v;
    for (long e = 0; e <= cut; ++e) {
        Rat s = num[e];
        for (long j = 1; j <= e; ++j)
            if (den[j] != 0 && res[e - j] != 0) s -= den[j] * res[e - j];
        res[e] = s / lead;
        out.set_half(e, res[e]);
    }
    return out;
}

QSeries QSeries::d_q() const {
    QSeries out(cutoff2_);
    for (auto& [e, v] : c_)
        if (e != 0) out.c_[e] = v * frac(e, 2);
    return out;
}

std::string QSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [e, v] : c_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.get_str() << ")";
        if (e != 0) {
            os << "q^";
            if (e % 2 == 0)
                os << e / 2;
            else
                os << "(" << e << "/2)";
        }
    }
    if (first) os << "0";
    return os.str();
}

const std::vector<Rat>& bernoulli_numbers(int n) {
    static std::vector<Rat> cache{Rat(1)};
    if (int(cache.size()) <= n) {
        for (int m = int(cache.size()); m <= n; ++m) {
            // sum_{j=0}^{m} binom(m+1, j) B_j = 0
            Rat s = 0;
            for (int j = 0; j < m; ++j) s += Rat(binomial(m + 1, j)) * cache[j];
            cache.push_back(-s / Rat(binomial(m + 1, m)));
        }
    }
    return cache;
}

Rat zeta_negative(int l) { return -bernoulli_numbers(l + 1)[l + 1] / Rat(l + 1); }

QSeries eisenstein(int k2, EisensteinScale scale, long cutoff2) {
    if (k2 < 2 || k2 % 2 != 0) throw std::invalid_argument("eisenstein: weight must be even >= 2");
    QSeries s(cutoff2);
    s.set_half(0, -bernoulli(k2) / Rat(2 * k2));
    long step;  // exponent of the n-th term in half-units
    switch (scale) {
        case EisensteinScale::Half: step = 1; break;
        case EisensteinScale::One: step = 2; break;
        case EisensteinScale::Two: step = 4; break;
        default: throw std::invalid_argument("eisenstein: unsupported scale");
    }
    for (long n = 1; n * step <= cutoff2; ++n) {
        Rat sig = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) sig += rat_pow(Rat(d), k2 - 1);
        s.set_half(n * step, sig);
    }
    return s;
}

long long divisor_sum(int k, long n) {
    long long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            long long t = 1;
            for (int i = 0; i < k; ++i) t *= d;
            s += t;
        }
    return s;
}

}  // namespace pillow
