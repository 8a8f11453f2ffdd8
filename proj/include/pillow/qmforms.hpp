#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "pillow/qseries.hpp"

namespace pillow {

enum class GeneratorSet { Level1, Gamma02, Gamma2 };

// generator weights and q-expansions per set:
//   Level1:  G2(tau), G4(tau), G6(tau)
//   Gamma02: G2(tau), G2(2tau), G4(2tau)
//   Gamma2:  G2(tau/2), G2(tau), G2(2tau)
const std::vector<int>& generator_weights(GeneratorSet g);
std::vector<QSeries> generator_expansions(GeneratorSet g, long cutoff2);

struct RecognitionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact polynomial in the chosen generators, graded by mixed weight.
struct QMForm {
    GeneratorSet gens = GeneratorSet::Gamma02;
    std::map<std::vector<int>, Rat> terms;  // exponent vector -> coefficient

    long mixed_weight() const;
    QSeries expand(long cutoff2) const;
    QMForm operator*(const Rat& s) const;
    QMForm operator+(const QMForm& o) const;
    bool operator==(const QMForm& o) const { return gens == o.gens && terms == o.terms; }
};

// all exponent vectors of weight <= max_weight, weight-major then lexicographic
std::vector<std::vector<int>> monomial_basis(GeneratorSet g, int max_weight);

// Exact recognition: solve for coefficients matching the series, then verify
// the remaining coefficients (at least `margin` of them must be available
// beyond the basis dimension). Throws RecognitionError on failure.
QMForm recognize(const QSeries& series, GeneratorSet g, int max_weight, int margin = 2);

// Growth polynomial sum c * pi^{2 p} / h^{m}: keyed by (m, p).
struct GrowthPolynomial {
    std::map<std::pair<long, long>, Rat> terms;
    // coefficient of 1/h^m as (coeff, pi2pow); throws if mixed pi-powers
    std::pair<Rat, long> at_hpow(long m) const;
};

// the algebra homomorphism Ev (G2 -> -X/24 - 1/2, G2(2t) -> -X/96 - 1/4,
// G4(2t) -> X^2/3840) assembled per weight component:
// ev[F](h) = sum_k h^{-k} Ev[F_{2k}](-4 pi^2 / h)
GrowthPolynomial ev_map(const QMForm& form);

// vol = 2 dim / (2^dim dim!) * [coefficient of h^{-dim} in ev], as (rational, pi^{2p})
std::pair<Rat, long> volume_from_form(const QMForm& form, long dim);

// (pi^2/3) c_area = ratio of the h^{-dim} leading coefficients of ev[c_{-1}^0] and ev[N^0]
Rat area_sv_constant(const QMForm& n0, const QMForm& cminus1, long dim);

// fixed exact rewrites of level-1 G4, G6 into the Gamma02 generators
const QMForm& level1_g4_in_gamma02();
const QMForm& level1_g6_in_gamma02();

}  // namespace pillow
