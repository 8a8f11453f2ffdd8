#pragma once

#include <map>
#include <utility>
#include <vector>

#include "pillow/characters.hpp"
#include "pillow/partition.hpp"
#include "pillow/rational.hpp"

namespace pillow {

// Monomial p_{mu} pbar_{mubar}: both partitions sorted descending.
// Weight grading: wt(p_l) = l+1, wt(pbar_k) = k.
using ShiftedMonomial = std::pair<Partition, Partition>;

long monomial_weight(const ShiftedMonomial& m);

// Element of the algebra of shifted symmetric quasi-polynomials: an exact
// linear combination of monomials.
struct ShiftedSymElement {
    std::map<ShiftedMonomial, Rat> terms;

    static ShiftedSymElement monomial(const ShiftedMonomial& m, const Rat& c = Rat(1));
    static ShiftedSymElement constant(const Rat& c);
    void add_term(const ShiftedMonomial& m, const Rat& c);
    ShiftedSymElement operator+(const ShiftedSymElement& o) const;
    ShiftedSymElement operator*(const Rat& s) const;
    ShiftedSymElement operator*(const ShiftedSymElement& o) const;
    Rat evaluate(const Partition& lam) const;
    long weight() const;  // max term weight, 0 for the zero element
    bool operator==(const ShiftedSymElement& o) const { return terms == o.terms; }
};

// Regularization constants: gamma_k from C(z) = 1/(e^{z/2}+e^{-z/2}),
// beta_k from B(z) = (z/2)/sinh(z/2).
Rat gamma_constant(int k);
Rat beta_constant(int k);

// p_l(lam) = sum_i [(lam_i - i + 1/2)^l - (-i + 1/2)^l] + (1 - 2^{-l}) zeta(-l)
Rat eval_p(int ell, const Partition& lam);
// pbar_k(lam) = sum_i [(-1)^{lam_i-i+1}(lam_i-i+1/2)^k - (-1)^{-i+1}(-i+1/2)^k] + gamma_k
Rat eval_pbar(int k, const Partition& lam);

// f_mu(lam): stabilized normalized character (see characters.hpp).
Rat eval_f(const Partition& mu, const Partition& lam);

// g_nu(lam) = f_{(nu,2,...,2)}(lam) / f_{(2,...,2)}(lam) on balanced lam.
Rat eval_g(const Partition& nu, const Partition& lam);

// All monomials of weight <= w, deterministic order (weight-major).
std::vector<ShiftedMonomial> monomials_up_to_weight(int w);

// Exact expansion of g_nu as an element of weight <= |nu|/2, by linear solve
// against evaluations at balanced partitions, verified at held-out ones.
ShiftedSymElement expand_g(const Partition& nu);

// f_mu as a polynomial in the p_l (weight <= |mu| + l(mu)), and the inverse:
// a p-monomial expanded in products of single-cycle f's / the f_mu basis.
ShiftedSymElement fmu_to_p_basis(const Partition& mu);
// p-monomial prod p_{mu_i} written in the f_mu basis: list of (coeff, mu).
std::vector<std::pair<Rat, Partition>> p_monomial_to_f_basis(const Partition& pmono);

// Write a pbar-monomial as sum c * p_monomial * g_nu with
// wt(p_monomial) + |nu|/2 <= wt(monomial); verified by re-expansion.
struct GSpanTerm {
    Rat coeff;
    Partition h;   // p-monomial indices
    Partition nu;  // g index
};
std::vector<GSpanTerm> pbar_monomial_in_g_span(const Partition& mubar);

}  // namespace pillow
