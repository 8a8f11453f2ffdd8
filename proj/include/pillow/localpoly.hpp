#pragma once

#include <functional>
#include <map>
#include <vector>

#include "pillow/partition.hpp"
#include "pillow/shifted.hpp"

namespace pillow {

// Local functions on partitions used as vertex data in graph sums.
using LocalFn = std::function<Rat(const Partition&)>;

struct BoundaryTuple {
    std::vector<int> widths;
};

// Triple Hurwitz numbers A(w-, w+, F) = (1/prod w) sum_{|lam|=d} chi_w- chi_w+ F
// (raw characters of the width cycle types, sum over |lam| = d = sum w-).
Rat A_local(const std::vector<int>& wminus, const std::vector<int>& wplus, const LocalFn& F);

// 2-stabilized A2(w, F) = (1/prod w) sum_{|lam|=d} sqrt(w(lam)) chi_w F.
Rat A2_local(const std::vector<int>& ws, const LocalFn& F);

// Connected (no-unramified-component) versions by inclusion-exclusion:
// A': unramified pieces are cylinders pairing one w- with one equal w+ (weight 1/w);
// A2': pieces are pairs of equal widths glued to a cylinder (weight 1/w per pair).
Rat A_local_connected(const std::vector<int>& wminus, const std::vector<int>& wplus,
                      const LocalFn& F);
Rat A2_local_connected(const std::vector<int>& ws, const LocalFn& F);

// Geometric oracle at small degree: |Cov2'(w, {mu_i}, nu)| with labeled 0-fiber,
// weight 1/d!; enumerates permutation tuples directly. d = sum w <= 6.
Rat brute_cov2(const std::vector<int>& ws, const std::vector<int>& mus, const Partition& nu,
               bool primed);

// Exact quasi-polynomial fit of w -> A2'(w, F) on a parity coset.
struct QuasiPolynomial {
    int arity = 0;
    std::vector<int> coset;                // entries in {0,1}, sum even
    bool global_ok = false;
    std::map<std::vector<int>, Rat> poly;  // exponent vector -> coeff (valid if global_ok)
    // arity-2 diagnostic when the global fit fails: polynomial in (u,v) = (min,max)
    std::map<std::vector<int>, Rat> chamber_minmax;
};

QuasiPolynomial fit_quasipolynomial(const LocalFn& F, int arity, int degree_bound,
                                    const std::vector<int>& coset);

}  // namespace pillow
