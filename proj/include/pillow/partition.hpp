#pragma once

#include <utility>
#include <vector>

#include "pillow/rational.hpp"

namespace pillow {

// Partitions are weakly decreasing vectors of positive ints. The empty
// partition is {}. Everything downstream keys maps on them, so we keep the
// representation dense and canonical rather than multiplicity-coded.
using Partition = std::vector<int>;

bool is_partition(const Partition& p);
inline long part_size(const Partition& p) {
    long s = 0;
    for (int x : p) s += x;
    return s;
}

// All partitions of n in reverse-lexicographic order: (n), (n-1,1), ...
// Order is load-bearing: the linear solves downstream sample in this order.
const std::vector<Partition>& enum_partitions(int n);

// Centralizer order z(mu) = prod m^{r_m} r_m!.
Int centralizer_order(const Partition& mu);

// Conjugate partition.
Partition conjugate(const Partition& p);

// Hook lengths of all cells, row-major.
std::vector<int> hook_lengths(const Partition& p);

// T_p(lambda) = sum over cells of h(cell)^{p-1}; p >= -1 allowed.
Rat hook_weight_sum(const Partition& lam, int p);

// Balanced = empty 2-core. Implemented both via the pbar_0 criterion and by
// domino stripping; the two are asserted equal in tests.
bool is_balanced(const Partition& lam);
bool is_balanced_by_core(const Partition& lam);

// 2-quotients (alpha, beta) of a balanced partition; |lam| = 2(|alpha|+|beta|).
std::pair<Partition, Partition> two_quotients(const Partition& lam);

// Sorted-desc class of mu padded with `ones` extra 1-parts.
Partition pad_with_ones(const Partition& mu, long ones);
// Class (nu, 2^k) sorted descending.
Partition pad_with_twos(const Partition& nu, long twos);

// Ramification profile (nu; mu_1,...,mu_n): nu has even size and odd parts,
// each mu_i is a single cycle of even order >= 2.
struct RamificationProfile {
    Partition nu;
    std::vector<int> mus;

    void validate() const;
    // genus from l(mu)+l(nu)-|mu|-|nu|/2 = 2-2g
    long genus() const;
    // complex dimension of the stratum: 2g-2+l(nu)+l(mu)
    long dimension() const;
    // weight bound |mu|+l(mu)+|nu|/2 for the counting series
    long weight_bound() const;
    bool empty() const { return nu.empty() && mus.empty(); }
};

}  // namespace pillow
