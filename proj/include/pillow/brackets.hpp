#pragma once

#include <functional>

#include "pillow/partition.hpp"
#include "pillow/qseries.hpp"
#include "pillow/shifted.hpp"

namespace pillow {

// sqrt(w(lam)) = dim(lam)/|lam|! * f_{2,...,2}(lam)^2 with the normalized
// (central) character; vanishes exactly off balanced partitions of even size.
Rat sqrt_weight_w(const Partition& lam);
Rat weight_w(const Partition& lam);

enum class Connectivity { All, NoUnramified, Connected };

struct CoverCountQuery {
    RamificationProfile profile;
    long d_max = 0;
    Connectivity connectivity = Connectivity::Connected;
};

// <F>_w = [sum_lam w F q^{|lam|/2}] / [sum_lam w q^{|lam|/2}], balanced lam only.
QSeries wbracket(const std::function<Rat(const Partition&)>& F, long cutoff_d);

// Generating series N / N' / N0 of pillowcase covers, exact, indexed by area d.
QSeries count_covers(const CoverCountQuery& q);

// Brute-force Hurwitz enumeration (2d <= 6): N_d = |Hur_d| / (2d)! and the
// Siegel-Veech weighted sum S_p(h) over the same tuples. The permutation
// tuples realize alpha_1 alpha_4 gamma_1..gamma_n = alpha_2^{-1} alpha_3^{-1}.
Rat brute_force_hurwitz(const RamificationProfile& profile, long d, Connectivity conn);
// sum over tuples of S_p(h) = sum_i S_p(sigma_i), divided by (2d)! 2(n+1)
// (the per-slice normalization that makes the series match the graph sums).
Rat brute_force_sv(const RamificationProfile& profile, long d, int p, Connectivity conn);

// c_p series via the representation-theoretic class sums, evaluated with
// border-strip bucketing (no loop over group elements or classes x classes).
QSeries sv_series(const RamificationProfile& profile, int p, long cutoff_d, Connectivity conn);

// N(Pi_empty) = sum_lam w(lam) q^{|lam|/2}
QSeries pillow_partition_series(long cutoff_d);

}  // namespace pillow
