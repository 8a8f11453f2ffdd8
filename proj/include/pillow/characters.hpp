#pragma once

#include "pillow/partition.hpp"
#include "pillow/rational.hpp"

namespace pillow {

// chi^lam(mu) by Murnaghan-Nakayama with a memo table. The table is
// thread_local: per-worker replication keeps results identical to the
// sequential run without any locking.
long long character(const Partition& lam, const Partition& mu);

// dim lam via the hook-length formula (exact big integer).
Int dimension(const Partition& lam);

// Normalized (central) character of the class of mu padded with 1s to |lam|,
// including the marked-point multiplicity for 1-parts of mu:
//   f_mu(lam) = binom(n-|mu|+r_1(mu), r_1(mu)) * |C| * chi^lam(mu 1^{n-|mu|}) / dim lam
// Calibrated so that f_2 = p_2/2 and f_1 = |lam| hold identically.
Rat normalized_character(const Partition& mu, const Partition& lam);

void clear_character_cache();

}  // namespace pillow
