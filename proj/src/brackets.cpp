#include "pillow/brackets.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace pillow {

Rat sqrt_weight_w(const Partition& lam) {
    long n = part_size(lam);
    if (n % 2 != 0) throw std::invalid_argument("sqrt_weight_w: |lam| must be even");
    if (n == 0) return 1;
    Partition cls = pad_with_twos({}, n / 2);
    long long c = character(lam, cls);
    if (c == 0) return 0;
    Rat fc = Rat(factorial(n)) / Rat(centralizer_order(cls)) * Rat(long(c)) / Rat(dimension(lam));
    return Rat(dimension(lam)) / Rat(factorial(n)) * fc * fc;
}

Rat weight_w(const Partition& lam) {
    Rat s = sqrt_weight_w(lam);
    return s * s;
}

QSeries wbracket(const std::function<Rat(const Partition&)>& F, long cutoff_d) {
    QSeries num(2 * cutoff_d), den(2 * cutoff_d);
    for (long d = 0; d <= cutoff_d; ++d) {
        Rat nd = 0, dd = 0;
        for (auto& lam : enum_partitions(int(2 * d))) {
            Rat w = weight_w(lam);
            if (w == 0) continue;
            dd += w;
            nd += w * F(lam);
        }
        num.set_half(2 * d, nd);
        den.set_half(2 * d, dd);
    }
    return num.div(den);
}

QSeries pillow_partition_series(long cutoff_d) {
    QSeries den(2 * cutoff_d);
    for (long d = 0; d <= cutoff_d; ++d) {
        Rat dd = 0;
        for (auto& lam : enum_partitions(int(2 * d)))
            dd += weight_w(lam);
        den.set_half(2 * d, dd);
    }
    return den;
}

namespace {

// unnormalized character sum: N_d(Pi) = sum_{|lam|=2d} w g_nu prod f_{mu_i}
Rat n_coefficient(const Partition& nu, const std::vector<int>& mus, long d) {
    Rat tot = 0;
    long m = part_size(nu);
    if (2 * d < m || (2 * d - m) % 2 != 0) return 0;
    for (auto& lam : enum_partitions(int(2 * d))) {
        Rat w = weight_w(lam);
        if (w == 0) continue;
        Rat v = w;
        if (!nu.empty()) v *= eval_g(nu, lam);
        if (v == 0) continue;
        for (int mu : mus) {
            if (mu > 2 * d) {
                v = 0;
                break;
            }
            v *= eval_f({mu}, lam);
            if (v == 0) break;
        }
        tot += v;
    }
    return tot;
}

struct ProfileKey {
    Partition nu;
    std::vector<int> mus;  // sorted
    bool operator<(const ProfileKey& o) const {
        if (nu != o.nu) return nu < o.nu;
        return mus < o.mus;
    }
};

ProfileKey canonical(const Partition& nu, std::vector<int> mus) {
    std::sort(mus.rbegin(), mus.rend());
    Partition n2 = nu;
    std::sort(n2.rbegin(), n2.rend());
    return {n2, mus};
}

std::mutex series_mutex;
std::map<std::pair<ProfileKey, long>, QSeries> nprime_cache, nzero_cache;

QSeries n_series(const Partition& nu, const std::vector<int>& mus, long cutoff_d) {
    QSeries s(2 * cutoff_d);
    for (long d = 0; d <= cutoff_d; ++d) s.set_half(2 * d, n_coefficient(nu, mus, d));
    return s;
}

QSeries nprime_series(const Partition& nu, const std::vector<int>& mus, long cutoff_d);
QSeries nzero_series(const Partition& nu, const std::vector<int>& mus, long cutoff_d);

// enumerate splits (sigma, rest) of the profile with the anchor in sigma;
// sigma ranges over (sub-multiset of nu) x (subset of mu indices).
template <typename CB>
void anchored_splits(const Partition& nu, const std::vector<int>& mus, CB&& cb) {
    // anchor: first mu if present, else the first nu part
    size_t nmu = mus.size();
    std::vector<int> numult;  // multiplicities of distinct nu parts
    std::vector<int> nuvals;
    for (size_t i = 0; i < nu.size();) {
        size_t j = i;
        while (j < nu.size() && nu[j] == nu[i]) ++j;
        nuvals.push_back(nu[i]);
        numult.push_back(int(j - i));
        i = j;
    }
    // iterate over sub-multiset choice of nu (multiplicity vectors) and mu subsets
    std::vector<int> take(nuvals.size(), 0);
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == nuvals.size()) {
            unsigned long mu_subsets = 1ul << (nmu ? nmu - (mus.empty() ? 0 : 1) : 0);
            // if mus nonempty, anchor = mu index 0, always in sigma; free choice on others.
            for (unsigned long mask = 0; mask < (nmu ? (1ul << (nmu - (mus.empty() ? 0 : 1))) : 1); ++mask) {
                (void)mu_subsets;
                Partition snu, rnu;
                Rat mult = 1;
                for (size_t i = 0; i < nuvals.size(); ++i) {
                    for (int t = 0; t < take[i]; ++t) snu.push_back(nuvals[i]);
                    for (int t = take[i]; t < numult[i]; ++t) rnu.push_back(nuvals[i]);
                    mult *= Rat(binomial(numult[i], take[i]));
                }
                std::vector<int> smus, rmus;
                if (!mus.empty()) {
                    smus.push_back(mus[0]);
                    for (size_t i = 1; i < nmu; ++i) {
                        if (mask & (1ul << (i - 1)))
                            smus.push_back(mus[i]);
                        else
                            rmus.push_back(mus[i]);
                    }
                } else {
                    // anchor = one instance of the largest nu part: require take[0] >= 1
                    if (nuvals.empty() || take[0] == 0) continue;
                    // the anchor instance is distinguished: splits counted by choosing the
                    // remaining take[0]-1 among numult[0]-1
                    mult = 1;
                    for (size_t i = 0; i < nuvals.size(); ++i)
                        mult *= Rat(binomial(i == 0 ? numult[i] - 1 : numult[i],
                                             i == 0 ? take[i] - 1 : take[i]));
                }
                std::sort(snu.rbegin(), snu.rend());
                std::sort(rnu.rbegin(), rnu.rend());
                cb(snu, smus, rnu, rmus, mult);
            }
            return;
        }
        for (int t = 0; t <= numult[idx]; ++t) {
            take[idx] = t;
            rec(idx + 1);
        }
        take[idx] = 0;
    };
    rec(0);
}

QSeries nprime_series(const Partition& nu, const std::vector<int>& mus, long cutoff_d) {
    auto key = std::make_pair(canonical(nu, mus), cutoff_d);
    {
        std::lock_guard<std::mutex> lock(series_mutex);
        auto it = nprime_cache.find(key);
        if (it != nprime_cache.end()) return it->second;
    }
    QSeries out = n_series(nu, mus, cutoff_d).div(pillow_partition_series(cutoff_d));
    std::lock_guard<std::mutex> lock(series_mutex);
    nprime_cache[key] = out;
    return out;
}

QSeries nzero_series(const Partition& nu, const std::vector<int>& mus, long cutoff_d) {
    if (nu.empty() && mus.empty()) return QSeries::zero(2 * cutoff_d);  // no connected unbranched cover
    auto key = std::make_pair(canonical(nu, mus), cutoff_d);
    {
        std::lock_guard<std::mutex> lock(series_mutex);
        auto it = nzero_cache.find(key);
        if (it != nzero_cache.end()) return it->second;
    }
    QSeries out = nprime_series(nu, mus, cutoff_d);
    anchored_splits(nu, mus, [&](const Partition& snu, const std::vector<int>& smus,
                                 const Partition& rnu, const std::vector<int>& rmus, const Rat& mult) {
        if (rnu.empty() && rmus.empty()) return;  // sigma = whole profile: that's the N0 we solve for
        QSeries piece = nzero_series(snu, smus, cutoff_d);
        QSeries rest = nprime_series(rnu, rmus, cutoff_d);
        out = out - piece * rest * mult;
    });
    std::lock_guard<std::mutex> lock(series_mutex);
    nzero_cache[key] = out;
    return out;
}

}  // namespace

QSeries count_covers(const CoverCountQuery& q) {
    q.profile.validate();
    switch (q.connectivity) {
        case Connectivity::All:
            return n_series(q.profile.nu, q.profile.mus, q.d_max);
        case Connectivity::NoUnramified:
            return nprime_series(q.profile.nu, q.profile.mus, q.d_max);
        case Connectivity::Connected:
            return nzero_series(q.profile.nu, q.profile.mus, q.d_max);
    }
    throw std::logic_error("count_covers: bad connectivity");
}

// ------------------------- brute force -------------------------

namespace {

using Perm = std::vector<int>;

Perm pmul(const Perm& a, const Perm& b) {  // (a*b)(x) = a(b(x))
    Perm r(a.size());
    for (size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
    return r;
}

Perm pinv(const Perm& a) {
    Perm r(a.size());
    for (size_t x = 0; x < a.size(); ++x) r[a[x]] = int(x);
    return r;
}

Partition cycle_type(const Perm& p) {
    int n = int(p.size());
    std::vector<bool> seen(n, false);
    Partition ct;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int l = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = p[j];
            ++l;
        }
        ct.push_back(l);
    }
    std::sort(ct.rbegin(), ct.rend());
    return ct;
}

std::vector<Perm> perms_of_type(int n, const Partition& typ) {
    std::vector<Perm> out;
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        if (cycle_type(p) == typ) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int orbit_count(const std::vector<const Perm*>& gens, int n, std::vector<int>* comp_out) {
    std::vector<int> par(n);
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (par[x] != x) {
            par[x] = par[par[x]];
            x = par[x];
        }
        return x;
    };
    for (auto* g : gens)
        for (int i = 0; i < n; ++i) {
            int a = find(i), b = find((*g)[i]);
            if (a != b) par[a] = b;
        }
    int cnt = 0;
    std::vector<int> root(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (root[r] < 0) root[r] = cnt++;
        if (comp_out) (*comp_out)[i] = root[r];
    }
    return cnt;
}

struct BruteResult {
    Rat count;
    Rat svsum;  // sum of S_p(h), before normalization
};

BruteResult brute_enumerate(const RamificationProfile& profile, long d, Connectivity conn, int p,
                            bool want_sv) {
    int n2 = int(2 * d);
    long m = part_size(profile.nu);
    BruteResult res{0, 0};
    if (2 * d < m || (2 * d - m) % 2 != 0) return res;
    for (int mu : profile.mus)
        if (mu > n2) return res;
    if (n2 == 0) {
        // the empty cover: counts once for N (and N'), has no components
        bool ok = profile.mus.empty();
        if (ok && conn != Connectivity::Connected) res.count = 1;
        return res;
    }
    if (n2 > 6) throw std::invalid_argument("brute_force: 2d > 6 exceeds the hard cap");
    Partition t1 = pad_with_twos(profile.nu, (n2 - m) / 2);
    Partition t2 = pad_with_twos({}, d);
    auto C1 = perms_of_type(n2, t1);
    auto C2 = perms_of_type(n2, t2);
    std::vector<std::vector<Perm>> Cg;
    for (int mu : profile.mus) Cg.push_back(perms_of_type(n2, pad_with_ones({mu}, n2 - mu)));
    size_t ng = Cg.size();
    std::vector<size_t> gi(ng, 0);
    Rat count = 0, svsum = 0;
    for (auto& a2 : C2) {
        Perm a2i = pinv(a2);
        for (auto& a3 : C2) {
            Perm base = pmul(a2i, pinv(a3));  // alpha2^{-1} alpha3^{-1}
            // iterate over gamma tuples
            std::fill(gi.begin(), gi.end(), 0);
            while (true) {
                Perm gprod;
                bool have_g = false;
                for (size_t t = 0; t < ng; ++t) {
                    const Perm& g = Cg[t][gi[t]];
                    gprod = have_g ? pmul(gprod, g) : g;
                    have_g = true;
                }
                Perm rhs = have_g ? pmul(base, pinv(gprod)) : base;  // alpha1 alpha4
                for (auto& a1 : C1) {
                    Perm a4 = pmul(pinv(a1), rhs);
                    if (cycle_type(a4) != t2) continue;
                    // connectivity filters
                    if (conn != Connectivity::All) {
                        std::vector<const Perm*> gens{&a1, &a2, &a3, &a4};
                        for (size_t t = 0; t < ng; ++t) gens.push_back(&Cg[t][gi[t]]);
                        std::vector<int> comp(n2);
                        int nc = orbit_count(gens, n2, &comp);
                        if (conn == Connectivity::Connected) {
                            if (nc != 1) continue;
                        } else {
                            // alpha1 with its 2-cycles removed
                            Perm a10(n2);
                            std::iota(a10.begin(), a10.end(), 0);
                            {
                                std::vector<bool> seen(n2, false);
                                for (int i = 0; i < n2; ++i) {
                                    if (seen[i]) continue;
                                    std::vector<int> cyc;
                                    int j = i;
                                    while (!seen[j]) {
                                        seen[j] = true;
                                        cyc.push_back(j);
                                        j = a1[j];
                                    }
                                    if (cyc.size() != 2)
                                        for (int x : cyc) a10[x] = a1[x];
                                }
                            }
                            std::vector<const Perm*> check{&a10};
                            for (size_t t = 0; t < ng; ++t) check.push_back(&Cg[t][gi[t]]);
                            bool bad = false;
                            for (int c = 0; c < nc && !bad; ++c) {
                                bool nontrivial = false;
                                for (int x = 0; x < n2 && !nontrivial; ++x) {
                                    if (comp[x] != c) continue;
                                    for (auto* g : check)
                                        if ((*g)[x] != x) {
                                            nontrivial = true;
                                            break;
                                        }
                                }
                                if (!nontrivial) bad = true;
                            }
                            if (bad) continue;
                        }
                    }
                    count += 1;
                    if (want_sv) {
                        Perm sig = pmul(a1, a4);
                        Rat sp = 0;
                        for (int c : cycle_type(sig)) sp += rat_pow(Rat(c), p);
                        for (size_t t = 0; t < ng; ++t) {
                            sig = pmul(sig, Cg[t][gi[t]]);
                            for (int c : cycle_type(sig)) sp += rat_pow(Rat(c), p);
                        }
                        svsum += sp;
                    }
                }
                // advance gamma indices
                size_t t = 0;
                while (t < ng && ++gi[t] == Cg[t].size()) {
                    gi[t] = 0;
                    ++t;
                }
                if (t == ng) {
                    if (ng == 0) break;
                    if (t == ng) break;
                }
            }
        }
    }
    Rat fact = Rat(1) / Rat(factorial(n2));
    res.count = count * fact;
    res.svsum = svsum * fact;
    return res;
}

}  // namespace

Rat brute_force_hurwitz(const RamificationProfile& profile, long d, Connectivity conn) {
    return brute_enumerate(profile, d, conn, -1, false).count;
}

Rat brute_force_sv(const RamificationProfile& profile, long d, int p, Connectivity conn) {
    Rat s = brute_enumerate(profile, d, conn, p, true).svsum;
    return s / Rat(2 * (long(profile.mus.size()) + 1));
}

// ------------------------- Siegel-Veech via class sums -------------------------

namespace {

// border strips of size k removable from lam: list of (parent, height)
std::vector<std::pair<Partition, int>> strip_removals(const Partition& lam, int k) {
    std::vector<std::pair<Partition, int>> out;
    int L = int(lam.size());
    for (int i = 0; i < L; ++i)
        for (int j = i; j < L; ++j) {
            Partition nw = lam;
            for (int r = i; r < j; ++r) nw[r] = lam[r + 1] - 1;
            nw[j] = lam[i] - k + (j - i);
            if (nw[j] < 0) continue;
            bool ok = true;
            for (int r = 0; r + 1 < L && ok; ++r)
                if (nw[r] < nw[r + 1]) ok = false;
            for (int r = 0; r < L && ok; ++r)
                if (nw[r] < 0) ok = false;
            if (!ok) continue;
            if (part_size(lam) - part_size(nw) != k) continue;
            while (!nw.empty() && nw.back() == 0) nw.pop_back();
            out.push_back({nw, j - i});
        }
    return out;
}

// unprimed c_p coefficient at area d, in the h w^p normalization:
//   c_p(d) = [ sum_k sum_l l^{p-1} sum_parent (sum_lam ±u)(sum_lam' ±v) ] / (2 (lmu+1)^2)
Rat cp_coefficient(const Partition& nu, const std::vector<int>& mus, int p, long d) {
    int n2 = int(2 * d);
    if (n2 == 0) return 0;
    long m = part_size(nu);
    int lmu = int(mus.size());
    std::vector<Partition> bal;
    std::vector<Rat> sw;
    for (auto& lam : enum_partitions(n2)) {
        Rat s = sqrt_weight_w(lam);
        if (s != 0) {
            bal.push_back(lam);
            sw.push_back(s);
        }
    }
    bool nu_ok = (n2 >= m) && ((n2 - m) % 2 == 0);
    Rat total = 0;
    for (int k = 0; k <= lmu; ++k) {
        std::vector<Rat> u(bal.size()), v(bal.size());
        for (size_t i = 0; i < bal.size(); ++i) {
            Rat x = sw[i];
            for (int t = k; t < lmu; ++t) x *= eval_f({mus[t]}, bal[i]);
            u[i] = x;
            Rat y = 0;
            if (nu_ok) {
                y = sw[i];
                if (!nu.empty()) y *= eval_g(nu, bal[i]);
                for (int t = 0; t < k; ++t) y *= eval_f({mus[t]}, bal[i]);
            }
            v[i] = y;
        }
        for (int l = 1; l <= n2; ++l) {
            std::map<Partition, std::pair<Rat, Rat>> bucket;
            for (size_t i = 0; i < bal.size(); ++i) {
                if (u[i] == 0 && v[i] == 0) continue;
                for (auto& [par, ht] : strip_removals(bal[i], l)) {
                    auto& pr = bucket[par];
                    Rat sgn = (ht % 2 == 0) ? 1 : -1;
                    pr.first += sgn * u[i];
                    pr.second += sgn * v[i];
                }
            }
            Rat lsum = 0;
            for (auto& [par, ab] : bucket) lsum += ab.first * ab.second;
            if (lsum != 0) total += rat_pow(Rat(l), p - 1) * lsum;
        }
    }
    return total / Rat(2 * (lmu + 1) * (lmu + 1));
}

std::map<std::pair<ProfileKey, std::pair<int, long>>, QSeries> cp_cache, cpp_cache, cpz_cache;

QSeries cp_series(const Partition& nu, const std::vector<int>& mus, int p, long cutoff_d) {
    auto key = std::make_pair(canonical(nu, mus), std::make_pair(p, cutoff_d));
    {
        std::lock_guard<std::mutex> lock(series_mutex);
        auto it = cp_cache.find(key);
        if (it != cp_cache.end()) return it->second;
    }
    QSeries s(2 * cutoff_d);
    for (long d = 0; d <= cutoff_d; ++d) s.set_half(2 * d, cp_coefficient(nu, mus, p, d));
    std::lock_guard<std::mutex> lock(series_mutex);
    cp_cache[key] = s;
    return s;
}

QSeries cprime_series(const Partition& nu, const std::vector<int>& mus, int p, long cutoff_d) {
    auto key = std::make_pair(canonical(nu, mus), std::make_pair(p, cutoff_d));
    {
        std::lock_guard<std::mutex> lock(series_mutex);
        auto it = cpp_cache.find(key);
        if (it != cpp_cache.end()) return it->second;
    }
    // c_p(Pi) = c'_p(Pi) N(empty) + N'(Pi) c_p(empty)
    QSeries cp = cp_series(nu, mus, p, cutoff_d);
    QSeries cpe = cp_series({}, {}, p, cutoff_d);
    QSeries np = nprime_series(nu, mus, cutoff_d);
    QSeries ne = pillow_partition_series(cutoff_d);
    QSeries out = (cp - np * cpe).div(ne);
    std::lock_guard<std::mutex> lock(series_mutex);
    cpp_cache[key] = out;
    return out;
}

QSeries czero_series(const Partition& nu, const std::vector<int>& mus, int p, long cutoff_d) {
    if (nu.empty() && mus.empty()) return QSeries::zero(2 * cutoff_d);
    auto key = std::make_pair(canonical(nu, mus), std::make_pair(p, cutoff_d));
    {
        std::lock_guard<std::mutex> lock(series_mutex);
        auto it = cpz_cache.find(key);
        if (it != cpz_cache.end()) return it->second;
    }
    QSeries out = cprime_series(nu, mus, p, cutoff_d);
    anchored_splits(nu, mus, [&](const Partition& snu, const std::vector<int>& smus,
                                 const Partition& rnu, const std::vector<int>& rmus, const Rat& mult) {
        if (rnu.empty() && rmus.empty()) return;
        QSeries cz = czero_series(snu, smus, p, cutoff_d);
        QSeries nz = nzero_series(snu, smus, cutoff_d);
        QSeries npr = nprime_series(rnu, rmus, cutoff_d);
        QSeries cpr = cprime_series(rnu, rmus, p, cutoff_d);
        out = out - (cz * npr + nz * cpr) * mult;
    });
    std::lock_guard<std::mutex> lock(series_mutex);
    cpz_cache[key] = out;
    return out;
}

}  // namespace

QSeries sv_series(const RamificationProfile& profile, int p, long cutoff_d, Connectivity conn) {
    if (p % 2 == 0 || p < -1) throw std::invalid_argument("sv_series: p must be odd and >= -1");
    profile.validate();
    switch (conn) {
        case Connectivity::All: return cp_series(profile.nu, profile.mus, p, cutoff_d);
        case Connectivity::NoUnramified: return cprime_series(profile.nu, profile.mus, p, cutoff_d);
        case Connectivity::Connected: return czero_series(profile.nu, profile.mus, p, cutoff_d);
    }
    throw std::logic_error("sv_series: bad connectivity");
}

}  // namespace pillow
