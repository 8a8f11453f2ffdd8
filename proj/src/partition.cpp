#include "pillow/partition.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace pillow {

bool is_partition(const Partition& p) {
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 1) return false;
        if (i + 1 < p.size() && p[i] < p[i + 1]) return false;
    }
    return true;
}

namespace {
void gen_partitions(int n, int maxp, Partition& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, maxp); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}
}  // namespace

const std::vector<Partition>& enum_partitions(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<Partition>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Partition> out;
    Partition cur;
    gen_partitions(n, n, cur, out);
    return cache.emplace(n, std::move(out)).first->second;
}

Int centralizer_order(const Partition& mu) {
    Int z = 1;
    size_t i = 0;
    while (i < mu.size()) {
        size_t j = i;
        while (j < mu.size() && mu[j] == mu[i]) ++j;
        long r = long(j - i);
        for (long t = 0; t < r; ++t) z *= mu[i];
        z *= factorial(r);
        i = j;
    }
    return z;
}

Partition conjugate(const Partition& p) {
    Partition c;
    if (p.empty()) return c;
    c.resize(p[0]);
    for (int j = 0; j < p[0]; ++j) {
        int cnt = 0;
        for (int x : p)
            if (x > j) ++cnt;
        c[j] = cnt;
    }
    return c;
}

std::vector<int> hook_lengths(const Partition& p) {
    std::vector<int> out;
    Partition c = conjugate(p);
    for (size_t i = 0; i < p.size(); ++i)
        for (int j = 0; j < p[i]; ++j) out.push_back(p[i] - j + c[j] - int(i) - 1);
    return out;
}

Rat hook_weight_sum(const Partition& lam, int p) {
    Rat s = 0;
    for (int h : hook_lengths(lam)) s += rat_pow(Rat(h), p - 1);
    return s;
}

bool is_balanced(const Partition& lam) {
    // pbar_0(lam) = 1/2 + sum_i [(-1)^{lam_i - i + 1} - (-1)^{-i+1}] ; balanced iff = 1/2
    long s = 0;
    for (size_t i = 1; i <= lam.size(); ++i) {
        long a = lam[i - 1] - long(i) + 1;
        s += ((a % 2 + 2) % 2 == 0 ? 1 : -1) - ((long(1 - i) % 2 + 2) % 2 == 0 ? 1 : -1);
    }
    return s == 0;
}

bool is_balanced_by_core(const Partition& lam) {
    // strip dominoes greedily until stuck; balanced iff empty core
    Partition p = lam;
    bool changed = true;
    while (changed && !p.empty()) {
        changed = false;
        for (size_t i = 0; i < p.size() && !changed; ++i) {
            // horizontal domino at end of row i
            Partition q = p;
            q[i] -= 2;
            bool ok = q[i] >= 0 && (i + 1 == q.size() || q[i] >= q[i + 1]);
            if (ok) {
                while (!q.empty() && q.back() == 0) q.pop_back();
                p = q;
                changed = true;
                break;
            }
            // vertical domino at rows i,i+1
            if (i + 1 < p.size() && p[i] == p[i + 1]) {
                Partition r = p;
                r[i] -= 1;
                r[i + 1] -= 1;
                bool ok2 = (i + 2 == r.size() || r[i + 1] >= r[i + 2]);
                if (ok2 && r[i] >= 0) {
                    while (!r.empty() && r.back() == 0) r.pop_back();
                    p = r;
                    changed = true;
                    break;
                }
            }
        }
    }
    return p.empty();
}

std::pair<Partition, Partition> two_quotients(const Partition& lam) {
    // beta-numbers lam_i - i + N for i=1..N with N even >= l(lam); split by parity.
    int N = int(lam.size()) + (int(lam.size()) % 2);
    if (N == 0) N = 2;
    std::vector<long> beta;
    for (int i = 1; i <= N; ++i) beta.push_back((size_t(i) <= lam.size() ? lam[i - 1] : 0) - i + N);
    std::vector<long> ev, od;
    for (long b : beta) (b % 2 == 0 ? ev : od).push_back(b);
    std::sort(ev.rbegin(), ev.rend());
    std::sort(od.rbegin(), od.rend());
    Partition alpha, betap;
    for (size_t i = 0; i < ev.size(); ++i) {
        long v = ev[i] / 2 + long(i) + 1 - long(ev.size());
        if (v > 0) alpha.push_back(int(v));
    }
    for (size_t i = 0; i < od.size(); ++i) {
        long v = (od[i] - 1) / 2 + long(i) + 1 - long(od.size());
        if (v > 0) betap.push_back(int(v));
    }
    return {alpha, betap};
}

Partition pad_with_ones(const Partition& mu, long ones) {
    if (ones < 0) throw std::invalid_argument("pad_with_ones: negative pad");
    Partition out = mu;
    for (long i = 0; i < ones; ++i) out.push_back(1);
    std::sort(out.rbegin(), out.rend());
    return out;
}

Partition pad_with_twos(const Partition& nu, long twos) {
    if (twos < 0) throw std::invalid_argument("pad_with_twos: negative pad");
    Partition out = nu;
    for (long i = 0; i < twos; ++i) out.push_back(2);
    std::sort(out.rbegin(), out.rend());
    return out;
}

void RamificationProfile::validate() const {
    if (part_size(nu) % 2 != 0) throw std::invalid_argument("profile: |nu| must be even");
    for (int x : nu)
        if (x % 2 == 0) throw std::invalid_argument("profile: nu parts must be odd");
    if (!is_partition(nu)) throw std::invalid_argument("profile: nu not a partition");
    for (int m : mus)
        if (m < 2 || m % 2 != 0)
            throw std::invalid_argument("profile: each mu must be a single even cycle >= 2");
    long two_g = 2 - (long(mus.size()) + long(nu.size())) + [&] {
        long s = 0;
        for (int m : mus) s += m;
        return s;
    }() + part_size(nu) / 2;
    if (two_g % 2 != 0 || two_g < 0) throw std::invalid_argument("profile: genus not a non-negative integer");
    // parity obstruction: n = l(mu) must be congruent to |nu|/2 mod 2 for covers to exist;
    // profiles violating it are allowed (all series vanish), so no throw here.
}

long RamificationProfile::genus() const {
    long summu = 0;
    for (int m : mus) summu += m;
    long lhs = long(mus.size()) + long(nu.size()) - summu - part_size(nu) / 2;
    return (2 - lhs) / 2;
}

long RamificationProfile::dimension() const {
    return 2 * genus() - 2 + long(nu.size()) + long(mus.size());
}

long RamificationProfile::weight_bound() const {
    long summu = 0;
    for (int m : mus) summu += m;
    return summu + long(mus.size()) + part_size(nu) / 2;
}

}  // namespace pillow
