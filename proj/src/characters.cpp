#include "pillow/characters.hpp"

#include <stdexcept>
#include <unordered_map>

namespace pillow {

namespace {

struct PairHash {
    size_t operator()(const std::pair<Partition, Partition>& k) const {
        size_t h = 1469598103934665603ull;
        auto mix = [&h](long v) {
            h ^= size_t(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        for (int x : k.first) mix(x);
        mix(-1);
        for (int x : k.second) mix(x);
        return h;
    }
};

thread_local std::unordered_map<std::pair<Partition, Partition>, long long, PairHash> mn_cache;

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("character overflow");
    return r;
}

long long mn(const Partition& lam, const Partition& mu) {
    if (lam.empty()) return 1;
    auto key = std::make_pair(lam, mu);
    auto it = mn_cache.find(key);
    if (it != mn_cache.end()) return it->second;
    // remove the largest part of mu as a border strip
    int k = mu[0];
    Partition rest(mu.begin() + 1, mu.end());
    long long total = 0;
    int L = int(lam.size());
    for (int i = 0; i < L; ++i) {
        for (int j = i; j < L; ++j) {
            // strip spanning rows i..j
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
            while (!nw.empty() && nw.back() == 0) nw.pop_back();
            long long sub = mn(nw, rest);
            total = checked_add(total, (j - i) % 2 == 0 ? sub : -sub);
        }
    }
    mn_cache.emplace(std::move(key), total);
    return total;
}

}  // namespace

long long character(const Partition& lam, const Partition& mu) {
    if (part_size(lam) != part_size(mu)) throw std::invalid_argument("character: size mismatch");
    return mn(lam, mu);
}

Int dimension(const Partition& lam) {
    long n = part_size(lam);
    Int num = factorial(n), den = 1;
    for (int h : hook_lengths(lam)) den *= h;
    return num / den;
}

Rat normalized_character(const Partition& mu, const Partition& lam) {
    long n = part_size(lam);
    long m = part_size(mu);
    if (m > n) return 0;
    long r1 = 0;
    for (int x : mu)
        if (x == 1) ++r1;
    Partition cls = pad_with_ones(mu, n - m);
    Rat val = frac(binomial(n - m + r1, r1) * factorial(n), centralizer_order(cls));
    val *= Rat(Int(long(character(lam, cls))));
    val /= Rat(dimension(lam));
    return val;
}

void clear_character_cache() { mn_cache.clear(); }

}  // namespace pillow
