#include "pillow/shifted.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "pillow/linalg.hpp"
#include "pillow/qseries.hpp"

namespace pillow {

long monomial_weight(const ShiftedMonomial& m) {
    long w = 0;
    for (int l : m.first) w += l + 1;
    for (int k : m.second) w += k;
    return w;
}

ShiftedSymElement ShiftedSymElement::monomial(const ShiftedMonomial& m, const Rat& c) {
    ShiftedSymElement e;
    if (c != 0) e.terms[m] = c;
    return e;
}

ShiftedSymElement ShiftedSymElement::constant(const Rat& c) { return monomial({{}, {}}, c); }

void ShiftedSymElement::add_term(const ShiftedMonomial& m, const Rat& c) {
    if (c == 0) return;
    Rat& t = terms[m];
    t += c;
    if (t == 0) terms.erase(m);
}

ShiftedSymElement ShiftedSymElement::operator+(const ShiftedSymElement& o) const {
    ShiftedSymElement out = *this;
    for (auto& [m, c] : o.terms) out.add_term(m, c);
    return out;
}

ShiftedSymElement ShiftedSymElement::operator*(const Rat& s) const {
    ShiftedSymElement out;
    if (s == 0) return out;
    for (auto& [m, c] : terms) out.terms[m] = c * s;
    return out;
}

ShiftedSymElement ShiftedSymElement::operator*(const ShiftedSymElement& o) const {
    ShiftedSymElement out;
    for (auto& [m1, c1] : terms)
        for (auto& [m2, c2] : o.terms) {
            Partition p = m1.first, pb = m1.second;
            p.insert(p.end(), m2.first.begin(), m2.first.end());
            pb.insert(pb.end(), m2.second.begin(), m2.second.end());
            std::sort(p.rbegin(), p.rend());
            std::sort(pb.rbegin(), pb.rend());
            out.add_term({p, pb}, c1 * c2);
        }
    return out;
}

Rat ShiftedSymElement::evaluate(const Partition& lam) const {
    Rat v = 0;
    for (auto& [m, c] : terms) {
        Rat t = c;
        for (int l : m.first) t *= eval_p(l, lam);
        for (int k : m.second) t *= eval_pbar(k, lam);
        v += t;
    }
    return v;
}

long ShiftedSymElement::weight() const {
    long w = 0;
    for (auto& [m, c] : terms) w = std::max(w, monomial_weight(m));
    return w;
}

namespace {

// jets of e^{cz} with c = p/2: coefficient of z^k is c^k/k!
std::vector<Rat> exp_jet(const Rat& c, int K) {
    std::vector<Rat> out(K + 1);
    out[0] = 1;
    for (int k = 1; k <= K; ++k) out[k] = out[k - 1] * c / k;
    return out;
}

std::vector<Rat> series_inverse(const std::vector<Rat>& a) {
    int K = int(a.size()) - 1;
    std::vector<Rat> inv(K + 1);
    inv[0] = 1 / a[0];
    for (int n = 1; n <= K; ++n) {
        Rat s = 0;
        for (int j = 1; j <= n; ++j) s += a[j] * inv[n - j];
        inv[n] = -s / a[0];
    }
    return inv;
}

int sgn_pow(long e) { return ((e % 2) + 2) % 2 == 0 ? 1 : -1; }

}  // namespace

Rat gamma_constant(int k) {
    static std::mutex mu;
    static std::vector<Rat> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (int(cache.size()) <= k) {
        int K = k + 8;
        auto ep = exp_jet(Rat(1, 2), K), em = exp_jet(Rat(-1, 2), K);
        std::vector<Rat> den(K + 1);
        for (int i = 0; i <= K; ++i) den[i] = ep[i] + em[i];
        auto inv = series_inverse(den);
        cache.clear();
        Rat fact = 1;
        for (int i = 0; i <= K; ++i) {
            if (i > 0) fact *= i;
            cache.push_back(inv[i] * fact);  // gamma_k = k! [z^k] C(z)
        }
    }
    return cache[k];
}

Rat beta_constant(int k) {
    static std::mutex mu;
    static std::vector<Rat> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (int(cache.size()) <= k) {
        int K = k + 8;
        // sinh(z/2)/(z/2) = sum_j (z/2)^{2j} / (2j+1)!
        std::vector<Rat> den(K + 1, Rat(0));
        Rat q = 1;  // (1/2)^{2j} / (2j+1)!
        for (int j = 0; 2 * j <= K; ++j) {
            if (j > 0) q = q / Rat(4) / Rat(2 * j) / Rat(2 * j + 1);
            den[2 * j] = q;
        }
        cache = series_inverse(den);  // beta_k = [z^k] B(z)
    }
    return cache[k];
}

Rat eval_p(int ell, const Partition& lam) {
    if (ell < 1) throw std::invalid_argument("eval_p: ell >= 1 required");
    Rat s = 0;
    for (size_t i = 1; i <= lam.size(); ++i) {
        s += rat_pow(Rat(2 * long(lam[i - 1]) - 2 * long(i) + 1, 2), ell);
        s -= rat_pow(Rat(-2 * long(i) + 1, 2), ell);
    }
    return s + (1 - Rat(1) / rat_pow(Rat(2), ell)) * zeta_negative(ell);
}

Rat eval_pbar(int k, const Partition& lam) {
    if (k < 0) throw std::invalid_argument("eval_pbar: k >= 0 required");
    Rat s = 0;
    for (size_t i = 1; i <= lam.size(); ++i) {
        long li = lam[i - 1];
        s += sgn_pow(li - long(i) + 1) * rat_pow(Rat(2 * li - 2 * long(i) + 1, 2), k);
        s -= sgn_pow(1 - long(i)) * rat_pow(Rat(-2 * long(i) + 1, 2), k);
    }
    return s + gamma_constant(k);
}

Rat eval_f(const Partition& mu, const Partition& lam) { return normalized_character(mu, lam); }

Rat eval_g(const Partition& nu, const Partition& lam) {
    long n = part_size(lam), m = part_size(nu);
    for (int x : nu)
        if (x % 2 == 0) throw std::invalid_argument("eval_g: nu parts must be odd");
    if (m % 2 != 0) throw std::invalid_argument("eval_g: |nu| must be even");
    if (n < m || (n - m) % 2 != 0) return 0;  // no valid 2-padding
    if (!is_balanced(lam)) throw std::domain_error("eval_g: lambda must be balanced");
    long d = n / 2;
    Partition cls1 = pad_with_twos(nu, (n - m) / 2);
    Partition cls2 = pad_with_twos({}, d);
    long long c2 = n == 0 ? 1 : character(lam, cls2);
    if (c2 == 0) throw std::domain_error("eval_g: chi(2^d) vanished on balanced lambda");
    long long c1 = n == 0 ? 1 : character(lam, cls1);
    return Rat(centralizer_order(cls2)) / Rat(centralizer_order(cls1)) * Rat(long(c1)) / Rat(long(c2));
}

std::vector<ShiftedMonomial> monomials_up_to_weight(int w) {
    // p-partitions: parts l >= 1 with piece weight l+1; pbar-partitions: parts k >= 1
    std::vector<Partition> ppars, bpars;
    {
        Partition cur;
        // enumerate p-index partitions of total weight <= w
        std::function<void(int, int)> rec = [&](int rem, int maxl) {
            ppars.push_back(cur);
            for (int l = std::min(rem - 1, maxl); l >= 1; --l) {
                cur.push_back(l);
                rec(rem - (l + 1), l);
                cur.pop_back();
            }
        };
        rec(w, w);
    }
    {
        Partition cur;
        std::function<void(int, int)> rec = [&](int rem, int maxk) {
            bpars.push_back(cur);
            for (int k = std::min(rem, maxk); k >= 1; --k) {
                cur.push_back(k);
                rec(rem - k, k);
                cur.pop_back();
            }
        };
        rec(w, w);
    }
    std::vector<ShiftedMonomial> out;
    for (auto& p : ppars) {
        long wp = 0;
        for (int l : p) wp += l + 1;
        for (auto& b : bpars) {
            long wb = 0;
            for (int k : b) wb += k;
            if (wp + wb <= w) out.push_back({p, b});
        }
    }
    std::sort(out.begin(), out.end(), [](const ShiftedMonomial& a, const ShiftedMonomial& b) {
        long wa = monomial_weight(a), wb = monomial_weight(b);
        if (wa != wb) return wa < wb;
        return a < b;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<Partition> balanced_partitions_of(int n) {
    std::vector<Partition> out;
    for (auto& lam : enum_partitions(n))
        if (is_balanced(lam)) out.push_back(lam);
    return out;
}

Rat eval_monomial(const ShiftedMonomial& m, const Partition& lam) {
    Rat t = 1;
    for (int l : m.first) t *= eval_p(l, lam);
    for (int k : m.second) t *= eval_pbar(k, lam);
    return t;
}

}  // namespace

ShiftedSymElement expand_g(const Partition& nu) {
    static std::mutex mu;
    static std::map<Partition, ShiftedSymElement> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(nu);
        if (it != cache.end()) return it->second;
    }
    long m = part_size(nu);
    if (m == 0) {
        auto e = ShiftedSymElement::constant(1);
        std::lock_guard<std::mutex> lock(mu);
        cache[nu] = e;
        return e;
    }
    auto mons = monomials_up_to_weight(int(m / 2));
    // grow the balanced sample until the system has full rank
    std::vector<Partition> sample;
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    int size = int(m);
    const int hard_cap = int(m) + 40;
    std::optional<std::vector<Rat>> sol;
    while (size <= hard_cap) {
        for (auto& lam : balanced_partitions_of(size)) {
            std::vector<Rat> row;
            row.reserve(mons.size());
            for (auto& mo : mons) row.push_back(eval_monomial(mo, lam));
            A.push_back(std::move(row));
            b.push_back(eval_g(nu, lam));
            sample.push_back(lam);
        }
        if (A.size() >= mons.size() && matrix_rank(A) == int(mons.size())) {
            sol = solve_linear(A, b);
            if (sol) break;
        }
        size += 2;
    }
    if (!sol) throw std::runtime_error("expand_g: sample too small / inconsistent system");
    ShiftedSymElement e;
    for (size_t i = 0; i < mons.size(); ++i) e.add_term(mons[i], (*sol)[i]);
    // verification on the next two sizes
    for (int vs = size + 2; vs <= size + 4; vs += 2)
        for (auto& lam : balanced_partitions_of(vs))
            if (e.evaluate(lam) != eval_g(nu, lam))
                throw std::runtime_error("expand_g: verification failed");
    std::lock_guard<std::mutex> lock(mu);
    cache[nu] = e;
    return e;
}

ShiftedSymElement fmu_to_p_basis(const Partition& mu) {
    long W = part_size(mu) + long(mu.size());
    auto all = monomials_up_to_weight(int(W));
    std::vector<ShiftedMonomial> mons;
    for (auto& mo : all)
        if (mo.second.empty()) mons.push_back(mo);  // pure p-monomials
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    int size = 0;
    const int hard_cap = int(W) + 24;
    std::optional<std::vector<Rat>> sol;
    while (size <= hard_cap) {
        for (auto& lam : enum_partitions(size)) {
            std::vector<Rat> row;
            for (auto& mo : mons) row.push_back(eval_monomial(mo, lam));
            A.push_back(std::move(row));
            b.push_back(eval_f(mu, lam));
        }
        if (A.size() >= mons.size() && matrix_rank(A) == int(mons.size())) {
            sol = solve_linear(A, b);
            if (sol) break;
        }
        ++size;
    }
    if (!sol) throw std::runtime_error("fmu_to_p_basis: singular system");
    ShiftedSymElement e;
    for (size_t i = 0; i < mons.size(); ++i) e.add_term(mons[i], (*sol)[i]);
    for (int vs = size + 1; vs <= size + 2; ++vs)
        for (auto& lam : enum_partitions(vs))
            if (e.evaluate(lam) != eval_f(mu, lam))
                throw std::runtime_error("fmu_to_p_basis: verification failed");
    return e;
}

std::vector<std::pair<Rat, Partition>> p_monomial_to_f_basis(const Partition& pmono) {
    long W = 0;
    for (int l : pmono) W += l + 1;
    // basis: f_sigma with |sigma| + l(sigma) <= W
    std::vector<Partition> basis;
    for (int n = 0; n <= int(W); ++n)
        for (auto& s : enum_partitions(n))
            if (n + long(s.size()) <= W) basis.push_back(s);
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    int size = 0;
    const int hard_cap = int(W) + 24;
    std::optional<std::vector<Rat>> sol;
    ShiftedMonomial target{pmono, {}};
    while (size <= hard_cap) {
        for (auto& lam : enum_partitions(size)) {
            std::vector<Rat> row;
            for (auto& s : basis) row.push_back(eval_f(s, lam));
            A.push_back(std::move(row));
            b.push_back(eval_monomial(target, lam));
        }
        if (A.size() >= basis.size() && matrix_rank(A) == int(basis.size())) {
            sol = solve_linear(A, b);
            if (sol) break;
        }
        ++size;
    }
    if (!sol) throw std::runtime_error("p_monomial_to_f_basis: singular system");
    std::vector<std::pair<Rat, Partition>> out;
    for (size_t i = 0; i < basis.size(); ++i)
        if ((*sol)[i] != 0) out.push_back({(*sol)[i], basis[i]});
    for (int vs = size + 1; vs <= size + 2; ++vs)
        for (auto& lam : enum_partitions(vs)) {
            Rat v = 0;
            for (auto& [c, s] : out) v += c * eval_f(s, lam);
            if (v != eval_monomial(target, lam))
                throw std::runtime_error("p_monomial_to_f_basis: verification failed");
        }
    return out;
}

std::vector<GSpanTerm> pbar_monomial_in_g_span(const Partition& mubar) {
    long W = part_size(mubar);  // weight of the pbar-monomial
    // coefficient space: all monomials of weight <= W
    auto mons = monomials_up_to_weight(int(W));
    std::map<ShiftedMonomial, size_t> index;
    for (size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
    // unknowns: (h = p-monomial, nu) with wt(h) + |nu|/2 <= W, nu odd parts even size
    std::vector<std::pair<Partition, Partition>> unknowns;
    std::vector<Partition> hs;
    for (auto& mo : mons)
        if (mo.second.empty()) hs.push_back(mo.first);
    std::vector<Partition> nus;
    for (int s = 0; 2 * s <= 2 * int(W); ++s) {
        for (auto& nu : enum_partitions(2 * s)) {
            bool odd = true;
            for (int x : nu)
                if (x % 2 == 0) odd = false;
            if (odd && s <= int(W)) nus.push_back(nu);
        }
    }
    for (auto& h : hs) {
        long wh = 0;
        for (int l : h) wh += l + 1;
        for (auto& nu : nus)
            if (wh + part_size(nu) / 2 <= W) unknowns.push_back({h, nu});
    }
    // deterministic order: by (wt(h)+|nu|/2, h, nu), larger |nu| first within
    // equal weight so the solver prefers higher-g terms
    std::sort(unknowns.begin(), unknowns.end(), [](auto& a, auto& b) {
        long wa = 0, wb = 0;
        for (int l : a.first) wa += l + 1;
        for (int l : b.first) wb += l + 1;
        wa += part_size(a.second) / 2;
        wb += part_size(b.second) / 2;
        if (wa != wb) return wa < wb;
        if (part_size(a.second) != part_size(b.second)) return part_size(a.second) > part_size(b.second);
        return a < b;
    });
    // build the linear system over monomial coefficients: columns = unknowns
    std::vector<std::vector<Rat>> A(mons.size(), std::vector<Rat>(unknowns.size(), Rat(0)));
    std::vector<ShiftedSymElement> cols;
    cols.reserve(unknowns.size());
    for (size_t u = 0; u < unknowns.size(); ++u) {
        ShiftedSymElement e = expand_g(unknowns[u].second);
        e = e * ShiftedSymElement::monomial({unknowns[u].first, {}});
        cols.push_back(e);
        for (auto& [m, c] : e.terms) {
            auto it = index.find(m);
            if (it == index.end()) throw std::runtime_error("g-span: weight bound violated");
            A[it->second][u] = c;
        }
    }
    std::vector<Rat> b(mons.size(), Rat(0));
    auto it = index.find({{}, mubar});
    if (it == index.end()) throw std::invalid_argument("g-span: bad target monomial");
    b[it->second] = 1;
    auto sol = solve_linear(A, b);
    if (!sol)
        throw std::runtime_error("pbar_monomial_in_g_span: no solution (contradicts spanning theorem)");
    std::vector<GSpanTerm> out;
    ShiftedSymElement check;
    for (size_t u = 0; u < unknowns.size(); ++u) {
        if ((*sol)[u] == 0) continue;
        out.push_back({(*sol)[u], unknowns[u].first, unknowns[u].second});
        check = check + cols[u] * (*sol)[u];
    }
    if (!(check == ShiftedSymElement::monomial({{}, mubar})))
        throw std::runtime_error("pbar_monomial_in_g_span: re-expansion check failed");
    return out;
}

}  // namespace pillow
