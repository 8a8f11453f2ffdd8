#include "pillow/localpoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pillow/brackets.hpp"
#include "pillow/linalg.hpp"

namespace pillow {

Rat A_local(const std::vector<int>& wminus, const std::vector<int>& wplus, const LocalFn& F) {
    long d = 0;
    for (int w : wminus) d += w;
    long dp = 0;
    for (int w : wplus) dp += w;
    if (d != dp) throw std::invalid_argument("A_local: boundary sizes differ");
    Partition cm(wminus.begin(), wminus.end()), cp(wplus.begin(), wplus.end());
    std::sort(cm.rbegin(), cm.rend());
    std::sort(cp.rbegin(), cp.rend());
    Rat tot = 0;
    for (auto& lam : enum_partitions(int(d))) {
        long long c1 = d == 0 ? 1 : character(lam, cm);
        if (c1 == 0) continue;
        long long c2 = d == 0 ? 1 : character(lam, cp);
        if (c2 == 0) continue;
        Rat f = F(lam);
        if (f == 0) continue;
        tot += Rat(long(c1)) * Rat(long(c2)) * f;
    }
    Rat den = 1;
    for (int w : wminus) den *= w;
    for (int w : wplus) den *= w;
    return tot / den;
}

Rat A2_local(const std::vector<int>& ws, const LocalFn& F) {
    long d = 0;
    for (int w : ws) d += w;
    if (d % 2 != 0) throw std::invalid_argument("A2_local: total width must be even");
    Partition cls(ws.begin(), ws.end());
    std::sort(cls.rbegin(), cls.rend());
    Rat tot = 0;
    for (auto& lam : enum_partitions(int(d))) {
        Rat sw = sqrt_weight_w(lam);
        if (sw == 0) continue;
        long long c = d == 0 ? 1 : character(lam, cls);
        if (c == 0) continue;
        Rat f = F(lam);
        if (f == 0) continue;
        tot += sw * Rat(long(c)) * f;
    }
    Rat den = 1;
    for (int w : ws) den *= w;
    return tot / den;
}

namespace {

// enumerate matchings between equal entries of a and b; callback(pairs weight, rest_a, rest_b)
void matchings(const std::vector<int>& a, const std::vector<int>& b, size_t i,
               std::vector<bool>& used_b, int pairs, Rat weight,
               const std::function<void(int, Rat, const std::vector<int>&, const std::vector<int>&)>& cb,
               std::vector<bool>& used_a) {
    if (i == a.size()) {
        std::vector<int> ra, rb;
        for (size_t t = 0; t < a.size(); ++t)
            if (!used_a[t]) ra.push_back(a[t]);
        for (size_t t = 0; t < b.size(); ++t)
            if (!used_b[t]) rb.push_back(b[t]);
        cb(pairs, weight, ra, rb);
        return;
    }
    matchings(a, b, i + 1, used_b, pairs, weight, cb, used_a);  // a[i] unmatched
    for (size_t j = 0; j < b.size(); ++j) {
        if (used_b[j] || b[j] != a[i]) continue;
        used_b[j] = true;
        used_a[i] = true;
        matchings(a, b, i + 1, used_b, pairs + 1, weight * Rat(1, a[i]), cb, used_a);
        used_b[j] = false;
        used_a[i] = false;
    }
}

// enumerate partial pairings of equal entries within ws
void pairings(const std::vector<int>& ws, size_t lo, std::vector<bool>& used, int pairs, Rat weight,
              const std::function<void(int, Rat, const std::vector<int>&)>& cb) {
    size_t i = lo;
    while (i < ws.size() && used[i]) ++i;
    if (i == ws.size()) {
        std::vector<int> rest;
        for (size_t t = 0; t < ws.size(); ++t)
            if (!used[t]) rest.push_back(ws[t]);
        cb(pairs, weight, rest);
        return;
    }
    used[i] = true;
    // i unpaired: mark as "kept" by temporarily flagging, recurse over remaining
    pairings(ws, i + 1, used, pairs, weight, cb);
    // i paired with a later equal entry
    for (size_t j = i + 1; j < ws.size(); ++j) {
        if (used[j] || ws[j] != ws[i]) continue;
        used[j] = true;
        pairings(ws, i + 1, used, pairs + 1, weight * Rat(1, ws[i]), cb);
        used[j] = false;
    }
    used[i] = false;
}

}  // namespace

Rat A_local_connected(const std::vector<int>& wminus, const std::vector<int>& wplus,
                      const LocalFn& F) {
    Rat tot = 0;
    std::vector<bool> used_b(wplus.size(), false), used_a(wminus.size(), false);
    matchings(wminus, wplus, 0, used_b, 0, Rat(1),
              [&](int pairs, Rat weight, const std::vector<int>& ra, const std::vector<int>& rb) {
                  Rat sgn = (pairs % 2 == 0) ? 1 : -1;
                  tot += sgn * weight * A_local(ra, rb, F);
              },
              used_a);
    return tot;
}

Rat A2_local_connected(const std::vector<int>& ws, const LocalFn& F) {
    Rat tot = 0;
    // Moebius over partial pairings: state 0 undecided, 1 kept, 2 paired.
    std::vector<int> state(ws.size(), 0);
    std::function<void(size_t, int, Rat)> rec3 = [&](size_t i, int pairs, Rat weight) {
        while (i < ws.size() && state[i] != 0) ++i;
        if (i == ws.size()) {
            std::vector<int> rest;
            for (size_t t = 0; t < ws.size(); ++t)
                if (state[t] == 1) rest.push_back(ws[t]);
            Rat sgn = (pairs % 2 == 0) ? 1 : -1;
            tot += sgn * weight * A2_local(rest, F);
            return;
        }
        state[i] = 1;
        rec3(i + 1, pairs, weight);
        for (size_t j = i + 1; j < ws.size(); ++j) {
            if (state[j] != 0 || ws[j] != ws[i]) continue;
            state[i] = 2;
            state[j] = 2;
            rec3(i + 1, pairs + 1, weight * Rat(1, ws[i]));
            state[j] = 0;
        }
        state[i] = 0;
    };
    rec3(0, 0, Rat(1));
    return tot;
}

Rat brute_cov2(const std::vector<int>& ws, const std::vector<int>& mus, const Partition& nu,
               bool primed) {
    long d = 0;
    for (int w : ws) d += w;
    if (d > 6) throw std::invalid_argument("brute_cov2: degree cap exceeded");
    if (d % 2 != 0 || part_size(nu) > d || (d - part_size(nu)) % 2 != 0) return 0;
    if (d == 0) return (nu.empty() && mus.empty()) ? 1 : 0;
    int n = int(d);
    // profiles: sigma0 of type ws over 0, sigma1 of type (nu,2^..) over 1,
    // gamma_i of type (mu_i,1^..), sigma_inf of type 2^{d/2}; product = id.
    using Perm = std::vector<int>;
    auto pmul = [](const Perm& a, const Perm& b) {
        Perm r(a.size());
        for (size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
        return r;
    };
    auto pinvf = [](const Perm& a) {
        Perm r(a.size());
        for (size_t x = 0; x < a.size(); ++x) r[a[x]] = int(x);
        return r;
    };
    auto ctype = [](const Perm& p) {
        std::vector<bool> seen(p.size(), false);
        Partition ct;
        for (size_t i = 0; i < p.size(); ++i) {
            if (seen[i]) continue;
            int l = 0;
            size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = p[j];
                ++l;
            }
            ct.push_back(l);
        }
        std::sort(ct.rbegin(), ct.rend());
        return ct;
    };
    Partition t0(ws.begin(), ws.end());
    std::sort(t0.rbegin(), t0.rend());
    Partition t1 = pad_with_twos(nu, (d - part_size(nu)) / 2);
    Partition tinf = pad_with_twos({}, d / 2);
    std::vector<Perm> C0, C1;
    std::vector<std::vector<Perm>> Cg;
    Perm idp(n);
    std::iota(idp.begin(), idp.end(), 0);
    {
        Perm p = idp;
        do {
            Partition ct = ctype(p);
            if (ct == t0) C0.push_back(p);
            if (ct == t1) C1.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        for (int mu : mus) {
            std::vector<Perm> cl;
            Partition tm = pad_with_ones({mu}, n - mu);
            Perm q = idp;
            do {
                if (ctype(q) == tm) cl.push_back(q);
            } while (std::next_permutation(q.begin(), q.end()));
            Cg.push_back(cl);
        }
    }
    Rat count = 0;
    std::vector<size_t> gi(Cg.size(), 0);
    for (auto& s0 : C0) {
        for (auto& s1 : C1) {
            std::fill(gi.begin(), gi.end(), 0);
            while (true) {
                Perm prod = pmul(s0, s1);
                for (size_t t = 0; t < Cg.size(); ++t) prod = pmul(prod, Cg[t][gi[t]]);
                Perm sinf = pinvf(prod);
                if (ctype(sinf) == tinf) {
                    bool ok = true;
                    if (primed) {
                        // no component where sigma1 has only 2-cycles and every gamma acts trivially
                        std::vector<int> par(n);
                        std::iota(par.begin(), par.end(), 0);
                        std::function<int(int)> find = [&](int x) {
                            while (par[x] != x) {
                                par[x] = par[par[x]];
                                x = par[x];
                            }
                            return x;
                        };
                        auto uni = [&](int a, int b) {
                            a = find(a);
                            b = find(b);
                            if (a != b) par[a] = b;
                        };
                        for (int x = 0; x < n; ++x) {
                            uni(x, s0[x]);
                            uni(x, s1[x]);
                            for (size_t t = 0; t < Cg.size(); ++t) uni(x, Cg[t][gi[t]][x]);
                        }
                        // mark points on non-2 cycles of s1 (the nu-marked cycles) or moved by gammas
                        std::vector<bool> marked(n, false);
                        {
                            std::vector<bool> seen(n, false);
                            for (int i = 0; i < n; ++i) {
                                if (seen[i]) continue;
                                std::vector<int> cyc;
                                int j = i;
                                while (!seen[j]) {
                                    seen[j] = true;
                                    cyc.push_back(j);
                                    j = s1[j];
                                }
                                if (cyc.size() != 2)
                                    for (int x : cyc) marked[x] = true;
                            }
                            for (size_t t = 0; t < Cg.size(); ++t)
                                for (int x = 0; x < n; ++x)
                                    if (Cg[t][gi[t]][x] != x) marked[x] = true;
                        }
                        std::map<int, bool> comp_marked;
                        for (int x = 0; x < n; ++x) {
                            int r = find(x);
                            comp_marked[r] = comp_marked[r] || marked[x];
                        }
                        for (auto& [r, mk] : comp_marked)
                            if (!mk) ok = false;
                    }
                    if (ok) count += 1;
                }
                size_t t = 0;
                while (t < Cg.size() && ++gi[t] == Cg[t].size()) {
                    gi[t] = 0;
                    ++t;
                }
                if (t == Cg.size()) break;
            }
        }
    }
    // labeled 0-fiber: multiply by prod r_m(ws)! ; weight 1/d!
    Rat label = 1;
    {
        Partition s = t0;
        size_t i = 0;
        while (i < s.size()) {
            size_t j = i;
            while (j < s.size() && s[j] == s[i]) ++j;
            label *= Rat(factorial(long(j - i)));
            i = j;
        }
    }
    return count * label / Rat(factorial(n));
}

QuasiPolynomial fit_quasipolynomial(const LocalFn& F, int arity, int degree_bound,
                                    const std::vector<int>& coset) {
    if (int(coset.size()) != arity) throw std::invalid_argument("fit: coset arity mismatch");
    int csum = 0;
    for (int c : coset) csum += c;
    if (csum % 2 != 0) throw std::invalid_argument("fit: coset must have even sum");
    QuasiPolynomial out;
    out.arity = arity;
    out.coset = coset;
    // monomials of total degree <= degree_bound
    std::vector<std::vector<int>> monos;
    std::vector<int> cur(arity, 0);
    std::function<void(int, int)> rec = [&](int i, int rem) {
        if (i == arity) {
            monos.push_back(cur);
            return;
        }
        for (int e = 0; e <= rem; ++e) {
            cur[i] = e;
            rec(i + 1, rem - e);
        }
        cur[i] = 0;
    };
    rec(0, degree_bound);
    // sample grid on the coset
    auto coord = [&](int axis, int idx) { return (coset[axis] == 0 ? 2 : 1) + 2 * idx; };
    int per_axis = degree_bound + 2;
    std::vector<std::vector<int>> samples;
    std::vector<int> id(arity, 0);
    std::function<void(int)> gen = [&](int i) {
        if (i == arity) {
            std::vector<int> pt(arity);
            for (int a = 0; a < arity; ++a) pt[a] = coord(a, id[a]);
            long tot = 0;
            for (int x : pt) tot += x;
            if (tot % 2 == 0) samples.push_back(pt);
            return;
        }
        for (id[i] = 0; id[i] < per_axis; ++id[i]) gen(i + 1);
        id[i] = 0;
    };
    gen(0);
    auto value = [&](const std::vector<int>& pt) { return A2_local_connected(pt, F); };
    auto fit_over = [&](const std::vector<std::vector<int>>& pts,
                        const std::function<std::vector<int>(const std::vector<int>&)>& tf)
        -> std::optional<std::map<std::vector<int>, Rat>> {
        std::vector<std::vector<Rat>> A;
        std::vector<Rat> b;
        for (auto& pt : pts) {
            auto xs = tf(pt);
            std::vector<Rat> row;
            for (auto& mo : monos) {
                Rat t = 1;
                for (int a = 0; a < arity; ++a) t *= rat_pow(Rat(xs[a]), mo[a]);
                row.push_back(t);
            }
            A.push_back(std::move(row));
            b.push_back(value(pt));
        }
        auto sol = solve_linear(A, b);
        if (!sol) return std::nullopt;
        std::map<std::vector<int>, Rat> poly;
        for (size_t i = 0; i < monos.size(); ++i)
            if ((*sol)[i] != 0) poly[monos[i]] = (*sol)[i];
        return poly;
    };
    auto ident = [](const std::vector<int>& pt) { return pt; };
    auto global = fit_over(samples, ident);
    bool verified = false;
    if (global) {
        verified = true;
        // held-out verification: points beyond the fitting grid (coset values only)
        for (int shift = per_axis; shift < per_axis + 2 && verified; ++shift) {
            std::vector<int> pt(arity);
            for (int a = 0; a < arity; ++a) pt[a] = coord(a, shift + a);
            Rat expect = value(pt);
            Rat got = 0;
            for (auto& [mo, c] : *global) {
                Rat t = c;
                for (int a = 0; a < arity; ++a) t *= rat_pow(Rat(pt[a]), mo[a]);
                got += t;
            }
            if (got != expect) verified = false;
        }
    }
    if (global && verified) {
        out.global_ok = true;
        out.poly = *global;
        return out;
    }
    out.global_ok = false;
    if (arity == 2) {
        // piecewise diagnostic: fit in (u,v) = (min,max) over the chamber w1 <= w2
        auto mm = [](const std::vector<int>& pt) {
            return std::vector<int>{std::min(pt[0], pt[1]), std::max(pt[0], pt[1])};
        };
        std::vector<std::vector<int>> pts;
        for (auto& pt : samples)
            if (pt[0] <= pt[1]) pts.push_back(pt);
        auto ch = fit_over(pts, mm);
        if (ch) out.chamber_minmax = *ch;
    }
    return out;
}

}  // namespace pillow
