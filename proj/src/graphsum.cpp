#include "pillow/graphsum.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pillow {

void GlobalGraph::canonicalize() {
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
}

Int GlobalGraph::aut_order() const {
    Int a = 1;
    size_t i = 0;
    while (i < edges.size()) {
        size_t j = i;
        while (j < edges.size() && edges[j] == edges[i]) ++j;
        a *= factorial(long(j - i));
        if (edges[i].first == edges[i].second)
            for (size_t t = i; t < j; ++t) a *= 2;
        i = j;
    }
    return a;
}

int GlobalGraph::valence(int v) const {
    int t = 0;
    for (auto& e : edges) {
        if (e.first == v) ++t;
        if (e.second == v) ++t;
    }
    return t;
}

bool GlobalGraph::has_isolated_vertex() const {
    for (int v = 1; v <= n; ++v)
        if (valence(v) == 0) return true;
    return false;
}

bool GlobalGraph::operator<(const GlobalGraph& o) const {
    if (has_special != o.has_special) return has_special < o.has_special;
    if (n != o.n) return n < o.n;
    return edges < o.edges;
}

std::vector<GlobalGraph> enumerate_graphs_capped(int n, bool has_special,
                                                 const std::vector<int>& caps, int cap0) {
    // vertex pairs in canonical order
    std::vector<std::pair<int, int>> pairs;
    int lo = has_special ? 0 : 1;
    for (int a = lo; a <= n; ++a)
        for (int b = a; b <= n; ++b) pairs.push_back({a, b});
    std::vector<GlobalGraph> out;
    GlobalGraph g;
    g.has_special = has_special;
    g.n = n;
    std::vector<int> val(n + 1, 0);
    auto cap = [&](int v) { return v == 0 ? cap0 : caps[v]; };
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == pairs.size()) {
            GlobalGraph h = g;
            h.canonicalize();
            out.push_back(h);
            return;
        }
        auto [a, b] = pairs[idx];
        rec(idx + 1);  // multiplicity 0
        int added = 0;
        while (true) {
            val[a] += 1;
            val[b] += (a == b) ? 1 : 0;
            if (a != b) val[b] += 1;
            if (val[a] > cap(a) || val[b] > cap(b)) {
                val[a] -= 1;
                if (a == b)
                    val[b] -= 1;
                else
                    val[b] -= 1;
                break;
            }
            g.edges.push_back({a, b});
            ++added;
            rec(idx + 1);
        }
        for (int t = 0; t < added; ++t) {
            g.edges.pop_back();
            val[a] -= 1;
            val[b] -= 1;
        }
        (void)0;
    };
    rec(0);
    return out;
}

std::vector<GlobalGraph> enumerate_graphs(int n, bool has_special, int max_edges) {
    std::vector<int> caps(n + 1, 2 * max_edges);
    auto all = enumerate_graphs_capped(n, has_special, caps, 2 * max_edges);
    std::vector<GlobalGraph> out;
    for (auto& g : all)
        if (int(g.edges.size()) <= max_edges && !g.has_isolated_vertex()) out.push_back(g);
    std::sort(out.begin(), out.end());
    return out;
}

bool orient_is_consistent(EdgeOrient o) {
    return o == EdgeOrient::InOut || o == EdgeOrient::OutIn || o == EdgeOrient::LoopCons;
}

int orient_min_height(const GlobalGraph& g, size_t edge_idx, EdgeOrient o) {
    auto [a, b] = g.edges[edge_idx];
    (void)a;
    (void)b;
    switch (o) {
        case EdgeOrient::LoopZero:
        case EdgeOrient::LoopCons:
        case EdgeOrient::LoopBothOut: return 1;
        case EdgeOrient::LoopBothIn: return 0;
        case EdgeOrient::InIn: return 0;     // in at the upper vertex
        case EdgeOrient::OutIn: return 0;    // in at the upper vertex
        case EdgeOrient::InOut: return 1;    // out at the upper vertex
        case EdgeOrient::OutOut: return 1;
    }
    throw std::logic_error("orient_min_height");
}

namespace {

// allowed orientation states of one edge, with multiplicity (consistent loops
// carry the two half-edge assignments of one class)
struct StateOption {
    EdgeOrient o;
    int mult;
};

std::vector<StateOption> edge_states(const GlobalGraph& g, size_t idx,
                                     const std::vector<int>* eplus /*nullable: sum over all*/) {
    auto [a, b] = g.edges[idx];
    bool marked = false;
    if (eplus) marked = std::find(eplus->begin(), eplus->end(), int(idx)) != eplus->end();
    std::vector<StateOption> out;
    if (a == b) {
        if (a == 0) {
            out.push_back({EdgeOrient::LoopZero, 1});
        } else if (eplus) {
            if (marked)
                out.push_back({EdgeOrient::LoopCons, 2});
            else {
                out.push_back({EdgeOrient::LoopBothIn, 1});
                out.push_back({EdgeOrient::LoopBothOut, 1});
            }
        } else {
            out.push_back({EdgeOrient::LoopCons, 2});
            out.push_back({EdgeOrient::LoopBothIn, 1});
            out.push_back({EdgeOrient::LoopBothOut, 1});
        }
    } else if (a == 0) {
        out.push_back({EdgeOrient::OutIn, 1});
        out.push_back({EdgeOrient::OutOut, 1});
    } else if (eplus) {
        if (marked) {
            out.push_back({EdgeOrient::InOut, 1});
            out.push_back({EdgeOrient::OutIn, 1});
        } else {
            out.push_back({EdgeOrient::InIn, 1});
            out.push_back({EdgeOrient::OutOut, 1});
        }
    } else {
        out.push_back({EdgeOrient::InIn, 1});
        out.push_back({EdgeOrient::InOut, 1});
        out.push_back({EdgeOrient::OutIn, 1});
        out.push_back({EdgeOrient::OutOut, 1});
    }
    return out;
}

// per-vertex in/out contribution of an edge with given state and width
void add_flow(const GlobalGraph& g, size_t idx, EdgeOrient o, long w, std::vector<long>& in,
              std::vector<long>& out) {
    auto [a, b] = g.edges[idx];
    switch (o) {
        case EdgeOrient::LoopZero: out[a] += 2 * w; break;
        case EdgeOrient::LoopCons:
            in[a] += w;
            out[a] += w;
            break;
        case EdgeOrient::LoopBothIn: in[a] += 2 * w; break;
        case EdgeOrient::LoopBothOut: out[a] += 2 * w; break;
        case EdgeOrient::InIn:
            in[a] += w;
            in[b] += w;
            break;
        case EdgeOrient::InOut:
            in[a] += w;
            out[b] += w;
            break;
        case EdgeOrient::OutIn:
            out[a] += w;
            in[b] += w;
            break;
        case EdgeOrient::OutOut:
            out[a] += w;
            out[b] += w;
            break;
    }
}

void add_widths(const GlobalGraph& g, size_t idx, EdgeOrient o, int w,
                std::vector<std::vector<int>>& win, std::vector<std::vector<int>>& wout,
                std::vector<int>& w0) {
    auto [a, b] = g.edges[idx];
    switch (o) {
        case EdgeOrient::LoopZero:
            w0.push_back(w);
            w0.push_back(w);
            break;
        case EdgeOrient::LoopCons:
            win[a].push_back(w);
            wout[a].push_back(w);
            break;
        case EdgeOrient::LoopBothIn:
            win[a].push_back(w);
            win[a].push_back(w);
            break;
        case EdgeOrient::LoopBothOut:
            wout[a].push_back(w);
            wout[a].push_back(w);
            break;
        default:
            if (a == 0) {
                w0.push_back(w);
                if (o == EdgeOrient::OutIn)
                    win[b].push_back(w);
                else
                    wout[b].push_back(w);
            } else {
                if (o == EdgeOrient::InIn || o == EdgeOrient::InOut)
                    win[a].push_back(w);
                else
                    wout[a].push_back(w);
                if (o == EdgeOrient::InIn || o == EdgeOrient::OutIn)
                    win[b].push_back(w);
                else
                    wout[b].push_back(w);
            }
    }
}

}  // namespace

std::vector<Orientation> enumerate_orientations(const GlobalGraph& g,
                                                const std::vector<int>& eplus) {
    for (int i : eplus) {
        auto [a, b] = g.edges[size_t(i)];
        if (a == 0) throw std::invalid_argument("enumerate_orientations: E+ edge touches vertex 0");
    }
    std::vector<Orientation> out;
    std::vector<std::vector<StateOption>> opts;
    for (size_t i = 0; i < g.edges.size(); ++i) opts.push_back(edge_states(g, i, &eplus));
    std::vector<EdgeOrient> cur(g.edges.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == g.edges.size()) {
            out.push_back({cur});
            return;
        }
        for (auto& so : opts[i]) {
            cur[i] = so.o;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

namespace {

// -------- cached A'/A2' evaluation for aux locals --------

std::mutex local_cache_mutex;
std::map<std::tuple<std::string, std::vector<int>, std::vector<int>>, Rat> a_cache;
std::map<std::pair<std::string, std::vector<int>>, Rat> a2_cache;

Rat cached_A(const AuxLocal& L, std::vector<int> win, std::vector<int> wout) {
    std::sort(win.begin(), win.end());
    std::sort(wout.begin(), wout.end());
    long si = 0, so = 0;
    for (int w : win) si += w;
    for (int w : wout) so += w;
    if (si != so) return 0;
    auto key = std::make_tuple(L.id, win, wout);
    {
        std::lock_guard<std::mutex> lock(local_cache_mutex);
        auto it = a_cache.find(key);
        if (it != a_cache.end()) return it->second;
    }
    Rat v = A_local_connected(win, wout, L.fn);
    std::lock_guard<std::mutex> lock(local_cache_mutex);
    a_cache[key] = v;
    return v;
}

Rat cached_A2(const AuxLocal& L, std::vector<int> ws) {
    std::sort(ws.begin(), ws.end());
    long s = 0;
    for (int w : ws) s += w;
    if (s % 2 != 0) return 0;
    auto key = std::make_pair(L.id, ws);
    {
        std::lock_guard<std::mutex> lock(local_cache_mutex);
        auto it = a2_cache.find(key);
        if (it != a2_cache.end()) return it->second;
    }
    Rat v = A2_local_connected(ws, L.fn);
    std::lock_guard<std::mutex> lock(local_cache_mutex);
    a2_cache[key] = v;
    return v;
}

// -------- configuration iteration core --------

struct Config {
    const std::vector<EdgeOrient>* states;
    const std::vector<int>* widths;
    int mult;  // orientation multiplicity (consistent loops)
};

// iterate over orientation states and widths (<= wmax) with delta balance at
// regular vertices; calls cb for each admissible configuration
void for_each_config(const GlobalGraph& g, const std::vector<int>* eplus, long wmax,
                     const std::function<void(const std::vector<EdgeOrient>&,
                                              const std::vector<int>&, int)>& cb) {
    size_t E = g.edges.size();
    std::vector<std::vector<StateOption>> opts;
    for (size_t i = 0; i < E; ++i) opts.push_back(edge_states(g, i, eplus));
    std::vector<EdgeOrient> st(E);
    std::vector<int> wd(E);
    // remaining half-edge slots per vertex for pruning
    std::vector<int> remain(g.n + 1, 0);
    for (auto& e : g.edges) {
        remain[e.first]++;
        remain[e.second]++;
    }
    std::vector<long> fin(g.n + 1, 0), fout(g.n + 1, 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int mult) {
        if (i == E) {
            for (int v = 1; v <= g.n; ++v)
                if (fin[v] != fout[v]) return;
            cb(st, wd, mult);
            return;
        }
        auto [a, b] = g.edges[i];
        for (auto& so : opts[i]) {
            st[i] = so.o;
            for (int w = 1; w <= wmax; ++w) {
                wd[i] = w;
                add_flow(g, i, so.o, w, fin, fout);
                remain[a]--;
                remain[b]--;
                bool feasible = true;
                for (int v = 1; v <= g.n && feasible; ++v) {
                    long gap = fin[v] > fout[v] ? fin[v] - fout[v] : fout[v] - fin[v];
                    if (gap > wmax * long(remain[v]) * 2) feasible = false;
                    if (remain[v] == 0 && fin[v] != fout[v]) feasible = false;
                }
                if (feasible) rec(i + 1, mult * so.mult);
                remain[a]++;
                remain[b]++;
                // undo flow
                std::vector<long> tin(g.n + 1, 0), tout(g.n + 1, 0);
                add_flow(g, i, so.o, w, tin, tout);
                for (int v = 0; v <= g.n; ++v) {
                    fin[v] -= tin[v];
                    fout[v] -= tout[v];
                }
            }
        }
    };
    rec(0, 1);
}

// height sums as integer-exponent coefficient vectors up to cutoff_d
std::vector<Rat> height_sum(long w, int hmin, long cutoff_d) {
    std::vector<Rat> out(cutoff_d + 1, Rat(0));
    for (long h = hmin; h * w <= cutoff_d; ++h) out[h * w] = 1;
    return out;
}

void convolve_into(std::vector<Rat>& acc, const std::vector<Rat>& f) {
    long N = long(acc.size()) - 1;
    std::vector<Rat> out(N + 1, Rat(0));
    for (long i = 0; i <= N; ++i) {
        if (acc[i] == 0) continue;
        for (long j = 0; i + j <= N; ++j) {
            if (f[j] == 0) continue;
            out[i + j] += acc[i] * f[j];
        }
    }
    acc.swap(out);
}

long default_wmax(const GlobalGraph& g, long cutoff_d) {
    int mv = 2;
    for (int v = 0; v <= g.n; ++v) mv = std::max(mv, g.valence(v));
    return cutoff_d * mv;
}

}  // namespace

QSeries graph_sum_S(const GlobalGraph& g, const std::vector<int>& eplus,
                    const std::vector<int>& m, const ParityCondition& pc, long cutoff_d,
                    long wmax) {
    if (m.size() != g.edges.size()) throw std::invalid_argument("graph_sum_S: bad m length");
    for (int mi : m)
        if (mi < 0 || mi % 2 != 0) throw std::invalid_argument("graph_sum_S: m must be even >= 0");
    if (wmax == 0) wmax = default_wmax(g, cutoff_d);
    std::vector<Rat> acc_total(cutoff_d + 1, Rat(0));
    for_each_config(g, &eplus, wmax,
                    [&](const std::vector<EdgeOrient>& st, const std::vector<int>& wd, int mult) {
                        // parity conditions on edges adjacent to 0
                        for (auto& [ei, par] : pc) {
                            if (wd[ei] % 2 != par) return;
                        }
                        Rat pref = mult;
                        for (size_t i = 0; i < wd.size(); ++i)
                            pref *= rat_pow(Rat(wd[i]), m[i] + 1);
                        std::vector<Rat> conv(cutoff_d + 1, Rat(0));
                        conv[0] = pref;
                        for (size_t i = 0; i < wd.size(); ++i)
                            convolve_into(conv,
                                          height_sum(wd[i], orient_min_height(g, i, st[i]), cutoff_d));
                        for (long dd = 0; dd <= cutoff_d; ++dd) acc_total[dd] += conv[dd];
                    });
    QSeries out(2 * cutoff_d);
    for (long dd = 0; dd <= cutoff_d; ++dd) out.set_half(2 * dd, acc_total[dd]);
    return out;
}

QSeries sm_series(int m, long cutoff_d) {
    QSeries g = eisenstein(m + 2, EisensteinScale::One, 2 * cutoff_d);
    g.set_half(0, 0);
    return g;
}

QSeries sm_even_series(int m, long cutoff_d) {
    QSeries g = eisenstein(m + 2, EisensteinScale::Two, 2 * cutoff_d);
    g.set_half(0, 0);
    return g * rat_pow(Rat(2), m + 1);
}

QSeries sm_odd_series(int m, long cutoff_d) { return sm_series(m, cutoff_d) - sm_even_series(m, cutoff_d); }

GlobalGraph reduced_graph(const GlobalGraph& g, const std::vector<int>& eplus,
                          std::vector<int>* kept_edges) {
    GlobalGraph r;
    r.has_special = g.has_special;
    r.n = g.n;
    for (size_t i = 0; i < g.edges.size(); ++i) {
        auto [a, b] = g.edges[i];
        bool zero_loop = (a == b && a == 0);
        bool eplus_loop =
            (a == b && a != 0 && std::find(eplus.begin(), eplus.end(), int(i)) != eplus.end());
        if (zero_loop || eplus_loop) continue;
        r.edges.push_back(g.edges[i]);
        if (kept_edges) kept_edges->push_back(int(i));
    }
    return r;
}

QSeries loop_factor(const GlobalGraph& g, const std::vector<int>& eplus,
                    const std::vector<int>& m, const ParityCondition& pc, long cutoff_d) {
    QSeries out = QSeries::one(2 * cutoff_d);
    for (size_t i = 0; i < g.edges.size(); ++i) {
        auto [a, b] = g.edges[i];
        if (a != b) continue;
        if (a == 0) {
            auto it = pc.find(i);
            if (it == pc.end())
                out = out * sm_series(m[i], cutoff_d);
            else if (it->second == 0)
                out = out * sm_even_series(m[i], cutoff_d);
            else
                out = out * sm_odd_series(m[i], cutoff_d);
        } else if (std::find(eplus.begin(), eplus.end(), int(i)) != eplus.end()) {
            // two half-edge assignments of a consistent loop
            out = out * sm_series(m[i], cutoff_d) * Rat(2);
        }
    }
    return out;
}

// ---------------- zeta constant-term engine ----------------

namespace {

struct ZetaTerm {
    std::vector<int> zexp;  // exponent of zeta_v for v = 1..n
    std::vector<Rat> ser;   // q-coefficients (integer exponents)
};

using ZetaState = std::map<std::vector<int>, std::vector<Rat>>;

void zmuladd(ZetaState& acc, const std::vector<int>& ze, const std::vector<Rat>& ser) {
    auto it = acc.find(ze);
    if (it == acc.end())
        acc[ze] = ser;
    else {
        for (size_t i = 0; i < ser.size(); ++i) it->second[i] += ser[i];
    }
}

}  // namespace

QSeries zeta_constant_term(const GlobalGraph& g, const std::vector<int>& eplus,
                           const std::vector<int>& m, const ParityCondition& pc, long cutoff_d,
                           long wmax, std::optional<size_t> sv_edge) {
    // input must be a reduced graph
    for (size_t i = 0; i < g.edges.size(); ++i) {
        auto [a, b] = g.edges[i];
        if (a == b && a == 0) throw std::invalid_argument("zeta engine: zero loop not reduced");
        if (a == b && std::find(eplus.begin(), eplus.end(), int(i)) != eplus.end())
            throw std::invalid_argument("zeta engine: E+ loop not reduced");
    }
    if (wmax == 0) wmax = default_wmax(g, cutoff_d);
    int n = g.n;
    ZetaState state;
    state[std::vector<int>(n + 1, 0)] = [&] {
        std::vector<Rat> one(cutoff_d + 1, Rat(0));
        one[0] = 1;
        return one;
    }();
    // process vertices in increasing order: multiply factors of edges whose
    // max endpoint is v, then take the zeta_v^0 slice
    std::vector<bool> processed(g.edges.size(), false);
    auto capacity = [&](int v) {
        long c = 0;
        for (size_t i = 0; i < g.edges.size(); ++i) {
            if (processed[i]) continue;
            auto [a, b] = g.edges[i];
            long k = (a == v ? 1 : 0) + (b == v ? 1 : 0);
            c += k * wmax * (a == b ? 2 : 1);
        }
        return c;
    };
    for (int v = 1; v <= n; ++v) {
        for (size_t i = 0; i < g.edges.size(); ++i) {
            auto [a, b] = g.edges[i];
            if (std::max(a, b) != v) continue;
            bool marked = std::find(eplus.begin(), eplus.end(), int(i)) != eplus.end();
            bool sv = sv_edge && *sv_edge == i;
            // build factor terms: list of (zeta exponent delta, series)
            std::vector<std::pair<std::vector<int>, std::vector<Rat>>> terms;
            auto hsum = [&](long w, int hmin) { return height_sum(w, hmin, cutoff_d); };
            auto hsum_sv = [&](long w) {
                std::vector<Rat> out(cutoff_d + 1, Rat(0));
                for (long h = 1; h * w <= cutoff_d; ++h) out[h * w] = Rat(h);
                return out;
            };
            for (long w = 1; w <= wmax; ++w) {
                if (a == 0) {
                    auto it = pc.find(i);
                    if (it != pc.end() && (w % 2) != it->second) continue;
                }
                Rat wt = sv ? rat_pow(Rat(w), m[i]) : rat_pow(Rat(w), m[i] + 1);
                std::vector<int> d1(n + 1, 0), d2(n + 1, 0);
                if (a == b) {  // E- loop
                    d1[a] = int(2 * w);
                    d2[a] = int(-2 * w);
                } else if (a == 0) {
                    d1[b] = int(w);
                    d2[b] = int(-w);
                } else if (marked) {  // E+: (zeta_a/zeta_b)^w then inverse
                    d1[a] = int(w);
                    d1[b] = int(-w);
                    d2[a] = int(-w);
                    d2[b] = int(w);
                } else {  // E-: (zeta_a zeta_b)^{+-w}
                    d1[a] = int(w);
                    d1[b] = int(w);
                    d2[a] = int(-w);
                    d2[b] = int(-w);
                }
                if (sv) {
                    auto hs = hsum_sv(w);
                    bool nz = false;
                    for (auto& x : hs)
                        if (x != 0) nz = true;
                    if (!nz) continue;
                    std::vector<Rat> s1 = hs;
                    for (auto& x : s1) x *= wt;
                    terms.push_back({d1, s1});
                    terms.push_back({d2, s1});
                } else {
                    auto h0 = hsum(w, 0), h1 = hsum(w, 1);
                    std::vector<Rat> s1 = h0, s2 = h1;
                    for (auto& x : s1) x *= wt;
                    for (auto& x : s2) x *= wt;
                    terms.push_back({d1, s1});
                    terms.push_back({d2, s2});
                }
            }
            ZetaState next;
            for (auto& [ze, ser] : state) {
                for (auto& [dz, fs] : terms) {
                    // series product with truncation
                    std::vector<Rat> prod(cutoff_d + 1, Rat(0));
                    bool any = false;
                    for (long x = 0; x <= cutoff_d; ++x) {
                        if (ser[x] == 0) continue;
                        for (long y = 0; x + y <= cutoff_d; ++y) {
                            if (fs[y] == 0) continue;
                            prod[x + y] += ser[x] * fs[y];
                            any = true;
                        }
                    }
                    if (!any) continue;
                    std::vector<int> nz = ze;
                    for (int t = 0; t <= n; ++t) nz[t] += dz[t];
                    zmuladd(next, nz, prod);
                }
            }
            state.swap(next);
            processed[i] = true;
            // prune states whose exponents cannot cancel any more
            ZetaState pruned;
            for (auto& [ze, ser] : state) {
                bool keep = true;
                for (int t = 1; t <= n && keep; ++t)
                    if (std::abs(long(ze[t])) > capacity(t)) keep = false;
                if (!keep) continue;
                bool any = false;
                for (auto& x : ser)
                    if (x != 0) any = true;
                if (any) pruned.emplace(ze, ser);
            }
            state.swap(pruned);
        }
        // extract zeta_v^0
        ZetaState sliced;
        for (auto& [ze, ser] : state) {
            if (ze[v] != 0) continue;
            sliced[ze] = ser;
        }
        state.swap(sliced);
    }
    QSeries out(2 * cutoff_d);
    auto it = state.find(std::vector<int>(n + 1, 0));
    if (it != state.end())
        for (long dd = 0; dd <= cutoff_d; ++dd) out.set_half(2 * dd, it->second[dd]);
    return out;
}

QSeries sv_graph_sum(const GlobalGraph& g, const std::vector<int>& eplus,
                     const std::vector<int>& m, const ParityCondition& pc, size_t e0,
                     long cutoff_d, long wmax) {
    if (wmax == 0) wmax = default_wmax(g, cutoff_d);
    std::vector<Rat> acc(cutoff_d + 1, Rat(0));
    for_each_config(g, &eplus, wmax,
                    [&](const std::vector<EdgeOrient>& st, const std::vector<int>& wd, int mult) {
                        for (auto& [ei, par] : pc)
                            if (wd[ei] % 2 != par) return;
                        Rat pref = mult;
                        for (size_t i = 0; i < wd.size(); ++i)
                            pref *= rat_pow(Rat(wd[i]), m[i] + 1);
                        pref /= Rat(wd[e0]);  // h_{e0}/w_{e0} weight, h inserted below
                        std::vector<Rat> conv(cutoff_d + 1, Rat(0));
                        conv[0] = pref;
                        for (size_t i = 0; i < wd.size(); ++i) {
                            if (i == e0) {
                                std::vector<Rat> hs(cutoff_d + 1, Rat(0));
                                for (long h = std::max(1, orient_min_height(g, i, st[i]));
                                     h * wd[i] <= cutoff_d; ++h)
                                    hs[h * wd[i]] = Rat(h);
                                // h = 0 contributes nothing to the h-weighted factor
                                convolve_into(conv, hs);
                            } else {
                                convolve_into(
                                    conv, height_sum(wd[i], orient_min_height(g, i, st[i]), cutoff_d));
                            }
                        }
                        for (long dd = 0; dd <= cutoff_d; ++dd) acc[dd] += conv[dd];
                    });
    QSeries out(2 * cutoff_d);
    for (long dd = 0; dd <= cutoff_d; ++dd) out.set_half(2 * dd, acc[dd]);
    return out;
}

// ---------------- auxiliary brackets ----------------

AuxLocal p_local(int ell) {
    AuxLocal L;
    L.id = "p" + std::to_string(ell);
    L.fn = [ell](const Partition& lam) { return eval_p(ell, lam); };
    L.max_valence = ell + 1;
    return L;
}

AuxLocal f_local(const Partition& mu) {
    AuxLocal L;
    std::ostringstream os;
    os << "f[";
    for (size_t i = 0; i < mu.size(); ++i) os << (i ? "," : "") << mu[i];
    os << "]";
    L.id = os.str();
    L.fn = [mu](const Partition& lam) { return eval_f(mu, lam); };
    long cap = 2 + part_size(mu) - long(mu.size());
    L.max_valence = int(cap);
    return L;
}

AuxLocal pbar_monomial_local(const Partition& mubar) {
    AuxLocal L;
    std::ostringstream os;
    os << "pb[";
    for (size_t i = 0; i < mubar.size(); ++i) os << (i ? "," : "") << mubar[i];
    os << "]";
    L.id = os.str();
    L.fn = [mubar](const Partition& lam) {
        Rat v = 1;
        for (int k : mubar) v *= eval_pbar(k, lam);
        return v;
    };
    L.max_valence = int(part_size(mubar)) + 1;
    return L;
}

AuxLocal shifted_local(const std::string& id, const ShiftedSymElement& e, int max_valence) {
    AuxLocal L;
    L.id = id;
    L.fn = [e](const Partition& lam) { return e.evaluate(lam); };
    L.max_valence = max_valence;
    return L;
}

namespace {

// evaluate one graph (with all vertices of the subset present) for aux brackets
void accumulate_graph_bracket(const GlobalGraph& g, const std::vector<AuxLocal>& locals,
                              const std::optional<AuxLocal>& f0, long cutoff_d, long wmax,
                              std::vector<Rat>& acc,
                              int svp /* SV power, INT_MIN = none */, long svden /* 2(n+1) */) {
    bool sv_mode = svp != INT_MIN;
    Rat aut = Rat(g.aut_order());
    // regular heights: exponents in 1/svden units when sv_mode
    long D = sv_mode ? svden : 1;
    long N = cutoff_d * D;
    for_each_config(
        g, nullptr, wmax,
        [&](const std::vector<EdgeOrient>& st, const std::vector<int>& wd, int mult) {
            // vertex boundary tuples
            std::vector<std::vector<int>> win(g.n + 1), wout(g.n + 1);
            std::vector<int> w0;
            for (size_t i = 0; i < wd.size(); ++i) add_widths(g, i, st[i], wd[i], win, wout, w0);
            long s0 = 0;
            for (int w : w0) s0 += w;
            if (f0 && s0 % 2 != 0) return;
            Rat val = mult;
            val /= aut;
            for (int v = 1; v <= g.n; ++v) {
                if (win[v].empty() && wout[v].empty()) continue;
                val *= cached_A(locals[v - 1], win[v], wout[v]);
                if (val == 0) return;
            }
            if (f0) {
                val *= cached_A2(*f0, w0);
                if (val == 0) return;
            }
            for (int w : wd) val *= w;
            // heights
            if (!sv_mode) {
                std::vector<Rat> conv(N + 1, Rat(0));
                conv[0] = val;
                for (size_t i = 0; i < wd.size(); ++i)
                    convolve_into(conv, height_sum(wd[i], orient_min_height(g, i, st[i]), cutoff_d));
                for (long dd = 0; dd <= cutoff_d; ++dd) acc[dd] += conv[dd];
                return;
            }
            // SV mode: regular heights h + Delta(e), weight sum_e (h+Delta) w^p
            // Delta(e)*D integers; exponents in 1/D units
            size_t E = wd.size();
            std::vector<std::vector<Rat>> plain(E), marked(E);
            for (size_t i = 0; i < E; ++i) {
                auto [a, b] = g.edges[i];
                // Delta = (in at upper ? +eps_upper : -eps_upper) + (in at lower ? +eps_lower : -eps_lower)
                // eps_v = v/D for regular v, 0 for the special vertex; loops: both half-edges at a.
                long deltaD = 0;
                auto eps = [&](int v) { return long(v); };  // times 1/D
                EdgeOrient o = st[i];
                if (a == b) {
                    if (o == EdgeOrient::LoopBothIn) deltaD = 2 * eps(a);
                    else if (o == EdgeOrient::LoopBothOut) deltaD = -2 * eps(a);
                    else deltaD = 0;  // consistent or zero loop: +eps - eps
                } else {
                    bool in_a = (o == EdgeOrient::InIn || o == EdgeOrient::InOut);
                    bool in_b = (o == EdgeOrient::InIn || o == EdgeOrient::OutIn);
                    deltaD += in_a ? eps(a) : -eps(a);
                    deltaD += in_b ? eps(b) : -eps(b);
                }
                int hmin = orient_min_height(g, i, o);
                long w = wd[i];
                std::vector<Rat> pl(N + 1, Rat(0)), mk(N + 1, Rat(0));
                for (long h = hmin;; ++h) {
                    long e2 = (h * D + deltaD) * w;
                    if (e2 > N) break;
                    if (e2 < 0) continue;
                    pl[e2] += 1;
                    // weight (h + Delta) w^p
                    Rat hreal = Rat(h) + frac(deltaD, D);
                    mk[e2] += hreal * rat_pow(Rat(w), svp);
                }
                plain[i] = std::move(pl);
                marked[i] = std::move(mk);
            }
            // sum over which edge carries the weight: prefix/suffix products
            std::vector<std::vector<Rat>> prefix(E + 1), suffix(E + 1);
            prefix[0] = std::vector<Rat>(N + 1, Rat(0));
            prefix[0][0] = 1;
            for (size_t i = 0; i < E; ++i) {
                prefix[i + 1] = prefix[i];
                convolve_into(prefix[i + 1], plain[i]);
            }
            suffix[E] = std::vector<Rat>(N + 1, Rat(0));
            suffix[E][0] = 1;
            for (size_t i = E; i-- > 0;) {
                suffix[i] = suffix[i + 1];
                convolve_into(suffix[i], plain[i]);
            }
            std::vector<Rat> tot(N + 1, Rat(0));
            for (size_t i = 0; i < E; ++i) {
                std::vector<Rat> t = prefix[i];
                convolve_into(t, marked[i]);
                convolve_into(t, suffix[i + 1]);
                for (long x = 0; x <= N; ++x) tot[x] += t[x];
            }
            for (long x = 0; x <= N; ++x) {
                if (tot[x] == 0) continue;
                if (x % D != 0)
                    throw std::runtime_error("sv bracket: non-integer area exponent survived");
                acc[x / D] += val * tot[x];
            }
        });
}

QSeries bracket_impl(const std::vector<AuxLocal>& locals, const std::optional<AuxLocal>& f0,
                     long cutoff_d, long wmax, int svp,
                     const GlobalGraph* restrict_graph) {
    int n = int(locals.size());
    long svden = 2 * (n + 1);
    // empty values for isolated vertices
    std::vector<Rat> empty_val(n);
    for (int i = 0; i < n; ++i) empty_val[i] = locals[i].fn({});
    std::vector<Rat> acc(cutoff_d + 1, Rat(0));
    // subsets of present vertices; absent ones contribute their empty value
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        Rat dust = 1;
        std::vector<int> present;
        for (int i = 0; i < n; ++i) {
            if (mask & (1ul << i))
                present.push_back(i + 1);
            else
                dust *= empty_val[i];
        }
        if (dust == 0) continue;
        if (svp != INT_MIN && !f0 && present.empty()) continue;
        // relabel present vertices 1..k, keep their locals (and their eps labels!)
        // NOTE: for SV mode the eps label of vertex v must stay v (the slice
        // positions are fixed by the bracket's full vertex list), so we keep
        // original labels by embedding into a graph on n vertices where absent
        // vertices simply have no edges.
        std::vector<int> caps(n + 1, 0);
        for (int v = 1; v <= n; ++v) caps[v] = 0;
        for (int v : present) caps[v] = locals[v - 1].max_valence;
        int cap0 = f0 ? f0->max_valence : 0;
        auto graphs = enumerate_graphs_capped(n, bool(f0), caps, cap0);
        for (auto& g : graphs) {
            // all present vertices must have valence >= 1 (isolated handled by mask)
            bool ok = true;
            for (int v : present)
                if (g.valence(v) == 0) ok = false;
            for (int v = 1; v <= n && ok; ++v)
                if (caps[v] == 0 && g.valence(v) > 0) ok = false;
            if (!ok) continue;
            if (restrict_graph) {
                GlobalGraph c = g;
                c.canonicalize();
                GlobalGraph r = *restrict_graph;
                r.canonicalize();
                if (!(c.edges == r.edges && c.has_special == r.has_special)) continue;
            }
            long wm = wmax ? wmax : default_wmax(g, cutoff_d);
            std::vector<Rat> gacc(cutoff_d + 1, Rat(0));
            accumulate_graph_bracket(g, locals, f0, cutoff_d, wm, gacc, svp, svden);
            for (long dd = 0; dd <= cutoff_d; ++dd) acc[dd] += dust * gacc[dd];
        }
    }
    QSeries out(2 * cutoff_d);
    for (long dd = 0; dd <= cutoff_d; ++dd) out.set_half(2 * dd, acc[dd]);
    return out;
}

}  // namespace

QSeries aux_bracket(const std::vector<AuxLocal>& locals, const std::optional<AuxLocal>& f0,
                    long cutoff_d, long wmax) {
    return bracket_impl(locals, f0, cutoff_d, wmax, INT_MIN, nullptr);
}

QSeries aux_bracket_on_graph(const GlobalGraph& g, const std::vector<AuxLocal>& locals,
                             const std::optional<AuxLocal>& f0, long cutoff_d, long wmax) {
    return bracket_impl(locals, f0, cutoff_d, wmax, INT_MIN, &g);
}

QSeries sv_aux_bracket(const std::vector<AuxLocal>& locals, const std::optional<AuxLocal>& f0,
                       int p, long cutoff_d, long wmax) {
    return bracket_impl(locals, f0, cutoff_d, wmax, p, nullptr);
}

QSeries sv_aux_bracket_on_graph(const GlobalGraph& g, const std::vector<AuxLocal>& locals,
                                const std::optional<AuxLocal>& f0, int p, long cutoff_d,
                                long wmax) {
    return bracket_impl(locals, f0, cutoff_d, wmax, p, &g);
}

// ---------------- decomposition pipeline ----------------

std::vector<BracketSpec> decompose_wbracket(const ShiftedMonomial& target) {
    static std::mutex mu;
    static std::map<ShiftedMonomial, std::vector<BracketSpec>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(target);
        if (it != cache.end()) return it->second;
    }
    std::vector<BracketSpec> out;
    const Partition& P = target.first;
    const Partition& B = target.second;
    if (B.empty()) {
        std::vector<int> pl(P.begin(), P.end());
        std::sort(pl.rbegin(), pl.rend());
        out.push_back({Rat(1), pl, {}});
    } else {
        long wB = part_size(B);
        for (auto& term : pbar_monomial_in_g_span(B)) {
            ShiftedSymElement ge = expand_g(term.nu);
            for (auto& [mono, eg] : ge.terms) {
                const Partition& Ag = mono.first;
                const Partition& Bg = mono.second;
                Partition newP = P;
                newP.insert(newP.end(), term.h.begin(), term.h.end());
                newP.insert(newP.end(), Ag.begin(), Ag.end());
                std::sort(newP.rbegin(), newP.rend());
                Rat c = term.coeff * eg;
                if (Ag.empty()) {
                    std::vector<int> pl(newP.begin(), newP.end());
                    out.push_back({c, pl, Bg});
                } else {
                    if (part_size(Bg) >= wB)
                        throw std::runtime_error("decompose_wbracket: weight failed to decrease");
                    for (auto& sub : decompose_wbracket({newP, Bg}))
                        out.push_back({c * sub.coeff, sub.p_locals, sub.pbar_special});
                }
            }
        }
    }
    // merge duplicates
    std::map<std::pair<std::vector<int>, Partition>, Rat> merged;
    for (auto& s : out) merged[{s.p_locals, s.pbar_special}] += s.coeff;
    std::vector<BracketSpec> fin;
    for (auto& [k, c] : merged)
        if (c != 0) fin.push_back({c, k.first, k.second});
    std::lock_guard<std::mutex> lock(mu);
    cache[target] = fin;
    return fin;
}

QSeries evaluate_brackets(const std::vector<BracketSpec>& specs, long cutoff_d, long wmax) {
    QSeries out(2 * cutoff_d);
    for (auto& s : specs) {
        std::vector<AuxLocal> locals;
        for (int t : s.p_locals) locals.push_back(p_local(t));
        std::optional<AuxLocal> f0;
        if (!s.pbar_special.empty()) f0 = pbar_monomial_local(s.pbar_special);
        out = out + aux_bracket(locals, f0, cutoff_d, wmax) * s.coeff;
    }
    return out;
}

}  // namespace pillow
