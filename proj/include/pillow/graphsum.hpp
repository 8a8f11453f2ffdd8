#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pillow/localpoly.hpp"
#include "pillow/partition.hpp"
#include "pillow/qseries.hpp"
#include "pillow/shifted.hpp"

namespace pillow {

// Labeled multigraph: vertices are 0 (special, if present) and 1..n.
// Edges are unordered pairs (a,b), a <= b, kept sorted for canonical form.
struct GlobalGraph {
    bool has_special = false;
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    void canonicalize();
    // product over parallel classes of mult! times 2 per loop
    Int aut_order() const;
    int valence(int v) const;
    bool has_isolated_vertex() const;
    bool operator<(const GlobalGraph& o) const;
    bool operator==(const GlobalGraph& o) const {
        return has_special == o.has_special && n == o.n && edges == o.edges;
    }
};

// all labeled multigraphs with no isolated vertex, per-vertex valence caps
// (cap0 for the special vertex); edge count bounded by the caps
std::vector<GlobalGraph> enumerate_graphs(int n, bool has_special, int max_edges);
std::vector<GlobalGraph> enumerate_graphs_capped(int n, bool has_special,
                                                 const std::vector<int>& caps, int cap0);

// Per-edge orientation state of the two half-edges.
enum class EdgeOrient : unsigned char {
    InIn,     // non-loop: incoming at both ends (E-)
    InOut,    // non-loop: in at lower vertex, out at upper (E+, flow down)
    OutIn,    // non-loop: out at lower vertex, in at upper (E+, flow up)
    OutOut,   // non-loop: outgoing at both ends (E-)
    LoopCons,    // loop, consistently oriented (E+)
    LoopBothIn,  // loop, both halves in (E-)
    LoopBothOut, // loop, both halves out (E-)
    LoopZero,    // loop at the special vertex (both out, forced)
};

bool orient_is_consistent(EdgeOrient o);
// minimal normalized height: 1 for special/consistent loops, else 0 iff
// the half-edge at the upper vertex is incoming
int orient_min_height(const GlobalGraph& g, size_t edge_idx, EdgeOrient o);

struct Orientation {
    std::vector<EdgeOrient> state;  // per edge
};

// all admissible orientations of (graph, E+ marking): all half-edges at 0
// outgoing; consistent exactly on E+ edges (edges at 0 are unconstrained by
// the marking and must not be listed in eplus)
std::vector<Orientation> enumerate_orientations(const GlobalGraph& g,
                                                const std::vector<int>& eplus);

using ParityCondition = std::map<size_t, int>;  // edge index (adjacent to 0) -> 0/1

// S(Gamma, E+, m, pc): direct summation over admissible orientations, widths
// and normalized heights, with weight prod w^{m_e+1} q^{h w}.
QSeries graph_sum_S(const GlobalGraph& g, const std::vector<int>& eplus,
                    const std::vector<int>& m, const ParityCondition& pc, long cutoff_d,
                    long wmax = 0);

// closed-form factor of the loops at 0 and the consistent (E+) loops:
//   S_m = G_{m+2}(q) - G_{m+2}(0), S_{m,even} = 2^{m+1}(G_{m+2}(q^2) - G_{m+2}(0)),
//   S_{m,odd} = S_m - S_{m,even}
QSeries sm_series(int m, long cutoff_d);
QSeries sm_even_series(int m, long cutoff_d);
QSeries sm_odd_series(int m, long cutoff_d);
// product of those factors for the loops of g removed in the reduced graph
QSeries loop_factor(const GlobalGraph& g, const std::vector<int>& eplus,
                    const std::vector<int>& m, const ParityCondition& pc, long cutoff_d);
GlobalGraph reduced_graph(const GlobalGraph& g, const std::vector<int>& eplus,
                          std::vector<int>* kept_edges = nullptr);

// Independent engine: constant-term extraction from the product of propagator
// expansions (P, P_even/P_odd, P(z_i -/+ z_j)), for reduced graphs.
// sv_edge, if set, marks the edge whose factor carries the extra h/w weight
// (the D_q P / L substitution).
QSeries zeta_constant_term(const GlobalGraph& g, const std::vector<int>& eplus,
                           const std::vector<int>& m, const ParityCondition& pc, long cutoff_d,
                           long wmax = 0, std::optional<size_t> sv_edge = std::nullopt);

// S^SV_{e0}: the graph sum with the extra factor h_{e0}/w_{e0} (normalized heights).
QSeries sv_graph_sum(const GlobalGraph& g, const std::vector<int>& eplus,
                     const std::vector<int>& m, const ParityCondition& pc, size_t e0,
                     long cutoff_d, long wmax = 0);

// Local vertex data for auxiliary brackets.
struct AuxLocal {
    std::string id;      // cache key; must determine fn
    LocalFn fn;          // evaluated inside A'/A2' character sums
    int max_valence = 0; // vanishing cap for the valence of the vertex
};

AuxLocal p_local(int ell);                 // completed cycle p_ell
AuxLocal f_local(const Partition& mu);     // f_mu
AuxLocal pbar_monomial_local(const Partition& mubar);  // prod pbar_k
AuxLocal shifted_local(const std::string& id, const ShiftedSymElement& e, int max_valence);

// [F_1,...,F_n; F_0]: sum over labeled graphs (1/|Aut|), admissible
// orientations, widths and normalized heights of
//   prod w_e q^{h_e w_e} A2'(w_0, F_0) prod_v A'(w_v^-, w_v^+, F_v).
// Vertices may be isolated; an isolated vertex contributes F_v(empty).
// If f0 is absent there is no special vertex.
QSeries aux_bracket(const std::vector<AuxLocal>& locals, const std::optional<AuxLocal>& f0,
                    long cutoff_d, long wmax = 0);
// restriction to one underlying graph shape (isolated-vertex dust for absent
// vertices included), used by the per-graph table tests
QSeries aux_bracket_on_graph(const GlobalGraph& g, const std::vector<AuxLocal>& locals,
                             const std::optional<AuxLocal>& f0, long cutoff_d, long wmax = 0);

// Siegel-Veech weighted bracket: heights in the regular height space
// (eps_v = v/(2(n+1))), weight sum_e h_e^real w_e^p.
QSeries sv_aux_bracket(const std::vector<AuxLocal>& locals, const std::optional<AuxLocal>& f0,
                       int p, long cutoff_d, long wmax = 0);
QSeries sv_aux_bracket_on_graph(const GlobalGraph& g, const std::vector<AuxLocal>& locals,
                                const std::optional<AuxLocal>& f0, int p, long cutoff_d,
                                long wmax = 0);

// Theorem 4.1 decomposition: target monomial prod p_l prod pbar_k as a finite
// combination of brackets with single completed cycles at the vertices and a
// pure pbar monomial at the special vertex.
struct BracketSpec {
    Rat coeff;
    std::vector<int> p_locals;  // sorted descending
    Partition pbar_special;     // empty = no special vertex
};
std::vector<BracketSpec> decompose_wbracket(const ShiftedMonomial& target);

// evaluate a decomposition by summing its aux brackets
QSeries evaluate_brackets(const std::vector<BracketSpec>& specs, long cutoff_d, long wmax = 0);

}  // namespace pillow
