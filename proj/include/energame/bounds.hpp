#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "energame/game.hpp"
#include "energame/graph.hpp"
#include "energame/spectral.hpp"

namespace energame {

inline constexpr int kBoundsCap = 16;   // run_all_bounds ceiling
inline constexpr int kEdgeCutCap = 12;  // 2^(n-1) bipartition scan ceiling

// The inequality suite. Identifiers are stable strings (bound_name) shared
// by audit output, sweep CSVs and check selection.
enum class BoundId {
  kSubgraphInequality,   // sum of vertex energies over S >= E_p(I(S))
  kEdgeCut,              // E(I(S)) + E(I(V\S)) <= E(G) over bipartitions
  kSchattenMonotonicity, // E_p^{1/p} >= E_q^{1/q} for p < q
  kMcclelland,           // (E_p/n)^{1/p} <= (E_q/n)^{1/q} for p < q
  kTwoMBound,            // (2m)^{p/2} <= E_p for p <= 2, >= for p > 2
  kBipartiteBound,       // 2 m^{p/2} <= E_p for p <= 2, >= for p > 2 (bipartite only)
  kBipartiteSplit,       // part sums of vertex p-energies are equal (bipartite only)
  kVertexHoelder,        // E_r(v) <= E_s(v)^{r/s} for r < s
  kDegreeBound,          // E(v) >= deg(v)/max_degree
  kAdjacentPair,         // E(v) + E(w) >= 2 on every edge
};

std::string_view bound_name(BoundId id);
std::optional<BoundId> bound_from_name(std::string_view name);

// Worst instance of one inequality on one graph. slack is signed so that
// holds <=> slack >= -tol_core; equality checks use slack = -|lhs - rhs|.
// applicable = false means the check was skipped (reason in witness), e.g.
// bipartite checks on a non-bipartite graph.
struct BoundReport {
  BoundId id{};
  bool applicable = true;
  bool holds = true;
  double slack = std::numeric_limits<double>::infinity();
  double p = 0.0;  // exponent(s) at the worst instance; 0 when not p-specific
  double q = 0.0;
  std::string witness;
};

struct Bipartition {
  std::vector<int> left;
  std::vector<int> right;
};

// Proper 2-coloring by BFS per component; nullopt when an odd cycle exists.
std::optional<Bipartition> bipartition(const Graph& g);

// Scan-level checks. Coalition tables and vertex profiles arrive
// precomputed so corpus sweeps never repeat eigenwork; each check reports
// its worst instance across the grid it is given. tables[k], profiles[k]
// and totals[k] all belong to exponent ps[k]; totals are trace(|A|^p) via
// the eigenvalue path.
BoundReport check_subgraph_inequality(std::span<const CoalitionTable> tables,
                                      std::span<const EnergyProfile> profiles);
BoundReport check_edge_cut(const CoalitionTable& energy_table);
BoundReport check_schatten_monotonicity(std::span<const double> ps,
                                        std::span<const double> totals);
BoundReport check_mcclelland(int n, std::span<const double> ps,
                             std::span<const double> totals);
BoundReport check_two_m_bound(int m, std::span<const double> ps,
                              std::span<const double> totals);
BoundReport check_bipartite_bound(int m, bool bipartite, std::span<const double> ps,
                                  std::span<const double> totals);
BoundReport check_bipartite_split(const std::optional<Bipartition>& parts,
                                  std::span<const EnergyProfile> profiles);
BoundReport check_vertex_hoelder(std::span<const EnergyProfile> profiles);
BoundReport check_degree_bound(const Graph& g, const EnergyProfile& energy_profile);
BoundReport check_adjacent_pair(const Graph& g, const EnergyProfile& energy_profile);

// Builds the shared spectra/tables for the grid (appending p = 1 when
// missing, for the energy-specific checks) and runs the whole suite,
// returning one report per BoundId in enum order. Requires n <= 16 and
// every grid entry >= 1.
std::vector<BoundReport> run_all_bounds(const Graph& g, std::span<const double> p_grid);

// Vertex-energy ordering along path(n), n <= 12, checked on the first
// ceil(n/2) positions (mirror symmetry covers the rest): with 1-based
// positions, energies at odd positions strictly ascend, energies at even
// positions strictly descend, and every odd-position energy sits strictly
// below every even-position one (so v2 carries the maximum). Strictness
// demands a 10 * tol_core separation.
struct PathOrderingReport {
  bool holds = false;
  double min_separation = 0.0;
  std::vector<double> energies;
};

PathOrderingReport check_path_ordering(int n);

}  // namespace energame
