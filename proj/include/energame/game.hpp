#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "energame/graph.hpp"
#include "energame/spectral.hpp"

namespace energame {

// Size caps for the game layer. build_table is the hard gate (2^n
// eigendecompositions); the audits have their own scan-cost gates.
inline constexpr int kTableCap = 20;
inline constexpr int kTableWarnThreshold = 16;
inline constexpr int kSuperadditivityCap = 16;  // 3^n disjoint pairs
inline constexpr int kConvexityCap = 13;        // 4^n ordered pairs
inline constexpr int kExhaustivePermutationCap = 8;

// Characteristic function of the p-energy game on a graph:
// values[mask] = trace(|A(I(S))|^p) for the coalition S encoded by mask.
struct CoalitionTable {
  int n = 0;
  double p = 1.0;
  std::vector<double> values;  // size 2^n

  double value(VertexSet s) const { return values[s.bits]; }
  std::uint32_t full_mask() const { return VertexSet::full(n).bits; }
};

CoalitionTable build_table(const Graph& g, double p);
// Shares the per-coalition eigendecompositions across exponents.
std::vector<CoalitionTable> build_tables(const Graph& g, std::span<const double> ps);

struct PayoffVector {
  std::vector<double> x;

  int size() const { return static_cast<int>(x.size()); }
  double operator[](int i) const { return x[i]; }
  // x(S) = sum over members of S.
  double sum(VertexSet s) const;
  double total() const;
};

// Exact Shapley value by the subset formula with weights
// |S|!(n-|S|-1)!/n! = 1/(n*binom(n-1,|S|)).
PayoffVector shapley_exact(const CoalitionTable& t);

// Permutation-sampling estimate. Fisher-Yates shuffles driven by
// std::mt19937_64 with an explicit bounded-draw loop, so identical
// (table, samples, seed) give identical output on every platform;
// accumulation order is sample order. samples = 0 switches to exhaustive
// enumeration of all n! permutations (n <= 8), which matches
// shapley_exact to machine precision.
struct ShapleyEstimate {
  PayoffVector value;
  std::vector<double> std_error;  // per player; zeros in exhaustive mode
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
};

ShapleyEstimate shapley_monte_carlo(const CoalitionTable& t, std::uint64_t samples,
                                    std::uint64_t seed);

// Exhaustive core scan: worst_slack = min over proper coalitions of
// x(S) - w(S); membership needs worst_slack >= -tol and |x(N) - w(N)| <= tol.
struct CoreCertificate {
  bool is_member = false;
  double worst_slack = 0.0;
  std::uint32_t worst_coalition = 0;
  double efficiency_gap = 0.0;
};

CoreCertificate check_core(const CoalitionTable& t, const PayoffVector& x);

struct ImputationCheck {
  bool is_imputation = false;
  bool individually_rational = false;
  bool efficient = false;
  int worst_player = -1;
  double worst_gap = 0.0;  // min over players of x_i - w({i})
  double efficiency_gap = 0.0;
};

ImputationCheck check_imputation(const CoalitionTable& t, const PayoffVector& x);

// Pairwise audits. When a violation is found, (lhs_set, rhs_set) is the
// first offending pair in the deterministic ascending scan and `violation`
// the positive amount by which the inequality fails.
struct PairAudit {
  bool holds = true;
  std::uint32_t lhs_set = 0;
  std::uint32_t rhs_set = 0;
  double violation = 0.0;
};

// w(S u T) >= w(S) + w(T) for disjoint S, T (3^n pairs).
PairAudit audit_superadditivity(const CoalitionTable& t);
// w(S u T) + w(S n T) >= w(S) + w(T) for all pairs (4^n ordered pairs).
PairAudit audit_convexity(const CoalitionTable& t);

// Full-scan twin of audit_superadditivity for sweep reporting: the minimum
// of w(S u T) - w(S) - w(T) over disjoint pairs, with the attaining pair.
struct WorstPair {
  double slack = std::numeric_limits<double>::infinity();
  std::uint32_t lhs_set = 0;
  std::uint32_t rhs_set = 0;
};

WorstPair superadditivity_worst_slack(const CoalitionTable& t);

// Marginal contribution of i to S against i's vertex energy inside I(S):
// w(S) - w(S \ {i}) >= E_p at i in the induced subgraph.
struct MarginalCheck {
  bool holds = false;
  double marginal = 0.0;
  double vertex_energy = 0.0;
};

MarginalCheck marginal_contribution_check(const Graph& g, double p, VertexSet s, int i);

// Null players are exactly the isolated vertices; symmetry classes group
// vertices with identical open neighborhoods.
struct PlayerStructure {
  std::vector<bool> is_null;
  std::vector<int> symmetry_class;          // class index per vertex
  std::vector<std::vector<int>> classes;    // ordered by smallest member
};

PlayerStructure classify_players(const Graph& g);

// One-stop solution of the p-energy game on a graph: Shapley (exact up to
// exact_cap players, Monte Carlo beyond), the vertex-energy payoff, core
// certificates for both, and the pair audits where their scans fit.
struct GameSolution {
  double p = 1.0;
  PayoffVector shapley;
  bool shapley_is_exact = true;
  std::vector<double> shapley_stderr;  // MC mode only
  std::uint64_t mc_samples = 0;
  std::uint64_t mc_seed = 0;
  PayoffVector vertex_energy_payoff;
  CoreCertificate core_shapley;
  CoreCertificate core_vertex_energy;
  std::optional<PairAudit> superadditivity;  // nullopt above its scan cap
  std::optional<PairAudit> convexity;
  PlayerStructure players;
};

struct SolveOptions {
  int exact_shapley_cap = 12;
  std::uint64_t mc_samples = 100000;
  std::uint64_t mc_seed = 1;
};

GameSolution solve_game(const Graph& g, double p, const SolveOptions& opts = {});

}  // namespace energame
