#pragma once

#include <span>
#include <vector>

#include "energame/graph.hpp"

// Independent high-precision recomputation path behind the violation
// re-verification protocol: a long-double cyclic Jacobi eigensolver with no
// Eigen involvement, plus just enough energy/game arithmetic on top of it.
// A violation flagged by the double-precision pipeline at tol_core only
// counts as a counterexample if it survives recomputation here at
// tol::kReverify.
namespace energame::reverify {

// Eigenvalues of the adjacency matrix, descending.
std::vector<long double> eigenvalues(const Graph& g);

// trace(|A|^p).
long double p_energy(const Graph& g, double p);

// Diagonal of |A|^p (per-vertex p-energies), unclamped.
std::vector<long double> vertex_energies(const Graph& g, double p);

// values[mask] = trace(|A(I(S))|^p) for every coalition mask; n <= 20.
std::vector<long double> coalition_values(const Graph& g, double p);

// Exact Shapley via the subset formula over a long-double table.
std::vector<long double> shapley(std::span<const long double> values, int n);

// min over nonfull masks of x(S) - w(S).
long double core_worst_slack(std::span<const long double> values,
                             std::span<const long double> x, int n);

}  // namespace energame::reverify
