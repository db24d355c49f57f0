#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "energame/graph.hpp"

namespace energame {

// Eigendecomposition of the adjacency matrix: A = U diag(lambda) U^T with
// eigenvalues descending and U orthonormal. Residual, orthonormality and
// zero-trace are verified against tol::eig(n) on construction.
struct Spectrum {
  Eigen::VectorXd eigenvalues;  // descending
  Eigen::MatrixXd basis;        // column i pairs with eigenvalues[i]

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

Eigen::MatrixXd adjacency_matrix(const Graph& g);
Spectrum eig_symmetric(const Graph& g);

// U diag(|lambda|^p) U^T; symmetric PSD. p >= 0.
Eigen::MatrixXd matrix_abs_pow(const Spectrum& spec, double p);

// Sum of |lambda|^p over the given eigenvalues, accumulated in index order.
// Every p-energy in the library funnels through this one loop so that equal
// spectra give bitwise-equal energies.
double sum_abs_pow(std::span<const double> eigenvalues, double p);

// Graph energy: sum of |eigenvalue|.
double graph_energy(const Graph& g);

// Per-vertex p-energies: diagonal of |A|^p, clamped at zero, plus their sum.
struct EnergyProfile {
  double p = 1.0;
  std::vector<double> per_vertex;
  double total = 0.0;
  // Set when some raw diagonal entry fell below -tol::kSum before clamping;
  // |A|^p is PSD so that would indicate real numerical trouble.
  bool roundoff_flag = false;
};

// p >= 1 (the game layer needs |.|^p convex).
EnergyProfile vertex_energies(const Graph& g, double p);
EnergyProfile vertex_energies(const Spectrum& spec, double p);

// trace(|A|^p) = sum |lambda_i|^p, p >= 1.
double p_energy(const Graph& g, double p);
double p_energy(const Spectrum& spec, double p);

}  // namespace energame
