#include "energame/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "energame/graph6.hpp"
#include "energame/tolerance.hpp"

namespace energame {

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  const int n = g.vertex_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j] : g.edges()) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Spectrum eig_symmetric(const Graph& g) {
  const int n = g.vertex_count();
  const Eigen::MatrixXd a = adjacency_matrix(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on graph " + encode_graph6(g));
  }
  Spectrum spec;
  spec.eigenvalues = solver.eigenvalues().reverse();
  spec.basis = solver.eigenvectors().rowwise().reverse();

  if (n > 0) {
    const double tol = tol::eig(n);
    const double scale = std::max(1.0, a.cwiseAbs().rowwise().sum().maxCoeff());
    const double residual =
        (a * spec.basis - spec.basis * spec.eigenvalues.asDiagonal())
            .cwiseAbs()
            .maxCoeff();
    const double ortho =
        (spec.basis.transpose() * spec.basis - Eigen::MatrixXd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    const double trace = spec.eigenvalues.sum();
    if (residual > tol * scale || ortho > tol ||
        std::abs(trace) > tol * n) {
      throw std::runtime_error("eigendecomposition out of tolerance on graph " +
                               encode_graph6(g));
    }
  }
  return spec;
}

Eigen::MatrixXd matrix_abs_pow(const Spectrum& spec, double p) {
  if (p < 0) throw std::invalid_argument("matrix_abs_pow requires p >= 0");
  const int n = spec.size();
  Eigen::VectorXd powered(n);
  for (int i = 0; i < n; ++i) {
    powered[i] = std::pow(std::abs(spec.eigenvalues[i]), p);
  }
  return spec.basis * powered.asDiagonal() * spec.basis.transpose();
}

double sum_abs_pow(std::span<const double> eigenvalues, double p) {
  double total = 0.0;
  for (double lambda : eigenvalues) {
    total += std::pow(std::abs(lambda), p);
  }
  return total;
}

double graph_energy(const Graph& g) {
  if (g.edge_count() == 0) return 0.0;
  const Spectrum spec = eig_symmetric(g);
  return sum_abs_pow({spec.eigenvalues.data(), spec.eigenvalues.data() + spec.size()},
                     1.0);
}

namespace {

void require_game_exponent(double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("energy exponent must satisfy p >= 1");
  }
}

}  // namespace

EnergyProfile vertex_energies(const Spectrum& spec, double p) {
  require_game_exponent(p);
  const int n = spec.size();
  EnergyProfile out;
  out.p = p;
  out.per_vertex.resize(n);
  const Eigen::MatrixXd m = matrix_abs_pow(spec, p);
  for (int i = 0; i < n; ++i) {
    double e = m(i, i);
    if (e < 0) {
      if (e < -tol::kSum) out.roundoff_flag = true;
      e = 0.0;
    }
    out.per_vertex[i] = e;
    out.total += e;
  }
  return out;
}

EnergyProfile vertex_energies(const Graph& g, double p) {
  require_game_exponent(p);
  if (g.edge_count() == 0) {
    EnergyProfile out;
    out.p = p;
    out.per_vertex.assign(g.vertex_count(), 0.0);
    return out;
  }
  return vertex_energies(eig_symmetric(g), p);
}

double p_energy(const Spectrum& spec, double p) {
  require_game_exponent(p);
  return sum_abs_pow({spec.eigenvalues.data(), spec.eigenvalues.data() + spec.size()},
                     p);
}

double p_energy(const Graph& g, double p) {
  require_game_exponent(p);
  if (g.edge_count() == 0) return 0.0;
  return p_energy(eig_symmetric(g), p);
}

}  // namespace energame
