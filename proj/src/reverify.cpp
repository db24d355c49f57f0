#include "energame/reverify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace energame::reverify {

namespace {

using Matrix = std::vector<std::vector<long double>>;

struct Eig {
  std::vector<long double> values;  // unsorted
  Matrix vectors;                   // column k pairs with values[k]
};

// Cyclic Jacobi with explicit two-sided rotations on the full matrix;
// quadratic convergence gets integer adjacency matrices to long-double
// machine precision in a handful of sweeps.
Eig jacobi(const Graph& g) {
  const int n = g.vertex_count();
  Matrix a(n, std::vector<long double>(n, 0.0L));
  for (auto [i, j] : g.edges()) {
    a[i][j] = 1.0L;
    a[j][i] = 1.0L;
  }
  Matrix v(n, std::vector<long double>(n, 0.0L));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0L;

  const auto off_norm = [&] {
    long double off = 0.0L;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    return off;
  };

  for (int sweep = 0; sweep < 64; ++sweep) {
    if (off_norm() <= 1e-36L) {
      Eig out;
      out.values.resize(n);
      for (int i = 0; i < n; ++i) out.values[i] = a[i][i];
      out.vectors = std::move(v);
      return out;
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) <= 1e-30L) continue;
        const long double theta = (a[q][q] - a[p][p]) / (2.0L * a[p][q]);
        const long double t =
            (theta >= 0 ? 1.0L : -1.0L) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0L));
        const long double c = 1.0L / std::sqrt(t * t + 1.0L);
        const long double s = t * c;
        // A <- J^T A J, V <- V J with J rotating coordinates (p, q).
        for (int r = 0; r < n; ++r) {  // columns
          const long double mp = a[r][p];
          const long double mq = a[r][q];
          a[r][p] = c * mp - s * mq;
          a[r][q] = s * mp + c * mq;
        }
        for (int r = 0; r < n; ++r) {  // rows
          const long double mp = a[p][r];
          const long double mq = a[q][r];
          a[p][r] = c * mp - s * mq;
          a[q][r] = s * mp + c * mq;
        }
        a[p][q] = 0.0L;
        a[q][p] = 0.0L;
        for (int r = 0; r < n; ++r) {
          const long double mp = v[r][p];
          const long double mq = v[r][q];
          v[r][p] = c * mp - s * mq;
          v[r][q] = s * mp + c * mq;
        }
      }
    }
  }
  throw std::runtime_error("jacobi eigensolver failed to converge");
}

}  // namespace

std::vector<long double> eigenvalues(const Graph& g) {
  Eig e = jacobi(g);
  std::sort(e.values.begin(), e.values.end(), std::greater<>());
  return e.values;
}

long double p_energy(const Graph& g, double p) {
  if (g.edge_count() == 0) return 0.0L;
  long double total = 0.0L;
  for (long double lambda : jacobi(g).values) {
    total += std::pow(std::abs(lambda), static_cast<long double>(p));
  }
  return total;
}

std::vector<long double> vertex_energies(const Graph& g, double p) {
  const int n = g.vertex_count();
  if (g.edge_count() == 0) return std::vector<long double>(n, 0.0L);
  const Eig e = jacobi(g);
  std::vector<long double> powered(n);
  for (int k = 0; k < n; ++k) {
    powered[k] = std::pow(std::abs(e.values[k]), static_cast<long double>(p));
  }
  std::vector<long double> out(n, 0.0L);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      out[i] += e.vectors[i][k] * e.vectors[i][k] * powered[k];
    }
  }
  return out;
}

std::vector<long double> coalition_values(const Graph& g, double p) {
  const int n = g.vertex_count();
  if (n > 20) throw std::invalid_argument("coalition re-verification capped at 20");
  std::vector<long double> values(std::size_t{1} << n, 0.0L);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    const InducedSubgraph ind = induced(g, VertexSet{mask});
    values[mask] = p_energy(ind.graph, p);
  }
  return values;
}

std::vector<long double> shapley(std::span<const long double> values, int n) {
  std::vector<long double> out(n, 0.0L);
  if (n == 0) return out;
  std::vector<long double> weight(n);
  long double binom = 1.0L;
  weight[0] = 1.0L / n;
  for (int k = 1; k < n; ++k) {
    binom = binom * (n - k) / k;
    weight[k] = 1.0L / (n * binom);
  }
  const std::uint32_t size = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < size; ++mask) {
    const long double w_s = values[mask];
    const long double wt = weight[std::popcount(mask)];
    for (int i = 0; i < n; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (mask & bit) continue;
      out[i] += wt * (values[mask | bit] - w_s);
    }
  }
  return out;
}

long double core_worst_slack(std::span<const long double> values,
                             std::span<const long double> x, int n) {
  const std::uint32_t full = VertexSet::full(n).bits;
  std::vector<long double> xsum(std::size_t{1} << n, 0.0L);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    xsum[mask] = xsum[mask & (mask - 1)] + x[std::countr_zero(mask)];
  }
  long double worst = 0.0L;
  bool first = true;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    const long double slack = xsum[mask] - values[mask];
    if (first || slack < worst) {
      worst = slack;
      first = false;
    }
  }
  return worst;
}

}  // namespace energame::reverify
