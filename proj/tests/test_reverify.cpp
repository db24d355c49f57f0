#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "energame/game.hpp"
#include "energame/graph.hpp"
#include "energame/reverify.hpp"
#include "energame/spectral.hpp"

using namespace energame;

namespace {

Graph random_graph(int n, std::uint64_t seed, double density = 0.5) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(density);
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (flip(rng)) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST_CASE("jacobi eigenvalues match the double pipeline") {
  const Graph graphs[] = {path_graph(7), cycle_graph(5), complete_graph(6),
                          star_graph(9), random_graph(10, 71)};
  for (const auto& g : graphs) {
    const auto ld = reverify::eigenvalues(g);
    const auto spec = eig_symmetric(g);
    REQUIRE(ld.size() == spec.eigenvalues.size());
    for (std::size_t i = 0; i < ld.size(); ++i) {
      CHECK(std::abs(static_cast<double>(ld[i]) - spec.eigenvalues[i]) <
            1e-12);
    }
    // Descending order.
    for (std::size_t i = 1; i < ld.size(); ++i) CHECK(ld[i - 1] >= ld[i]);
  }
}

TEST_CASE("jacobi reproduces closed-form spectra") {
  // Star on 9 vertices: +/- sqrt(8) and seven zeros.
  const auto s = reverify::eigenvalues(star_graph(9));
  CHECK(std::abs(static_cast<double>(s.front()) - std::sqrt(8.0)) < 1e-14);
  CHECK(std::abs(static_cast<double>(s.back()) + std::sqrt(8.0)) < 1e-14);
  for (std::size_t i = 1; i + 1 < s.size(); ++i)
    CHECK(std::abs(static_cast<double>(s[i])) < 1e-14);

  // K6: one eigenvalue 5, five eigenvalues -1.
  const auto k = reverify::eigenvalues(complete_graph(6));
  CHECK(std::abs(static_cast<double>(k[0]) - 5.0) < 1e-13);
  for (std::size_t i = 1; i < k.size(); ++i)
    CHECK(std::abs(static_cast<double>(k[i]) + 1.0) < 1e-13);
}

TEST_CASE("long-double energies agree with the double pipeline") {
  const Graph graphs[] = {path_graph(3), cycle_graph(4), star_graph(6),
                          random_graph(9, 5), random_graph(10, 6, 0.3)};
  const double ps[] = {1.0, 1.5, 2.0, 3.0};
  for (const auto& g : graphs) {
    const Spectrum spec = eig_symmetric(g);
    for (double p : ps) {
      const long double total = reverify::p_energy(g, p);
      CHECK(std::abs(static_cast<double>(total) - p_energy(spec, p)) < 1e-10);

      const auto per = reverify::vertex_energies(g, p);
      const auto dbl = vertex_energies(spec, p);
      REQUIRE(per.size() == dbl.per_vertex.size());
      for (std::size_t i = 0; i < per.size(); ++i)
        CHECK(std::abs(static_cast<double>(per[i]) - dbl.per_vertex[i]) <
              1e-10);
    }
  }
}

TEST_CASE("coalition_values matches build_table on every mask") {
  const Graph graphs[] = {path_graph(4), random_graph(6, 17)};
  for (const auto& g : graphs) {
    for (double p : {1.0, 2.0, 2.5}) {
      const auto ld = reverify::coalition_values(g, p);
      const CoalitionTable t = build_table(g, p);
      REQUIRE(ld.size() == t.values.size());
      for (std::size_t mask = 0; mask < ld.size(); ++mask)
        CHECK(std::abs(static_cast<double>(ld[mask]) - t.values[mask]) <
              1e-10);
    }
  }
}

TEST_CASE("long-double shapley hits the path goldens") {
  const Graph p3 = path_graph(3);
  const auto vals = reverify::coalition_values(p3, 1.0);
  const auto sh = reverify::shapley(vals, 3);
  const double leaf = (2.0 * std::sqrt(2.0) - 1.0) / 3.0;
  const double mid = (2.0 + 2.0 * std::sqrt(2.0)) / 3.0;
  CHECK(std::abs(static_cast<double>(sh[0]) - leaf) < 1e-14);
  CHECK(std::abs(static_cast<double>(sh[1]) - mid) < 1e-14);
  CHECK(std::abs(static_cast<double>(sh[2]) - leaf) < 1e-14);

  // And against the double-precision exact solver on a bigger graph.
  const Graph g = random_graph(7, 23);
  for (double p : {1.0, 1.5}) {
    const auto lv = reverify::coalition_values(g, p);
    const auto ls = reverify::shapley(lv, 7);
    const auto ds = shapley_exact(build_table(g, p));
    for (int i = 0; i < 7; ++i)
      CHECK(std::abs(static_cast<double>(ls[i]) - ds[i]) < 1e-10);
  }
}

TEST_CASE("core_worst_slack agrees with check_core") {
  const Graph graphs[] = {path_graph(3), cycle_graph(5), random_graph(6, 99)};
  for (const auto& g : graphs) {
    for (double p : {1.0, 2.0}) {
      const CoalitionTable t = build_table(g, p);
      const auto lv = reverify::coalition_values(g, p);

      // Vertex-energy allocation.
      const auto prof = vertex_energies(g, p);
      std::vector<long double> x(prof.per_vertex.begin(),
                                 prof.per_vertex.end());
      const long double slack =
          reverify::core_worst_slack(lv, x, g.vertex_count());
      const CoreCertificate cert = check_core(t, PayoffVector{prof.per_vertex});
      CHECK(std::abs(static_cast<double>(slack) - cert.worst_slack) < 1e-10);
    }
  }
}
