#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "energame/game.hpp"
#include "energame/graph.hpp"
#include "energame/spectral.hpp"

using namespace energame;

namespace {

Graph random_graph(std::mt19937_64& rng, int n, double edge_prob = 0.5) {
  Graph g(n);
  std::bernoulli_distribution coin(edge_prob);
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (coin(rng)) g.add_edge(i, j);
    }
  }
  return g;
}

// Independent Shapley oracle: average marginal contribution over all n!
// orderings, straight from the definition.
std::vector<double> shapley_by_permutations(const CoalitionTable& t) {
  const int n = t.n;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sum(n, 0.0);
  std::uint64_t perms = 0;
  do {
    std::uint32_t mask = 0;
    for (int i : order) {
      const double before = t.values[mask];
      mask |= 1u << i;
      sum[i] += t.values[mask] - before;
    }
    ++perms;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& v : sum) v /= static_cast<double>(perms);
  return sum;
}

constexpr double kSqrt2 = 1.4142135623730951;

}  // namespace

TEST_CASE("P3 coalition table") {
  const CoalitionTable t = build_table(path_graph(3), 1.0);
  CHECK(t.n == 3);
  CHECK(t.values[0b000] == 0.0);
  CHECK(t.values[0b001] == 0.0);
  CHECK(t.values[0b010] == 0.0);
  CHECK(t.values[0b100] == 0.0);
  CHECK(t.values[0b101] == 0.0);  // endpoints only: no edge
  CHECK(t.values[0b011] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.values[0b110] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.values[0b111] == doctest::Approx(2.0 * kSqrt2).epsilon(1e-12));
  CHECK(t.value(VertexSet::full(3)) == t.values[0b111]);
}

TEST_CASE("build_tables shares eigenwork but matches build_table") {
  const Graph g = cycle_graph(5);
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0};
  const auto tables = build_tables(g, ps);
  REQUIRE(tables.size() == 4);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const CoalitionTable single = build_table(g, ps[k]);
    CHECK(tables[k].p == ps[k]);
    for (std::size_t mask = 0; mask < single.values.size(); ++mask) {
      CHECK(tables[k].values[mask] == doctest::Approx(single.values[mask]).epsilon(1e-14));
    }
  }
  CHECK_THROWS(build_table(Graph(21), 1.0));  // past the table cap
}

TEST_CASE("exact Shapley matches the permutation oracle") {
  const CoalitionTable p3 = build_table(path_graph(3), 1.0);
  const PayoffVector phi = shapley_exact(p3);
  const double outer = (2.0 * kSqrt2 - 1.0) / 3.0;
  const double center = (2.0 + 2.0 * kSqrt2) / 3.0;
  CHECK(phi[0] == doctest::Approx(outer).epsilon(1e-12));
  CHECK(phi[1] == doctest::Approx(center).epsilon(1e-12));
  CHECK(phi[2] == doctest::Approx(outer).epsilon(1e-12));
  CHECK(phi.total() == doctest::Approx(p3.values.back()).epsilon(1e-12));

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 3);  // 4..6
    const CoalitionTable t = build_table(random_graph(rng, n), 1.5);
    const PayoffVector a = shapley_exact(t);
    const std::vector<double> b = shapley_by_permutations(t);
    for (int i = 0; i < n; ++i) {
      CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("p = 2 Shapley is the degree vector") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_graph(rng, 1 + static_cast<int>(rng() % 9));
    const PayoffVector phi = shapley_exact(build_table(g, 2.0));
    const auto degs = g.degrees();
    for (int i = 0; i < g.vertex_count(); ++i) {
      CHECK(phi[i] == doctest::Approx(degs[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("core certificates") {
  const CoalitionTable t = build_table(path_graph(3), 1.0);
  const PayoffVector vertex{vertex_energies(path_graph(3), 1.0).per_vertex};
  const CoreCertificate cv = check_core(t, vertex);
  CHECK(cv.is_member);
  CHECK(cv.worst_slack >= -1e-12);
  CHECK(cv.efficiency_gap < 1e-12);

  const CoreCertificate cs = check_core(t, shapley_exact(t));
  CHECK(cs.is_member);

  // Everything on vertex 0: coalition {1,2} (mask 6) objects by 2.
  const PayoffVector lopsided{{2.0 * kSqrt2, 0.0, 0.0}};
  const CoreCertificate bad = check_core(t, lopsided);
  CHECK(!bad.is_member);
  CHECK(bad.worst_slack == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(bad.worst_coalition == 0b110u);

  // Efficiency violations are caught independently of coalition slack.
  const PayoffVector excessive{{2.0, 2.0, 2.0}};
  CHECK(!check_core(t, excessive).is_member);
  CHECK(check_core(t, excessive).efficiency_gap ==
        doctest::Approx(6.0 - 2.0 * kSqrt2).epsilon(1e-12));
}

TEST_CASE("imputation check") {
  const CoalitionTable t = build_table(path_graph(3), 1.0);
  const ImputationCheck ok = check_imputation(t, shapley_exact(t));
  CHECK(ok.is_imputation);
  CHECK(ok.individually_rational);
  CHECK(ok.efficient);

  const PayoffVector negative{{-0.1, 2.0 * kSqrt2 - 0.1, 0.2}};
  const ImputationCheck bad = check_imputation(t, negative);
  CHECK(!bad.is_imputation);
  CHECK(!bad.individually_rational);
  CHECK(bad.worst_player == 0);
  CHECK(bad.worst_gap == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("superadditivity holds for energy games, audit catches fakes") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const Graph g = random_graph(rng, 2 + static_cast<int>(rng() % 6));
    for (double p : {1.0, 1.5, 3.0}) {
      CHECK(audit_superadditivity(build_table(g, p)).holds);
    }
  }

  // Crafted non-superadditive table: w({0}) + w({1}) > w({0,1}).
  CoalitionTable fake;
  fake.n = 2;
  fake.p = 1.0;
  fake.values = {0.0, 1.0, 1.0, 1.0};
  const PairAudit audit = audit_superadditivity(fake);
  CHECK(!audit.holds);
  CHECK(audit.lhs_set == 0b01u);
  CHECK(audit.rhs_set == 0b10u);
  CHECK(audit.violation == doctest::Approx(1.0));

  const WorstPair worst = superadditivity_worst_slack(fake);
  CHECK(worst.slack == doctest::Approx(-1.0));
  CHECK((worst.lhs_set | worst.rhs_set) == 0b11u);
}

TEST_CASE("convexity: P3 counterexample, p = 2 convex") {
  const PairAudit p3 = audit_convexity(build_table(path_graph(3), 1.0));
  CHECK(!p3.holds);
  CHECK(p3.lhs_set == 0b011u);  // {0,1}
  CHECK(p3.rhs_set == 0b110u);  // {1,2}
  CHECK(p3.violation == doctest::Approx(4.0 - 2.0 * kSqrt2).epsilon(1e-12));

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    const Graph g = random_graph(rng, 2 + static_cast<int>(rng() % 6));
    CHECK(audit_convexity(build_table(g, 2.0)).holds);
  }
}

TEST_CASE("Monte Carlo Shapley") {
  const CoalitionTable t = build_table(path_graph(3), 1.0);
  const PayoffVector exact = shapley_exact(t);

  const ShapleyEstimate est = shapley_monte_carlo(t, 100000, 1);
  CHECK(!est.exhaustive);
  CHECK(est.samples == 100000);
  CHECK(est.seed == 1);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(est.value[i] - exact[i]) <= 3.0 * est.std_error[i]);
    CHECK(est.std_error[i] > 0.0);
  }

  // Determinism: identical (table, samples, seed) reproduce bitwise.
  const ShapleyEstimate again = shapley_monte_carlo(t, 100000, 1);
  for (int i = 0; i < 3; ++i) {
    CHECK(est.value[i] == again.value[i]);
    CHECK(est.std_error[i] == again.std_error[i]);
  }
  const ShapleyEstimate other = shapley_monte_carlo(t, 100000, 2);
  CHECK(other.value[0] != est.value[0]);  // different seed, different stream

  // samples = 0: exhaustive permutation mode matches exact.
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const CoalitionTable rt = build_table(random_graph(rng, n), 1.0);
    const ShapleyEstimate ex = shapley_monte_carlo(rt, 0, 99);
    CHECK(ex.exhaustive);
    const PayoffVector want = shapley_exact(rt);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(ex.value[i] - want[i]) < 1e-12);
      CHECK(ex.std_error[i] == 0.0);
    }
  }
  CHECK_THROWS(shapley_monte_carlo(build_table(random_graph(rng, 9), 1.0), 0, 1));
}

TEST_CASE("marginal contribution dominates vertex energy") {
  const Graph p3 = path_graph(3);
  const VertexSet full = VertexSet::full(3);
  const MarginalCheck mc = marginal_contribution_check(p3, 1.0, full, 1);
  CHECK(mc.holds);
  CHECK(mc.marginal == doctest::Approx(2.0 * kSqrt2).epsilon(1e-12));
  CHECK(mc.vertex_energy == doctest::Approx(kSqrt2).epsilon(1e-12));
  CHECK_THROWS(marginal_contribution_check(p3, 1.0, VertexSet{0b011}, 2));

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = random_graph(rng, 3 + static_cast<int>(rng() % 4));
    const std::uint32_t full_mask = VertexSet::full(g.vertex_count()).bits;
    const std::uint32_t mask = 1u + static_cast<std::uint32_t>(rng() % full_mask);
    const VertexSet s{mask};
    for (int i : s.vertices()) {
      CHECK(marginal_contribution_check(g, 1.5, s, i).holds);
    }
  }
}

TEST_CASE("player classification") {
  const PlayerStructure star = classify_players(star_graph(5));
  CHECK(star.classes.size() == 2);
  CHECK(star.classes[0] == std::vector<int>{0});
  CHECK(star.classes[1] == std::vector<int>{1, 2, 3, 4});
  CHECK(!star.is_null[0]);

  const Graph with_isolated = disjoint_union(path_graph(2), Graph(1));
  const PlayerStructure ps = classify_players(with_isolated);
  CHECK(ps.is_null == std::vector<bool>{false, false, true});
  CHECK(vertex_energies(with_isolated, 1.0).per_vertex[2] ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("solve_game bundles the layer coherently") {
  const GameSolution sol = solve_game(path_graph(3), 1.0);
  CHECK(sol.shapley_is_exact);
  CHECK(sol.core_shapley.is_member);
  CHECK(sol.core_vertex_energy.is_member);
  REQUIRE(sol.superadditivity.has_value());
  CHECK(sol.superadditivity->holds);
  REQUIRE(sol.convexity.has_value());
  CHECK(!sol.convexity->holds);
  CHECK(sol.players.classes.size() == 2);

  SolveOptions opts;
  opts.exact_shapley_cap = 2;  // force the Monte Carlo path
  opts.mc_samples = 20000;
  opts.mc_seed = 5;
  const GameSolution mc = solve_game(path_graph(3), 1.0, opts);
  CHECK(!mc.shapley_is_exact);
  CHECK(mc.mc_samples == 20000);
  CHECK(mc.mc_seed == 5);
  REQUIRE(mc.shapley_stderr.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(mc.shapley[i] - sol.shapley[i]) <= 4.0 * mc.shapley_stderr[i]);
  }
}
