#include "energame/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "energame/tolerance.hpp"

namespace energame {

namespace {

void require_player_count(int n, int cap, const char* what) {
  if (n > cap) {
    throw std::invalid_argument(std::string(what) + " is capped at " +
                                std::to_string(cap) + " players, got " +
                                std::to_string(n));
  }
}

// Unbiased draw in [0, k) rejecting the top partial block of 2^64. Written
// out (instead of std::uniform_int_distribution, whose mapping is
// implementation-defined) so a seed reproduces bit-for-bit everywhere.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t k) {
  const std::uint64_t min_accept = (0 - k) % k;  // 2^64 mod k
  for (;;) {
    const std::uint64_t v = rng();
    if (v >= min_accept) return v % k;
  }
}

}  // namespace

std::vector<CoalitionTable> build_tables(const Graph& g, std::span<const double> ps) {
  const int n = g.vertex_count();
  require_player_count(n, kTableCap, "coalition table (2^n eigendecompositions)");
  for (double p : ps) {
    if (!(p >= 1.0)) {
      throw std::invalid_argument("energy exponent must satisfy p >= 1");
    }
  }
  const std::uint32_t size = std::uint32_t{1} << n;
  std::vector<CoalitionTable> tables(ps.size());
  for (std::size_t k = 0; k < ps.size(); ++k) {
    tables[k].n = n;
    tables[k].p = ps[k];
    tables[k].values.assign(size, 0.0);
  }
  for (std::uint32_t mask = 0; mask < size; ++mask) {
    const InducedSubgraph ind = induced(g, VertexSet{mask});
    // Same code path as p_energy(graph, p): edgeless coalitions are exact
    // zeros, everything else goes through one eigendecomposition shared
    // across the exponents.
    if (ind.graph.edge_count() == 0) continue;
    const Spectrum spec = eig_symmetric(ind.graph);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      tables[k].values[mask] = p_energy(spec, ps[k]);
    }
  }
  return tables;
}

CoalitionTable build_table(const Graph& g, double p) {
  const double ps[] = {p};
  auto tables = build_tables(g, ps);
  return std::move(tables.front());
}

double PayoffVector::sum(VertexSet s) const {
  double acc = 0.0;
  for (std::uint32_t bits = s.bits; bits != 0; bits &= bits - 1) {
    acc += x[std::countr_zero(bits)];
  }
  return acc;
}

double PayoffVector::total() const {
  return std::accumulate(x.begin(), x.end(), 0.0);
}

PayoffVector shapley_exact(const CoalitionTable& t) {
  const int n = t.n;
  require_player_count(n, kTableCap, "exact Shapley");
  PayoffVector out;
  out.x.assign(n, 0.0);
  if (n == 0) return out;
  // weight[k] = k!(n-k-1)!/n! = 1/(n*binom(n-1,k)); binom built by the
  // multiply-then-divide recurrence, exact in double at n <= 20.
  std::vector<double> weight(n);
  double binom = 1.0;
  weight[0] = 1.0 / n;
  for (int k = 1; k < n; ++k) {
    binom = binom * (n - k) / k;
    weight[k] = 1.0 / (n * binom);
  }
  const std::uint32_t size = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < size; ++mask) {
    const double w_s = t.values[mask];
    const double wt = weight[std::popcount(mask)];
    for (int i = 0; i < n; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (mask & bit) continue;
      out.x[i] += wt * (t.values[mask | bit] - w_s);
    }
  }
  return out;
}

ShapleyEstimate shapley_monte_carlo(const CoalitionTable& t, std::uint64_t samples,
                                    std::uint64_t seed) {
  const int n = t.n;
  ShapleyEstimate out;
  out.seed = seed;
  out.value.x.assign(n, 0.0);
  out.std_error.assign(n, 0.0);

  if (samples == 0) {
    // Sentinel: average over all n! permutations, which equals the exact
    // Shapley value.
    require_player_count(n, kExhaustivePermutationCap,
                         "exhaustive permutation mode (samples = 0)");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t count = 0;
    do {
      std::uint32_t mask = 0;
      for (int v : perm) {
        const std::uint32_t next = mask | (std::uint32_t{1} << v);
        out.value.x[v] += t.values[next] - t.values[mask];
        mask = next;
      }
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (double& xi : out.value.x) xi /= static_cast<double>(count);
    out.samples = count;
    out.exhaustive = true;
    return out;
  }

  std::mt19937_64 rng(seed);
  std::vector<int> perm(n);
  std::vector<double> sum(n, 0.0);
  std::vector<double> sumsq(n, 0.0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    // Fresh identity + full Fisher-Yates per sample.
    std::iota(perm.begin(), perm.end(), 0);
    for (int j = n - 1; j > 0; --j) {
      const int r = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(j) + 1));
      std::swap(perm[j], perm[r]);
    }
    std::uint32_t mask = 0;
    for (int v : perm) {
      const std::uint32_t next = mask | (std::uint32_t{1} << v);
      const double marginal = t.values[next] - t.values[mask];
      sum[v] += marginal;
      sumsq[v] += marginal * marginal;
      mask = next;
    }
  }
  const double ns = static_cast<double>(samples);
  for (int i = 0; i < n; ++i) {
    const double mean = sum[i] / ns;
    out.value.x[i] = mean;
    if (samples > 1) {
      const double var =
          std::max(0.0, (sumsq[i] / ns - mean * mean) * ns / (ns - 1.0));
      out.std_error[i] = std::sqrt(var / ns);
    }
  }
  out.samples = samples;
  return out;
}

CoreCertificate check_core(const CoalitionTable& t, const PayoffVector& x) {
  if (x.size() != t.n) {
    throw std::invalid_argument("payoff vector length does not match player count");
  }
  const std::uint32_t full = t.full_mask();
  std::vector<double> xsum(std::size_t{1} << t.n, 0.0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    xsum[mask] = xsum[mask & (mask - 1)] + x[std::countr_zero(mask)];
  }
  CoreCertificate cert;
  cert.worst_slack = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    const double slack = xsum[mask] - t.values[mask];
    if (slack < cert.worst_slack) {
      cert.worst_slack = slack;
      cert.worst_coalition = mask;
    }
  }
  if (full == 0) cert.worst_slack = 0.0;
  cert.efficiency_gap = std::abs(xsum[full] - t.values[full]);
  cert.is_member =
      cert.worst_slack >= -tol::core() && cert.efficiency_gap <= tol::core();
  return cert;
}

ImputationCheck check_imputation(const CoalitionTable& t, const PayoffVector& x) {
  if (x.size() != t.n) {
    throw std::invalid_argument("payoff vector length does not match player count");
  }
  ImputationCheck out;
  out.worst_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < t.n; ++i) {
    const double gap = x[i] - t.values[std::uint32_t{1} << i];
    if (gap < out.worst_gap) {
      out.worst_gap = gap;
      out.worst_player = i;
    }
  }
  if (t.n == 0) out.worst_gap = 0.0;
  out.individually_rational = out.worst_gap >= -tol::core();
  out.efficiency_gap = std::abs(x.total() - t.values[t.full_mask()]);
  out.efficient = out.efficiency_gap <= tol::core();
  out.is_imputation = out.individually_rational && out.efficient;
  return out;
}

PairAudit audit_superadditivity(const CoalitionTable& t) {
  require_player_count(t.n, kSuperadditivityCap, "superadditivity audit (3^n pairs)");
  const std::uint32_t full = t.full_mask();
  const double tol = tol::core();
  for (std::uint32_t s = 0; s <= full; ++s) {
    const std::uint32_t comp = full & ~s;
    // Submasks of the complement in ascending order.
    std::uint32_t u = 0;
    for (;;) {
      const double shortfall = t.values[s] + t.values[u] - t.values[s | u];
      if (shortfall > tol) return {false, s, u, shortfall};
      if (u == comp) break;
      u = (u - comp) & comp;
    }
  }
  return {};
}

WorstPair superadditivity_worst_slack(const CoalitionTable& t) {
  require_player_count(t.n, kSuperadditivityCap, "superadditivity scan (3^n pairs)");
  const std::uint32_t full = t.full_mask();
  WorstPair out;
  for (std::uint32_t s = 0; s <= full; ++s) {
    const std::uint32_t comp = full & ~s;
    std::uint32_t u = 0;
    for (;;) {
      const double slack = t.values[s | u] - t.values[s] - t.values[u];
      if (slack < out.slack) {
        out.slack = slack;
        out.lhs_set = s;
        out.rhs_set = u;
      }
      if (u == comp) break;
      u = (u - comp) & comp;
    }
  }
  return out;
}

PairAudit audit_convexity(const CoalitionTable& t) {
  require_player_count(t.n, kConvexityCap, "convexity audit (4^n pairs)");
  const std::uint32_t full = t.full_mask();
  const double tol = tol::core();
  for (std::uint32_t s = 0; s <= full; ++s) {
    // The condition is symmetric in (S, T); scanning u >= s halves the work.
    for (std::uint32_t u = s; u <= full; ++u) {
      const double shortfall =
          t.values[s] + t.values[u] - t.values[s | u] - t.values[s & u];
      if (shortfall > tol) return {false, s, u, shortfall};
    }
  }
  return {};
}

MarginalCheck marginal_contribution_check(const Graph& g, double p, VertexSet s,
                                          int i) {
  if (i < 0 || i >= g.vertex_count() || !s.contains(i)) {
    throw std::invalid_argument("marginal contribution check needs i in S");
  }
  const InducedSubgraph with_i = induced(g, s);
  const InducedSubgraph without_i = induced(g, s.without(i));
  const EnergyProfile profile = vertex_energies(with_i.graph, p);
  // i's label inside the induced subgraph is its rank among the members of s.
  const int pos = std::popcount(s.bits & ((std::uint32_t{1} << i) - 1));
  MarginalCheck out;
  out.marginal = p_energy(with_i.graph, p) - p_energy(without_i.graph, p);
  out.vertex_energy = profile.per_vertex[pos];
  out.holds = out.marginal >= out.vertex_energy - tol::core();
  return out;
}

PlayerStructure classify_players(const Graph& g) {
  const int n = g.vertex_count();
  PlayerStructure out;
  out.is_null.resize(n);
  out.symmetry_class.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    out.is_null[i] = g.degree(i) == 0;
    if (out.symmetry_class[i] >= 0) continue;
    const int cls = static_cast<int>(out.classes.size());
    out.classes.push_back({i});
    out.symmetry_class[i] = cls;
    for (int j = i + 1; j < n; ++j) {
      if (out.symmetry_class[j] < 0 &&
          g.neighbors_mask(j) == g.neighbors_mask(i)) {
        out.symmetry_class[j] = cls;
        out.classes[cls].push_back(j);
      }
    }
  }
  return out;
}

GameSolution solve_game(const Graph& g, double p, const SolveOptions& opts) {
  GameSolution out;
  out.p = p;
  const CoalitionTable table = build_table(g, p);
  const int n = table.n;
  if (n <= opts.exact_shapley_cap) {
    out.shapley = shapley_exact(table);
    out.shapley_is_exact = true;
  } else {
    ShapleyEstimate est = shapley_monte_carlo(table, opts.mc_samples, opts.mc_seed);
    out.shapley = std::move(est.value);
    out.shapley_stderr = std::move(est.std_error);
    out.mc_samples = est.samples;
    out.mc_seed = est.seed;
    out.shapley_is_exact = false;
  }
  out.vertex_energy_payoff.x = vertex_energies(g, p).per_vertex;
  out.core_shapley = check_core(table, out.shapley);
  out.core_vertex_energy = check_core(table, out.vertex_energy_payoff);
  if (n <= kSuperadditivityCap) out.superadditivity = audit_superadditivity(table);
  if (n <= kConvexityCap) out.convexity = audit_convexity(table);
  out.players = classify_players(g);
  return out;
}

}  // namespace energame
