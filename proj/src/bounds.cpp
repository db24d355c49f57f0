#include "energame/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "energame/tolerance.hpp"

namespace energame {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string set_str(std::uint32_t bits) { return to_string(VertexSet{bits}); }

void finish(BoundReport& r) { r.holds = r.slack >= -tol::core(); }

}  // namespace

std::string_view bound_name(BoundId id) {
  switch (id) {
    case BoundId::kSubgraphInequality: return "subgraph-inequality";
    case BoundId::kEdgeCut: return "edge-cut";
    case BoundId::kSchattenMonotonicity: return "schatten-monotonicity";
    case BoundId::kMcclelland: return "mcclelland";
    case BoundId::kTwoMBound: return "two-m-bound";
    case BoundId::kBipartiteBound: return "bipartite-bound";
    case BoundId::kBipartiteSplit: return "bipartite-split";
    case BoundId::kVertexHoelder: return "vertex-hoelder";
    case BoundId::kDegreeBound: return "degree-bound";
    case BoundId::kAdjacentPair: return "adjacent-pair";
  }
  return "unknown";
}

std::optional<BoundId> bound_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(BoundId::kAdjacentPair); ++i) {
    const auto id = static_cast<BoundId>(i);
    if (bound_name(id) == name) return id;
  }
  return std::nullopt;
}

std::optional<Bipartition> bipartition(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> color(n, -1);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    stack.assign(1, s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (std::uint64_t nb = g.neighbors_mask(v); nb != 0; nb &= nb - 1) {
        const int w = std::countr_zero(nb);
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          stack.push_back(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition parts;
  for (int v = 0; v < n; ++v) {
    (color[v] == 0 ? parts.left : parts.right).push_back(v);
  }
  return parts;
}

BoundReport check_subgraph_inequality(std::span<const CoalitionTable> tables,
                                      std::span<const EnergyProfile> profiles) {
  if (tables.size() != profiles.size()) {
    throw std::invalid_argument("subgraph inequality needs one profile per table");
  }
  BoundReport r{BoundId::kSubgraphInequality};
  std::uint32_t worst_mask = 0;
  for (std::size_t k = 0; k < tables.size(); ++k) {
    const CoalitionTable& t = tables[k];
    const EnergyProfile& prof = profiles[k];
    const std::uint32_t full = t.full_mask();
    std::vector<double> xsum(std::size_t{1} << t.n, 0.0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      xsum[mask] = xsum[mask & (mask - 1)] + prof.per_vertex[std::countr_zero(mask)];
    }
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      const double slack = xsum[mask] - t.values[mask];
      if (slack < r.slack) {
        r.slack = slack;
        r.p = t.p;
        worst_mask = mask;
      }
      if (mask == full) break;  // full can be 0
    }
  }
  if (r.slack != std::numeric_limits<double>::infinity()) {
    r.witness = "S=" + set_str(worst_mask);
  }
  finish(r);
  return r;
}

BoundReport check_edge_cut(const CoalitionTable& energy_table) {
  BoundReport r{BoundId::kEdgeCut};
  r.p = 1.0;
  if (energy_table.p != 1.0) {
    throw std::invalid_argument("edge-cut check needs the p = 1 table");
  }
  if (energy_table.n > kEdgeCutCap) {
    r.applicable = false;
    r.witness = "needs n <= " + std::to_string(kEdgeCutCap);
    return r;
  }
  const std::uint32_t full = energy_table.full_mask();
  const double total = energy_table.values[full];
  std::uint32_t worst = 0;
  // Every unordered proper bipartition once: the side containing vertex 0.
  // n <= 1 has none, leaving the check vacuous (slack +inf).
  for (std::uint32_t s = 1; s < full; s += 2) {
    const double slack = total - energy_table.values[s] -
                         energy_table.values[full & ~s];
    if (slack < r.slack) {
      r.slack = slack;
      worst = s;
    }
  }
  r.witness = std::isfinite(r.slack) ? "S=" + set_str(worst) : "no bipartitions";
  finish(r);
  return r;
}

BoundReport check_schatten_monotonicity(std::span<const double> ps,
                                        std::span<const double> totals) {
  BoundReport r{BoundId::kSchattenMonotonicity};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (!(ps[i] < ps[j])) continue;
      const double slack =
          std::pow(totals[i], 1.0 / ps[i]) - std::pow(totals[j], 1.0 / ps[j]);
      if (slack < r.slack) {
        r.slack = slack;
        r.p = ps[i];
        r.q = ps[j];
      }
    }
  }
  if (r.slack == std::numeric_limits<double>::infinity()) {
    r.applicable = false;
    r.witness = "needs two distinct exponents";
    return r;
  }
  r.witness = "p=" + num(r.p) + ";q=" + num(r.q);
  finish(r);
  return r;
}

BoundReport check_mcclelland(int n, std::span<const double> ps,
                             std::span<const double> totals) {
  BoundReport r{BoundId::kMcclelland};
  if (n < 1) {
    r.applicable = false;
    r.witness = "empty graph";
    return r;
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (!(ps[i] < ps[j])) continue;
      const double slack = std::pow(totals[j] / n, 1.0 / ps[j]) -
                           std::pow(totals[i] / n, 1.0 / ps[i]);
      if (slack < r.slack) {
        r.slack = slack;
        r.p = ps[i];
        r.q = ps[j];
      }
    }
  }
  if (r.slack == std::numeric_limits<double>::infinity()) {
    r.applicable = false;
    r.witness = "needs two distinct exponents";
    return r;
  }
  r.witness = "p=" + num(r.p) + ";q=" + num(r.q);
  finish(r);
  return r;
}

BoundReport check_two_m_bound(int m, std::span<const double> ps,
                              std::span<const double> totals) {
  BoundReport r{BoundId::kTwoMBound};
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const double bound = std::pow(2.0 * m, ps[k] / 2.0);
    const double slack =
        ps[k] <= 2.0 ? totals[k] - bound : bound - totals[k];
    if (slack < r.slack) {
      r.slack = slack;
      r.p = ps[k];
    }
  }
  r.witness = "p=" + num(r.p);
  finish(r);
  return r;
}

BoundReport check_bipartite_bound(int m, bool bipartite, std::span<const double> ps,
                                  std::span<const double> totals) {
  BoundReport r{BoundId::kBipartiteBound};
  if (!bipartite) {
    r.applicable = false;
    r.witness = "not bipartite";
    return r;
  }
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const double bound = 2.0 * std::pow(m, ps[k] / 2.0);
    const double slack =
        ps[k] <= 2.0 ? totals[k] - bound : bound - totals[k];
    if (slack < r.slack) {
      r.slack = slack;
      r.p = ps[k];
    }
  }
  r.witness = "p=" + num(r.p);
  finish(r);
  return r;
}

BoundReport check_bipartite_split(const std::optional<Bipartition>& parts,
                                  std::span<const EnergyProfile> profiles) {
  BoundReport r{BoundId::kBipartiteSplit};
  if (!parts) {
    r.applicable = false;
    r.witness = "not bipartite";
    return r;
  }
  for (const EnergyProfile& prof : profiles) {
    double left = 0.0;
    double right = 0.0;
    for (int v : parts->left) left += prof.per_vertex[v];
    for (int v : parts->right) right += prof.per_vertex[v];
    const double slack = -std::abs(left - right);
    if (slack < r.slack) {
      r.slack = slack;
      r.p = prof.p;
    }
  }
  VertexSet left;
  VertexSet right;
  for (int v : parts->left) left = left.with(v);
  for (int v : parts->right) right = right.with(v);
  r.witness =
      "p=" + num(r.p) + ";parts=" + to_string(left) + " " + to_string(right);
  finish(r);
  return r;
}

BoundReport check_vertex_hoelder(std::span<const EnergyProfile> profiles) {
  BoundReport r{BoundId::kVertexHoelder};
  int worst_vertex = -1;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t j = 0; j < profiles.size(); ++j) {
      const double pr = profiles[i].p;
      const double ps = profiles[j].p;
      if (!(pr < ps)) continue;
      const int n = static_cast<int>(profiles[i].per_vertex.size());
      for (int v = 0; v < n; ++v) {
        const double slack = std::pow(profiles[j].per_vertex[v], pr / ps) -
                             profiles[i].per_vertex[v];
        if (slack < r.slack) {
          r.slack = slack;
          r.p = pr;
          r.q = ps;
          worst_vertex = v;
        }
      }
    }
  }
  if (r.slack == std::numeric_limits<double>::infinity()) {
    r.applicable = false;
    r.witness = profiles.empty() || profiles[0].per_vertex.empty()
                    ? "empty graph"
                    : "needs two distinct exponents";
    return r;
  }
  r.witness = "v=" + std::to_string(worst_vertex);
  finish(r);
  return r;
}

BoundReport check_degree_bound(const Graph& g, const EnergyProfile& energy_profile) {
  BoundReport r{BoundId::kDegreeBound};
  r.p = 1.0;
  const int delta = g.max_degree();
  if (delta == 0) {
    r.applicable = false;
    r.witness = "no edges";
    return r;
  }
  int worst_vertex = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const double slack =
        energy_profile.per_vertex[v] - static_cast<double>(g.degree(v)) / delta;
    if (slack < r.slack) {
      r.slack = slack;
      worst_vertex = v;
    }
  }
  r.witness = "v=" + std::to_string(worst_vertex);
  finish(r);
  return r;
}

BoundReport check_adjacent_pair(const Graph& g, const EnergyProfile& energy_profile) {
  BoundReport r{BoundId::kAdjacentPair};
  r.p = 1.0;
  if (g.edge_count() == 0) {
    r.slack = std::numeric_limits<double>::infinity();
    r.witness = "vacuous: no edges";
    return r;  // holds vacuously
  }
  std::pair<int, int> worst{0, 0};
  for (auto [i, j] : g.edges()) {
    const double slack =
        energy_profile.per_vertex[i] + energy_profile.per_vertex[j] - 2.0;
    if (slack < r.slack) {
      r.slack = slack;
      worst = {i, j};
    }
  }
  r.witness = "edge={" + std::to_string(worst.first) + " " +
              std::to_string(worst.second) + "}";
  finish(r);
  return r;
}

std::vector<BoundReport> run_all_bounds(const Graph& g,
                                        std::span<const double> p_grid) {
  const int n = g.vertex_count();
  if (n > kBoundsCap) {
    throw std::invalid_argument("bounds suite is capped at " +
                                std::to_string(kBoundsCap) + " vertices, got " +
                                std::to_string(n));
  }
  if (p_grid.empty()) {
    throw std::invalid_argument("p grid must be nonempty");
  }
  for (double p : p_grid) {
    if (!(p >= 1.0)) {
      throw std::invalid_argument("p grid entries must satisfy p >= 1");
    }
  }

  // User grid first, then p = 1 appended when missing: the grid-driven
  // checks see exactly the requested exponents, the energy-specific checks
  // always get their p = 1 slice.
  std::vector<double> ps(p_grid.begin(), p_grid.end());
  const std::size_t user = ps.size();
  std::size_t idx1 = user;
  for (std::size_t k = 0; k < user; ++k) {
    if (ps[k] == 1.0) idx1 = k;
  }
  if (idx1 == user) ps.push_back(1.0);

  const std::vector<CoalitionTable> tables = build_tables(g, ps);
  std::vector<EnergyProfile> profiles;
  profiles.reserve(ps.size());
  if (g.edge_count() > 0) {
    const Spectrum spec = eig_symmetric(g);
    for (double p : ps) profiles.push_back(vertex_energies(spec, p));
  } else {
    for (double p : ps) profiles.push_back(vertex_energies(g, p));
  }
  std::vector<double> totals(ps.size());
  for (std::size_t k = 0; k < ps.size(); ++k) {
    totals[k] = tables[k].values[tables[k].full_mask()];
  }
  const std::optional<Bipartition> parts = bipartition(g);

  const std::span<const CoalitionTable> user_tables{tables.data(), user};
  const std::span<const EnergyProfile> user_profiles{profiles.data(), user};
  const std::span<const double> user_ps{ps.data(), user};
  const std::span<const double> user_totals{totals.data(), user};

  std::vector<BoundReport> out;
  out.push_back(check_subgraph_inequality(user_tables, user_profiles));
  out.push_back(check_edge_cut(tables[idx1]));
  out.push_back(check_schatten_monotonicity(user_ps, user_totals));
  out.push_back(check_mcclelland(n, user_ps, user_totals));
  out.push_back(check_two_m_bound(g.edge_count(), user_ps, user_totals));
  out.push_back(
      check_bipartite_bound(g.edge_count(), parts.has_value(), user_ps, user_totals));
  out.push_back(check_bipartite_split(parts, user_profiles));
  out.push_back(check_vertex_hoelder(user_profiles));
  out.push_back(check_degree_bound(g, profiles[idx1]));
  out.push_back(check_adjacent_pair(g, profiles[idx1]));
  return out;
}

PathOrderingReport check_path_ordering(int n) {
  if (n < 1 || n > 12) {
    throw std::invalid_argument("path ordering is pinned for 1 <= n <= 12");
  }
  PathOrderingReport out;
  const EnergyProfile prof = vertex_energies(path_graph(n), 1.0);
  out.energies = prof.per_vertex;
  const auto e = [&](int pos) { return prof.per_vertex[pos - 1]; };  // 1-based
  const int h = (n + 1) / 2;
  double min_sep = std::numeric_limits<double>::infinity();
  const auto below = [&](int lo, int hi) {
    min_sep = std::min(min_sep, e(hi) - e(lo));
  };
  for (int pos = 1; pos + 2 <= h; pos += 2) below(pos, pos + 2);      // odds ascend
  for (int pos = 2; pos + 2 <= h; pos += 2) below(pos + 2, pos);      // evens descend
  if (h >= 2) {
    const int top_odd = (h % 2 == 1) ? h : h - 1;   // largest odd position
    const int top_even = (h % 2 == 0) ? h : h - 1;  // largest even position
    below(top_odd, top_even);  // max odd < min even
  }
  if (min_sep == std::numeric_limits<double>::infinity()) {
    out.holds = true;  // n <= 2: nothing to compare
    out.min_separation = 0.0;
    return out;
  }
  out.min_separation = min_sep;
  out.holds = min_sep >= 10.0 * tol::core();
  return out;
}

}  // namespace energame
