#include "energame/sweep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>

#include "energame/bounds.hpp"
#include "energame/game.hpp"
#include "energame/graph6.hpp"
#include "energame/reverify.hpp"
#include "energame/spectral.hpp"
#include "energame/tolerance.hpp"

namespace energame {

namespace {

constexpr std::uint64_t kBlock = 4096;  // flush/interrupt granularity
constexpr double kAttainEps = 1e-9;     // extremal-value matching width

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string_view graph_class_name(GraphClass c) {
  return c == GraphClass::kGraphs ? "graphs" : "trees";
}

std::optional<GraphClass> graph_class_from_name(std::string_view name) {
  if (name == "graphs") return GraphClass::kGraphs;
  if (name == "trees") return GraphClass::kTrees;
  return std::nullopt;
}

std::string_view sweep_check_name(SweepCheck c) {
  switch (c) {
    case SweepCheck::kSuperadditivity: return "superadditivity";
    case SweepCheck::kVertexCore: return "vertex-core";
    case SweepCheck::kShapleyCore: return "shapley-core";
    case SweepCheck::kTreeExtremal: return "tree-extremal";
    default: return bound_name(static_cast<BoundId>(c));
  }
}

std::optional<SweepCheck> sweep_check_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(SweepCheck::kTreeExtremal); ++i) {
    const auto c = static_cast<SweepCheck>(i);
    if (sweep_check_name(c) == name) return c;
  }
  return std::nullopt;
}

bool sweep_check_is_evidence(SweepCheck c) {
  return c == SweepCheck::kShapleyCore || c == SweepCheck::kTreeExtremal;
}

std::vector<SweepCheck> parse_sweep_checks(std::string_view list, GraphClass cls) {
  std::vector<bool> picked(static_cast<int>(SweepCheck::kTreeExtremal) + 1, false);
  const auto pick = [&](SweepCheck c) { picked[static_cast<int>(c)] = true; };
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string_view item = list.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    if (item == "guaranteed" || item == "all") {
      for (int i = 0; i <= static_cast<int>(SweepCheck::kVertexCore); ++i) {
        pick(static_cast<SweepCheck>(i));
      }
      if (item == "all") {
        pick(SweepCheck::kShapleyCore);
        if (cls == GraphClass::kTrees) pick(SweepCheck::kTreeExtremal);
      }
      continue;
    }
    if (item == "evidence") {
      pick(SweepCheck::kShapleyCore);
      if (cls == GraphClass::kTrees) pick(SweepCheck::kTreeExtremal);
      continue;
    }
    const auto c = sweep_check_from_name(item);
    if (!c) {
      throw std::invalid_argument("unknown check '" + std::string(item) + "'");
    }
    pick(*c);
  }
  if (picked[static_cast<int>(SweepCheck::kTreeExtremal)] &&
      cls != GraphClass::kTrees) {
    throw std::invalid_argument("tree-extremal needs --class trees");
  }
  std::vector<SweepCheck> out;
  for (int i = 0; i < static_cast<int>(picked.size()); ++i) {
    if (picked[i]) out.push_back(static_cast<SweepCheck>(i));
  }
  if (out.empty()) throw std::invalid_argument("no checks selected");
  return out;
}

namespace {

// -------- per-graph evaluation --------

struct Outcome {
  bool applicable = true;
  double slack = std::numeric_limits<double>::infinity();
  double p = 0.0;
  double q = 0.0;
  std::string witness;
  // Filled only when slack < -tol: the long-double recomputation.
  double reverified = 0.0;
  bool violated = false;
};

struct GraphRecord {
  std::uint64_t index = 0;
  std::string g6;
  int n = 0;
  int m = 0;
  std::vector<Outcome> outcomes;  // aligned with config.checks
  std::vector<double> totals;     // user-grid energies (tree aggregation)
};

struct Ctx {
  GraphClass cls{};
  std::vector<SweepCheck> checks;
  std::vector<double> ps;  // user grid, then 1.0 appended when required
  std::size_t user = 0;
  std::size_t idx1 = 0;  // position of p = 1 in ps (when p1_needed)
  bool p1_needed = false;
  bool need_tables = false;
  bool need_profiles = false;
  bool need_parts = false;
  bool need_totals = false;
  bool tree_extremal = false;
  double tol = 0.0;
};

struct LevelCtx {
  const Ctx* ctx = nullptr;
  int n = 0;
  std::vector<double> star_ref;  // per user p; tree-extremal references
  std::vector<double> path_ref;
};

bool needs(const Ctx& ctx, SweepCheck c) {
  return std::find(ctx.checks.begin(), ctx.checks.end(), c) != ctx.checks.end();
}

Ctx make_ctx(const SweepConfig& config, double tol) {
  Ctx ctx;
  ctx.cls = config.cls;
  ctx.checks = config.checks;
  ctx.tol = tol;
  ctx.ps.assign(config.p_grid.begin(), config.p_grid.end());
  ctx.user = ctx.ps.size();
  ctx.tree_extremal = needs(ctx, SweepCheck::kTreeExtremal);

  const auto any_of = [&](std::initializer_list<SweepCheck> cs) {
    for (SweepCheck c : cs) {
      if (needs(ctx, c)) return true;
    }
    return false;
  };
  ctx.need_tables = any_of({SweepCheck::kSubgraphInequality, SweepCheck::kEdgeCut,
                            SweepCheck::kSuperadditivity, SweepCheck::kVertexCore,
                            SweepCheck::kShapleyCore});
  ctx.need_profiles =
      any_of({SweepCheck::kSubgraphInequality, SweepCheck::kVertexCore,
              SweepCheck::kVertexHoelder, SweepCheck::kBipartiteSplit});
  ctx.need_parts = any_of({SweepCheck::kBipartiteBound, SweepCheck::kBipartiteSplit});
  ctx.need_totals =
      any_of({SweepCheck::kSchattenMonotonicity, SweepCheck::kMcclelland,
              SweepCheck::kTwoMBound, SweepCheck::kBipartiteBound,
              SweepCheck::kTreeExtremal});
  ctx.p1_needed = any_of({SweepCheck::kEdgeCut, SweepCheck::kDegreeBound,
                          SweepCheck::kAdjacentPair});
  if (ctx.p1_needed) {
    ctx.idx1 = ctx.user;
    for (std::size_t k = 0; k < ctx.user; ++k) {
      if (ctx.ps[k] == 1.0) ctx.idx1 = k;
    }
    if (ctx.idx1 == ctx.user) ctx.ps.push_back(1.0);
  }
  return ctx;
}

Outcome from_bound(const BoundReport& r) {
  Outcome o;
  o.applicable = r.applicable;
  o.slack = r.slack;
  o.p = r.p;
  o.q = r.q;
  o.witness = r.witness;
  return o;
}

Outcome core_outcome(const Ctx& ctx, const std::vector<CoalitionTable>& tables,
                     const std::function<PayoffVector(std::size_t)>& payoff_at) {
  Outcome o;
  for (std::size_t k = 0; k < ctx.user; ++k) {
    const PayoffVector x = payoff_at(k);
    const CoreCertificate cert = check_core(tables[k], x);
    const bool coalition_worse = cert.worst_slack < -cert.efficiency_gap;
    const double slack = std::min(cert.worst_slack, -cert.efficiency_gap);
    if (slack < o.slack) {
      o.slack = slack;
      o.p = ctx.ps[k];
      o.witness = "p=" + num(o.p) + ";" +
                  (coalition_worse
                       ? "S=" + to_string(VertexSet{cert.worst_coalition})
                       : std::string("efficiency"));
    }
  }
  return o;
}

Outcome tree_extremal_outcome(const LevelCtx& lvl, std::span<const double> totals) {
  const Ctx& ctx = *lvl.ctx;
  Outcome o;
  for (std::size_t k = 0; k < ctx.user; ++k) {
    const double p = ctx.ps[k];
    const double e = totals[k];
    const double star = lvl.star_ref[k];
    const double path = lvl.path_ref[k];
    double slack;
    const char* side;
    if (p < 2.0) {
      slack = std::min(e - star, path - e);
      side = e - star < path - e ? "below-star" : "above-path";
    } else if (p > 2.0) {
      slack = std::min(e - path, star - e);
      side = e - path < star - e ? "below-path" : "above-star";
    } else {
      slack = std::min(-std::abs(e - star), -std::abs(e - path));
      side = "equality";
    }
    if (slack < o.slack) {
      o.slack = slack;
      o.p = p;
      o.witness = "p=" + num(p) + ";" + side;
    }
  }
  return o;
}

// -------- long-double re-verification mirrors --------

using LD = long double;

LD ld_pow(LD base, LD e) { return std::pow(base, e); }

std::vector<LD> ld_totals(const Graph& g, std::span<const double> ps) {
  std::vector<LD> out;
  out.reserve(ps.size());
  for (double p : ps) out.push_back(reverify::p_energy(g, p));
  return out;
}

std::vector<std::vector<LD>> ld_profiles(const Graph& g, std::span<const double> ps) {
  std::vector<std::vector<LD>> out;
  out.reserve(ps.size());
  for (double p : ps) out.push_back(reverify::vertex_energies(g, p));
  return out;
}

LD ld_min(LD a, LD b) { return a < b ? a : b; }

LD ld_subgraph_slack(const Graph& g, double p) {
  const std::vector<LD> values = reverify::coalition_values(g, p);
  const std::vector<LD> prof = reverify::vertex_energies(g, p);
  const int n = g.vertex_count();
  const std::uint32_t full = VertexSet::full(n).bits;
  std::vector<LD> xsum(values.size(), 0.0L);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    xsum[mask] = xsum[mask & (mask - 1)] + prof[std::countr_zero(mask)];
  }
  LD worst = 0.0L;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    worst = ld_min(worst, xsum[mask] - values[mask]);
    if (mask == full) break;
  }
  return worst;
}

LD ld_core_slack(const Graph& g, double p, bool use_shapley) {
  const std::vector<LD> values = reverify::coalition_values(g, p);
  const int n = g.vertex_count();
  std::vector<LD> x;
  if (use_shapley) {
    x = reverify::shapley(values, n);
  } else {
    x = reverify::vertex_energies(g, p);
  }
  LD total = 0.0L;
  for (LD xi : x) total += xi;
  const LD eff = std::abs(total - values.back());
  return ld_min(reverify::core_worst_slack(values, x, n), -eff);
}

LD ld_superadditivity_slack(const Graph& g, double p) {
  const std::vector<LD> values = reverify::coalition_values(g, p);
  const std::uint32_t full = VertexSet::full(g.vertex_count()).bits;
  LD worst = 0.0L;
  for (std::uint32_t s = 0; s <= full; ++s) {
    const std::uint32_t comp = full & ~s;
    std::uint32_t u = 0;
    for (;;) {
      worst = ld_min(worst, values[s | u] - values[s] - values[u]);
      if (u == comp) break;
      u = (u - comp) & comp;
    }
    if (s == full) break;
  }
  return worst;
}

LD ld_edge_cut_slack(const Graph& g) {
  const std::vector<LD> values = reverify::coalition_values(g, 1.0);
  const std::uint32_t full = VertexSet::full(g.vertex_count()).bits;
  LD worst = std::numeric_limits<LD>::infinity();
  for (std::uint32_t s = 1; s < full; s += 2) {
    worst = ld_min(worst, values[full] - values[s] - values[full & ~s]);
  }
  return worst;
}

// Recomputes the whole check for the graph across the full user grid; the
// double-pipeline violation survives only if this also lands below
// -tol::kReverify.
double reverified_slack(SweepCheck c, const Graph& g, const LevelCtx& lvl) {
  const Ctx& ctx = *lvl.ctx;
  const std::span<const double> ps{ctx.ps.data(), ctx.user};
  const int n = g.vertex_count();
  const int m = g.edge_count();
  LD worst = std::numeric_limits<LD>::infinity();

  switch (c) {
    case SweepCheck::kSubgraphInequality:
      for (double p : ps) worst = ld_min(worst, ld_subgraph_slack(g, p));
      break;
    case SweepCheck::kEdgeCut:
      worst = ld_edge_cut_slack(g);
      break;
    case SweepCheck::kSchattenMonotonicity: {
      const auto t = ld_totals(g, ps);
      for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = 0; j < ps.size(); ++j) {
          if (!(ps[i] < ps[j])) continue;
          worst = ld_min(worst, ld_pow(t[i], 1.0L / ps[i]) -
                                    ld_pow(t[j], 1.0L / ps[j]));
        }
      }
      break;
    }
    case SweepCheck::kMcclelland: {
      const auto t = ld_totals(g, ps);
      for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = 0; j < ps.size(); ++j) {
          if (!(ps[i] < ps[j])) continue;
          worst = ld_min(worst, ld_pow(t[j] / n, 1.0L / ps[j]) -
                                    ld_pow(t[i] / n, 1.0L / ps[i]));
        }
      }
      break;
    }
    case SweepCheck::kTwoMBound: {
      const auto t = ld_totals(g, ps);
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const LD bound = ld_pow(2.0L * m, ps[k] / 2.0L);
        worst = ld_min(worst, ps[k] <= 2.0 ? t[k] - bound : bound - t[k]);
      }
      break;
    }
    case SweepCheck::kBipartiteBound: {
      const auto t = ld_totals(g, ps);
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const LD bound = 2.0L * ld_pow(static_cast<LD>(m), ps[k] / 2.0L);
        worst = ld_min(worst, ps[k] <= 2.0 ? t[k] - bound : bound - t[k]);
      }
      break;
    }
    case SweepCheck::kBipartiteSplit: {
      const auto parts = bipartition(g);
      if (!parts) break;
      const auto profs = ld_profiles(g, ps);
      for (const auto& prof : profs) {
        LD left = 0.0L;
        LD right = 0.0L;
        for (int v : parts->left) left += prof[v];
        for (int v : parts->right) right += prof[v];
        worst = ld_min(worst, -std::abs(left - right));
      }
      break;
    }
    case SweepCheck::kVertexHoelder: {
      const auto profs = ld_profiles(g, ps);
      for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = 0; j < ps.size(); ++j) {
          if (!(ps[i] < ps[j])) continue;
          for (int v = 0; v < n; ++v) {
            worst = ld_min(worst, ld_pow(profs[j][v],
                                         static_cast<LD>(ps[i]) / ps[j]) -
                                      profs[i][v]);
          }
        }
      }
      break;
    }
    case SweepCheck::kDegreeBound: {
      const int delta = g.max_degree();
      if (delta == 0) break;
      const auto prof = reverify::vertex_energies(g, 1.0);
      for (int v = 0; v < n; ++v) {
        worst = ld_min(worst, prof[v] - static_cast<LD>(g.degree(v)) / delta);
      }
      break;
    }
    case SweepCheck::kAdjacentPair: {
      const auto prof = reverify::vertex_energies(g, 1.0);
      for (auto [i, j] : g.edges()) {
        worst = ld_min(worst, prof[i] + prof[j] - 2.0L);
      }
      break;
    }
    case SweepCheck::kSuperadditivity:
      for (double p : ps) worst = ld_min(worst, ld_superadditivity_slack(g, p));
      break;
    case SweepCheck::kVertexCore:
      for (double p : ps) worst = ld_min(worst, ld_core_slack(g, p, false));
      break;
    case SweepCheck::kShapleyCore:
      for (double p : ps) worst = ld_min(worst, ld_core_slack(g, p, true));
      break;
    case SweepCheck::kTreeExtremal: {
      const Graph star = star_graph(n);
      const Graph path = path_graph(n);
      for (double p : ps) {
        const LD e = reverify::p_energy(g, p);
        const LD st = reverify::p_energy(star, p);
        const LD pa = reverify::p_energy(path, p);
        if (p < 2.0) {
          worst = ld_min(worst, ld_min(e - st, pa - e));
        } else if (p > 2.0) {
          worst = ld_min(worst, ld_min(e - pa, st - e));
        } else {
          worst = ld_min(worst, ld_min(-std::abs(e - st), -std::abs(e - pa)));
        }
      }
      break;
    }
  }
  if (worst == std::numeric_limits<LD>::infinity()) return 0.0;
  return static_cast<double>(worst);
}

GraphRecord evaluate(const Graph& g, std::uint64_t index, const LevelCtx& lvl) {
  const Ctx& ctx = *lvl.ctx;
  GraphRecord rec;
  rec.index = index;
  rec.n = g.vertex_count();
  rec.m = g.edge_count();
  rec.g6 = encode_graph6(g);

  std::vector<CoalitionTable> tables;
  if (ctx.need_tables) tables = build_tables(g, ctx.ps);

  std::optional<Spectrum> spec;
  if ((ctx.need_profiles || ctx.p1_needed || ctx.need_totals) &&
      g.edge_count() > 0) {
    spec = eig_symmetric(g);
  }

  std::vector<EnergyProfile> profiles;
  if (ctx.need_profiles || ctx.p1_needed) {
    profiles.reserve(ctx.ps.size());
    for (double p : ctx.ps) {
      profiles.push_back(spec ? vertex_energies(*spec, p) : vertex_energies(g, p));
    }
  }

  std::vector<double> totals;
  if (ctx.need_totals) {
    totals.resize(ctx.user);
    for (std::size_t k = 0; k < ctx.user; ++k) {
      if (ctx.need_tables) {
        totals[k] = tables[k].values[tables[k].full_mask()];
      } else {
        totals[k] = spec ? p_energy(*spec, ctx.ps[k]) : 0.0;
      }
    }
  }

  std::optional<Bipartition> parts;
  if (ctx.need_parts) parts = bipartition(g);

  const std::span<const CoalitionTable> user_tables{tables.data(), ctx.need_tables ? ctx.user : 0};
  const std::span<const EnergyProfile> user_profiles{profiles.data(), profiles.empty() ? 0 : ctx.user};
  const std::span<const double> user_ps{ctx.ps.data(), ctx.user};
  const std::span<const double> user_totals{totals.data(), totals.size()};

  rec.outcomes.reserve(ctx.checks.size());
  for (SweepCheck c : ctx.checks) {
    Outcome o;
    switch (c) {
      case SweepCheck::kSubgraphInequality:
        o = from_bound(check_subgraph_inequality(user_tables, user_profiles));
        break;
      case SweepCheck::kEdgeCut:
        o = from_bound(check_edge_cut(tables[ctx.idx1]));
        break;
      case SweepCheck::kSchattenMonotonicity:
        o = from_bound(check_schatten_monotonicity(user_ps, user_totals));
        break;
      case SweepCheck::kMcclelland:
        o = from_bound(check_mcclelland(rec.n, user_ps, user_totals));
        break;
      case SweepCheck::kTwoMBound:
        o = from_bound(check_two_m_bound(rec.m, user_ps, user_totals));
        break;
      case SweepCheck::kBipartiteBound:
        o = from_bound(
            check_bipartite_bound(rec.m, parts.has_value(), user_ps, user_totals));
        break;
      case SweepCheck::kBipartiteSplit:
        o = from_bound(check_bipartite_split(parts, user_profiles));
        break;
      case SweepCheck::kVertexHoelder:
        o = from_bound(check_vertex_hoelder(user_profiles));
        break;
      case SweepCheck::kDegreeBound:
        o = from_bound(check_degree_bound(g, profiles[ctx.idx1]));
        break;
      case SweepCheck::kAdjacentPair:
        o = from_bound(check_adjacent_pair(g, profiles[ctx.idx1]));
        break;
      case SweepCheck::kSuperadditivity:
        for (std::size_t k = 0; k < ctx.user; ++k) {
          const WorstPair wp = superadditivity_worst_slack(tables[k]);
          if (wp.slack < o.slack) {
            o.slack = wp.slack;
            o.p = ctx.ps[k];
            o.witness = "p=" + num(o.p) + ";S=" + to_string(VertexSet{wp.lhs_set}) +
                        ";T=" + to_string(VertexSet{wp.rhs_set});
          }
        }
        break;
      case SweepCheck::kVertexCore:
        o = core_outcome(ctx, tables, [&](std::size_t k) {
          return PayoffVector{profiles[k].per_vertex};
        });
        break;
      case SweepCheck::kShapleyCore:
        o = core_outcome(ctx, tables,
                         [&](std::size_t k) { return shapley_exact(tables[k]); });
        break;
      case SweepCheck::kTreeExtremal:
        o = tree_extremal_outcome(lvl, user_totals);
        break;
    }
    if (o.applicable && o.slack < -ctx.tol) {
      o.violated = true;
      o.reverified = reverified_slack(c, g, lvl);
    }
    rec.outcomes.push_back(std::move(o));
  }
  if (ctx.tree_extremal) rec.totals = totals;
  return rec;
}

// -------- aggregation --------

struct ExtremalTracker {
  double min1 = std::numeric_limits<double>::infinity();
  double min2 = std::numeric_limits<double>::infinity();
  std::uint64_t cmin = 0;
  double max1 = -std::numeric_limits<double>::infinity();
  double max2 = -std::numeric_limits<double>::infinity();
  std::uint64_t cmax = 0;

  void add(double v) {
    if (v < min1 - kAttainEps) {
      min2 = min1;
      min1 = v;
      cmin = 1;
    } else if (v <= min1 + kAttainEps) {
      min1 = std::min(min1, v);
      ++cmin;
    } else {
      min2 = std::min(min2, v);
    }
    if (v > max1 + kAttainEps) {
      max2 = max1;
      max1 = v;
      cmax = 1;
    } else if (v >= max1 - kAttainEps) {
      max1 = std::max(max1, v);
      ++cmax;
    } else {
      max2 = std::max(max2, v);
    }
  }
};

struct Aggregator {
  const Ctx* ctx = nullptr;
  SweepResult* result = nullptr;
  std::ofstream csv;
  std::vector<ExtremalTracker> trackers;  // per user p, current level
  std::vector<std::size_t> violation_records;  // per check, detail count

  void start_level(int /*n*/) {
    trackers.assign(ctx->user, ExtremalTracker{});
  }

  void consume(const GraphRecord& rec) {
    ++result->graphs_scanned;
    for (std::size_t i = 0; i < ctx->checks.size(); ++i) {
      const Outcome& o = rec.outcomes[i];
      CheckSummary& sum = result->summaries[i];
      if (!o.applicable) {
        ++sum.skipped;
        continue;
      }
      ++sum.graphs_checked;
      ++result->checks_run;
      if (csv.is_open()) {
        char slack_buf[40];
        std::snprintf(slack_buf, sizeof slack_buf, "%.17g", o.slack);
        csv << rec.g6 << ',' << rec.n << ',' << rec.m << ','
            << sweep_check_name(ctx->checks[i]) << ',' << slack_buf << ','
            << o.witness << '\n';
      }
      if (o.slack < sum.worst_slack) {
        sum.worst_slack = o.slack;
        sum.worst_graph6 = rec.g6;
        sum.worst_witness = o.witness;
        sum.worst_p = o.p;
        sum.worst_q = o.q;
      }
      if (o.violated) {
        ++sum.violations;
        const bool survives = o.reverified < -tol::kReverify;
        if (survives) ++sum.violations_surviving;
        if (violation_records[i] < kViolationRecordCap) {
          ++violation_records[i];
          SweepViolation v;
          v.index = rec.index;
          v.n = rec.n;
          v.m = rec.m;
          v.graph6 = rec.g6;
          v.check = ctx->checks[i];
          v.p = o.p;
          v.q = o.q;
          v.slack = o.slack;
          v.witness = o.witness;
          v.reverified_slack = o.reverified;
          v.survives = survives;
          result->violations.push_back(std::move(v));
        }
      }
    }
    if (ctx->tree_extremal) {
      for (std::size_t k = 0; k < ctx->user; ++k) trackers[k].add(rec.totals[k]);
    }
  }

  void finish_level(int n, const LevelCtx& lvl, double tol) {
    if (!ctx->tree_extremal) return;
    for (std::size_t k = 0; k < ctx->user; ++k) {
      const ExtremalTracker& t = trackers[k];
      if (t.cmin == 0) continue;  // interrupted before any tree at this level
      TreeExtremalRow row;
      row.n = n;
      row.p = ctx->ps[k];
      row.star_value = lvl.star_ref[k];
      row.path_value = lvl.path_ref[k];
      row.min_value = t.min1;
      row.max_value = t.max1;
      row.attain_min = t.cmin;
      row.attain_max = t.cmax;
      row.margin_min = std::isfinite(t.min2) ? t.min2 - t.min1 : 0.0;
      row.margin_max = std::isfinite(t.max2) ? t.max1 - t.max2 : 0.0;
      const double lo = row.p > 2.0 ? row.path_value : row.star_value;
      const double hi = row.p > 2.0 ? row.star_value : row.path_value;
      row.directions_ok =
          std::abs(t.min1 - lo) <= tol && std::abs(t.max1 - hi) <= tol;
      result->tree_rows.push_back(row);
    }
  }
};

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  if (config.checks.empty()) {
    throw std::invalid_argument("sweep needs at least one check");
  }
  if (config.p_grid.empty()) {
    throw std::invalid_argument("sweep needs a nonempty p grid");
  }
  for (double p : config.p_grid) {
    if (!(p >= 1.0)) {
      throw std::invalid_argument("p grid entries must satisfy p >= 1");
    }
  }
  if (config.max_n < 1) {
    throw std::invalid_argument("sweep needs max_n >= 1");
  }
  const bool shapley_selected =
      std::find(config.checks.begin(), config.checks.end(),
                SweepCheck::kShapleyCore) != config.checks.end();
  const bool tree_selected =
      std::find(config.checks.begin(), config.checks.end(),
                SweepCheck::kTreeExtremal) != config.checks.end();
  if (config.cls == GraphClass::kGraphs) {
    if (tree_selected) {
      throw std::invalid_argument("tree-extremal needs --class trees");
    }
    const int cap = shapley_selected ? 6 : 7;
    if (config.max_n > cap) {
      throw std::invalid_argument(
          "graph sweeps are capped at max_n = " + std::to_string(cap) +
          (shapley_selected ? " with shapley-core selected" : ""));
    }
  } else if (config.max_n > 8) {
    throw std::invalid_argument("tree sweeps are capped at max_n = 8");
  }

  const double tol = config.tol < 0 ? tol::core() : config.tol;
  const Ctx ctx = make_ctx(config, tol);
  const int jobs = std::max(1, config.jobs);

  SweepResult result;
  result.cls = config.cls;
  result.max_n = config.max_n;
  result.p_grid = config.p_grid;
  result.checks = config.checks;
  result.tol = tol;
  result.summaries.resize(ctx.checks.size());
  for (std::size_t i = 0; i < ctx.checks.size(); ++i) {
    result.summaries[i].check = ctx.checks[i];
  }

  Aggregator agg;
  agg.ctx = &ctx;
  agg.result = &result;
  agg.violation_records.assign(ctx.checks.size(), 0);
  if (!config.csv_path.empty()) {
    agg.csv.open(config.csv_path, std::ios::trunc);
    if (!agg.csv) {
      throw std::runtime_error("cannot open CSV output: " + config.csv_path);
    }
    agg.csv << "graph6,n,m,check_id,worst_slack,witness\n";
  }

  const auto interrupted = [&] {
    return config.interrupt && config.interrupt->load(std::memory_order_relaxed);
  };

  for (int n = 1; n <= config.max_n && !result.partial; ++n) {
    if (interrupted()) {
      result.partial = true;
      break;
    }
    const std::uint64_t count = config.cls == GraphClass::kGraphs
                                    ? labeled_graph_count(n)
                                    : labeled_tree_count(n);
    LevelCtx lvl;
    lvl.ctx = &ctx;
    lvl.n = n;
    if (ctx.tree_extremal) {
      const Graph star = star_graph(n);
      const Graph path = path_graph(n);
      for (std::size_t k = 0; k < ctx.user; ++k) {
        lvl.star_ref.push_back(p_energy(star, ctx.ps[k]));
        lvl.path_ref.push_back(p_energy(path, ctx.ps[k]));
      }
    }
    agg.start_level(n);

    for (std::uint64_t base = 0; base < count; base += kBlock) {
      if (interrupted()) {
        result.partial = true;
        break;
      }
      const std::uint64_t block = std::min(kBlock, count - base);
      std::vector<GraphRecord> records(block);
      const auto make_graph = [&](std::uint64_t idx) {
        return config.cls == GraphClass::kGraphs ? labeled_graph_at(n, idx)
                                                 : labeled_tree_at(n, idx);
      };
      const auto work = [&](std::uint64_t lo, std::uint64_t hi,
                            std::exception_ptr& err) noexcept {
        try {
          for (std::uint64_t i = lo; i < hi; ++i) {
            records[i] = evaluate(make_graph(base + i), base + i, lvl);
          }
        } catch (...) {
          err = std::current_exception();
        }
      };
      const int workers = static_cast<int>(
          std::min<std::uint64_t>(block, static_cast<std::uint64_t>(jobs)));
      std::vector<std::exception_ptr> errors(workers);
      if (workers <= 1) {
        work(0, block, errors[0]);
      } else {
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (block + workers - 1) / workers;
        for (int w = 1; w < workers; ++w) {
          const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, block);
          const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, block);
          threads.emplace_back(work, lo, hi, std::ref(errors[w]));
        }
        work(0, std::min<std::uint64_t>(chunk, block), errors[0]);
        for (auto& t : threads) t.join();
      }
      for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
      }
      for (const GraphRecord& rec : records) agg.consume(rec);
      if (agg.csv.is_open()) agg.csv.flush();
    }
    agg.finish_level(n, lvl, tol);
  }
  return result;
}

}  // namespace energame
