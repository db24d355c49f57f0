#include "energame/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "energame/bounds.hpp"
#include "energame/game.hpp"
#include "energame/graph6.hpp"
#include "energame/spectral.hpp"
#include "energame/tolerance.hpp"

namespace energame {

namespace {

using ojson = nlohmann::ordered_json;

// JSON has no inf/nan literals; keep them readable instead of null.
ojson json_num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(std::span<const double> vs) {
  std::string out;
  for (double v : vs) {
    if (!out.empty()) out += ' ';
    out += fmt(v);
  }
  return out;
}

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

int parse_int(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("expected an integer, got '" + std::string(s) + "'");
  }
  return value;
}

bool is_generator_name(std::string_view name) {
  return name == "path" || name == "star" || name == "cycle" ||
         name == "complete" || name == "kbip";
}

Graph generate(std::string_view name, std::string_view args) {
  if (name == "kbip") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("kbip needs two part sizes, e.g. kbip:2,3");
    }
    return complete_bipartite_graph(parse_int(args.substr(0, comma)),
                                    parse_int(args.substr(comma + 1)));
  }
  const int n = parse_int(args);
  if (name == "path") return path_graph(n);
  if (name == "star") return star_graph(n);
  if (name == "cycle") return cycle_graph(n);
  return complete_graph(n);
}

ojson tolerance_json() {
  return ojson{{"core", tol::core()},
               {"eig_coefficient", tol::kEigCoeff},
               {"sum", tol::kSum},
               {"sym", tol::kSym},
               {"reverify", tol::kReverify}};
}

ojson envelope(const std::string& command, const std::string& digest) {
  return ojson{{"tool_version", kToolVersion},
               {"command", command},
               {"input_digest", digest},
               {"tolerances", tolerance_json()}};
}

ojson graph_json(const GraphInput& in) {
  return ojson{{"n", in.graph.vertex_count()},
               {"m", in.graph.edge_count()},
               {"graph6", in.graph6},
               {"source", in.source},
               {"degrees", in.graph.degrees()}};
}

ojson core_json(const CoreCertificate& c) {
  return ojson{{"is_member", c.is_member},
               {"worst_slack", c.worst_slack},
               {"worst_coalition", to_string(VertexSet{c.worst_coalition})},
               {"efficiency_gap", c.efficiency_gap}};
}

ojson players_json(const PlayerStructure& ps) {
  std::vector<int> null_players;
  for (int i = 0; i < static_cast<int>(ps.is_null.size()); ++i) {
    if (ps.is_null[i]) null_players.push_back(i);
  }
  return ojson{{"null", null_players}, {"classes", ps.classes}};
}

ojson pair_audit_json(const std::optional<PairAudit>& a, int cap) {
  if (!a) {
    return ojson{{"skipped", "needs n <= " + std::to_string(cap)}};
  }
  ojson out{{"holds", a->holds}};
  if (!a->holds) {
    out["lhs_set"] = to_string(VertexSet{a->lhs_set});
    out["rhs_set"] = to_string(VertexSet{a->rhs_set});
    out["violation"] = a->violation;
  }
  return out;
}

ojson bound_json(const BoundReport& r) {
  return ojson{{"id", bound_name(r.id)},   {"applicable", r.applicable},
               {"holds", r.holds},         {"slack", json_num(r.slack)},
               {"p", r.p},                 {"q", r.q},
               {"witness", r.witness}};
}

// "x0 + x2" for the inequality listing.
std::string payoff_lhs(VertexSet s) {
  std::string out;
  for (int v : s.vertices()) {
    if (!out.empty()) out += " + ";
    out += "x" + std::to_string(v);
  }
  return out;
}

std::string players_text(const PlayerStructure& ps) {
  std::string null_str;
  for (int i = 0; i < static_cast<int>(ps.is_null.size()); ++i) {
    if (ps.is_null[i]) null_str += (null_str.empty() ? "" : " ") + std::to_string(i);
  }
  std::string classes;
  for (const auto& cls : ps.classes) {
    VertexSet s;
    for (int v : cls) s = s.with(v);
    classes += (classes.empty() ? "" : " ") + to_string(s);
  }
  return "null: " + (null_str.empty() ? "none" : "{" + null_str + "}") +
         "; symmetry classes: " + classes;
}

std::string scope_string(GraphClass cls, int max_n, std::span<const double> p_grid,
                         std::span<const SweepCheck> checks, double tol) {
  std::string s = "sweep;class=";
  s += graph_class_name(cls);
  s += ";max_n=" + std::to_string(max_n) + ";p=";
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (i) s += ',';
    s += fmt17(p_grid[i]);
  }
  s += ";checks=";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (i) s += ',';
    s += sweep_check_name(checks[i]);
  }
  s += ";tol=" + fmt17(tol);
  return s;
}

}  // namespace

GraphInput load_graph_input(const std::string& input) {
  const auto colon = input.find(':');
  if (colon != std::string::npos) {
    const std::string_view name(input.data(), colon);
    if (is_generator_name(name)) {
      Graph g = generate(name, std::string_view(input).substr(colon + 1));
      std::string g6 = encode_graph6(g);
      return {std::move(g), std::move(g6), "generator " + input};
    }
  }
  std::error_code ec;
  if (std::filesystem::exists(input, ec)) {
    std::ifstream f(input);
    if (!f) throw ParseError("cannot read file: " + input);
    std::ostringstream text;
    text << f.rdbuf();
    Graph g = parse_edge_list(text.str());
    std::string g6 = encode_graph6(g);
    return {std::move(g), std::move(g6), "file " + input};
  }
  Graph g = parse_graph6(input);
  std::string g6 = encode_graph6(g);
  return {std::move(g), std::move(g6), "graph6"};
}

std::string digest_hex(std::string_view bytes) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string sweep_scope_digest(const SweepConfig& config) {
  const double tol = config.tol < 0 ? tol::core() : config.tol;
  return digest_hex(
      scope_string(config.cls, config.max_n, config.p_grid, config.checks, tol));
}

RenderedDoc render_report(const GraphInput& in, const ReportOptions& opts,
                          DocFormat format, const std::string& command) {
  const Graph& g = in.graph;
  const int n = g.vertex_count();
  const Spectrum spec = eig_symmetric(g);

  ojson doc = envelope(command, digest_hex(in.graph6));
  doc["graph"] = graph_json(in);
  std::vector<double> eigs(spec.eigenvalues.data(),
                           spec.eigenvalues.data() + spec.size());
  doc["spectrum"] = eigs;
  doc["energy"] = p_energy(spec, 1.0);

  std::vector<EnergyProfile> profiles;
  ojson rows = ojson::array();
  for (double p : opts.p_grid) {
    profiles.push_back(vertex_energies(spec, p));
    rows.push_back(ojson{{"p", p},
                         {"total", p_energy(spec, p)},
                         {"per_vertex", profiles.back().per_vertex}});
  }
  doc["p_energies"] = rows;

  int exit_code = 0;
  std::optional<GameSolution> sol;
  std::optional<CoalitionTable> ineq_table;
  if (n <= kTableCap) {
    SolveOptions sopts;
    sopts.mc_samples = opts.mc_samples;
    sopts.mc_seed = opts.mc_seed;
    sol = solve_game(g, opts.game_p, sopts);

    ojson shapley{{"values", sol->shapley.x}, {"exact", sol->shapley_is_exact}};
    if (!sol->shapley_is_exact) {
      shapley["std_error"] = sol->shapley_stderr;
      shapley["samples"] = sol->mc_samples;
      shapley["seed"] = sol->mc_seed;
    }
    ojson game{{"p", opts.game_p},
               {"shapley", std::move(shapley)},
               {"vertex_payoff", sol->vertex_energy_payoff.x},
               {"core_shapley", core_json(sol->core_shapley)},
               {"core_vertex", core_json(sol->core_vertex_energy)}};
    if (n <= 6) {
      ineq_table = build_table(g, opts.game_p);
      ojson ineqs = ojson::array();
      const std::uint32_t full = ineq_table->full_mask();
      for (std::uint32_t mask = 1; mask <= full && full != 0; ++mask) {
        ojson row{{"set", to_string(VertexSet{mask})},
                  {"w", ineq_table->values[mask]}};
        if (mask == full) row["efficiency"] = true;
        ineqs.push_back(std::move(row));
      }
      game["core_inequalities"] = std::move(ineqs);
    }
    doc["game"] = std::move(game);

    if (!sol->core_vertex_energy.is_member) exit_code = 1;
    if (exit_code == 0 && sol->shapley_is_exact && !sol->core_shapley.is_member) {
      exit_code = 3;
    }
  } else {
    doc["notice"] = "game layer skipped: n > " + std::to_string(kTableCap) +
                    " (coalition table cap); spectral quantities only";
  }
  const PlayerStructure players = classify_players(g);
  doc["players"] = players_json(players);

  if (format == DocFormat::kJson) {
    return {doc.dump(2) + "\n", exit_code};
  }

  std::ostringstream out;
  out << "energame report (v" << kToolVersion << ")\n";
  out << "input: " << in.source << "  graph6 " << in.graph6 << "  n=" << n
      << " m=" << g.edge_count() << "\n";
  out << "degrees:";
  for (int d : g.degrees()) out << ' ' << d;
  out << "\nspectrum: " << join(eigs) << "\n";
  out << "energy (p=1): " << fmt(p_energy(spec, 1.0)) << "\n";
  for (std::size_t k = 0; k < opts.p_grid.size(); ++k) {
    out << "p=" << fmt(opts.p_grid[k]) << ": total "
        << fmt(p_energy(spec, opts.p_grid[k])) << ", per-vertex "
        << join(profiles[k].per_vertex) << "\n";
  }
  if (sol) {
    out << "game at p=" << fmt(opts.game_p) << ":\n";
    out << "  shapley";
    if (sol->shapley_is_exact) {
      out << " (exact): " << join(sol->shapley.x) << "\n";
    } else {
      out << " (mc, samples=" << sol->mc_samples << ", seed=" << sol->mc_seed
          << "): " << join(sol->shapley.x) << "\n  std error: "
          << join(sol->shapley_stderr) << "\n";
    }
    out << "  vertex payoff: " << join(sol->vertex_energy_payoff.x) << "\n";
    const auto core_line = [&](const char* label, const CoreCertificate& c) {
      out << "  core(" << label << "): " << (c.is_member ? "member" : "NOT in core")
          << ", worst slack " << fmt(c.worst_slack) << " at S="
          << to_string(VertexSet{c.worst_coalition}) << ", efficiency gap "
          << fmt(c.efficiency_gap) << "\n";
    };
    core_line("shapley", sol->core_shapley);
    core_line("vertex", sol->core_vertex_energy);
    if (ineq_table) {
      out << "  core inequalities:\n";
      const std::uint32_t full = ineq_table->full_mask();
      for (std::uint32_t mask = 1; mask <= full && full != 0; ++mask) {
        if (mask == full) {
          out << "    " << payoff_lhs(VertexSet{mask}) << " = "
              << fmt(ineq_table->values[mask]) << "  (efficiency)\n";
        } else {
          out << "    " << payoff_lhs(VertexSet{mask})
              << " >= " << fmt(ineq_table->values[mask]) << "\n";
        }
      }
    }
  } else {
    out << doc["notice"].get<std::string>() << "\n";
  }
  out << "players: " << players_text(players) << "\n";
  return {out.str(), exit_code};
}

RenderedDoc render_audit(const GraphInput& in, const AuditOptions& opts,
                         DocFormat format, const std::string& command) {
  const Graph& g = in.graph;
  const int n = g.vertex_count();

  const std::vector<BoundReport> bounds = run_all_bounds(g, opts.p_grid);
  const std::vector<CoalitionTable> tables = build_tables(g, opts.p_grid);
  const Spectrum spec = eig_symmetric(g);

  std::vector<std::string> guaranteed_failures;
  std::vector<std::string> evidence_failures;
  for (const BoundReport& r : bounds) {
    if (r.applicable && !r.holds) {
      guaranteed_failures.push_back("bound:" + std::string(bound_name(r.id)));
    }
  }

  struct GameAudit {
    double p = 1.0;
    std::optional<PairAudit> superadditivity;
    std::optional<PairAudit> convexity;
    CoreCertificate core_vertex;
    CoreCertificate core_shapley;
  };
  std::vector<GameAudit> game_audits;
  for (std::size_t k = 0; k < opts.p_grid.size(); ++k) {
    GameAudit a;
    a.p = opts.p_grid[k];
    if (n <= kSuperadditivityCap) a.superadditivity = audit_superadditivity(tables[k]);
    if (n <= kConvexityCap) a.convexity = audit_convexity(tables[k]);
    a.core_vertex = check_core(tables[k], PayoffVector{vertex_energies(spec, a.p).per_vertex});
    a.core_shapley = check_core(tables[k], shapley_exact(tables[k]));
    const std::string at_p = "(p=" + fmt(a.p) + ")";
    if (a.superadditivity && !a.superadditivity->holds) {
      guaranteed_failures.push_back("superadditivity" + at_p);
    }
    if (!a.core_vertex.is_member) guaranteed_failures.push_back("vertex-core" + at_p);
    if (!a.core_shapley.is_member) evidence_failures.push_back("shapley-core" + at_p);
    game_audits.push_back(std::move(a));
  }
  const PlayerStructure players = classify_players(g);

  int exit_code = 0;
  if (!guaranteed_failures.empty()) {
    exit_code = 1;
  } else if (!evidence_failures.empty()) {
    exit_code = 3;
  }

  if (format == DocFormat::kJson) {
    ojson doc = envelope(command, digest_hex(in.graph6));
    doc["graph"] = graph_json(in);
    doc["p_grid"] = opts.p_grid;
    ojson bj = ojson::array();
    for (const BoundReport& r : bounds) bj.push_back(bound_json(r));
    doc["bounds"] = std::move(bj);
    ojson gj = ojson::array();
    for (const GameAudit& a : game_audits) {
      gj.push_back(ojson{
          {"p", a.p},
          {"superadditivity", pair_audit_json(a.superadditivity, kSuperadditivityCap)},
          {"convexity", pair_audit_json(a.convexity, kConvexityCap)},
          {"core_vertex", core_json(a.core_vertex)},
          {"core_shapley", core_json(a.core_shapley)}});
    }
    doc["game"] = std::move(gj);
    doc["players"] = players_json(players);
    doc["guaranteed_failures"] = guaranteed_failures;
    doc["evidence_failures"] = evidence_failures;
    doc["exit_code"] = exit_code;
    return {doc.dump(2) + "\n", exit_code};
  }

  std::ostringstream out;
  out << "energame audit (v" << kToolVersion << ")\n";
  out << "input: " << in.source << "  graph6 " << in.graph6 << "  n=" << n
      << " m=" << g.edge_count() << "\n";
  out << "p grid:";
  for (double p : opts.p_grid) out << ' ' << fmt(p);
  out << "\nbounds:\n";
  for (const BoundReport& r : bounds) {
    char line[160];
    if (!r.applicable) {
      std::snprintf(line, sizeof line, "  %-22s SKIP  %s",
                    std::string(bound_name(r.id)).c_str(), r.witness.c_str());
    } else {
      std::snprintf(line, sizeof line, "  %-22s %s  worst slack %s  [%s]",
                    std::string(bound_name(r.id)).c_str(),
                    r.holds ? "PASS" : "FAIL", fmt(r.slack).c_str(),
                    r.witness.c_str());
    }
    out << line << "\n";
  }
  out << "game:\n";
  for (const GameAudit& a : game_audits) {
    out << "  p=" << fmt(a.p) << ":\n";
    if (!a.superadditivity) {
      out << "    superadditivity: skipped (needs n <= " << kSuperadditivityCap
          << ")\n";
    } else if (a.superadditivity->holds) {
      out << "    superadditivity: PASS\n";
    } else {
      out << "    superadditivity: FAIL at S="
          << to_string(VertexSet{a.superadditivity->lhs_set}) << ", T="
          << to_string(VertexSet{a.superadditivity->rhs_set}) << " by "
          << fmt(a.superadditivity->violation) << "\n";
    }
    if (!a.convexity) {
      out << "    convexity: skipped (needs n <= " << kConvexityCap << ")\n";
    } else if (a.convexity->holds) {
      out << "    convexity: holds\n";
    } else {
      out << "    convexity: counterexample S="
          << to_string(VertexSet{a.convexity->lhs_set}) << ", T="
          << to_string(VertexSet{a.convexity->rhs_set}) << " violates by "
          << fmt(a.convexity->violation) << "\n";
    }
    out << "    core(vertex): " << (a.core_vertex.is_member ? "member" : "NOT in core")
        << ", worst slack " << fmt(a.core_vertex.worst_slack) << "\n";
    out << "    core(shapley): "
        << (a.core_shapley.is_member ? "member" : "NOT in core") << ", worst slack "
        << fmt(a.core_shapley.worst_slack) << "\n";
  }
  out << "players: " << players_text(players) << "\n";
  out << "guaranteed failures: ";
  if (guaranteed_failures.empty()) {
    out << "none\n";
  } else {
    for (const auto& s : guaranteed_failures) out << s << ' ';
    out << "\n";
  }
  if (!evidence_failures.empty()) {
    out << "conjecture-evidence failures: ";
    for (const auto& s : evidence_failures) out << s << ' ';
    out << "\n";
  }
  out << "exit code: " << exit_code << "\n";
  return {out.str(), exit_code};
}

RenderedDoc render_shapley(const GraphInput& in, const ShapleyOptions& opts,
                           DocFormat format, const std::string& command) {
  const CoalitionTable table = build_table(in.graph, opts.p);
  std::string mode;
  PayoffVector values;
  std::vector<double> std_error;
  std::uint64_t samples = 0;
  bool echo_sampling = false;
  if (opts.exact) {
    mode = "exact";
    values = shapley_exact(table);
  } else {
    const ShapleyEstimate est = shapley_monte_carlo(table, opts.samples, opts.seed);
    mode = est.exhaustive ? "exhaustive" : "mc";
    values = est.value;
    std_error = est.std_error;
    samples = est.samples;
    echo_sampling = !est.exhaustive;
  }

  if (format == DocFormat::kJson) {
    ojson doc = envelope(command, digest_hex(in.graph6));
    doc["graph"] = graph_json(in);
    doc["p"] = opts.p;
    doc["mode"] = mode;
    doc["shapley"] = values.x;
    if (echo_sampling) {
      doc["std_error"] = std_error;
      doc["samples"] = samples;
      doc["seed"] = opts.seed;
    }
    return {doc.dump(2) + "\n", 0};
  }

  std::ostringstream out;
  out << "energame shapley (v" << kToolVersion << ")\n";
  out << "input: " << in.source << "  graph6 " << in.graph6 << "  p=" << fmt(opts.p)
      << "  mode " << mode << "\n";
  out << "shapley: " << join(values.x) << "\n";
  if (echo_sampling) {
    out << "std error: " << join(std_error) << "\n";
    out << "samples: " << samples << ", seed: " << opts.seed << "\n";
  }
  return {out.str(), 0};
}

RenderedDoc render_sweep(const SweepResult& r, DocFormat format,
                         const std::string& command) {
  const std::string digest =
      digest_hex(scope_string(r.cls, r.max_n, r.p_grid, r.checks, r.tol));

  std::uint64_t raw_total = 0;
  std::uint64_t surviving_total = 0;
  int exit_code = 0;
  for (const CheckSummary& s : r.summaries) {
    raw_total += s.violations;
    surviving_total += s.violations_surviving;
    if (s.violations_surviving > 0) {
      if (!sweep_check_is_evidence(s.check)) {
        exit_code = 1;
      } else if (exit_code == 0) {
        exit_code = 3;
      }
    }
  }

  if (format == DocFormat::kJson) {
    ojson doc = envelope(command, digest);
    std::vector<std::string> check_names;
    for (SweepCheck c : r.checks) check_names.emplace_back(sweep_check_name(c));
    doc["scope"] = ojson{{"class", graph_class_name(r.cls)},
                         {"max_n", r.max_n},
                         {"p_grid", r.p_grid},
                         {"checks", check_names},
                         {"tol", r.tol}};
    doc["partial"] = r.partial;
    doc["counts"] = ojson{{"graphs_scanned", r.graphs_scanned},
                          {"checks_run", r.checks_run},
                          {"violations_raw", raw_total},
                          {"violations_surviving", surviving_total}};
    ojson sj = ojson::array();
    for (const CheckSummary& s : r.summaries) {
      sj.push_back(ojson{{"check", sweep_check_name(s.check)},
                         {"evidence", sweep_check_is_evidence(s.check)},
                         {"graphs_checked", s.graphs_checked},
                         {"skipped", s.skipped},
                         {"worst_slack", json_num(s.worst_slack)},
                         {"worst_graph6", s.worst_graph6},
                         {"worst_witness", s.worst_witness},
                         {"worst_p", s.worst_p},
                         {"worst_q", s.worst_q},
                         {"violations", s.violations},
                         {"violations_surviving", s.violations_surviving}});
    }
    doc["summaries"] = std::move(sj);
    if (!r.tree_rows.empty()) {
      ojson tj = ojson::array();
      for (const TreeExtremalRow& t : r.tree_rows) {
        tj.push_back(ojson{{"n", t.n},
                           {"p", t.p},
                           {"star_value", t.star_value},
                           {"path_value", t.path_value},
                           {"min_value", t.min_value},
                           {"max_value", t.max_value},
                           {"attain_min", t.attain_min},
                           {"attain_max", t.attain_max},
                           {"margin_min", t.margin_min},
                           {"margin_max", t.margin_max},
                           {"directions_ok", t.directions_ok}});
      }
      doc["tree_extremal"] = std::move(tj);
    }
    ojson vj = ojson::array();
    for (const SweepViolation& v : r.violations) {
      vj.push_back(ojson{{"index", v.index},
                         {"n", v.n},
                         {"m", v.m},
                         {"graph6", v.graph6},
                         {"check", sweep_check_name(v.check)},
                         {"p", v.p},
                         {"q", v.q},
                         {"slack", v.slack},
                         {"witness", v.witness},
                         {"reverified_slack", v.reverified_slack},
                         {"survives", v.survives}});
    }
    doc["violations"] = std::move(vj);
    doc["exit_code"] = exit_code;
    return {doc.dump(2) + "\n", exit_code};
  }

  std::ostringstream out;
  out << "energame sweep (v" << kToolVersion << ")\n";
  out << "scope: " << graph_class_name(r.cls) << ", n <= " << r.max_n << ", p grid";
  for (double p : r.p_grid) out << ' ' << fmt(p);
  out << ", tol " << fmt(r.tol) << "\n";
  out << "graphs scanned: " << r.graphs_scanned << ", checks run: " << r.checks_run
      << (r.partial ? "  (PARTIAL: interrupted)" : "") << "\n";
  char line[200];
  std::snprintf(line, sizeof line, "%-22s %10s %8s %14s %6s %10s", "check",
                "checked", "skipped", "worst slack", "raw", "surviving");
  out << line << "\n";
  for (const CheckSummary& s : r.summaries) {
    std::snprintf(line, sizeof line, "%-22s %10llu %8llu %14s %6llu %10llu",
                  std::string(sweep_check_name(s.check)).c_str(),
                  static_cast<unsigned long long>(s.graphs_checked),
                  static_cast<unsigned long long>(s.skipped),
                  fmt(s.worst_slack).c_str(),
                  static_cast<unsigned long long>(s.violations),
                  static_cast<unsigned long long>(s.violations_surviving));
    out << line << "\n";
    if (!s.worst_graph6.empty()) {
      out << "    worst at " << s.worst_graph6 << "  " << s.worst_witness << "\n";
    }
  }
  if (!r.tree_rows.empty()) {
    out << "tree extremality (min/max of E_p over labeled trees):\n";
    for (const TreeExtremalRow& t : r.tree_rows) {
      out << "  n=" << t.n << " p=" << fmt(t.p) << ": star " << fmt(t.star_value)
          << ", path " << fmt(t.path_value) << "; min " << fmt(t.min_value)
          << " (x" << t.attain_min << ", margin " << fmt(t.margin_min)
          << "), max " << fmt(t.max_value) << " (x" << t.attain_max
          << ", margin " << fmt(t.margin_max) << ") "
          << (t.directions_ok ? "ok" : "UNEXPECTED DIRECTION") << "\n";
    }
  }
  if (surviving_total == 0) {
    out << "violations: " << raw_total << " raw, none survived re-verification\n";
  } else {
    out << "violations: " << raw_total << " raw, " << surviving_total
        << " SURVIVED re-verification\n";
    for (const SweepViolation& v : r.violations) {
      if (!v.survives) continue;
      out << "  " << sweep_check_name(v.check) << " " << v.graph6 << " p="
          << fmt(v.p) << " slack=" << fmt(v.slack) << " reverified="
          << fmt(v.reverified_slack) << " " << v.witness << "\n";
    }
  }
  out << "exit code: " << exit_code << "\n";
  return {out.str(), exit_code};
}

}  // namespace energame
