#include <atomic>
#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "energame/report.hpp"
#include "energame/sweep.hpp"

namespace {

std::atomic<bool> g_interrupt{false};

void on_sigint(int) { g_interrupt.store(true); }

std::string command_line(int argc, char** argv) {
  std::string s = std::filesystem::path(argv[0]).filename().string();
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

energame::DocFormat doc_format(const std::string& name) {
  return name == "text" ? energame::DocFormat::kText : energame::DocFormat::kJson;
}

// Empty path = stdout.
void emit(const std::string& body, const std::string& path) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << body;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace energame;

  CLI::App app{"graph energy as a cooperative game: reports, audits, sweeps"};
  app.require_subcommand(1);
  const std::string command = command_line(argc, argv);

  std::string input;
  std::vector<double> p_grid{1.0, 2.0, 3.0};
  double p = 1.0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out_path;
  int max_n = 5;
  std::string cls_name = "graphs";
  std::string checks = "guaranteed";
  int jobs = 1;

  const auto add_format = [&](CLI::App* cmd, bool with_csv) {
    auto values = with_csv ? std::vector<std::string>{"json", "csv", "text"}
                           : std::vector<std::string>{"json", "text"};
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember(values));
  };

  CLI::App* rep = app.add_subcommand(
      "report", "per-graph report: spectrum, energies, Shapley, core");
  rep->add_option("input", input, "edge-list file, graph6, or generator spec")
      ->required();
  rep->add_option("--p", p, "exponent for the game block");
  rep->add_option("--p-grid", p_grid, "exponents for the energy rows")
      ->delimiter(',');
  rep->add_option("--samples", samples, "Monte Carlo samples past the exact cap");
  rep->add_option("--seed", seed, "Monte Carlo seed");
  add_format(rep, false);
  rep->add_option("--out", out_path, "write the document here instead of stdout");

  CLI::App* aud = app.add_subcommand(
      "audit", "inequality and game audits over a p grid");
  aud->add_option("input", input, "edge-list file, graph6, or generator spec")
      ->required();
  aud->add_option("--p-grid", p_grid, "exponent grid")->delimiter(',');
  add_format(aud, false);
  aud->add_option("--out", out_path, "write the document here instead of stdout");

  CLI::App* shp = app.add_subcommand(
      "shapley", "Shapley vector (exact; --samples switches to Monte Carlo, "
                 "--samples 0 to exhaustive permutations)");
  shp->add_option("input", input, "edge-list file, graph6, or generator spec")
      ->required();
  shp->add_option("--p", p, "game exponent");
  CLI::Option* shp_samples =
      shp->add_option("--samples", samples, "Monte Carlo samples (0 = exhaustive)");
  shp->add_option("--seed", seed, "Monte Carlo seed");
  add_format(shp, false);
  shp->add_option("--out", out_path, "write the document here instead of stdout");

  CLI::App* swp = app.add_subcommand(
      "sweep", "scan all labeled graphs/trees up to --max-n");
  swp->add_option("--max-n", max_n, "largest vertex count (graphs <= 7, or 6 "
                  "with shapley-core; trees <= 8)");
  swp->add_option("--class", cls_name, "graph class")
      ->check(CLI::IsMember({"graphs", "trees"}));
  swp->add_option("--checks", checks,
                  "comma list of check names or groups guaranteed|evidence|all");
  swp->add_option("--p-grid", p_grid, "exponent grid")->delimiter(',');
  swp->add_option("--jobs", jobs, "worker threads");
  add_format(swp, true);
  swp->add_option("--out", out_path,
                  "artifact base path: writes BASE.json and BASE.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version vs usage error
  }

  try {
    const DocFormat fmt = doc_format(format);
    if (rep->parsed()) {
      const GraphInput in = load_graph_input(input);
      ReportOptions opts;
      opts.p_grid = p_grid;
      opts.game_p = p;
      opts.mc_samples = samples;
      opts.mc_seed = seed;
      const RenderedDoc doc = render_report(in, opts, fmt, command);
      emit(doc.body, out_path);
      return doc.exit_code;
    }
    if (aud->parsed()) {
      const GraphInput in = load_graph_input(input);
      AuditOptions opts;
      opts.p_grid = p_grid;
      const RenderedDoc doc = render_audit(in, opts, fmt, command);
      emit(doc.body, out_path);
      return doc.exit_code;
    }
    if (shp->parsed()) {
      const GraphInput in = load_graph_input(input);
      ShapleyOptions opts;
      opts.p = p;
      opts.exact = shp_samples->count() == 0;
      opts.samples = samples;
      opts.seed = seed;
      const RenderedDoc doc = render_shapley(in, opts, fmt, command);
      emit(doc.body, out_path);
      return doc.exit_code;
    }

    // sweep
    SweepConfig config;
    config.cls = *graph_class_from_name(cls_name);
    config.max_n = max_n;
    config.p_grid = p_grid;
    config.checks = parse_sweep_checks(checks, config.cls);
    config.jobs = jobs;
    config.interrupt = &g_interrupt;
    if (!out_path.empty()) {
      config.csv_path = out_path + ".csv";
    } else if (format == "csv") {
      config.csv_path = "/dev/stdout";
    }
    std::signal(SIGINT, on_sigint);
    const SweepResult result = run_sweep(config);
    std::signal(SIGINT, SIG_DFL);
    if (result.partial) {
      std::cerr << "interrupted: partial results (completed prefix only)\n";
    }

    if (!out_path.empty()) {
      const RenderedDoc json_doc = render_sweep(result, DocFormat::kJson, command);
      emit(json_doc.body, out_path + ".json");
      const RenderedDoc text_doc = render_sweep(result, DocFormat::kText, command);
      std::cout << text_doc.body;
      std::cout << "artifacts: " << out_path << ".json " << out_path << ".csv\n";
      return json_doc.exit_code;
    }
    if (format == "csv") {  // rows already streamed to stdout
      return render_sweep(result, DocFormat::kJson, command).exit_code;
    }
    const RenderedDoc doc = render_sweep(result, fmt, command);
    emit(doc.body, out_path);
    return doc.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
