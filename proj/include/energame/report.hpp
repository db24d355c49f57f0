#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "energame/graph.hpp"
#include "energame/sweep.hpp"

namespace energame {

inline constexpr std::string_view kToolVersion = "0.1.0";

// One CLI graph argument resolved to a graph. Resolution order: generator
// spec ("path:6", "star:5", "cycle:4", "complete:4", "kbip:2,3"), then an
// existing edge-list file, then a graph6 literal. graph6 is the canonical
// re-encoding and feeds the input digest.
struct GraphInput {
  Graph graph;
  std::string graph6;
  std::string source;  // e.g. "generator path:3", "file g.txt", "graph6"
};

GraphInput load_graph_input(const std::string& input);

// "fnv1a64:" + 16 hex digits of the 64-bit FNV-1a of the bytes.
std::string digest_hex(std::string_view bytes);

// Scope digest for sweep documents: hashes a canonical
// class/max_n/p_grid/checks/tol string instead of a graph.
std::string sweep_scope_digest(const SweepConfig& config);

enum class DocFormat { kJson, kText };

// A rendered document plus the process exit code its content implies
// (0 = guaranteed checks pass, 1 = guaranteed failure, 3 = surviving
// conjecture counterexample; usage errors never reach rendering).
struct RenderedDoc {
  std::string body;
  int exit_code = 0;
};

struct ReportOptions {
  std::vector<double> p_grid{1.0, 2.0, 3.0};  // p-energy / vertex-energy grid
  double game_p = 1.0;                        // exponent for the game block
  std::uint64_t mc_samples = 100000;          // Shapley fallback past n = 12
  std::uint64_t mc_seed = 1;
};

RenderedDoc render_report(const GraphInput& in, const ReportOptions& opts,
                          DocFormat format, const std::string& command);

struct AuditOptions {
  std::vector<double> p_grid{1.0, 2.0, 3.0};
};

RenderedDoc render_audit(const GraphInput& in, const AuditOptions& opts,
                         DocFormat format, const std::string& command);

struct ShapleyOptions {
  double p = 1.0;
  bool exact = true;
  std::uint64_t samples = 100000;  // mc mode; 0 = exhaustive permutations
  std::uint64_t seed = 1;
};

RenderedDoc render_shapley(const GraphInput& in, const ShapleyOptions& opts,
                           DocFormat format, const std::string& command);

RenderedDoc render_sweep(const SweepResult& result, DocFormat format,
                         const std::string& command);

}  // namespace energame
