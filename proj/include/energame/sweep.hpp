#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "energame/graph.hpp"

namespace energame {

enum class GraphClass { kGraphs, kTrees };

std::string_view graph_class_name(GraphClass c);
std::optional<GraphClass> graph_class_from_name(std::string_view name);

// Checks a sweep can run per graph (the bounds suite, the game-layer scans)
// plus the cross-class tree-extremality conjecture. Names are the stable
// check-id strings used in CSVs and on the command line.
enum class SweepCheck {
  kSubgraphInequality,
  kEdgeCut,
  kSchattenMonotonicity,
  kMcclelland,
  kTwoMBound,
  kBipartiteBound,
  kBipartiteSplit,
  kVertexHoelder,
  kDegreeBound,
  kAdjacentPair,
  kSuperadditivity,
  kVertexCore,
  kShapleyCore,
  kTreeExtremal,
};

std::string_view sweep_check_name(SweepCheck c);
std::optional<SweepCheck> sweep_check_from_name(std::string_view name);

// Conjecture-backed checks gather evidence; a surviving violation is a
// finding (exit code 3), never a failure. Everything else is theorem-backed
// and a surviving violation fails the run.
bool sweep_check_is_evidence(SweepCheck c);

// Comma list of check names and/or the groups "guaranteed" (theorem-backed
// suite), "evidence" (conjectures valid for the class) and "all".
// tree-extremal is rejected unless cls is kTrees. Duplicates collapse;
// order follows the enum.
std::vector<SweepCheck> parse_sweep_checks(std::string_view list, GraphClass cls);

struct SweepConfig {
  GraphClass cls = GraphClass::kGraphs;
  int max_n = 5;  // scans n = 1..max_n
  std::vector<double> p_grid{1.0, 2.0, 3.0};
  std::vector<SweepCheck> checks;
  int jobs = 1;
  double tol = -1.0;     // violation threshold; < 0 means tol::core()
  std::string csv_path;  // per-graph worst-slack rows; empty = no CSV
  // Checked between blocks; when set, the sweep stops after the current
  // block, keeps the completed prefix and marks the result partial.
  const std::atomic<bool>* interrupt = nullptr;
};

// One flagged (graph, check) instance together with its high-precision
// re-verification record. Only violations with survives = true count as
// counterexamples.
struct SweepViolation {
  std::uint64_t index = 0;  // enumeration index within its n
  int n = 0;
  int m = 0;
  std::string graph6;
  SweepCheck check{};
  double p = 0.0;
  double q = 0.0;
  double slack = 0.0;  // double-pipeline worst slack
  std::string witness;
  double reverified_slack = 0.0;  // long-double pipeline, whole user grid
  bool survives = false;
};

// Per-check aggregate over every scanned graph.
struct CheckSummary {
  SweepCheck check{};
  std::uint64_t graphs_checked = 0;  // applicable instances
  std::uint64_t skipped = 0;         // inapplicable (e.g. non-bipartite)
  double worst_slack = std::numeric_limits<double>::infinity();
  std::string worst_graph6;  // first graph attaining the worst slack
  std::string worst_witness;
  double worst_p = 0.0;
  double worst_q = 0.0;
  std::uint64_t violations = 0;            // raw, at the sweep tolerance
  std::uint64_t violations_surviving = 0;  // after re-verification
};

// Extremal statistics for the tree-extremality conjecture at one (n, p):
// min/max of E_p over all labeled trees against the star/path references,
// attainment counts (within 1e-9) and the gap from each extremal value to
// the nearest distinct one.
struct TreeExtremalRow {
  int n = 0;
  double p = 0.0;
  double star_value = 0.0;
  double path_value = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  std::uint64_t attain_min = 0;
  std::uint64_t attain_max = 0;
  double margin_min = 0.0;
  double margin_max = 0.0;
  bool directions_ok = false;  // min/max land on star/path per the p-direction
};

struct SweepResult {
  GraphClass cls{};
  int max_n = 0;
  std::vector<double> p_grid;
  std::vector<SweepCheck> checks;
  double tol = 0.0;
  bool partial = false;
  std::uint64_t graphs_scanned = 0;
  std::uint64_t checks_run = 0;
  std::vector<CheckSummary> summaries;     // one per selected per-graph check
  std::vector<TreeExtremalRow> tree_rows;  // when tree-extremal is selected
  std::vector<SweepViolation> violations;  // detail capped, counts exact
};

// Detailed violation records kept per check; re-verification still runs
// (and counts) past the cap.
inline constexpr std::size_t kViolationRecordCap = 1000;

// Scans every labeled graph/tree with n = 1..max_n in enumeration order,
// evaluates the selected checks, re-verifies violations with the
// long-double pipeline, streams CSV rows (flushed per block) and returns
// the aggregate. Deterministic for fixed flags regardless of jobs.
SweepResult run_sweep(const SweepConfig& config);

}  // namespace energame
