#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

std::string g_binary;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs `prefix <binary> args`, captures stdout, discards stderr.
RunResult run(const std::string& args, const std::string& prefix = "") {
  const std::string cmd = prefix + g_binary + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, pipe)) > 0;)
    r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("report on the 3-path prints the goldens and exits 0") {
  const RunResult r = run("report path:3");
  REQUIRE(r.exit_code == 0);
  const json d = json::parse(r.out);
  CHECK(d["graph"]["graph6"] == "Bg");
  CHECK(d["energy"].get<double>() ==
        doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-10));
  CHECK(d["game"]["shapley"]["values"][1].get<double>() ==
        doctest::Approx((2 + 2 * std::sqrt(2.0)) / 3).epsilon(1e-9));
  CHECK(d["game"]["core_vertex"]["is_member"] == true);
  CHECK(d["command"].get<std::string>().find("report path:3") !=
        std::string::npos);
}

TEST_CASE("text format and graph6 literals work") {
  const RunResult r = run("report Cl --format text");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("n=4") != std::string::npos);
  CHECK(r.out.find("energy") != std::string::npos);
}

TEST_CASE("audit on the 4-cycle passes everything") {
  const RunResult r = run("audit cycle:4");
  REQUIRE(r.exit_code == 0);
  const json d = json::parse(r.out);
  CHECK(d["guaranteed_failures"].empty());
  CHECK(d["evidence_failures"].empty());
  for (const json& b : d["bounds"])
    if (b["applicable"] == true) CHECK(b["holds"] == true);
}

TEST_CASE("shapley runs are bitwise deterministic") {
  const std::string args = "shapley path:8 --p 1.5 --samples 4000 --seed 9";
  const RunResult a = run(args);
  const RunResult b = run(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json d = json::parse(a.out);
  CHECK(d["mode"] == "mc");
  CHECK(d["samples"] == 4000);
  CHECK(d["seed"] == 9);

  // A different seed must actually change the estimate.
  const RunResult c = run("shapley path:8 --p 1.5 --samples 4000 --seed 10");
  CHECK(c.out != a.out);

  // samples = 0 switches to exhaustive enumeration, which matches exact.
  const json ex = json::parse(run("shapley path:5 --samples 0").out);
  const json exact = json::parse(run("shapley path:5").out);
  CHECK(ex["mode"] == "exhaustive");
  CHECK(exact["mode"] == "exact");
  for (int i = 0; i < 5; ++i)
    CHECK(ex["shapley"][i].get<double>() ==
          doctest::Approx(exact["shapley"][i].get<double>()).epsilon(1e-12));
}

TEST_CASE("sweep writes json and csv artifacts") {
  const std::string base = "/tmp/energame_cli_sweep";
  std::filesystem::remove(base + ".json");
  std::filesystem::remove(base + ".csv");
  const RunResult r =
      run("sweep --max-n 3 --checks guaranteed --out " + base);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("artifacts:") != std::string::npos);

  std::ifstream jf(base + ".json");
  REQUIRE(jf.good());
  std::ostringstream jtext;
  jtext << jf.rdbuf();
  const json d = json::parse(jtext.str());
  CHECK(d["partial"] == false);
  CHECK(d["counts"]["graphs_scanned"] == 11);  // 1 + 2 + 8 labeled graphs
  CHECK(d["counts"]["violations_surviving"] == 0);
  CHECK(d["exit_code"] == 0);

  std::ifstream cf(base + ".csv");
  REQUIRE(cf.good());
  std::string header;
  std::getline(cf, header);
  CHECK(header == "graph6,n,m,check_id,worst_slack,witness");
  std::filesystem::remove(base + ".json");
  std::filesystem::remove(base + ".csv");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").exit_code == 2);                          // no subcommand
  CHECK(run("report").exit_code == 2);                    // missing input
  CHECK(run("report path:3 --format csv").exit_code == 2);  // csv is sweep-only
  CHECK(run("report nosuchthing!!").exit_code == 2);      // unparseable input
  CHECK(run("sweep --max-n 9").exit_code == 2);           // over the graph cap
  CHECK(run("sweep --checks bogus").exit_code == 2);      // unknown check
  CHECK(run("sweep --class trees --max-n 99").exit_code == 2);
  CHECK(run("audit complete:17").exit_code == 2);         // over the audit cap
}

TEST_CASE("help exits 0 and names the subcommands") {
  const RunResult r = run("--help");
  CHECK(r.exit_code == 0);
  for (const char* sub : {"report", "audit", "sweep", "shapley"})
    CHECK(r.out.find(sub) != std::string::npos);
}

TEST_CASE("ENERGAME_TOL overrides the core tolerance") {
  const RunResult r = run("report path:3", "ENERGAME_TOL=1e-3 ");
  REQUIRE(r.exit_code == 0);
  const json d = json::parse(r.out);
  CHECK(d["tolerances"]["core"].get<double>() == 1e-3);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <energame-binary> [doctest args]\n",
                 argv[0]);
    return 1;
  }
  g_binary = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}
