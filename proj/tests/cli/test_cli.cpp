#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int exit_code = -1;
  std::string out;
};

// Runs the tool from the fixture directory so transcripts carry no absolute paths.
Outcome run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = "cd '" CHOICEMATCH_FIXTURE_DIR "' && '" CHOICEMATCH_CLI "' " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Golden {
  const char* name;
  const char* args;
  int exit_code;
};

void PrintTo(const Golden& g, std::ostream* os) { *os << g.name; }

const Golden kGolden[] = {
    {"axioms_sub_not_ga", "axioms --input sub_not_ga.market --agent the_agent", 1},
    {"axioms_sub_not_ga_json", "--format json axioms --input sub_not_ga.market --agent the_agent", 1},
    {"axioms_as_printed", "axioms --input sub_not_ga_as_printed.table --axiom SUB", 1},
    {"axioms_sub_ga_not_pi", "axioms --input sub_ga_not_pi.table --max-k 8", 1},
    {"axioms_sub_ga_not_pi_holds", "axioms --input sub_ga_not_pi.table --axiom SUB BA", 0},
    {"axioms_w3_ba", "axioms --input example_o2o.market --agent w3 --axiom BA", 1},
    {"validate_m2m", "validate --input example_m2m.market", 0},
    {"gda_sub_ga_not_pi", "gda --input sub_ga_not_pi.table --trace", 0},
    {"gda_sub_not_ga", "gda --input sub_not_ga.table", 3},
    {"gdma_sub_not_ga", "gdma --input sub_not_ga.market", 3},
    {"gdma_m2m_needs_sub", "gdma --input example_m2m.market", 1},
    {"gdma_m2m", "gdma --input example_m2m.market --no-sub-check --trace", 0},
    {"gdma_sub_ga_not_pi_json", "--format json gdma --input sub_ga_not_pi.market --trace", 0},
    {"daa_o2o", "daa --input example_o2o.market", 1},
    {"verify_cy_m2m", "verify cy --input example_m2m.market --matching example_m2m.matching", 0},
    {"verify_ir_m2m", "verify ir --input example_m2m.market --matching example_m2m.matching", 0},
    {"verify_r_o2o", "verify r --input example_o2o.market --matching example_o2o.matching", 0},
    {"enumerate_cy_m2m", "enumerate cy --input example_m2m.market", 0},
    {"enumerate_smir", "enumerate smir --input sub_ga_not_pi.table", 0},
    {"gen_market", "gen --seed 7 --profile SUB_GA", 0},
    {"gen_table", "gen --seed 11 --table --n 3 --profile PI", 0},
};

}  // namespace

class GoldenTranscript : public ::testing::TestWithParam<Golden> {};

TEST_P(GoldenTranscript, MatchesExpected) {
  const Golden& g = GetParam();
  const Outcome r = run(g.args);
  EXPECT_EQ(r.exit_code, g.exit_code) << g.args;
  const fs::path expected = fs::path(CHOICEMATCH_EXPECTED_DIR) / (std::string(g.name) + ".out");
  if (std::getenv("CHOICEMATCH_UPDATE_GOLDEN")) {
    std::ofstream(expected, std::ios::binary) << r.out;
    return;
  }
  ASSERT_TRUE(fs::exists(expected)) << expected;
  EXPECT_EQ(r.out, slurp(expected)) << g.args;
}

INSTANTIATE_TEST_SUITE_P(Cli, GoldenTranscript, ::testing::ValuesIn(kGolden),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(Cli, UsageAndLoadErrorsExitTwo) {
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("axioms").exit_code, 2);
  EXPECT_EQ(run("--format yaml axioms --input sub_not_ga.table").exit_code, 2);
  EXPECT_EQ(run("axioms --input missing.table").exit_code, 2);
  EXPECT_EQ(run("axioms --input sub_not_ga.table --axiom XYZ").exit_code, 2);
  EXPECT_EQ(run("axioms --input example_m2m.market --agent nobody").exit_code, 2);
  EXPECT_EQ(run("verify cy --input example_m2m.market --matching example_m2m.market").exit_code, 2);
  EXPECT_EQ(run("gen --profile PI").exit_code, 2);
}

TEST(Cli, DiagnosticsGoToStderr) {
  const Outcome quiet = run("axioms --input missing.table");
  EXPECT_TRUE(quiet.out.empty());
  const Outcome loud = run("axioms --input missing.table", true);
  EXPECT_FALSE(loud.out.empty());
}

TEST(Cli, BudgetTripExitsThree) {
  EXPECT_EQ(run("axioms --input sub_ga_not_pi.table --axiom GA --max-k 8 --budget 3").exit_code, 3);
  // One grow move suffices here, and the cyclic table needs more than one.
  EXPECT_EQ(run("gda --input sub_ga_not_pi.table --budget 1").exit_code, 0);
  EXPECT_EQ(run("gda --input sub_not_ga.table --budget 1").exit_code, 3);
  // This generated market needs three accepted rounds.
  const fs::path market = fs::temp_directory_path() / "choicematch_cli_budget.market";
  ASSERT_EQ(run("gen --seed 29 --firms 3 --workers 3 --contracts 6 --output '" + market.string() + "'").exit_code, 0);
  EXPECT_EQ(run("gdma --input '" + market.string() + "' --budget 2").exit_code, 3);
  EXPECT_EQ(run("gdma --input '" + market.string() + "' --budget 3").exit_code, 0);
  fs::remove(market);
}

TEST(Cli, TextAndJsonReportTheSameVerdicts) {
  for (const char* input : {"sub_not_ga.table", "sub_ga_not_pi.table", "example_m2m.market"}) {
    const std::string args = std::string("axioms --max-k 8 --input ") + input;
    const Outcome text = run(args);
    const Outcome json = run("--format json " + args);
    EXPECT_EQ(text.exit_code, json.exit_code);
    const auto doc = nlohmann::json::parse(json.out);
    for (const auto& agent : doc["agents"]) {
      for (const auto& v : agent["verdicts"]) {
        const std::string line = "verdict: " + v["verdict"].get<std::string>() + "\n";
        EXPECT_NE(text.out.find(line), std::string::npos) << input;
      }
    }
  }
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const char* args : {"axioms --input example_m2m.market", "enumerate cy --input example_m2m.market",
                           "gdma --input sub_ga_not_pi.market --trace"}) {
    const Outcome a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(run(std::string("--jobs 4 ") + args).out, a.out) << args;
  }
}

TEST(Cli, GenWritesFilesThatLoadBack) {
  const fs::path dir = fs::temp_directory_path() / "choicematch_cli_test";
  fs::create_directories(dir);
  const std::string market = (dir / "g.market").string(), verdicts = (dir / "g.json").string();
  ASSERT_EQ(run("gen --seed 3 --profile BA --output '" + market + "' --verdicts '" + verdicts + "'").exit_code, 0);
  EXPECT_EQ(slurp(market), run("gen --seed 3 --profile BA").out);
  EXPECT_EQ(run("validate --input '" + market + "'").exit_code, 0);
  EXPECT_EQ(run("daa --input '" + market + "'").exit_code, 0);
  const auto v = nlohmann::json::parse(slurp(verdicts));
  EXPECT_FALSE(v.empty());
  EXPECT_NE(run("gen --seed 4 --profile BA").out, slurp(market));
  fs::remove_all(dir);
}
