#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "ardlkit/frame.hpp"
#include "ardlkit/synthetic.hpp"
#include "support.hpp"

using namespace ardlkit;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout unless redirected elsewhere.
Run cli(const std::string& args, const char* stderr_to = "&1") {
  const std::string cmd = std::string("'") + ARDLKIT_CLI_PATH + "' " + args + " 2>" + stderr_to;
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

// stdout only; stderr discarded.
Run cli_stdout(const std::string& args) { return cli(args, "/dev/null"); }

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "ardlkit_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string fixture_json() { return (fs::path(ARDLKIT_TEST_DATA_DIR) / "fixture.json").string(); }

}  // namespace

TEST_CASE("help exits 0 and lists the subcommands") {
  const auto r = cli("--help");
  CHECK(r.status == 0);
  for (const char* sub : {"unitroot", "bounds", "ardl", "robust", "granger", "diag", "mc", "pipeline", "simulate"}) {
    CHECK_THAT(r.out, ContainsSubstring(sub));
  }
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli("").status == 1);
  CHECK(cli("frobnicate").status == 1);
  CHECK(cli("bounds --max-p two").status == 1);
  CHECK(cli("mc --test kpss").status == 1);
}

TEST_CASE("unknown config key exits 1 naming the key") {
  const auto cfg = scratch() / "typo.json";
  write(cfg, R"({"data": "x.csv", "dependent": "y", "max_lags": 4})");
  const auto r = cli("pipeline -c '" + cfg.string() + "'");
  CHECK(r.status == 1);
  CHECK_THAT(r.out, ContainsSubstring("max_lags"));
}

TEST_CASE("missing dependent variable exits 1") {
  const auto csv = scratch() / "walks.csv";
  write(csv, to_csv(generate(Dgp{RandomWalk{0.0, 1.0, 1}, 40, 1})));
  CHECK(cli("bounds '" + csv.string() + "' --no-log").status == 1);
}

TEST_CASE("data errors exit 2") {
  CHECK(cli("unitroot /nonexistent/data.csv -y y").status == 2);
  const auto csv = scratch() / "ragged.csv";
  write(csv, "year,y,x\n1,1,2\n2,3\n");
  const auto r = cli("unitroot '" + csv.string() + "' -y y -x x --no-log");
  CHECK(r.status == 2);
  const auto neg = scratch() / "negative.csv";
  write(neg, "year,y,x\n1,1,2\n2,-3,2\n3,2,4\n");
  CHECK(cli("unitroot '" + neg.string() + "' -y y -x x").status == 2);
}

TEST_CASE("numerical errors exit 3") {
  auto frame = generate(Dgp{RandomWalk{0.0, 1.0, 1}, 40, 2});
  frame = frame.with_column("x1", std::vector<double>(40, 1.0));
  const auto csv = scratch() / "flat.csv";
  write(csv, to_csv(frame));
  const auto r = cli("unitroot '" + csv.string() + "' -y y -x x1 --no-log");
  CHECK(r.status == 3);
  CHECK_THAT(r.out, ContainsSubstring("unit_root stage (x1)"));
}

TEST_CASE("an I(2) variable exits 4") {
  auto frame = generate(Dgp{RandomWalk{0.0, 1.0, 1}, 60, 4});
  const auto y = frame.column("y");
  std::vector<double> i2(y.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) i2[t] = acc += y[t];
  frame = frame.with_column("y", i2);
  const auto csv = scratch() / "i2.csv";
  write(csv, to_csv(frame));
  const auto r = cli("pipeline '" + csv.string() + "' -y y -x x1 --no-log -o '" + (scratch() / "i2-out").string() + "'");
  CHECK(r.status == 4);
  CHECK_THAT(r.out, ContainsSubstring("PossibleI2"));
}

TEST_CASE("pipeline reproduces the golden json") {
  const auto out = scratch() / "golden-json";
  fs::remove_all(out);
  const auto r = cli("pipeline -c '" + fixture_json() + "' -f json -o '" + out.string() + "'");
  REQUIRE(r.status == 0);
  CHECK_THAT(r.out, ContainsSubstring("report.json"));
  const fs::path golden = fs::path(ARDLKIT_GOLDEN_DIR) / "json";
  for (const char* f : {"report.json", "cusum.svg", "cusum_sq.svg"}) {
    CHECK(test_support::read_file(out / f) == test_support::read_file(golden / f));
  }
}

TEST_CASE("subcommands write only their own tables and flags override the config") {
  const auto out = scratch() / "bounds-only";
  fs::remove_all(out);
  const auto r = cli("bounds -c '" + fixture_json() + "' -f csv --bounds-table pesaran -o '" + out.string() + "'");
  REQUIRE(r.status == 0);
  CHECK(fs::exists(out / "bounds.csv"));
  CHECK_FALSE(fs::exists(out / "ardl.csv"));
  CHECK(test_support::read_file(out / "bounds.csv") != test_support::read_file(fs::path(ARDLKIT_GOLDEN_DIR) / "csv" / "bounds.csv"));
}

TEST_CASE("mc prints replications as csv") {
  const auto r = cli_stdout("mc --test adf --dgp ar1 --rho 0.5 -T 100 --reps 100 --seed 10");
  REQUIRE(r.status == 0);
  CHECK_THAT(r.out, StartsWith("replication,statistic,reject\n0,"));
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 101);
  CHECK(cli_stdout("mc --test adf --dgp ar1 --rho 0.5 -T 100 --reps 100 --seed 10 -j 3").out == r.out);
  CHECK_THAT(cli("mc --test granger --dgp random_walk --extra 1 -T 60 --reps 100").out, ContainsSubstring("rejection rate"));
  CHECK(cli("mc --test adf --reps 50").status == 1);
}

TEST_CASE("simulate is deterministic") {
  const std::string args = "simulate --dgp ecm -T 20 --seed 3 --beta 1,2 --names a,b,c --start-year 2000 --output -";
  const auto a = cli_stdout(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == cli_stdout(args).out);
  CHECK_THAT(a.out, StartsWith("year,a,b,c\n2000,"));
  CHECK(cli("simulate --dgp ecm --alpha 0.5").status == 1);
  CHECK(cli("simulate --dgp ecm --beta 1,2 --names a,b").status == 1);
}
