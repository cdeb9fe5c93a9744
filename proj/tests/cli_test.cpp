#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = TWINTUNNEL_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::current_path() / "cli_test_tmp";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, std::string* output = nullptr) {
  const std::string log = (fs::current_path() / "cli_test_tmp" / "out.log").string();
  const std::string cmd = kCli + " " + args + " > " + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("sweep subcommand writes preset CSVs") {
  TempDir tmp;
  const std::string out = tmp.file("fig1.csv");
  CHECK(run("sweep --preset fig1 --out " + out) == 0);
  const auto table = testutil::read_csv_file(out);
  CHECK(table.columns == std::vector<std::string>{"q", "P_dis_a", "P_dis_mix", "P_dis_sup"});
  CHECK(table.rows.size() == 1391);  // preset resolution: 1390 intervals
  CHECK(*table.rows.front()[0] == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(*table.rows.back()[0] == doctest::Approx(1.40).epsilon(1e-12));
}

TEST_CASE("sweep output is deterministic across runs and thread counts") {
  TempDir tmp;
  const std::string a = tmp.file("a.csv"), b = tmp.file("b.csv"), c = tmp.file("c.csv");
  CHECK(run("sweep --steps 139 --threads 1 --out " + a) == 0);
  CHECK(run("sweep --steps 139 --threads 1 --out " + b) == 0);
  CHECK(run("sweep --steps 139 --threads 8 --out " + c) == 0);
  const std::string bytes = slurp(a);
  CHECK(bytes == slurp(b));
  CHECK(bytes == slurp(c));
}

TEST_CASE("fig4 preset carries the Pauli gap in the mixture column only") {
  TempDir tmp;
  const std::string out = tmp.file("fig4.csv");
  REQUIRE(run("sweep --preset fig4 --out " + out) == 0);
  const auto table = testutil::read_csv_file(out);
  // columns: q, mix_boson, sup_boson, mix_fermion, sup_fermion
  int gaps = 0;
  for (const auto& row : table.rows) {
    if (!row[3].has_value()) {
      ++gaps;
      CHECK(*row[0] == doctest::Approx(0.95).epsilon(1e-9));
      CHECK(row[1].has_value());
      CHECK(row[2].has_value());
      CHECK(row[4].has_value());
    }
  }
  CHECK(gaps == 1);
}

TEST_CASE("plot subcommand renders the sweep") {
  TempDir tmp;
  const std::string csv = tmp.file("fig1.csv"), svg = tmp.file("fig1.svg");
  REQUIRE(run("sweep --preset fig1 --steps 139 --out " + csv) == 0);
  CHECK(run("plot --in " + csv + " --out " + svg + " --title fig1") == 0);
  const std::string content = slurp(svg);
  CHECK(count_occurrences(content, "<polyline") == 3);
  CHECK(content.find("q [m.u.]") != std::string::npos);

  // the fermion-mixture gap shows up as a split polyline
  const std::string csv4 = tmp.file("fig4.csv"), svg4 = tmp.file("fig4.svg");
  REQUIRE(run("sweep --preset fig4 --steps 139 --out " + csv4) == 0);
  REQUIRE(run("plot --in " + csv4 + " --out " + svg4) == 0);
  const std::string content4 = slurp(svg4);
  // 4 series, the two fermion-mixture segments add one extra polyline
  CHECK(count_occurrences(content4, "<polyline") == 5);
}

TEST_CASE("point subcommand prints the full report") {
  TempDir tmp;
  std::string out;
  CHECK(run("point --q 1.0", &out) == 0);
  CHECK(out.find("P_dis_sup") != std::string::npos);
  CHECK(out.find("P_ide_sup_fermion") != std::string::npos);
  CHECK(out.find("overlaps") != std::string::npos);
  CHECK(out.find("undefined") == std::string::npos);  // everything defined at q = 1

  std::string gap;
  CHECK(run("point --q 0.95", &gap) == 0);
  CHECK(gap.find("undefined") != std::string::npos);  // fermion exclusion at q = p
}

TEST_CASE("invalid configuration exits non-zero and writes nothing") {
  TempDir tmp;
  const std::string out = tmp.file("bad.csv");
  std::string msg;
  CHECK(run("sweep --q-min 2.0 --out " + out, &msg) != 0);
  CHECK(!fs::exists(out));
  CHECK(msg.find("error") != std::string::npos);
}

TEST_CASE("config file settings apply and flags win") {
  TempDir tmp;
  const std::string cfg = tmp.file("run.cfg");
  {
    std::ofstream f(cfg);
    f << "steps = 139\nq_min = 0.5\nq_max = 1.0\nstatistics = distinguishable\n";
  }
  const std::string out = tmp.file("cfg.csv");
  REQUIRE(run("sweep --config " + cfg + " --out " + out) == 0);
  auto table = testutil::read_csv_file(out);
  CHECK(table.rows.size() == 140);
  CHECK(table.columns.size() == 5);  // q + four distinguishable columns
  CHECK(*table.rows.front()[0] == doctest::Approx(0.5).epsilon(1e-12));

  const std::string out2 = tmp.file("cfg_override.csv");
  REQUIRE(run("sweep --config " + cfg + " --q-min 0.8 --steps 10 --out " + out2) == 0);
  table = testutil::read_csv_file(out2);
  CHECK(table.rows.size() == 11);
  CHECK(*table.rows.front()[0] == doctest::Approx(0.8).epsilon(1e-12));

  std::string msg;
  CHECK(run("sweep --config does_not_exist.cfg --out " + tmp.file("x.csv"), &msg) != 0);
}

TEST_CASE("validate subcommand") {
  TempDir tmp;
  std::string out;
  // trimmed grid keeps the runtime low; tolerances stay at their defaults
  CHECK(run("validate --grid-points 256", &out) == 0);
  CHECK(count_occurrences(out, "PASS") == 5);  // four checks + overall
  CHECK(out.find("overall: PASS") != std::string::npos);

  std::string fail;
  CHECK(run("validate --grid-points 256 --tol-transmission 1e-15", &fail) == 2);
  CHECK(fail.find("FAIL") != std::string::npos);
  CHECK(fail.find("overall: FAIL") != std::string::npos);

  // without a barrier every check is trivially satisfied
  std::string trivial;
  CHECK(run("validate --grid-points 256 --d 0", &trivial) == 0);
  CHECK(trivial.find("overall: PASS") != std::string::npos);
}
