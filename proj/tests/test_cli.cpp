#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "extremal/cli.hpp"

using namespace extremal;

namespace {

struct RunOutcome {
  int code = -1;
  std::string out;
  std::string err;
};

RunOutcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

TEST_CASE("compute emits the frozen CSV schema") {
  auto r = run({"compute", "--space", "cube", "-n", "3", "-x", "0", "--format", "csv"});
  REQUIRE(r.code == cli::kExitOk);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  REQUIRE(lines[0] == "space,n,x,D_exact,D_decimal,witness,mcdiarmid,gauss_tail");
  auto cells = split_csv(lines[1]);
  REQUIRE(cells[0] == "cube");
  REQUIRE(cells[1] == "3");
  REQUIRE(cells[2] == "0");
  REQUIRE(cells[3] == "1");
  REQUIRE(cells[4] == "1");
  REQUIRE(cells[6] == "1");  // the classical bound is also 1 at x = 0
}

TEST_CASE("compute on the gaussian space hits one half at 1/sqrt(2 pi)") {
  auto r = run({"compute", "--space", "gauss", "-x", "0.3989422804"});
  REQUIRE(r.code == cli::kExitOk);
  auto cells = split_csv(lines_of(r.out).at(1));
  REQUIRE_THAT(std::stod(cells[4]), Catch::Matchers::WithinAbs(0.5, 1e-6));
  REQUIRE(cells[3].empty());  // continuous engines have no exact column
}

TEST_CASE("compute from a space file dispatches to the enumeration engine") {
  auto r = run({"compute", "--space", std::string("file:") + EXTREMAL_DATA_DIR + "/c1.json",
                "-x", "1/4"});
  REQUIRE(r.code == cli::kExitOk);
  auto cells = split_csv(lines_of(r.out).at(1));
  REQUIRE(cells[3] == "1/2");
  REQUIRE(cells[5] == "bits=01");
}

TEST_CASE("ascending x sweeps produce non-increasing deviations") {
  auto r = run({"compute", "--space", "cube", "-n", "5", "--x-range", "0:3:1/8"});
  REQUIRE(r.code == cli::kExitOk);
  auto lines = lines_of(r.out);
  double prev = 2.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    double v = std::stod(split_csv(lines[i])[4]);
    REQUIRE(v <= prev + 1e-15);
    prev = v;
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
  }
}

TEST_CASE("markdown and json formats") {
  auto md = run({"compute", "--space", "cube", "-n", "2", "-x", "1", "--format", "md"});
  REQUIRE(md.code == cli::kExitOk);
  REQUIRE(lines_of(md.out).at(0).rfind("| space |", 0) == 0);

  auto js = run({"compute", "--space", "cube", "-n", "2", "-x", "1", "--format", "json"});
  REQUIRE(js.code == cli::kExitOk);
  auto doc = nlohmann::json::parse(js.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  REQUIRE(doc[0]["D_exact"] == "1/4");
  REQUIRE(doc[0]["witness"] == "t=1");
}

TEST_CASE("profile emits the frozen column order") {
  auto r = run({"profile", "--space", "cube", "-n", "2"});
  REQUIRE(r.code == cli::kExitOk);
  auto lines = lines_of(r.out);
  REQUIRE(lines[0] == "k,h,min_measure,witness_bits");
  REQUIRE(lines[1] == "1,0,1/4,0001");
  REQUIRE(lines[2] == "1,1,3/4,0001");
  REQUIRE(lines.size() == 1 + 4 * 3);
}

TEST_CASE("exit code contract") {
  SECTION("config errors exit 2") {
    REQUIRE(run({"compute", "--space", "nosuch", "-x", "1"}).code == cli::kExitConfig);
    REQUIRE(run({"compute", "--space", "cube", "-x", "1"}).code == cli::kExitConfig);  // missing -n
    REQUIRE(run({"compute", "--space", "cube", "-n", "3", "-x", "zzz"}).code == cli::kExitConfig);
    REQUIRE(run({"compute", "--space", "cube", "-n", "3"}).code == cli::kExitConfig);  // no x
    REQUIRE(run({"--bogus-flag"}).code == cli::kExitConfig);
    auto r = run({"profile", "--space",
                  std::string("file:") + EXTREMAL_DATA_DIR + "/nonmetric.json"});
    REQUIRE(r.code == cli::kExitConfig);
    REQUIRE_THAT(r.err, Catch::Matchers::ContainsSubstring("triangle inequality"));
  }

  SECTION("cap violations exit 3") {
    REQUIRE(run({"compute", "--space", "power:pt2^5", "-x", "1"}).code == cli::kExitCap);
    REQUIRE(run({"compute", "--space", "cube", "-n", "25", "-x", "1"}).code == cli::kExitCap);
  }

  SECTION("compare requires a space with a classical bound") {
    REQUIRE(run({"compare", "--space", "diamond", "-x", "1"}).code == cli::kExitConfig);
  }

  SECTION("help exits 0") {
    REQUIRE(run({"--help"}).code == cli::kExitOk);
  }
}

TEST_CASE("compare fills the bound columns") {
  auto r = run({"compare", "--space", "cube", "-n", "10", "-x", "1,2,3"});
  REQUIRE(r.code == cli::kExitOk);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split_csv(lines[i]);
    double exact = std::stod(cells[4]);
    double bound = std::stod(cells[6]);
    REQUIRE(exact <= bound);
    REQUIRE_FALSE(cells[7].empty());
  }
}

TEST_CASE("verify is byte-identical across worker counts") {
  auto r1 = run({"verify", "--max-n", "2", "--trials", "200", "--seed", "99", "--workers", "1"});
  auto r3 = run({"verify", "--max-n", "2", "--trials", "200", "--seed", "99", "--workers", "3"});
  REQUIRE(r1.code == cli::kExitOk);
  REQUIRE(r1.out == r3.out);
  REQUIRE_THAT(r1.out, Catch::Matchers::ContainsSubstring("7/7 checks passed"));
}

TEST_CASE("verify reports an informational verdict for a selected space") {
  auto r = run({"verify", "--max-n", "1", "--trials", "50", "--space", "power:diamond^2"});
  REQUIRE(r.code == cli::kExitOk);
  REQUIRE_THAT(r.out, Catch::Matchers::ContainsSubstring("power:diamond^2 (16 points)"));
  REQUIRE_THAT(r.out, Catch::Matchers::ContainsSubstring("is isoperimetric"));
}
