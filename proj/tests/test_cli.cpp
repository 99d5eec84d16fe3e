#include <doctest.h>

#include <random>
#include <sstream>

#include "lcurve/cli.hpp"
#include "lcurve/config.hpp"
#include "lcurve/report.hpp"

using namespace lcurve;
using nlohmann::json;

namespace {

std::string run_to_string(int (*runner)(const json&, const CliOptions&, std::ostream&),
                          const json& cfg, int* code = nullptr) {
  std::ostringstream out;
  CliOptions opts;
  int rc = runner(cfg, opts, out);
  if (code) *code = rc;
  return out.str();
}

}  // namespace

TEST_CASE("config literals parse exactly") {
  CHECK(parse_rational(json::parse("\"1/3\"")) == rat(1, 3));
  CHECK(parse_rational(json::parse("\"0.2\"")) == rat(1, 5));
  CHECK(parse_rational(json::parse("0.25")) == rat(1, 4));
  CHECK(parse_rational(json::parse("3")) == rat(3));
  CHECK_THROWS_AS(parse_rational(json::parse("\"1/0\"")), ConfigError);
  CHECK_THROWS_AS(parse_rational(json::parse("null")), ConfigError);

  IntervalSet a = parse_interval_set(json::parse(R"([["0","1/3"],[0.5,0.75]])"));
  REQUIRE(a.pieces.size() == 2);
  CHECK(a.pieces[0].hi == rat(1, 3));
  CHECK(a.pieces[1].lo == rat(1, 2));

  Vector h = parse_vector(json::parse(R"({"hat": {"c": 0.5, "n": 10}})"));
  CHECK(vec_eval_exact(h, rat(1, 2)) == rat(1));
  Vector combo = parse_vector(json::parse(
      R"({"sum": [{"scale": 2, "of": {"ind": 0.25}}, {"hat": {"c": 0.25, "n": 4}}]})"));
  CHECK(vec_eval_exact(combo, rat(1, 4)) == rat(3));

  Vector fin = parse_vector(json::parse(R"({"coords": [1, 2, 3]})"));
  CHECK(fin.coords == std::vector<double>{1, 2, 3});
}

TEST_CASE("interval sets round-trip through their JSON form") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<long> dist(0, 719);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IntervalSet::Piece> pieces;
    int n = static_cast<int>(gen() % 4);
    for (int i = 0; i < n; ++i) {
      long a = dist(gen), b = dist(gen);
      pieces.push_back({rat(std::min(a, b), 720), rat(std::max(a, b) + 1, 720)});
    }
    IntervalSet s = IntervalSet::from_pieces(std::move(pieces));
    CHECK(parse_interval_set(interval_set_to_json(s)) == s);
  }
}

TEST_CASE("quadrature csv rows carry the fixed schema") {
  std::ostringstream out;
  CsvWriter csv(out);
  write_quadrature_header(csv);
  QuadratureResult res;
  res.value = 0.5;
  res.raw_integral = 0.25;
  res.cells = 4;
  write_quadrature_row(csv, "hat10", "q[x=1/2]", 2.0, res);
  CHECK(out.str() ==
        "curve,seminorm,p,value,error_bound,cells,method\n"
        "hat10,q[x=1/2],2,0.5,0,4,exact-piecewise\n");
}

TEST_CASE("cover command: frozen dyadic example and determinism") {
  json cfg = json::parse(R"({"A": [["0","1/3"]], "eps": ["1/100"]})");
  int code = -1;
  std::string table = run_to_string(run_cover, cfg, &code);
  CHECK(code == 0);
  CHECK(table ==
        "eps,level,cells,symm_diff,result,detail\n"
        "1/100,6,21,1/192,pass,0-20\n");
  CHECK(run_to_string(run_cover, cfg) == table);  // byte-identical rerun
}

TEST_CASE("pathology command emits rate, separation and preimage sections") {
  json cfg = json::parse(R"({"n": [10], "x": ["1/2", "3/10"], "p": [1]})");
  int code = -1;
  std::string table = run_to_string(run_pathology, cfg, &code);
  CHECK(code == 0);
  // value 2/(n(p+1)) = 0.1 against bound 2/n = 0.2
  CHECK(table.find("hat_lp_rate,10,1/2,1,0.1,0.2,pass") != std::string::npos);
  CHECK(table.find("delta_separation") != std::string::npos);
  CHECK(table.find("window=(1/2,3/2) -> {1/2}") != std::string::npos);
  CHECK(table.find("[0,1]\\{1/2}") != std::string::npos);
}

TEST_CASE("urysohn command verifies the paper-rate bound column") {
  json cfg = json::parse(R"({
    "A": [["0.2","0.6"]],
    "y0": {"coords": [1]},
    "n": [5],
    "p": [1],
    "q": [{"coord": 0}],
    "space": {"dim": 1}
  })");
  int code = -1;
  std::string table = run_to_string(run_urysohn, cfg, &code);
  CHECK(code == 0);
  CHECK(table.find("continuous_approx_char") != std::string::npos);
  CHECK(table.find("0.2,") != std::string::npos);  // bound column q(y0)^p/n
  CHECK(table.find("pass") != std::string::npos);
}

TEST_CASE("dyadic command: exact error column for the linear curve") {
  json cfg = json::parse(R"({
    "curve": {"pw": {"name": "linear"}},
    "levels": [3],
    "p": [1],
    "q": [{"coord": 0}],
    "space": {"dim": 1},
    "id": "linear"
  })");
  int code = -1;
  std::string table = run_to_string(run_dyadic, cfg, &code);
  CHECK(code == 0);
  CHECK(table.find("linear,3,q[0],1,0.03125,") != std::string::npos);  // 1/32
}

TEST_CASE("density and integrate commands pass on the hat path") {
  json density_cfg = json::parse(R"({
    "curve": {"hat_path": 5},
    "eps": [0.1],
    "p": 1,
    "q": [{"x": "1/2"}]
  })");
  int code = -1;
  std::string table = run_to_string(run_density, density_cfg, &code);
  CHECK(code == 0);
  CHECK(table.find("lp_simple_approx") != std::string::npos);

  json integrate_cfg = json::parse(R"({
    "curve": {"hat_path": 10},
    "q": [{"x": "1/2"}]
  })");
  std::string itable = run_to_string(run_integrate, integrate_cfg, &code);
  CHECK(code == 0);
  CHECK(itable.find("weak_residual") != std::string::npos);
  CHECK(itable.find("seminorm_integral_inequality") != std::string::npos);
  CHECK(itable.find("running_integral_modulus") != std::string::npos);
  CHECK(itable.find("fail") == std::string::npos);
}

TEST_CASE("limit command: failure exits 1 with the witness row") {
  json cfg = json::parse(R"({
    "sequence": {"hat_discretization": {"ns": [5, 10, 20], "mesh": "1/100"}},
    "q": [{"x": "3/10"}],
    "tails": [0.4]
  })");
  int code = -1;
  std::string table = run_to_string(run_limit, cfg, &code);
  CHECK(code == 1);
  CHECK(table.find("cauchy_failure") != std::string::npos);
  CHECK(table.find("0.5") != std::string::npos);

  // a constant sequence certifies every level
  json ok_cfg = json::parse(R"({
    "sequence": [{"constant": {"coords": [2]}}, {"constant": {"coords": [2]}}],
    "q": [{"coord": 0}],
    "space": {"dim": 1},
    "tails": [0.5, 0.25]
  })");
  std::string ok_table = run_to_string(run_limit, ok_cfg, &code);
  CHECK(code == 0);
  CHECK(ok_table.find("cauchy_level,1,") != std::string::npos);
  CHECK(ok_table.find("limit,") != std::string::npos);
}

TEST_CASE("cli_main maps errors to documented exit codes") {
  // missing required keys -> config error -> 2
  json bad = json::parse(R"({"n": [1]})");
  std::ostringstream sink;
  CliOptions opts;
  CHECK_THROWS_AS(run_pathology(bad, opts, sink), ConfigError);

  const char* argv_bad[] = {"lcurve_cli", "frobnicate"};
  CHECK(cli_main(2, argv_bad) == 2);
}
