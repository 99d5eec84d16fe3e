#include "lcurve/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "lcurve/approx.hpp"
#include "lcurve/config.hpp"
#include "lcurve/report.hpp"

namespace lcurve {

namespace {

std::vector<long> parse_int_list(const nlohmann::json& j, const char* what) {
  std::vector<long> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(v.get<long>());
  } else if (j.is_object() && j.contains("from") && j.contains("to")) {
    long from = j["from"].get<long>(), to = j["to"].get<long>();
    long step = j.value("step", 1L);
    if (step <= 0 || from > to) throw ConfigError(std::string(what) + ": bad range");
    for (long v = from; v <= to; v += step) out.push_back(v);
  } else if (j.is_number_integer()) {
    out.push_back(j.get<long>());
  } else {
    throw ConfigError(std::string(what) + ": expected list, range or integer");
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty");
  return out;
}

std::vector<double> parse_double_list(const nlohmann::json& j, const char* what) {
  std::vector<double> out;
  if (j.is_array())
    for (const auto& v : j) out.push_back(rat_to_double(parse_rational(v)));
  else
    out.push_back(rat_to_double(parse_rational(j)));
  if (out.empty()) throw ConfigError(std::string(what) + ": empty");
  return out;
}

std::vector<Rat> parse_rat_list(const nlohmann::json& j, const char* what) {
  std::vector<Rat> out;
  if (j.is_array())
    for (const auto& v : j) out.push_back(parse_rational(v));
  else
    out.push_back(parse_rational(j));
  if (out.empty()) throw ConfigError(std::string(what) + ": empty");
  return out;
}

struct ResolvedSeminorms {
  SpaceModel space;
  std::vector<std::size_t> indices;
};

ResolvedSeminorms seminorms_from(const nlohmann::json& cfg) {
  std::vector<SeminormSpec> specs;
  if (cfg.contains("q"))
    for (const auto& q : cfg["q"]) specs.push_back(parse_seminorm(q));
  if (specs.empty()) throw ConfigError("config needs a nonempty \"q\" list");
  SpaceModel space = build_space(cfg, specs);
  return {space, resolve_seminorms(space, specs)};
}

const nlohmann::json& require(const nlohmann::json& cfg, const char* key) {
  if (!cfg.is_object() || !cfg.contains(key))
    throw ConfigError(std::string("config needs \"") + key + "\"");
  return cfg[key];
}

int exit_code(bool all_pass) { return all_pass ? 0 : 1; }

}  // namespace

int run_pathology(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out) {
  std::vector<long> ns = parse_int_list(require(cfg, "n"), "n");
  std::vector<Rat> xs = parse_rat_list(require(cfg, "x"), "x");
  std::vector<double> ps = parse_double_list(require(cfg, "p"), "p");
  QuadOptions qopts{opts.tol};

  CsvWriter csv(out);
  csv.header({"section", "n", "x", "p", "value", "bound", "result", "detail"});
  bool all_pass = true;

  SpaceModel space = SpaceModel::pointwise(xs);
  for (long n : ns) {
    Curve hat = make_hat_path(space, rat(n));
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      for (double p : ps) {
        QuadratureResult res = lp_seminorm(hat, xi, p, qopts);
        double bound = 2.0 / static_cast<double>(n);
        bool pass = res.raw_integral <= bound + 1e-12;
        all_pass = all_pass && pass;
        csv.row({"hat_lp_rate", std::to_string(n), rat_str(xs[xi]),
                 CsvWriter::cell(p), CsvWriter::cell(res.raw_integral),
                 CsvWriter::cell(bound), CsvWriter::cell(pass), ""});
      }
    }
  }

  // separation matrix: configured sample count draws random pairs,
  // otherwise all ordered pairs from the x list
  std::vector<std::pair<Rat, Rat>> pairs;
  long samples = cfg.value("separation_samples", 0L);
  if (samples > 0) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<long> dist(0, 9999);
    while (static_cast<long>(pairs.size()) < samples) {
      Rat s = rat(dist(rng), 10000), s2 = rat(dist(rng), 10000);
      if (s != s2) pairs.push_back({s, s2});
    }
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = i + 1; j < xs.size(); ++j) pairs.push_back({xs[i], xs[j]});
  }
  for (const auto& [s, s2] : pairs) {
    double sep = delta_separation(s, s2);
    bool pass = sep == 1.0;
    all_pass = all_pass && pass;
    csv.row({"delta_separation", "", rat_str(s), "", CsvWriter::cell(sep),
             CsvWriter::cell(1.0), CsvWriter::cell(pass), "s2=" + rat_str(s2)});
  }

  // Borel preimages of the delta path under coordinate windows: single
  // coordinates, then pairwise window intersections
  for (const auto& x : xs) {
    FiniteCofinite hit = delta_preimage(x, 0.5, 1.5);
    FiniteCofinite miss = delta_preimage(x, -0.5, 0.5);
    csv.row({"delta_preimage", "", rat_str(x), "", "", "", CsvWriter::cell(true),
             "window=(1/2,3/2) -> " + hit.str()});
    csv.row({"delta_preimage", "", rat_str(x), "", "", "", CsvWriter::cell(true),
             "window=(-1/2,1/2) -> " + miss.str()});
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      FiniteCofinite joint =
          delta_preimage(xs[i], 0.5, 1.5).intersect(delta_preimage(xs[j], -0.5, 0.5));
      csv.row({"delta_preimage", "", rat_str(xs[i]), "", "", "",
               CsvWriter::cell(true),
               "window=(1/2,3/2)&x2=" + rat_str(xs[j]) + ":(-1/2,1/2) -> " +
                   joint.str()});
    }
  }
  return exit_code(all_pass);
}

int run_dyadic(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out) {
  auto resolved = seminorms_from(cfg);
  Curve curve = parse_curve(require(cfg, "curve"), resolved.space);
  std::string id = cfg.value("id", std::string("curve"));
  std::vector<long> levels = parse_int_list(require(cfg, "levels"), "levels");
  std::vector<double> ps = parse_double_list(require(cfg, "p"), "p");
  QuadOptions qopts{opts.tol};

  CsvWriter csv(out);
  csv.header({"curve", "level", "seminorm", "p", "error", "ratio", "lip_bound",
              "result"});
  bool all_pass = true;
  for (long level : levels) {
    if (level < 0 || level > 16) throw ConfigError("dyadic: level out of range [0,16]");
    Curve avg = dyadic_average(curve, static_cast<int>(level), qopts);
    Curve next = dyadic_average(curve, static_cast<int>(level + 1), qopts);
    for (std::size_t qi : resolved.indices) {
      for (double p : ps) {
        QuadratureResult err = lp_distance(curve, avg, qi, p, qopts);
        QuadratureResult err_next = lp_distance(curve, next, qi, p, qopts);
        double tol = err.value_error_bound(p) + err_next.value_error_bound(p) + 1e-12;
        std::string ratio = err_next.value > 0
                                ? CsvWriter::cell(err.value / err_next.value)
                                : "";
        bool pass = err_next.value <= err.value + tol;
        std::string lip_bound;
        if (auto lip = curve.lipschitz(qi)) {
          double bound = *lip * std::pow(2.0, -static_cast<double>(level));
          lip_bound = CsvWriter::cell(bound);
          pass = pass && err.value <= bound + tol;
        }
        all_pass = all_pass && pass;
        csv.row({id, std::to_string(level), resolved.space.seminorm_name(qi),
                 CsvWriter::cell(p), CsvWriter::cell(err.value), ratio, lip_bound,
                 CsvWriter::cell(pass)});
      }
    }
  }
  return exit_code(all_pass);
}

int run_density(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out) {
  auto resolved = seminorms_from(cfg);
  Curve curve = parse_curve(require(cfg, "curve"), resolved.space);
  std::vector<double> eps_list = parse_double_list(require(cfg, "eps"), "eps");
  double p = rat_to_double(parse_rational(require(cfg, "p")));
  QuadOptions qopts{opts.tol};

  CsvWriter csv(out);
  write_report_header(csv);
  bool all_pass = true;
  for (std::size_t qi : resolved.indices) {
    for (double eps : eps_list) {
      auto [beta, report] = lp_simple_approx(curve, qi, p, eps, qopts);
      all_pass = all_pass && report.pass;
      write_report_row(csv, report);
    }
  }
  return exit_code(all_pass);
}

int run_urysohn(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out) {
  auto resolved = seminorms_from(cfg);
  IntervalSet a = parse_interval_set(require(cfg, "A"));
  Vector y0 = parse_vector(require(cfg, "y0"));
  std::vector<long> ns = parse_int_list(require(cfg, "n"), "n");
  std::vector<double> ps = parse_double_list(require(cfg, "p"), "p");
  QuadOptions qopts{opts.tol};

  CsvWriter csv(out);
  write_report_header(csv);
  bool all_pass = true;
  for (long n : ns) {
    for (double p : ps) {
      auto [alpha, reports] = continuous_approx_char(y0, a, n, p, resolved.space, qopts);
      for (const auto& report : reports) {
        all_pass = all_pass && report.pass;
        write_report_row(csv, report);
      }
    }
  }
  return exit_code(all_pass);
}

int run_cover(const nlohmann::json& cfg, const CliOptions&, std::ostream& out) {
  IntervalSet a = parse_interval_set(require(cfg, "A"));
  std::vector<Rat> eps_list = parse_rat_list(require(cfg, "eps"), "eps");

  CsvWriter csv(out);
  csv.header({"eps", "level", "cells", "symm_diff", "result", "detail"});
  bool all_pass = true;
  for (const auto& eps : eps_list) {
    DyadicCover cover = dyadic_cover(a, eps);
    Rat err = dyadic_cover_error(a, cover);
    bool pass = err < eps;
    all_pass = all_pass && pass;
    // compress selected cells into runs
    std::string runs;
    for (std::size_t i = 0; i < cover.cells.size();) {
      std::size_t j = i;
      while (j + 1 < cover.cells.size() && cover.cells[j + 1] == cover.cells[j] + 1) ++j;
      if (!runs.empty()) runs += ";";
      runs += std::to_string(cover.cells[i]);
      if (j > i) runs += "-" + std::to_string(cover.cells[j]);
      i = j + 1;
    }
    csv.row({rat_str(eps), std::to_string(cover.level),
             std::to_string(cover.cells.size()), rat_str(err), CsvWriter::cell(pass),
             runs});
  }
  return exit_code(all_pass);
}

int run_integrate(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out) {
  auto resolved = seminorms_from(cfg);
  Curve curve = parse_curve(require(cfg, "curve"), resolved.space);
  Rat h = cfg.contains("h") ? parse_rational(cfg["h"]) : rat(1, 100);
  QuadOptions qopts{opts.tol};

  CsvWriter csv(out);
  csv.header({"section", "seminorm", "value", "bound", "result", "detail"});
  bool all_pass = true;
  std::string id = cfg.value("id", std::string("curve"));

  for (std::size_t qi : resolved.indices) {
    for (double p : {1.0, 2.0}) {
      QuadratureResult norm = lp_seminorm(curve, qi, p, qopts);
      csv.row({"lp_seminorm", resolved.space.seminorm_name(qi),
               CsvWriter::cell(norm.value), CsvWriter::cell(norm.abs_error_bound),
               CsvWriter::cell(true),
               "curve=" + id + ";p=" + double_str(p) +
                   ";cells=" + std::to_string(norm.cells) + ";method=" +
                   (norm.method == QuadratureResult::Method::ExactPiecewise
                        ? "exact-piecewise"
                        : "adaptive")});
    }
  }

  Vector z = weak_integral(curve, IntervalSet::full(), qopts);
  double residual = weak_integral_residual(curve, IntervalSet::full(), z, qopts);
  bool res_pass = residual <= 1e-10;
  all_pass = all_pass && res_pass;
  csv.row({"weak_residual", "", CsvWriter::cell(residual), CsvWriter::cell(1e-10),
           CsvWriter::cell(res_pass), "generating functionals"});

  for (std::size_t qi : resolved.indices) {
    SeminormIntegralCheck hb = hb_inequality_check(curve, qi, qopts);
    all_pass = all_pass && hb.pass;
    csv.row({"seminorm_integral_inequality", resolved.space.seminorm_name(qi),
             CsvWriter::cell(hb.lhs), CsvWriter::cell(hb.rhs + hb.error_budget),
             CsvWriter::cell(hb.pass), "rhs=" + double_str(hb.rhs)});
  }

  RunningIntegral run = running_integral(curve, h, qopts);
  for (std::size_t qi : resolved.indices) {
    double modulus = run.modulus[qi];
    CurveTerm self{rat(1), &curve};
    auto profile = seminorm_profile(std::span<const CurveTerm>(&self, 1), qi);
    std::string bound;
    bool pass = true;
    if (profile) {
      double cap = pw_sup_abs(*profile) * rat_to_double(h) + 1e-12;
      bound = CsvWriter::cell(cap);
      pass = modulus <= cap;
    }
    all_pass = all_pass && pass;
    csv.row({"running_integral_modulus", resolved.space.seminorm_name(qi),
             CsvWriter::cell(modulus), bound, CsvWriter::cell(pass),
             "h=" + rat_str(h)});
  }
  return exit_code(all_pass);
}

int run_limit(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out) {
  auto resolved = seminorms_from(cfg);
  std::vector<Curve> members;
  const auto& seq = require(cfg, "sequence");
  if (seq.is_array()) {
    for (const auto& c : seq) members.push_back(parse_curve(c, resolved.space));
  } else if (seq.is_object() && seq.contains("hat_discretization")) {
    const auto& hd = seq["hat_discretization"];
    Rat mesh = parse_rational(require(hd, "mesh"));
    for (long n : parse_int_list(require(hd, "ns"), "ns"))
      members.push_back(hat_discretization(resolved.space, rat(n), mesh));
  } else {
    throw ConfigError("limit: \"sequence\" must be a curve list or hat_discretization");
  }

  std::vector<double> tails;
  if (cfg.contains("tails")) {
    tails = parse_double_list(cfg["tails"], "tails");
  } else {
    for (int k = 1; k <= opts.depth; ++k) tails.push_back(1.0 / k);
  }
  Rat grid_step = cfg.contains("grid_step") ? parse_rational(cfg["grid_step"])
                                            : rat(1, 64);

  CsvWriter csv(out);
  csv.header({"section", "k", "eps", "tail_index", "checked_sup", "complement_bound",
              "result", "detail"});
  try {
    LimitResult result = uniform_limit_certificate(members, tails, resolved.indices,
                                                   opts.depth, grid_step);
    for (const auto& level : result.levels) {
      csv.row({"cauchy_level", std::to_string(level.k), CsvWriter::cell(level.eps_k),
               std::to_string(level.tail_index), CsvWriter::cell(level.checked_sup),
               rat_str(level.complement_bound), CsvWriter::cell(true), ""});
    }
    csv.row({"limit", "", "", "", "", rat_str(result.cert.eps), CsvWriter::cell(true),
             "pieces=" + std::to_string(result.limit.as_simple().pieces.size())});
    return 0;
  } catch (const CauchyFailure& failure) {
    csv.row({"cauchy_failure", "", "", "", CsvWriter::cell(failure.witness.gap),
             "", CsvWriter::cell(false),
             "m=" + std::to_string(failure.witness.m) +
                 ";n=" + std::to_string(failure.witness.n) +
                 ";t=" + rat_str(failure.witness.t)});
    return 1;
  }
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"measurable-curve experiment tables"};
  app.require_subcommand(1);

  std::string config_path = "-";
  std::string out_path;
  CliOptions opts;
  app.add_option("--config", config_path, "JSON config path ('-' for stdin)");
  app.add_option("--out", out_path, "output CSV path (default stdout)");
  app.add_option("--tol", opts.tol, "quadrature absolute tolerance");
  app.add_option("--seed", opts.seed, "seed for randomized sampling");
  app.add_option("--depth", opts.depth, "max level of the limit pipeline");

  struct Sub {
    const char* name;
    int (*runner)(const nlohmann::json&, const CliOptions&, std::ostream&);
  };
  const Sub subs[] = {
      {"pathology", run_pathology}, {"dyadic", run_dyadic}, {"density", run_density},
      {"urysohn", run_urysohn},     {"cover", run_cover},   {"integrate", run_integrate},
      {"limit", run_limit},
  };
  for (const auto& sub : subs) app.add_subcommand(sub.name, "")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    nlohmann::json cfg;
    if (config_path == "-") {
      cfg = nlohmann::json::parse(std::cin);
    } else {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config file: " + config_path);
      cfg = nlohmann::json::parse(in);
    }

    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
      file_out.open(out_path);
      if (!file_out) throw ConfigError("cannot open output file: " + out_path);
      out = &file_out;
    }

    for (const auto& sub : subs)
      if (app.got_subcommand(sub.name)) return sub.runner(cfg, opts, *out);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lcurve
