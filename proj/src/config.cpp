#include "lcurve/config.hpp"

#include <cmath>

namespace lcurve {

namespace {

[[noreturn]] void fail(const std::string& what, const nlohmann::json& j) {
  throw ConfigError(what + ": " + j.dump());
}

}  // namespace

Rat parse_rational(const nlohmann::json& j) {
  try {
    if (j.is_string()) return rat_parse(j.get<std::string>());
    if (j.is_number_integer()) return rat(j.get<long>());
    if (j.is_number_float()) return rat_from_double(j.get<double>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  fail("expected rational literal", j);
}

IntervalSet parse_interval_set(const nlohmann::json& j) {
  if (!j.is_array()) fail("expected interval set (array of [lo,hi])", j);
  std::vector<IntervalSet::Piece> pieces;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) fail("expected [lo, hi] pair", pair);
    pieces.push_back({parse_rational(pair[0]), parse_rational(pair[1])});
  }
  return IntervalSet::from_pieces(std::move(pieces));
}

nlohmann::json interval_set_to_json(const IntervalSet& a) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : a.pieces)
    out.push_back(nlohmann::json::array({rat_str(p.lo), rat_str(p.hi)}));
  return out;
}

Vector parse_vector(const nlohmann::json& j) {
  if (!j.is_object()) fail("expected vector literal", j);
  if (j.contains("coords")) {
    std::vector<double> coords;
    for (const auto& c : j["coords"]) coords.push_back(rat_to_double(parse_rational(c)));
    return Vector::fin(std::move(coords));
  }
  if (j.contains("hat")) {
    const auto& h = j["hat"];
    if (!h.is_object() || !h.contains("c") || !h.contains("n"))
      fail("hat vector needs {\"c\":..,\"n\":..}", j);
    return Vector::hat(parse_rational(h["c"]), parse_rational(h["n"]));
  }
  if (j.contains("ind")) return Vector::ind(parse_rational(j["ind"]));
  if (j.contains("scale")) {
    if (!j.contains("of")) fail("scale combinator needs \"of\"", j);
    return vec_scale(parse_rational(j["scale"]), parse_vector(j["of"]));
  }
  if (j.contains("sum")) {
    const auto& terms = j["sum"];
    if (!terms.is_array() || terms.empty()) fail("sum combinator needs a list", j);
    Vector acc = parse_vector(terms[0]);
    for (std::size_t i = 1; i < terms.size(); ++i)
      acc = vec_add(acc, parse_vector(terms[i]));
    return acc;
  }
  if (j.contains("zero")) {
    std::string kind = j["zero"].get<std::string>();
    if (kind == "fin") return Vector::zero(SpaceKind::FiniteDim);
    if (kind == "pw") return Vector::zero(SpaceKind::Pointwise);
  }
  fail("unknown vector literal", j);
}

SeminormSpec parse_seminorm(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("expected seminorm spec: " + j.dump());
  SeminormSpec spec;
  if (j.contains("x")) {
    spec.pointwise = true;
    spec.x = parse_rational(j["x"]);
    return spec;
  }
  if (j.contains("coord")) {
    spec.coord = j["coord"].get<int>();
    if (spec.coord < 0) throw ConfigError("seminorm coord must be >= 0");
    return spec;
  }
  if (j.contains("weights")) {
    for (const auto& w : j["weights"]) {
      double v = rat_to_double(parse_rational(w));
      if (v < 0) throw ConfigError("seminorm weights must be >= 0");
      spec.weights.push_back(v);
    }
    if (spec.weights.empty()) throw ConfigError("seminorm weights empty");
    return spec;
  }
  throw ConfigError("unknown seminorm spec: " + j.dump());
}

SpaceModel build_space(const nlohmann::json& root, const std::vector<SeminormSpec>& qs) {
  bool any_pointwise = false, any_findim = false;
  int needed_dim = 1;
  for (const auto& q : qs) {
    if (q.pointwise) {
      any_pointwise = true;
    } else {
      any_findim = true;
      if (q.coord >= 0) needed_dim = std::max(needed_dim, q.coord + 1);
      needed_dim = std::max(needed_dim, static_cast<int>(q.weights.size()));
    }
  }
  if (any_pointwise && any_findim)
    throw ConfigError("cannot mix pointwise and coordinate seminorms");

  if (root.is_object() && root.contains("space")) {
    const auto& sp = root["space"];
    if (sp.contains("dim")) {
      if (any_pointwise) throw ConfigError("space dim given but pointwise seminorms used");
      int d = sp["dim"].get<int>();
      std::vector<CoordSeminorm> family;
      for (const auto& q : qs) {
        CoordSeminorm cs;
        cs.weights.assign(d, 0.0);
        if (q.coord >= 0) {
          if (q.coord >= d) throw ConfigError("seminorm coord exceeds dim");
          cs.weights[q.coord] = 1.0;
        } else {
          if (static_cast<int>(q.weights.size()) > d)
            throw ConfigError("seminorm weights exceed dim");
          std::copy(q.weights.begin(), q.weights.end(), cs.weights.begin());
        }
        family.push_back(std::move(cs));
      }
      if (family.empty()) return SpaceModel::finite_dim(d);
      return SpaceModel::finite_dim(d, std::move(family));
    }
    if (sp.contains("points")) {
      std::vector<Rat> xs;
      for (const auto& x : sp["points"]) xs.push_back(parse_rational(x));
      for (const auto& q : qs) {
        if (!q.pointwise) throw ConfigError("pointwise space with coordinate seminorm");
        if (std::find(xs.begin(), xs.end(), q.x) == xs.end()) xs.push_back(q.x);
      }
      return SpaceModel::pointwise(std::move(xs));
    }
    throw ConfigError("space object needs \"dim\" or \"points\"");
  }

  if (any_pointwise) {
    std::vector<Rat> xs;
    for (const auto& q : qs)
      if (std::find(xs.begin(), xs.end(), q.x) == xs.end()) xs.push_back(q.x);
    return SpaceModel::pointwise(std::move(xs));
  }
  // finite-dimensional default
  std::vector<CoordSeminorm> family;
  for (const auto& q : qs) {
    CoordSeminorm cs;
    cs.weights.assign(needed_dim, 0.0);
    if (q.coord >= 0)
      cs.weights[q.coord] = 1.0;
    else
      std::copy(q.weights.begin(), q.weights.end(), cs.weights.begin());
    family.push_back(std::move(cs));
  }
  if (family.empty()) return SpaceModel::finite_dim(needed_dim);
  return SpaceModel::finite_dim(needed_dim, std::move(family));
}

std::vector<std::size_t> resolve_seminorms(const SpaceModel& space,
                                           const std::vector<SeminormSpec>& qs) {
  std::vector<std::size_t> out;
  for (const auto& q : qs) {
    if (space.kind == SpaceKind::Pointwise) {
      auto it = std::find(space.eval_points.begin(), space.eval_points.end(), q.x);
      if (it == space.eval_points.end())
        throw ConfigError("seminorm point not active in space");
      out.push_back(static_cast<std::size_t>(it - space.eval_points.begin()));
    } else {
      // by construction qs were installed in order
      out.push_back(out.size());
      if (out.back() >= space.seminorms.size())
        throw ConfigError("seminorm index out of range");
    }
  }
  return out;
}

namespace {

Curve parse_registered(const nlohmann::json& j, const SpaceModel& space) {
  if (!j.contains("name")) throw ConfigError("pw curve needs \"name\"");
  std::string name = j["name"].get<std::string>();
  std::map<std::size_t, double> lip;
  if (j.contains("lip"))
    for (const auto& [key, value] : j["lip"].items())
      lip[static_cast<std::size_t>(std::stoul(key))] =
          rat_to_double(parse_rational(value));
  std::vector<Rat> breaks;
  if (j.contains("breaks"))
    for (const auto& b : j["breaks"]) breaks.push_back(parse_rational(b));

  if (name == "linear") {
    // t -> t * e1
    if (space.kind != SpaceKind::FiniteDim)
      throw ConfigError("curve 'linear' needs a finite-dimensional space");
    std::vector<double> e1(static_cast<std::size_t>(space.dim), 0.0);
    e1[0] = 1.0;
    return make_shape(space, PWAffine::linear(0.0, 1.0), Vector::fin(std::move(e1)));
  }
  if (name == "sin") {
    // t -> sin(2 pi t) * e1, black-box evaluator with declared Lipschitz 2pi
    if (space.kind != SpaceKind::FiniteDim)
      throw ConfigError("curve 'sin' needs a finite-dimensional space");
    int dim = space.dim;
    auto evaluator = [dim](double t) {
      std::vector<double> coords(static_cast<std::size_t>(dim), 0.0);
      coords[0] = std::sin(2.0 * M_PI * t);
      return Vector::fin(std::move(coords));
    };
    if (lip.empty())
      for (std::size_t qi = 0; qi < space.seminorm_count(); ++qi)
        lip[qi] = 2.0 * M_PI * space.seminorms[qi].weights[0];
    return make_general(space, evaluator, std::move(breaks), std::move(lip), name);
  }
  throw ConfigError("unknown registered curve '" + name + "'");
}

}  // namespace

Curve parse_curve(const nlohmann::json& j, const SpaceModel& space) {
  if (!j.is_object()) throw ConfigError("expected curve literal: " + j.dump());
  if (j.contains("simple")) {
    std::vector<SimpleCurve::Piece> pieces;
    for (const auto& pair : j["simple"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw ConfigError("simple curve pieces are [vector, intervalset] pairs");
      pieces.push_back({parse_vector(pair[0]), parse_interval_set(pair[1])});
    }
    return make_simple(space, std::move(pieces));
  }
  if (j.contains("constant")) return make_constant(space, parse_vector(j["constant"]));
  if (j.contains("hat_path")) return make_hat_path(space, parse_rational(j["hat_path"]));
  if (j.contains("delta_path")) return make_delta_path(space);
  if (j.contains("shape")) {
    const auto& sh = j["shape"];
    if (!sh.contains("breaks") || !sh.contains("values") || !sh.contains("direction"))
      throw ConfigError("shape curve needs breaks, values, direction");
    std::vector<Rat> xs;
    for (const auto& b : sh["breaks"]) xs.push_back(parse_rational(b));
    std::vector<double> ys;
    for (const auto& v : sh["values"]) ys.push_back(rat_to_double(parse_rational(v)));
    if (xs.size() != ys.size() || xs.size() < 2)
      throw ConfigError("shape curve: breaks/values must align, length >= 2");
    if (xs.front() != rat(0) || xs.back() != rat(1))
      throw ConfigError("shape curve: breaks must span [0,1]");
    PWAffine f;
    f.breaks = xs;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      double x0 = rat_to_double(xs[i]), x1 = rat_to_double(xs[i + 1]);
      double slope = (ys[i + 1] - ys[i]) / (x1 - x0);
      f.c0.push_back(ys[i] - slope * x0);
      f.c1.push_back(slope);
    }
    return make_shape(space, std::move(f), parse_vector(sh["direction"]));
  }
  if (j.contains("pw")) return parse_registered(j["pw"], space);
  throw ConfigError("unknown curve literal: " + j.dump());
}

}  // namespace lcurve
