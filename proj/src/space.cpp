#include "lcurve/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcurve {

SpaceModel SpaceModel::finite_dim(int d) {
  std::vector<CoordSeminorm> qs;
  for (int j = 0; j < d; ++j) {
    CoordSeminorm q;
    q.weights.assign(d, 0.0);
    q.weights[j] = 1.0;
    qs.push_back(std::move(q));
  }
  return finite_dim(d, std::move(qs));
}

SpaceModel SpaceModel::finite_dim(int d, std::vector<CoordSeminorm> qs) {
  if (d <= 0) throw std::invalid_argument("SpaceModel: dim must be positive");
  for (const auto& q : qs) {
    if (static_cast<int>(q.weights.size()) != d)
      throw std::invalid_argument("SpaceModel: seminorm weight size mismatch");
    for (double w : q.weights)
      if (w < 0) throw std::invalid_argument("SpaceModel: negative seminorm weight");
  }
  SpaceModel s;
  s.kind = SpaceKind::FiniteDim;
  s.dim = d;
  s.seminorms = std::move(qs);
  return s;
}

SpaceModel SpaceModel::pointwise(std::vector<Rat> xs) {
  SpaceModel s;
  s.kind = SpaceKind::Pointwise;
  s.eval_points = std::move(xs);
  return s;
}

std::size_t SpaceModel::seminorm_count() const {
  return kind == SpaceKind::FiniteDim ? seminorms.size() : eval_points.size();
}

std::string SpaceModel::seminorm_name(std::size_t qi) const {
  if (qi >= seminorm_count()) throw std::out_of_range("seminorm_name: bad index");
  if (kind == SpaceKind::Pointwise) return "q[x=" + rat_str(eval_points[qi]) + "]";
  return "q[" + std::to_string(qi) + "]";
}

bool SpaceModel::compatible(const SpaceModel& other) const {
  if (kind != other.kind) return false;
  if (kind == SpaceKind::FiniteDim) return dim == other.dim;
  return true;
}

Vector Vector::zero(SpaceKind k) {
  Vector v;
  v.kind = k;
  return v;
}

Vector Vector::fin(std::vector<double> coords) {
  Vector v;
  v.kind = SpaceKind::FiniteDim;
  v.coords = std::move(coords);
  return v;
}

Vector Vector::hat(const Rat& center, const Rat& steep) {
  if (steep <= 0) throw std::invalid_argument("hat: steepness must be positive");
  Vector v;
  v.kind = SpaceKind::Pointwise;
  v.terms.push_back({rat(1), HatPrim{center, steep}});
  return v;
}

Vector Vector::ind(const Rat& at) {
  Vector v;
  v.kind = SpaceKind::Pointwise;
  v.terms.push_back({rat(1), IndPrim{at}});
  return v;
}

bool Vector::is_zero() const {
  if (kind == SpaceKind::FiniteDim) {
    for (double c : coords)
      if (c != 0.0) return false;
    return true;
  }
  return terms.empty();
}

namespace {

bool prim_equal(const Primitive& a, const Primitive& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<HatPrim>(a)) {
    const auto& x = std::get<HatPrim>(a);
    const auto& y = std::get<HatPrim>(b);
    return x.center == y.center && x.steep == y.steep;
  }
  return std::get<IndPrim>(a).at == std::get<IndPrim>(b).at;
}

// canonical order: hats before indicators, then by parameters
bool prim_less(const Primitive& a, const Primitive& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (std::holds_alternative<HatPrim>(a)) {
    const auto& x = std::get<HatPrim>(a);
    const auto& y = std::get<HatPrim>(b);
    if (x.center != y.center) return x.center < y.center;
    return x.steep < y.steep;
  }
  return std::get<IndPrim>(a).at < std::get<IndPrim>(b).at;
}

// merge duplicate primitives, drop zero coefficients
std::vector<std::pair<Rat, Primitive>> normalize_terms(
    std::vector<std::pair<Rat, Primitive>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return prim_less(a.second, b.second); });
  std::vector<std::pair<Rat, Primitive>> out;
  for (auto& t : terms) {
    if (!out.empty() && prim_equal(out.back().second, t.second))
      out.back().first += t.first;
    else
      out.push_back(std::move(t));
  }
  std::erase_if(out, [](const auto& t) { return t.first == 0; });
  return out;
}

Rat prim_eval(const Primitive& p, const Rat& x) {
  if (std::holds_alternative<HatPrim>(p)) {
    const auto& h = std::get<HatPrim>(p);
    Rat v = rat(1) - h.steep * abs(x - h.center);
    return v > 0 ? v : rat(0);
  }
  return std::get<IndPrim>(p).at == x ? rat(1) : rat(0);
}

}  // namespace

Vector vec_add(const Vector& u, const Vector& v) {
  if (u.kind != v.kind) throw std::invalid_argument("vec_add: mixed space kinds");
  Vector out;
  out.kind = u.kind;
  if (u.kind == SpaceKind::FiniteDim) {
    if (u.coords.size() != v.coords.size())
      throw std::invalid_argument("vec_add: dimension mismatch");
    out.coords.resize(u.coords.size());
    for (std::size_t j = 0; j < u.coords.size(); ++j)
      out.coords[j] = u.coords[j] + v.coords[j];
  } else {
    auto terms = u.terms;
    terms.insert(terms.end(), v.terms.begin(), v.terms.end());
    out.terms = normalize_terms(std::move(terms));
  }
  return out;
}

Vector vec_scale(const Rat& alpha, const Vector& v) {
  Vector out;
  out.kind = v.kind;
  if (v.kind == SpaceKind::FiniteDim) {
    double a = rat_to_double(alpha);
    out.coords.resize(v.coords.size());
    for (std::size_t j = 0; j < v.coords.size(); ++j) out.coords[j] = a * v.coords[j];
  } else {
    if (alpha == 0) return out;
    out.terms = v.terms;
    for (auto& t : out.terms) t.first *= alpha;
  }
  return out;
}

Vector vec_scale(double alpha, const Vector& v) {
  return vec_scale(rat_from_double(alpha), v);
}

Vector vec_sub(const Vector& u, const Vector& v) {
  return vec_add(u, vec_scale(rat(-1), v));
}

Rat vec_eval_exact(const Vector& v, const Rat& x) {
  if (v.kind != SpaceKind::Pointwise)
    throw std::invalid_argument("vec_eval_exact: pointwise vectors only");
  Rat sum = 0;
  for (const auto& [coef, prim] : v.terms) sum += coef * prim_eval(prim, x);
  return sum;
}

double vec_eval(const Vector& v, double x) {
  return rat_to_double(vec_eval_exact(v, rat_from_double(x)));
}

double seminorm_eval(const SpaceModel& space, std::size_t qi, const Vector& v) {
  if (qi >= space.seminorm_count())
    throw std::out_of_range("seminorm_eval: unknown seminorm index");
  if (space.kind != v.kind)
    throw std::invalid_argument("seminorm_eval: vector/space kind mismatch");
  if (space.kind == SpaceKind::Pointwise)
    return std::abs(rat_to_double(vec_eval_exact(v, space.eval_points[qi])));
  const auto& w = space.seminorms[qi].weights;
  if (v.coords.size() != w.size())
    throw std::invalid_argument("seminorm_eval: dimension mismatch");
  double sum = 0;
  for (std::size_t j = 0; j < w.size(); ++j) sum += w[j] * std::abs(v.coords[j]);
  return sum;
}

Functional Functional::coord(int j, int dim) {
  if (j < 0 || j >= dim) throw std::invalid_argument("Functional::coord: bad index");
  Functional f;
  f.kind = SpaceKind::FiniteDim;
  f.coeffs.assign(dim, 0.0);
  f.coeffs[j] = 1.0;
  return f;
}

Functional Functional::fin(std::vector<double> coeffs) {
  Functional f;
  f.kind = SpaceKind::FiniteDim;
  f.coeffs = std::move(coeffs);
  return f;
}

Functional Functional::point_eval(const Rat& x) {
  Functional f;
  f.kind = SpaceKind::Pointwise;
  f.point_evals.push_back({rat(1), x});
  return f;
}

Functional Functional::point_combo(std::vector<std::pair<Rat, Rat>> terms) {
  Functional f;
  f.kind = SpaceKind::Pointwise;
  f.point_evals = std::move(terms);
  return f;
}

double functional_apply(const Functional& f, const Vector& v) {
  if (f.kind != v.kind)
    throw std::invalid_argument("functional_apply: functional/vector kind mismatch");
  if (f.kind == SpaceKind::FiniteDim) {
    if (f.coeffs.size() != v.coords.size())
      throw std::invalid_argument("functional_apply: dimension mismatch");
    double sum = 0;
    for (std::size_t j = 0; j < f.coeffs.size(); ++j) sum += f.coeffs[j] * v.coords[j];
    return sum;
  }
  Rat sum = 0;
  for (const auto& [coef, x] : f.point_evals) sum += coef * vec_eval_exact(v, x);
  return rat_to_double(sum);
}

std::vector<Functional> generating_functionals(const SpaceModel& space) {
  std::vector<Functional> fs;
  if (space.kind == SpaceKind::FiniteDim) {
    for (int j = 0; j < space.dim; ++j) fs.push_back(Functional::coord(j, space.dim));
  } else {
    for (const auto& x : space.eval_points) fs.push_back(Functional::point_eval(x));
  }
  return fs;
}

}  // namespace lcurve
