#include "lcurve/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcurve {

namespace {

const Rat kZero = rat(0);
const Rat kOne = rat(1);

PWAffine make_segments(std::vector<Rat> breaks, std::vector<double> c0,
                       std::vector<double> c1) {
  PWAffine f;
  f.breaks = std::move(breaks);
  f.c0 = std::move(c0);
  f.c1 = std::move(c1);
  return f;
}

std::size_t segment_index(const PWAffine& f, const Rat& t) {
  // last i with breaks[i] <= t; t == 1 belongs to the final segment
  auto it = std::upper_bound(f.breaks.begin(), f.breaks.end(), t);
  std::size_t i = static_cast<std::size_t>(it - f.breaks.begin());
  if (i == 0) throw std::domain_error("PWAffine::eval: t < 0");
  if (i > f.segments()) {
    if (t == kOne) return f.segments() - 1;
    throw std::domain_error("PWAffine::eval: t > 1");
  }
  return i - 1;
}

}  // namespace

PWAffine PWAffine::constant(double value) {
  return make_segments({kZero, kOne}, {value}, {0.0});
}

PWAffine PWAffine::linear(double intercept, double slope) {
  return make_segments({kZero, kOne}, {intercept}, {slope});
}

PWAffine PWAffine::step(const IntervalSet& a, double on, double off) {
  std::vector<Rat> breaks{kZero};
  std::vector<double> c0, c1;
  for (const auto& p : a.pieces) {
    if (p.lo > breaks.back()) {
      breaks.push_back(p.lo);
      c0.push_back(off);
      c1.push_back(0.0);
    }
    breaks.push_back(p.hi);
    c0.push_back(on);
    c1.push_back(0.0);
  }
  if (breaks.back() < kOne) {
    breaks.push_back(kOne);
    c0.push_back(off);
    c1.push_back(0.0);
  }
  return make_segments(std::move(breaks), std::move(c0), std::move(c1));
}

double PWAffine::eval(double t) const { return eval(rat_from_double(t)); }

double PWAffine::eval(const Rat& t) const {
  std::size_t i = segment_index(*this, t);
  return c0[i] + c1[i] * rat_to_double(t);
}

bool PWAffine::valid() const {
  if (breaks.size() != segments() + 1 || c0.size() != c1.size()) return false;
  if (breaks.empty() || breaks.front() != kZero || breaks.back() != kOne) return false;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1])) return false;
  return true;
}

namespace {

template <typename Combine>
PWAffine zip(const PWAffine& a, const PWAffine& b, Combine combine) {
  std::vector<Rat> breaks;
  std::merge(a.breaks.begin(), a.breaks.end(), b.breaks.begin(), b.breaks.end(),
             std::back_inserter(breaks));
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> c0, c1;
  std::size_t ia = 0, ib = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    while (ia + 1 < a.breaks.size() - 1 && a.breaks[ia + 1] <= breaks[i]) ++ia;
    while (ib + 1 < b.breaks.size() - 1 && b.breaks[ib + 1] <= breaks[i]) ++ib;
    auto [x0, x1] = combine(a.c0[ia], a.c1[ia], b.c0[ib], b.c1[ib]);
    c0.push_back(x0);
    c1.push_back(x1);
  }
  return make_segments(std::move(breaks), std::move(c0), std::move(c1));
}

}  // namespace

PWAffine pw_add(const PWAffine& a, const PWAffine& b) {
  return zip(a, b, [](double a0, double a1, double b0, double b1) {
    return std::pair{a0 + b0, a1 + b1};
  });
}

PWAffine pw_sub(const PWAffine& a, const PWAffine& b) {
  return zip(a, b, [](double a0, double a1, double b0, double b1) {
    return std::pair{a0 - b0, a1 - b1};
  });
}

PWAffine pw_scale(double alpha, const PWAffine& a) {
  PWAffine out = a;
  for (auto& c : out.c0) c *= alpha;
  for (auto& c : out.c1) c *= alpha;
  return out;
}

namespace {

template <typename PerSegment>
PWAffine split_at_zeros(const PWAffine& a, PerSegment transform) {
  std::vector<Rat> breaks{a.breaks.front()};
  std::vector<double> c0, c1;
  for (std::size_t i = 0; i < a.segments(); ++i) {
    const Rat& lo = a.breaks[i];
    const Rat& hi = a.breaks[i + 1];
    double lo_d = rat_to_double(lo), hi_d = rat_to_double(hi);
    std::vector<Rat> ends;
    if (a.c1[i] != 0.0) {
      double root = -a.c0[i] / a.c1[i];
      if (root > lo_d && root < hi_d) {
        Rat r = rat_from_double(root);
        if (lo < r && r < hi) ends.push_back(r);
      }
    }
    ends.push_back(hi);
    for (const Rat& end : ends) {
      double mid = (rat_to_double(breaks.back()) + rat_to_double(end)) / 2;
      auto [x0, x1] = transform(a.c0[i], a.c1[i], a.c0[i] + a.c1[i] * mid);
      breaks.push_back(end);
      c0.push_back(x0);
      c1.push_back(x1);
    }
  }
  return make_segments(std::move(breaks), std::move(c0), std::move(c1));
}

}  // namespace

PWAffine pw_abs(const PWAffine& a) {
  return split_at_zeros(a, [](double s0, double s1, double mid_value) {
    if (mid_value < 0) return std::pair{-s0, -s1};
    return std::pair{s0, s1};
  });
}

PWAffine pw_max0(const PWAffine& a) {
  return split_at_zeros(a, [](double s0, double s1, double mid_value) {
    if (mid_value < 0) return std::pair{0.0, 0.0};
    return std::pair{s0, s1};
  });
}

PWAffine pw_refine_at(const PWAffine& a, const std::vector<Rat>& points) {
  PWAffine zero = PWAffine::constant(0.0);
  std::vector<Rat> extra;
  for (const Rat& p : points)
    if (p > kZero && p < kOne) extra.push_back(p);
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  extra.insert(extra.begin(), kZero);
  extra.push_back(kOne);
  zero.breaks = extra;
  zero.c0.assign(extra.size() - 1, 0.0);
  zero.c1.assign(extra.size() - 1, 0.0);
  return pw_add(a, zero);
}

double pw_integral(const PWAffine& a) {
  double sum = 0;
  for (std::size_t i = 0; i < a.segments(); ++i) {
    double lo = rat_to_double(a.breaks[i]), hi = rat_to_double(a.breaks[i + 1]);
    sum += a.c0[i] * (hi - lo) + a.c1[i] * (hi * hi - lo * lo) / 2;
  }
  return sum;
}

double pw_integral_over(const PWAffine& a, const IntervalSet& over) {
  double sum = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.segments(); ++i) {
    const Rat& slo = a.breaks[i];
    const Rat& shi = a.breaks[i + 1];
    while (j < over.pieces.size() && over.pieces[j].hi <= slo) ++j;
    for (std::size_t k = j; k < over.pieces.size() && over.pieces[k].lo < shi; ++k) {
      double lo = rat_to_double(std::max(slo, over.pieces[k].lo));
      double hi = rat_to_double(std::min(shi, over.pieces[k].hi));
      if (lo < hi) sum += a.c0[i] * (hi - lo) + a.c1[i] * (hi * hi - lo * lo) / 2;
    }
  }
  return sum;
}

namespace {

// integral of (c0 + c1 t)^p over [lo, hi], with c0 + c1 t >= 0 there
double affine_pow_integral(double c0, double c1, double p, double lo, double hi) {
  double vlo = std::max(0.0, c0 + c1 * lo);
  double vhi = std::max(0.0, c0 + c1 * hi);
  if (c1 == 0.0) return std::pow(vlo, p) * (hi - lo);
  return (std::pow(vhi, p + 1) - std::pow(vlo, p + 1)) / (c1 * (p + 1));
}

}  // namespace

double pw_integral_pow(const PWAffine& a, double p) {
  return pw_integral_pow_over(a, p, IntervalSet::full());
}

double pw_integral_pow_over(const PWAffine& a, double p, const IntervalSet& over) {
  if (p < 1) throw std::invalid_argument("pw_integral_pow: p must be >= 1");
  double sum = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < a.segments(); ++i) {
    const Rat& slo = a.breaks[i];
    const Rat& shi = a.breaks[i + 1];
    double lo_d = rat_to_double(slo), hi_d = rat_to_double(shi);
    double vlo = a.c0[i] + a.c1[i] * lo_d, vhi = a.c0[i] + a.c1[i] * hi_d;
    if (vlo < -1e-12 || vhi < -1e-12)
      throw std::domain_error("pw_integral_pow: negative integrand segment");
    while (j < over.pieces.size() && over.pieces[j].hi <= slo) ++j;
    for (std::size_t k = j; k < over.pieces.size() && over.pieces[k].lo < shi; ++k) {
      Rat lo = std::max(slo, over.pieces[k].lo);
      Rat hi = std::min(shi, over.pieces[k].hi);
      if (lo < hi)
        sum += affine_pow_integral(a.c0[i], a.c1[i], p, rat_to_double(lo),
                                   rat_to_double(hi));
    }
  }
  return sum;
}

double pw_sup_abs(const PWAffine& a) {
  double sup = 0;
  for (std::size_t i = 0; i < a.segments(); ++i) {
    double lo = rat_to_double(a.breaks[i]), hi = rat_to_double(a.breaks[i + 1]);
    sup = std::max({sup, std::abs(a.c0[i] + a.c1[i] * lo),
                    std::abs(a.c0[i] + a.c1[i] * hi)});
  }
  return sup;
}

}  // namespace lcurve
