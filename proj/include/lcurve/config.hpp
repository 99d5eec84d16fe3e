#ifndef LCURVE_CONFIG_HPP
#define LCURVE_CONFIG_HPP

#include <json.hpp>

#include <vector>

#include "lcurve/curve.hpp"
#include "lcurve/interval_set.hpp"
#include "lcurve/space.hpp"

namespace lcurve {

// JSON config ingestion. Numeric literals may be JSON numbers (converted
// exactly from their double value) or strings with exact "p/q" or decimal
// text, so non-dyadic endpoints survive parsing.
//
//   rational:     0.25 | "1/3" | "0.2"
//   interval set: [[lo, hi], ...]
//   vector:       {"coords": [..]} | {"hat": {"c":.., "n":..}} | {"ind": x}
//                 | {"scale": r, "of": vector} | {"sum": [vector, ...]}
//   seminorm:     {"coord": j} | {"weights": [..]} | {"x": r}
//   curve:        {"simple": [[vector, intervalset], ...]}
//                 | {"hat_path": n} | {"delta_path": true}
//                 | {"shape": {"breaks": [..], "values": [..], "direction": vector}}
//                 | {"pw": {"name": id, "lip": {...}}}   (registered by id)
//
// All parse failures raise ConfigError; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rat parse_rational(const nlohmann::json& j);
IntervalSet parse_interval_set(const nlohmann::json& j);
Vector parse_vector(const nlohmann::json& j);
Curve parse_curve(const nlohmann::json& j, const SpaceModel& space);

// Inverse of parse_interval_set: endpoints as exact "p/q" strings.
nlohmann::json interval_set_to_json(const IntervalSet& a);

// Seminorm specs resolve to indices of a SpaceModel built afterwards:
// collect the specs first, then build the space, then look indices up.
struct SeminormSpec {
  bool pointwise = false;
  Rat x;                        // pointwise
  std::vector<double> weights;  // finite-dim (single coord expands)
  int coord = -1;
};
SeminormSpec parse_seminorm(const nlohmann::json& j);

// Builds the space model implied by a config: a "space" object
// ({"dim": d} or {"points": [..]}) or inference from the seminorm specs.
SpaceModel build_space(const nlohmann::json& root,
                       const std::vector<SeminormSpec>& qs);

// Index of each spec inside the built space's active family.
std::vector<std::size_t> resolve_seminorms(const SpaceModel& space,
                                           const std::vector<SeminormSpec>& qs);

}  // namespace lcurve

#endif  // LCURVE_CONFIG_HPP
