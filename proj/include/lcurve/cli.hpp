#ifndef LCURVE_CLI_HPP
#define LCURVE_CLI_HPP

#include <json.hpp>

#include <ostream>

namespace lcurve {

// Global knobs shared by all subcommands.
struct CliOptions {
  double tol = 1e-10;        // quadrature absolute tolerance
  unsigned long seed = 0;    // randomized sampling where requested
  int depth = 20;            // K_max of the limit pipeline
};

// Each runner consumes one JSON config document, writes one CSV table to
// `out`, and returns the process exit code: 0 when every emitted row
// passes, 1 on a verification failure. Config shape errors raise
// ConfigError, which cli_main maps to exit code 2.
int run_pathology(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out);
int run_dyadic(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out);
int run_density(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out);
int run_urysohn(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out);
int run_cover(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out);
int run_integrate(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out);
int run_limit(const nlohmann::json& cfg, const CliOptions& opts, std::ostream& out);

// Full argv dispatch: subcommand + --config/--out/--tol/--seed/--depth.
int cli_main(int argc, const char* const* argv);

}  // namespace lcurve

#endif  // LCURVE_CLI_HPP
