#pragma once

#include <cstdint>
#include <string>

#include "momentkit/types.hpp"

namespace momentkit {

/// Everything a CLI invocation needs after flag parsing. Referenced files
/// are read and parsed before any computation starts.
struct RunConfig {
  std::string subcommand;
  std::string moments_path;
  std::string poly_path;
  std::string function_path;
  std::string measure_path;
  Index degree = 4;
  Index grid_size = 201;
  std::string pick = "midpoint";
  double tol = 1e-9;
  double lp_tol = 1e-8;
  double sos_tol = 1e-7;
  double moment_tol = 1e-8;
  std::uint64_t seed = 12345;
  std::string output_path;  // empty: standard output
};

/// Exit codes: 0 affirmative, 1 sound negative verdict (non-PSD sequence,
/// negativity witness, empty sandwich, failed verification), 2 operational
/// error. JSON goes to stdout or --output.
int runCli(int argc, const char* const* argv);

/// Dispatch after parsing; same exit-code contract.
int runConfigured(const RunConfig& config);

}  // namespace momentkit
