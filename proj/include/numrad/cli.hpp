#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "numrad/operators.hpp"

namespace numrad::cli {

/// Malformed input; exit code 2. The message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::uint64_t seed = 0;
  bool seed_from_flag = false;  // otherwise a "seed" field in the file wins
  std::optional<double> tol;
  int starts = 64;
  Method method = Method::automatic;
  NormKind kind = NormKind::numerical_radius;
  std::string csv;            // optional CSV output path
  int n = 1;                  // fourier degree
  int N = 0;                  // fourier grid size, 0 selects 4n + 4
  std::string instance;       // built-in instance name
  std::size_t samples = 10000;
  bool determinism = false;   // verify: run twice and compare payloads
};

struct CommandResult {
  nlohmann::ordered_json payload;  // deterministic part of the report
  nlohmann::ordered_json timing;   // machine-dependent, reported beside the payload
  int exit_code = 0;
};

/// Runs one command ("radius", "minproj", "average", "fourier", "unicity",
/// "verify") on an optional problem document. Throws InputError for schema
/// violations.
CommandResult run_command(const std::string& command, const std::optional<std::string>& document,
                          const Flags& flags);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Full command line front end. Writes the report to out and diagnostics to
/// err; returns the process exit code.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace numrad::cli
