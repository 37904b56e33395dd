#pragma once

// Command implementations behind the `incompat` CLI. Each returns the output
// document; errors propagate as incompat::Error and are mapped to exit codes
// by exit_code_for.

#include <cstdint>
#include <optional>
#include <string>

#include "incompat/document.hpp"

namespace incompat {

inline constexpr const char* kToolVersion = "0.1.0";

struct CommandOutput {
  json document;
  int exit_code = 0;
};

/// 2 for input/validation failures, 3 for BoundViolation, 1 otherwise.
int exit_code_for(ErrorCode code) noexcept;

CommandOutput cmd_q(const std::string& input_path, const OptimizerConfig& cfg);

/// Writes the basis document to out_path when given; the report always embeds it.
CommandOutput cmd_mub(long d, long n, const std::optional<std::string>& out_path);

CommandOutput cmd_bounds(long n, long d);

/// Throws ItemCount unless the input holds exactly two items.
CommandOutput cmd_entropic(const std::string& input_path, const OptimizerConfig& cfg);

struct VerifyOptions {
  std::string suite = "all";  // all | lemma1 | theorem2 | phi | bounds
  std::optional<long> samples;
  OptimizerConfig cfg;
};

/// Exit code 0 iff every selected suite passes.
CommandOutput cmd_verify(const VerifyOptions& opts);

}  // namespace incompat
