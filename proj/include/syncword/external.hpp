#pragma once
#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace syncword {

struct ExternalResult {
  int exit_status = 0;
  std::string output;  // stdout
  std::string diagnostics;  // stderr
  std::chrono::milliseconds wall{0};
  std::optional<long> peak_rss_kb;  // child's max resident set, when reported
};

struct ExternalOptions {
  std::chrono::milliseconds time_budget{std::chrono::minutes(10)};
  // Exit statuses treated as normal termination. SAT/ASP solvers use 10, 20, 30.
  std::vector<int> accepted_exits = {0, 10, 20, 30};
};

// Writes `payload` to a temporary file, substitutes it for every "{file}" in
// `command_template` (and a second temporary path for "{out}", whose contents
// are appended to the output), then runs the command through /bin/sh.
// Throws TimeoutError past the budget, InfrastructureError on unexpected exit
// status or empty output.
ExternalResult run_external(std::string_view payload, std::string_view command_template,
                            const ExternalOptions& options = {});

}  // namespace syncword
