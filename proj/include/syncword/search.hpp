#pragma once
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syncword/automaton.hpp"
#include "syncword/cnf.hpp"
#include "syncword/errors.hpp"
#include "syncword/exact.hpp"

namespace syncword {

enum class Method { bfs, sat_internal, sat_external, asp1, asp2, asp1opt, asp2opt };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);
bool is_external(Method m);

// Environment variables holding default solver command templates.
inline constexpr const char* kSatCommandEnv = "SYNCWORD_SAT_CMD";
inline constexpr const char* kAspCommandEnv = "SYNCWORD_ASP_CMD";

struct SearchConfig {
  Method method = Method::bfs;
  std::optional<std::uint32_t> initial_c;  // default ceil(2 sqrt(n))
  // Template with a {file} placeholder; falls back to the environment.
  std::optional<std::string> solver_command;
  std::chrono::milliseconds call_budget{std::chrono::minutes(10)};
  std::optional<std::chrono::milliseconds> total_budget;
  BfsLimits bfs_limits{};
  std::uint32_t internal_max_vars = 200000;
};

enum class Verdict { sat, unsat };

struct Probe {
  std::uint32_t c = 0;
  Verdict verdict = Verdict::unsat;
  std::chrono::microseconds wall{0};
  std::optional<long> peak_rss_kb;
};

struct SearchOutcome {
  std::uint64_t length = 0;
  Word witness;
  std::vector<Probe> calls;
  std::chrono::microseconds total_time{0};
  std::optional<long> peak_rss_kb;
  std::optional<double> mean_rss_kb;
};

// Budget ran out; carries the bracket established so far.
class SearchTimeout : public TimeoutError {
public:
  SearchTimeout(const std::string& what, std::uint32_t last_unsat, std::optional<std::uint32_t> first_sat)
      : TimeoutError(what), last_unsat_(last_unsat), first_sat_(first_sat) {}
  std::uint32_t last_unsat() const noexcept { return last_unsat_; }
  std::optional<std::uint32_t> first_sat() const noexcept { return first_sat_; }

private:
  std::uint32_t last_unsat_;
  std::optional<std::uint32_t> first_sat_;
};

// ceil(2 sqrt(n)), computed in integers.
std::uint32_t default_initial_c(std::uint32_t n);

// Shortest synchronizing word length, or nullopt when none exists (decided
// by the pair test before any solver runs). Decision methods double c from
// initial_c until satisfiable, then binary search the bracket; optimizing
// methods double c until the program has an optimum. Every witness is
// re-verified; failures raise SoundnessError.
std::optional<SearchOutcome> find_shortest(const Automaton& a, const SearchConfig& cfg);

struct SatSolverOutput {
  std::optional<Verdict> verdict;
  std::optional<Assignment> model;
};

// Competition-style "s ..."/"v ..." output, or MiniSat's result file
// ("SAT" followed by literals, or "UNSAT").
SatSolverOutput parse_sat_output(std::string_view text, std::uint32_t var_count);

}  // namespace syncword
