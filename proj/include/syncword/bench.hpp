#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syncword/automaton.hpp"
#include "syncword/search.hpp"

namespace syncword {

struct BenchCell {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t count = 0;
};

// "n:k:count[,n:k:count...]"
std::vector<BenchCell> parse_bench_spec(std::string_view text);

struct BenchOptions {
  std::vector<Method> methods;
  std::uint64_t seed = 0;
  SearchConfig base;  // method field is overwritten per run
  unsigned jobs = 1;
  // Give up on a cell after this many draws per requested instance.
  std::uint32_t max_draws_per_instance = 1000;
};

struct BenchRow {
  std::string instance;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  Method method = Method::bfs;
  std::uint64_t length = 0;
  std::vector<Probe> probes;
  double total_ms = 0;
  std::optional<long> peak_kb;
  std::optional<double> mean_kb;
};

struct BenchAggregate {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  Method method = Method::bfs;
  std::uint32_t instances = 0;
  std::uint32_t discarded = 0;
  double mean_length = 0;
  double mean_ms = 0;
  std::uint64_t probes = 0;
  std::optional<long> peak_kb;
};

struct BenchResult {
  std::vector<BenchRow> rows;  // cell, instance, then method order
  std::vector<BenchAggregate> aggregates;
};

// Seed of draw `draw` in cell `cell`.
std::uint64_t bench_instance_seed(std::uint64_t master, std::size_t cell, std::uint64_t draw);

// Draws seeded random automata per cell, keeps the synchronizable ones, and
// runs every method on each. Throws SoundnessError if methods disagree.
BenchResult bench_run(const std::vector<BenchCell>& cells, const BenchOptions& options);

// Schema: kind,instance,n,k,seed,method,length,probes,total_ms,probe_ms,peak_kb,mean_kb,discarded
// Timing and memory columns are total_ms, probe_ms, peak_kb and mean_kb.
std::string bench_csv(const BenchResult& result);
inline constexpr std::string_view kBenchCsvHeader =
    "kind,instance,n,k,seed,method,length,probes,total_ms,probe_ms,peak_kb,mean_kb,discarded";

// Aligned table of mean milliseconds, one row per (n,k), one column per method.
std::string bench_table(const BenchResult& result);

}  // namespace syncword
