#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "syncword/bench.hpp"
#include "syncword/errors.hpp"

using namespace syncword;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

// Drops total_ms, probe_ms, peak_kb, mean_kb.
std::string without_timing(const std::string& csv) {
  std::string out;
  for (const auto& row : parse_csv(csv)) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == 8 || i == 9 || i == 10 || i == 11) continue;
      out += row[i] + ",";
    }
    out += "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("bench spec parsing") {
  const auto cells = parse_bench_spec("5:2:10,8:3:4");
  REQUIRE(cells.size() == 2);
  CHECK(cells[1].n == 8);
  CHECK(cells[1].k == 3);
  CHECK(cells[1].count == 4);
  CHECK_THROWS_AS(parse_bench_spec("5:2:0"), DomainError);
  CHECK_THROWS_AS(parse_bench_spec("5:2"), DomainError);
  CHECK_THROWS_AS(parse_bench_spec("5:x:3"), DomainError);
}

TEST_CASE("bench rows, aggregates and agreement") {
  BenchOptions opts;
  opts.methods = {Method::bfs, Method::sat_internal};
  opts.seed = 17;
  const auto r = bench_run({{5, 2, 10}}, opts);
  CHECK(r.rows.size() == 20);
  CHECK(r.aggregates.size() == 2);
  for (std::size_t i = 0; i < r.rows.size(); i += 2) {
    CHECK(r.rows[i].method == Method::bfs);
    CHECK(r.rows[i + 1].method == Method::sat_internal);
    CHECK(r.rows[i].length == r.rows[i + 1].length);
    CHECK(r.rows[i].instance == r.rows[i + 1].instance);
  }
  // aggregates recompute from rows
  for (const auto& agg : r.aggregates) {
    double len = 0, ms = 0;
    std::uint64_t probes = 0;
    int count = 0;
    for (const auto& row : r.rows)
      if (row.method == agg.method) {
        len += static_cast<double>(row.length);
        ms += row.total_ms;
        probes += row.probes.size();
        ++count;
      }
    CHECK(agg.instances == count);
    CHECK(agg.mean_length == doctest::Approx(len / count));
    CHECK(agg.mean_ms == doctest::Approx(ms / count));
    CHECK(agg.probes == probes);
  }
  const auto csv = bench_csv(r);
  const auto rows = parse_csv(csv);
  CHECK(rows.size() == 1 + 20 + 2);
  for (const auto& row : rows) CHECK(row.size() == 13);
  CHECK(csv.starts_with(std::string(kBenchCsvHeader) + "\n"));
  CHECK(bench_table(r).find("sat-internal") != std::string::npos);
}

TEST_CASE("non-timing fields reproduce; parallel runs match serial") {
  BenchOptions opts;
  opts.methods = {Method::bfs, Method::sat_internal};
  opts.seed = 5;
  const std::vector<BenchCell> cells{{4, 2, 5}, {6, 3, 5}};
  const auto first = without_timing(bench_csv(bench_run(cells, opts)));
  CHECK(first == without_timing(bench_csv(bench_run(cells, opts))));
  opts.jobs = 4;
  CHECK(first == without_timing(bench_csv(bench_run(cells, opts))));
  opts.seed = 6;
  CHECK(first != without_timing(bench_csv(bench_run(cells, opts))));
}

TEST_CASE("discarded draws are counted") {
  BenchOptions opts;
  opts.methods = {Method::bfs};
  opts.seed = 1;
  const auto r = bench_run({{8, 1, 2}}, opts);  // one-letter automata rarely synchronize
  CHECK(r.aggregates[0].discarded > 0);
  CHECK(r.aggregates[0].instances == 2);
}

TEST_CASE("Cerny lengths through the bench CSV schema") {
  BenchResult result;
  for (std::uint32_t n = 3; n <= 7; ++n) {
    SearchConfig cfg;
    const auto out = find_shortest(generate_cerny(n), cfg);
    REQUIRE(out);
    BenchRow row;
    row.instance = "cerny" + std::to_string(n);
    row.n = n;
    row.k = 2;
    row.length = out->length;
    result.rows.push_back(row);
  }
  std::vector<std::string> lengths;
  for (const auto& row : parse_csv(bench_csv(result)))
    if (row[0] == "instance") lengths.push_back(row[6]);
  CHECK(lengths == std::vector<std::string>{"4", "9", "16", "25", "36"});
}

TEST_CASE("bench usage errors") {
  BenchOptions opts;
  CHECK_THROWS_AS(bench_run({{5, 2, 1}}, opts), DomainError);
  opts.methods = {Method::bfs};
  CHECK_THROWS_AS(bench_run({{5, 2, 0}}, opts), DomainError);
  CHECK_THROWS_AS(bench_run({}, opts), DomainError);
}

TEST_CASE("an external method returning invalid models aborts the run") {
  // An external method whose "solver" always answers SAT with an invalid model.
  BenchOptions opts;
  opts.methods = {Method::bfs, Method::sat_external};
  opts.base.solver_command = "printf 's SATISFIABLE\\nv 0\\n'; exit 10 # {file}";
  opts.seed = 2;
  CHECK_THROWS_AS(bench_run({{4, 2, 2}}, opts), SoundnessError);
}
