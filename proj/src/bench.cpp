#include "syncword/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

namespace syncword {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::uint32_t parse_u32(std::string_view s, std::string_view what) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw DomainError("bad " + std::string(what) + " '" + std::string(s) + "' in bench spec");
  return v;
}

struct Instance {
  std::size_t cell;
  std::string id;
  std::uint64_t seed;
  Automaton automaton;
};

}  // namespace

std::vector<BenchCell> parse_bench_spec(std::string_view text) {
  std::vector<BenchCell> cells;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto item = text.substr(pos, end - pos);
    const auto c1 = item.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : item.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw DomainError("bench spec items are n:k:count, got '" + std::string(item) + "'");
    BenchCell cell{parse_u32(item.substr(0, c1), "n"), parse_u32(item.substr(c1 + 1, c2 - c1 - 1), "k"),
                   parse_u32(item.substr(c2 + 1), "count")};
    if (cell.n < 1 || cell.k < 1) throw DomainError("bench spec needs n >= 1 and k >= 1");
    if (cell.count < 1) throw DomainError("bench spec count must be at least 1");
    cells.push_back(cell);
    pos = end + 1;
  }
  return cells;
}

std::uint64_t bench_instance_seed(std::uint64_t master, std::size_t cell, std::uint64_t draw) {
  return splitmix(splitmix(splitmix(master) ^ cell) ^ draw);
}

BenchResult bench_run(const std::vector<BenchCell>& cells, const BenchOptions& options) {
  if (cells.empty()) throw DomainError("bench needs at least one cell");
  if (options.methods.empty()) throw DomainError("bench needs at least one method");
  for (const auto& c : cells)
    if (c.count < 1) throw DomainError("bench spec count must be at least 1");

  std::vector<Instance> instances;
  std::vector<std::uint32_t> discarded(cells.size(), 0);
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const auto& cell = cells[ci];
    std::uint32_t kept = 0;
    const std::uint64_t max_draws = std::uint64_t{cell.count} * options.max_draws_per_instance;
    for (std::uint64_t draw = 0; kept < cell.count; ++draw) {
      if (draw >= max_draws)
        throw ResourceError("only " + std::to_string(kept) + " synchronizable automata among " +
                            std::to_string(draw) + " draws for n=" + std::to_string(cell.n) +
                            " k=" + std::to_string(cell.k));
      const auto seed = bench_instance_seed(options.seed, ci, draw);
      auto a = generate_random(cell.n, cell.k, seed);
      if (!check_synchronizable(a)) {
        ++discarded[ci];
        continue;
      }
      char id[64];
      std::snprintf(id, sizeof id, "n%uk%u-%zu-%03u", cell.n, cell.k, ci, kept);
      instances.push_back({ci, id, seed, std::move(a)});
      ++kept;
    }
  }

  const std::size_t m = options.methods.size();
  const std::size_t jobs = instances.size() * m;
  std::vector<BenchRow> rows(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs;) {
      const auto& inst = instances[j / m];
      auto cfg = options.base;
      cfg.method = options.methods[j % m];
      try {
        const auto out = find_shortest(inst.automaton, cfg);
        if (!out) throw SoundnessError("kept instance " + inst.id + " reported not synchronizable");
        auto& row = rows[j];
        row.instance = inst.id;
        row.n = inst.automaton.states();
        row.k = inst.automaton.symbols();
        row.seed = inst.seed;
        row.method = cfg.method;
        row.length = out->length;
        row.probes = out->calls;
        row.total_ms = static_cast<double>(out->total_time.count()) / 1000.0;
        row.peak_kb = out->peak_rss_kb;
        row.mean_kb = out->mean_rss_kb;
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1U, options.jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& first = rows[i * m];
    for (std::size_t j = 1; j < m; ++j) {
      const auto& other = rows[i * m + j];
      if (other.length != first.length) {
        std::ostringstream report;
        report << "methods disagree on " << first.instance << " (seed " << first.seed << "): "
               << to_string(first.method) << " = " << first.length << ", " << to_string(other.method)
               << " = " << other.length << "\n"
               << serialize_fa(instances[i].automaton);
        throw SoundnessError(report.str());
      }
    }
  }

  BenchResult result;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    for (std::size_t j = 0; j < m; ++j) {
      BenchAggregate agg{cells[ci].n, cells[ci].k, options.methods[j], 0, discarded[ci], 0, 0, 0, {}};
      double len = 0, ms = 0;
      for (std::size_t i = 0; i < instances.size(); ++i) {
        if (instances[i].cell != ci) continue;
        const auto& row = rows[i * m + j];
        ++agg.instances;
        len += static_cast<double>(row.length);
        ms += row.total_ms;
        agg.probes += row.probes.size();
        if (row.peak_kb) agg.peak_kb = std::max(agg.peak_kb.value_or(0), *row.peak_kb);
      }
      agg.mean_length = len / agg.instances;
      agg.mean_ms = ms / agg.instances;
      result.aggregates.push_back(agg);
    }
  }
  result.rows = std::move(rows);
  return result;
}

std::string bench_csv(const BenchResult& result) {
  std::string out(kBenchCsvHeader);
  out += '\n';
  for (const auto& r : result.rows) {
    std::string probes, probe_ms;
    for (std::size_t i = 0; i < r.probes.size(); ++i) {
      if (i) {
        probes += ';';
        probe_ms += ';';
      }
      probes += std::to_string(r.probes[i].c) + (r.probes[i].verdict == Verdict::sat ? ":sat" : ":unsat");
      probe_ms += fixed(static_cast<double>(r.probes[i].wall.count()) / 1000.0);
    }
    out += "instance," + r.instance + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
           std::to_string(r.seed) + "," + std::string(to_string(r.method)) + "," + std::to_string(r.length) + "," +
           probes + "," + fixed(r.total_ms) + "," + probe_ms + "," + (r.peak_kb ? std::to_string(*r.peak_kb) : "") +
           "," + (r.mean_kb ? fixed(*r.mean_kb, 1) : "") + ",\n";
  }
  for (const auto& a : result.aggregates) {
    out += "aggregate,*," + std::to_string(a.n) + "," + std::to_string(a.k) + ",," + std::string(to_string(a.method)) +
           "," + fixed(a.mean_length) + "," + std::to_string(a.probes) + "," + fixed(a.mean_ms) + ",," +
           (a.peak_kb ? std::to_string(*a.peak_kb) : "") + ",," + std::to_string(a.discarded) + "\n";
  }
  return out;
}

std::string bench_table(const BenchResult& result) {
  std::vector<Method> methods;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sizes;
  std::map<std::tuple<std::uint32_t, std::uint32_t, Method>, const BenchAggregate*> cells;
  for (const auto& a : result.aggregates) {
    if (std::find(methods.begin(), methods.end(), a.method) == methods.end()) methods.push_back(a.method);
    if (std::find(sizes.begin(), sizes.end(), std::pair{a.n, a.k}) == sizes.end()) sizes.emplace_back(a.n, a.k);
    cells[{a.n, a.k, a.method}] = &a;
  }
  auto pad = [](std::string s, std::size_t w) { return std::string(s.size() < w ? w - s.size() : 0, ' ') + s; };
  std::string out = pad("n", 5) + pad("k", 4) + pad("len", 8);
  for (auto m : methods) out += pad(std::string(to_string(m)), 14);
  out += "\n";
  for (auto [n, k] : sizes) {
    const auto* any = cells.at({n, k, methods.front()});
    out += pad(std::to_string(n), 5) + pad(std::to_string(k), 4) + pad(fixed(any->mean_length, 2), 8);
    for (auto m : methods) out += pad(fixed(cells.at({n, k, m})->mean_ms, 2), 14);
    out += "\n";
  }
  out += "(mean milliseconds per instance)\n";
  return out;
}

}  // namespace syncword
