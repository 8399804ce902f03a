#include "syncword/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "syncword/asp_encoding.hpp"
#include "syncword/dpll.hpp"
#include "syncword/external.hpp"
#include "syncword/sat_encoding.hpp"

namespace syncword {

namespace {

using Clock = std::chrono::steady_clock;

struct ProbeResult {
  Verdict verdict = Verdict::unsat;
  Word witness;  // set when sat
  std::optional<std::uint32_t> optimum;  // optimizing methods
  std::optional<long> peak_rss_kb;
};

AspFormulation formulation_of(Method m) {
  switch (m) {
    case Method::asp1: return AspFormulation::asp1;
    case Method::asp2: return AspFormulation::asp2;
    case Method::asp1opt: return AspFormulation::asp1opt;
    default: return AspFormulation::asp2opt;
  }
}

bool is_asp(Method m) {
  return m == Method::asp1 || m == Method::asp2 || m == Method::asp1opt || m == Method::asp2opt;
}

class Driver {
public:
  Driver(const Automaton& a, const SearchConfig& cfg) : a_(a), cfg_(cfg), start_(Clock::now()) {
    if (is_external(cfg.method)) {
      if (cfg.solver_command && !cfg.solver_command->empty()) {
        command_ = *cfg.solver_command;
      } else {
        const char* env = std::getenv(is_asp(cfg.method) ? kAspCommandEnv : kSatCommandEnv);
        if (!env || !*env)
          throw DomainError(std::string("method ") + std::string(to_string(cfg.method)) +
                            " needs a solver command (flag or " +
                            (is_asp(cfg.method) ? kAspCommandEnv : kSatCommandEnv) + ")");
        command_ = env;
      }
    }
    if (cfg.initial_c && *cfg.initial_c < 1) throw DomainError("initial c must be at least 1");
  }

  std::vector<Probe> calls;
  std::uint32_t last_unsat = 0;
  std::optional<std::uint32_t> first_sat;

  ProbeResult probe(std::uint32_t c) {
    const auto t0 = Clock::now();
    const auto budget = remaining();
    ProbeResult r;
    try {
      switch (cfg_.method) {
        case Method::sat_internal: r = sat_internal(c, t0 + budget); break;
        case Method::sat_external: r = sat_external(c, budget); break;
        default: r = asp(c, budget); break;
      }
    } catch (const SearchTimeout&) {
      throw;
    } catch (const TimeoutError& e) {
      if (!cfg_.total_budget || budget == cfg_.call_budget) throw;
      throw SearchTimeout(std::string(e.what()) + "; " + bracket(), last_unsat, first_sat);
    }
    calls.push_back({c, r.verdict, std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0),
                     r.peak_rss_kb});
    if (r.verdict == Verdict::sat) {
      const std::size_t expected = r.optimum ? *r.optimum : c;
      if (r.witness.size() != expected || !is_synchronizing_word(a_, r.witness))
        throw SoundnessError(std::string(to_string(cfg_.method)) + " returned a witness of length " +
                             std::to_string(r.witness.size()) + " at c = " + std::to_string(c) +
                             " that fails verification: " + format_word(r.witness, a_.symbols()));
    }
    return r;
  }

  std::string bracket() const {
    return "bracket (" + std::to_string(last_unsat) + ", " +
           (first_sat ? std::to_string(*first_sat) : std::string("?")) + "]";
  }

  std::chrono::milliseconds remaining() const {
    auto budget = cfg_.call_budget;
    if (cfg_.total_budget) {
      const auto left = *cfg_.total_budget - std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
      if (left.count() <= 0)
        throw SearchTimeout("search budget exhausted; " + bracket(), last_unsat, first_sat);
      budget = std::min(budget, left);
    }
    return budget;
  }

private:
  ProbeResult sat_internal(std::uint32_t c, Clock::time_point deadline) {
    const auto cnf = encode_sat(a_, c);
    DpllOptions opts;
    opts.max_vars = cfg_.internal_max_vars;
    opts.deadline = deadline;
    ProbeResult r;
    const auto model = solve_internal(cnf, opts);
    if (!model) return r;
    if (!model->satisfies(cnf)) throw SoundnessError("internal solver model violates the instance");
    r.verdict = Verdict::sat;
    try {
      r.witness = decode_model(a_, c, *model);
    } catch (const DecodeError& e) {
      throw SoundnessError(std::string("internal model does not decode: ") + e.what());
    }
    return r;
  }

  ProbeResult sat_external(std::uint32_t c, std::chrono::milliseconds budget) {
    const auto cnf = encode_sat(a_, c);
    ExternalOptions opts;
    opts.time_budget = budget;
    const auto run = run_external(write_dimacs(cnf), command_, opts);
    const auto parsed = parse_sat_output(run.output, cnf.var_count());
    if (!parsed.verdict)
      throw InfrastructureError("no SAT/UNSAT verdict in solver output:\n" + run.output.substr(0, 400));
    ProbeResult r;
    r.peak_rss_kb = run.peak_rss_kb;
    if (*parsed.verdict == Verdict::unsat) return r;
    if (!parsed.model) throw InfrastructureError("solver reported SATISFIABLE without a model");
    if (!parsed.model->satisfies(cnf)) throw SoundnessError("external solver model violates the instance");
    r.verdict = Verdict::sat;
    try {
      r.witness = decode_model(a_, c, *parsed.model);
    } catch (const DecodeError& e) {
      throw SoundnessError(std::string("external model does not decode: ") + e.what());
    }
    return r;
  }

  ProbeResult asp(std::uint32_t c, std::chrono::milliseconds budget) {
    const auto program = emit_asp(a_, formulation_of(cfg_.method), c);
    ExternalOptions opts;
    opts.time_budget = budget;
    const auto run = run_external(program.text, command_, opts);
    const auto parsed = parse_asp_output(run.output);
    ProbeResult r;
    r.peak_rss_kb = run.peak_rss_kb;
    const bool opt = is_optimizing(program.formulation);
    switch (parsed.verdict) {
      case AspVerdict::unsatisfiable: return r;
      case AspVerdict::unknown:
        throw InfrastructureError("no verdict in ASP solver output:\n" + run.output.substr(0, 400));
      case AspVerdict::satisfiable:
        if (opt) throw InfrastructureError("ASP solver stopped before proving the optimum");
        break;
      case AspVerdict::optimum: break;
    }
    DecodedAnswer decoded;
    try {
      decoded = decode_answer_set(program, parsed.atoms);
    } catch (const DecodeError& e) {
      throw InfrastructureError(std::string("unusable answer set: ") + e.what());
    }
    r.verdict = Verdict::sat;
    r.witness = std::move(decoded.word);
    r.optimum = decoded.length;
    return r;
  }

  const Automaton& a_;
  const SearchConfig& cfg_;
  Clock::time_point start_;
  std::string command_;
};

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::bfs: return "bfs";
    case Method::sat_internal: return "sat-internal";
    case Method::sat_external: return "sat-external";
    case Method::asp1: return "asp1";
    case Method::asp2: return "asp2";
    case Method::asp1opt: return "asp1opt";
    case Method::asp2opt: return "asp2opt";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (auto m : {Method::bfs, Method::sat_internal, Method::sat_external, Method::asp1, Method::asp2,
                 Method::asp1opt, Method::asp2opt})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

bool is_external(Method m) { return m == Method::sat_external || is_asp(m); }

std::uint32_t default_initial_c(std::uint32_t n) {
  std::uint32_t c = 1;
  while (std::uint64_t{c} * c < std::uint64_t{4} * n) ++c;
  return c;
}

std::optional<SearchOutcome> find_shortest(const Automaton& a, const SearchConfig& cfg) {
  const auto start = Clock::now();
  Driver driver(a, cfg);
  if (!check_synchronizable(a)) return std::nullopt;

  SearchOutcome out;
  auto finish = [&](Word witness) {
    if (!is_synchronizing_word(a, witness))
      throw SoundnessError("final witness fails verification: " + format_word(witness, a.symbols()));
    out.length = witness.size();
    out.witness = std::move(witness);
    out.calls = std::move(driver.calls);
    out.total_time = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    double sum = 0;
    int counted = 0;
    for (const auto& p : out.calls)
      if (p.peak_rss_kb) {
        out.peak_rss_kb = std::max(out.peak_rss_kb.value_or(0), *p.peak_rss_kb);
        sum += static_cast<double>(*p.peak_rss_kb);
        ++counted;
      }
    if (counted) out.mean_rss_kb = sum / counted;
    return out;
  };

  if (a.states() == 1) return finish({});

  if (cfg.method == Method::bfs) {
    const auto t0 = Clock::now();
    const auto r = shortest_sync_bfs(a, cfg.bfs_limits);
    if (!r) throw SoundnessError("pair test says synchronizable but power-set search found no word");
    driver.calls.push_back({static_cast<std::uint32_t>(r->length), Verdict::sat,
                            std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0), {}});
    return finish(r->witness);
  }

  const auto bound = static_cast<std::uint32_t>(std::min<std::uint64_t>(reset_length_upper_bound(a.states()), UINT32_MAX));
  const auto initial = std::min(cfg.initial_c.value_or(default_initial_c(a.states())), bound);
  const bool optimizing = cfg.method == Method::asp1opt || cfg.method == Method::asp2opt;

  // Doubling phase.
  std::uint32_t c = initial;
  ProbeResult best;
  for (;;) {
    auto r = driver.probe(c);
    if (r.verdict == Verdict::sat) {
      driver.first_sat = c;
      best = std::move(r);
      break;
    }
    driver.last_unsat = c;
    if (c >= bound)
      throw SoundnessError("no synchronizing word up to the known upper bound " + std::to_string(bound) +
                           " although the pair test succeeded");
    c = static_cast<std::uint32_t>(std::min<std::uint64_t>(std::uint64_t{c} * 2, bound));
  }
  if (optimizing) return finish(std::move(best.witness));

  // Least satisfiable c in (last_unsat, first_sat].
  std::uint32_t lo = driver.last_unsat, hi = *driver.first_sat;
  while (hi - lo > 1) {
    const auto mid = lo + (hi - lo) / 2;
    auto r = driver.probe(mid);
    if (r.verdict == Verdict::sat) {
      hi = mid;
      driver.first_sat = mid;
      best = std::move(r);
    } else {
      lo = mid;
      driver.last_unsat = mid;
    }
  }
  return finish(std::move(best.witness));
}

SatSolverOutput parse_sat_output(std::string_view text, std::uint32_t var_count) {
  SatSolverOutput out;
  std::string literals;
  bool minisat_block = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "s SATISFIABLE" || line == "SATISFIABLE") {
      out.verdict = Verdict::sat;
    } else if (line == "s UNSATISFIABLE" || line == "UNSATISFIABLE") {
      out.verdict = Verdict::unsat;
    } else if (line == "SAT") {
      out.verdict = Verdict::sat;
      minisat_block = true;
    } else if (line == "UNSAT") {
      out.verdict = Verdict::unsat;
    } else if (line.starts_with("v ") || line == "v") {
      literals += line.substr(1);
      literals += '\n';
    } else if (minisat_block) {
      literals += line;
      literals += '\n';
    }
  }
  if (out.verdict == Verdict::sat && !literals.empty()) out.model = parse_model(literals, var_count);
  return out;
}

}  // namespace syncword
