#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "syncword/asp_encoding.hpp"
#include "syncword/automaton.hpp"
#include "syncword/bench.hpp"
#include "syncword/cnf.hpp"
#include "syncword/errors.hpp"
#include "syncword/exact.hpp"
#include "syncword/kiss.hpp"
#include "syncword/sat_encoding.hpp"
#include "syncword/search.hpp"

namespace syncword::cli {

namespace {

// Bad input files map to the usage exit status.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Automaton load_fa(const std::string& path) {
  try {
    return parse_fa(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

std::string format_ms(std::chrono::microseconds us) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(us.count()) / 1000.0);
  return buf;
}

std::string word_line(const Word& w, std::uint32_t k) {
  return w.empty() ? "witness" : "witness " + format_word(w, k);
}

Method method_from(const std::string& name) {
  auto m = parse_method(name);
  if (!m) throw CLI::ValidationError("--method", "unknown method '" + name + "'");
  return *m;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shortest synchronizing words for complete deterministic automata"};
  app.require_subcommand(1);
  int status = kExitOk;

  // check
  std::string check_path;
  auto* check = app.add_subcommand("check", "Decide whether a synchronizing word exists");
  check->add_option("fa", check_path, "Automaton file")->required();

  // shortest
  std::string shortest_path, method_name = "bfs", solver_cmd;
  std::uint32_t initial_c = 0;
  std::uint64_t budget_ms = 0, bfs_memory_mb = 1024;
  auto* shortest = app.add_subcommand("shortest", "Compute a shortest synchronizing word");
  shortest->add_option("fa", shortest_path, "Automaton file")->required();
  shortest->add_option("--method", method_name,
                       "bfs | sat-internal | sat-external | asp1 | asp2 | asp1opt | asp2opt");
  shortest->add_option("--solver-cmd", solver_cmd, "External solver command template with {file}");
  shortest->add_option("--initial-c", initial_c, "First bound tried (default ceil(2 sqrt n))");
  shortest->add_option("--time-budget", budget_ms, "Total time budget in ms");
  shortest->add_option("--bfs-memory-mb", bfs_memory_mb, "Visited-set memory cap for bfs");

  // greedy
  std::string greedy_path;
  auto* greedy = app.add_subcommand("greedy", "Greedy pair-merging synchronizing word (upper bound)");
  greedy->add_option("fa", greedy_path, "Automaton file")->required();

  // encode sat|asp
  auto* encode = app.add_subcommand("encode", "Emit a SAT or ASP encoding");
  encode->require_subcommand(1);
  std::string enc_path, enc_out, formulation_name;
  std::uint32_t enc_c = 0;
  bool legacy = false;
  auto* enc_sat = encode->add_subcommand("sat", "DIMACS CNF for bound c");
  enc_sat->add_option("fa", enc_path)->required();
  enc_sat->add_option("-c", enc_c, "Word length")->required();
  enc_sat->add_option("-o", enc_out, "Output file (default stdout)");
  auto* enc_asp = encode->add_subcommand("asp", "ASP program for bound c");
  enc_asp->add_option("fa", enc_path)->required();
  enc_asp->add_option("--formulation", formulation_name, "asp1 | asp2 | asp1opt | asp2opt")->required();
  enc_asp->add_option("-c", enc_c, "Word length bound")->required();
  enc_asp->add_option("-o", enc_out, "Output file (default stdout)");
  enc_asp->add_flag("--legacy-syntax", legacy, "Old-style minimize statement");

  // decode sat
  auto* decode = app.add_subcommand("decode", "Decode a solver model");
  decode->require_subcommand(1);
  std::string dec_path, dec_model;
  std::uint32_t dec_c = 0;
  auto* dec_sat = decode->add_subcommand("sat", "Word from a SAT model of the CNF for bound c");
  dec_sat->add_option("fa", dec_path)->required();
  dec_sat->add_option("-c", dec_c, "Word length")->required();
  dec_sat->add_option("--model", dec_model, "Model file (v-lines or bare literals)")->required();

  // gen random|cerny
  auto* gen = app.add_subcommand("gen", "Generate automata");
  gen->require_subcommand(1);
  std::uint32_t gen_n = 0, gen_k = 2;
  std::uint64_t gen_seed = 0;
  bool require_sync = false;
  auto* gen_random = gen->add_subcommand("random", "Uniform random transition table");
  gen_random->add_option("-n", gen_n, "States")->required();
  gen_random->add_option("-k", gen_k, "Symbols")->required();
  gen_random->add_option("--seed", gen_seed, "64-bit seed")->required();
  gen_random->add_flag("--require-sync", require_sync, "Advance the seed until synchronizable");
  auto* gen_cerny = gen->add_subcommand("cerny", "Cerny automaton C_n");
  gen_cerny->add_option("-n", gen_n, "States")->required();

  // import kiss
  auto* import = app.add_subcommand("import", "Convert other formats");
  import->require_subcommand(1);
  std::string kiss_path;
  auto* import_kiss = import->add_subcommand("kiss", "KISS2 machine to native format");
  import_kiss->add_option("file", kiss_path)->required();

  // bench
  std::string bench_spec, bench_methods = "bfs,sat-internal", bench_csv_path;
  std::uint64_t bench_seed = 0;
  unsigned bench_jobs = 1;
  bool bench_table_flag = false;
  auto* bench = app.add_subcommand("bench", "Benchmark methods on seeded random automata");
  bench->add_option("--spec", bench_spec, "n:k:count[,...]")->required();
  bench->add_option("--methods", bench_methods, "Comma-separated methods");
  bench->add_option("--seed", bench_seed, "Master seed")->required();
  bench->add_option("--csv", bench_csv_path, "CSV output file (default stdout)");
  bench->add_option("--jobs", bench_jobs, "Worker threads");
  bench->add_option("--solver-cmd", solver_cmd, "External solver command template with {file}");
  bench->add_flag("--table", bench_table_flag, "Also print an aligned summary table to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check) {
      const auto a = load_fa(check_path);
      if (check_synchronizable(a)) {
        out << "synchronizable\n";
      } else {
        out << "not synchronizable\n";
        status = kExitNotSynchronizing;
      }
    } else if (*shortest) {
      const auto a = load_fa(shortest_path);
      SearchConfig cfg;
      cfg.method = method_from(method_name);
      if (!solver_cmd.empty()) cfg.solver_command = solver_cmd;
      if (initial_c) cfg.initial_c = initial_c;
      if (budget_ms) cfg.total_budget = std::chrono::milliseconds(budget_ms);
      cfg.bfs_limits = BfsLimits::from_memory(bfs_memory_mb << 20, a.states());
      const auto res = find_shortest(a, cfg);
      if (!res) {
        out << "not synchronizable\n";
        return kExitNotSynchronizing;
      }
      out << "length " << res->length << "\n" << word_line(res->witness, a.symbols()) << "\n";
      out << "sink " << apply_word(a, 1, res->witness) << "\n";
      out << "probes";
      for (const auto& p : res->calls) out << ' ' << p.c << (p.verdict == Verdict::sat ? ":sat" : ":unsat");
      out << "\ntime_ms " << format_ms(res->total_time) << "\n";
      if (res->peak_rss_kb) out << "peak_kb " << *res->peak_rss_kb << "\n";
    } else if (*greedy) {
      const auto a = load_fa(greedy_path);
      const auto w = greedy_sync(a);
      if (!w) {
        out << "not synchronizable\n";
        return kExitNotSynchronizing;
      }
      out << "length " << w->size() << "\n" << word_line(*w, a.symbols()) << "\n";
    } else if (*enc_sat) {
      const auto a = load_fa(enc_path);
      write_output(enc_out, write_dimacs(encode_sat(a, enc_c)), out);
    } else if (*enc_asp) {
      const auto a = load_fa(enc_path);
      const auto f = parse_formulation(formulation_name);
      if (!f) throw InputError("unknown formulation '" + formulation_name + "'");
      write_output(enc_out, emit_asp(a, *f, enc_c, AspOptions{legacy}).text, out);
    } else if (*dec_sat) {
      const auto a = load_fa(dec_path);
      const auto text = read_file(dec_model);
      const VarMap vm{a.states(), a.symbols(), dec_c};
      const auto parsed = parse_sat_output(text, vm.var_count());
      if (parsed.verdict == Verdict::unsat) {
        out << "unsatisfiable\n";
        return kExitNotSynchronizing;
      }
      const auto model = parsed.model ? *parsed.model : parse_model(text, vm.var_count());
      const auto w = decode_model(a, dec_c, model);
      out << "length " << w.size() << "\n" << word_line(w, a.symbols()) << "\n";
    } else if (*gen_random) {
      for (std::uint64_t seed = gen_seed;; ++seed) {
        auto a = generate_random(gen_n, gen_k, seed);
        if (require_sync && !check_synchronizable(a)) continue;
        out << "# random n=" << gen_n << " k=" << gen_k << " seed=" << seed << "\n" << serialize_fa(a);
        break;
      }
    } else if (*gen_cerny) {
      out << "# cerny n=" << gen_n << "\n" << serialize_fa(generate_cerny(gen_n));
    } else if (*import_kiss) {
      KissMachine m = [&] {
        try {
          return parse_kiss2(read_file(kiss_path));
        } catch (const ParseError& e) {
          throw InputError(kiss_path + ": " + e.what());
        }
      }();
      out << "# imported from " << kiss_path << "\n";
      for (std::size_t i = 0; i < m.state_names.size(); ++i)
        out << "# state " << i + 1 << " = " << m.state_names[i] << "\n";
      for (std::size_t i = 0; i < m.symbol_names.size(); ++i)
        out << "# symbol " << i + 1 << " = " << m.symbol_names[i] << "\n";
      out << serialize_fa(m.automaton);
    } else if (*bench) {
      BenchOptions opts;
      opts.seed = bench_seed;
      opts.jobs = bench_jobs;
      if (!solver_cmd.empty()) opts.base.solver_command = solver_cmd;
      std::stringstream ms(bench_methods);
      for (std::string name; std::getline(ms, name, ',');) opts.methods.push_back(method_from(name));
      const auto result = bench_run(parse_bench_spec(bench_spec), opts);
      write_output(bench_csv_path, bench_csv(result), out);
      if (bench_table_flag) err << bench_table(result);
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SoundnessError& e) {
    err << "soundness failure: " << e.what() << "\n";
    return kExitInfrastructure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfrastructure;
  }
  return status;
}

}  // namespace syncword::cli
