#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syncword/automaton.hpp"

namespace syncword {

enum class AspFormulation { asp1, asp2, asp1opt, asp2opt };

std::string_view to_string(AspFormulation f);
std::optional<AspFormulation> parse_formulation(std::string_view name);
inline bool is_optimizing(AspFormulation f) {
  return f == AspFormulation::asp1opt || f == AspFormulation::asp2opt;
}

struct AspOptions {
  // Emit the minimize statement in the old "#minimize [ atom = weight ]" form.
  bool legacy_syntax = false;
};

struct AspProgram {
  AspFormulation formulation = AspFormulation::asp1;
  std::uint32_t bound_c = 1;
  std::string text;
};

// state/1, symbol/1 and transition/3 facts, one per line.
std::string emit_facts(const Automaton& a);

// Facts plus the rules of the chosen formulation. Decision variants have an
// answer set iff a synchronizing word of length c exists; optimizing variants
// choose shortest(l), l <= c, and minimize l.
AspProgram emit_asp(const Automaton& a, AspFormulation f, std::uint32_t c, AspOptions options = {});

inline AspProgram emit_asp1(const Automaton& a, std::uint32_t c, AspOptions o = {}) {
  return emit_asp(a, AspFormulation::asp1, c, o);
}
inline AspProgram emit_asp2(const Automaton& a, std::uint32_t c, AspOptions o = {}) {
  return emit_asp(a, AspFormulation::asp2, c, o);
}
inline AspProgram emit_asp1_opt(const Automaton& a, std::uint32_t c, AspOptions o = {}) {
  return emit_asp(a, AspFormulation::asp1opt, c, o);
}
inline AspProgram emit_asp2_opt(const Automaton& a, std::uint32_t c, AspOptions o = {}) {
  return emit_asp(a, AspFormulation::asp2opt, c, o);
}

struct GroundAtom {
  std::string predicate;
  std::vector<std::int64_t> args;

  bool operator==(const GroundAtom&) const = default;
};

// Atoms of the form name(int,...) found in `text`; everything else is skipped.
std::vector<GroundAtom> parse_atoms(std::string_view text);

struct DecodedAnswer {
  Word word;
  std::optional<std::uint32_t> length;  // from shortest(l), optimizing variants only
};

DecodedAnswer decode_answer_set(const AspProgram& p, const std::vector<GroundAtom>& atoms);
DecodedAnswer decode_answer_set(const AspProgram& p, std::string_view atom_text);

enum class AspVerdict { satisfiable, unsatisfiable, optimum, unknown };

// One solver run: verdict and the atoms of the last reported answer set.
struct AspSolverOutput {
  AspVerdict verdict = AspVerdict::unknown;
  std::vector<GroundAtom> atoms;
};

// Understands clingo-style framing ("Answer: N", atom line, "Optimization:",
// "SATISFIABLE", "UNSATISFIABLE", "OPTIMUM FOUND").
AspSolverOutput parse_asp_output(std::string_view text);

}  // namespace syncword
