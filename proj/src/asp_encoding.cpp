#include "syncword/asp_encoding.hpp"

#include <cctype>
#include <charconv>
#include <map>

#include "syncword/errors.hpp"

namespace syncword {

std::string_view to_string(AspFormulation f) {
  switch (f) {
    case AspFormulation::asp1: return "asp1";
    case AspFormulation::asp2: return "asp2";
    case AspFormulation::asp1opt: return "asp1opt";
    case AspFormulation::asp2opt: return "asp2opt";
  }
  return "?";
}

std::optional<AspFormulation> parse_formulation(std::string_view name) {
  for (auto f : {AspFormulation::asp1, AspFormulation::asp2, AspFormulation::asp1opt, AspFormulation::asp2opt})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

std::string emit_facts(const Automaton& a) {
  std::string out;
  for (State s = 1; s <= a.states(); ++s) out += "state(" + std::to_string(s) + ").\n";
  for (Symbol x = 1; x <= a.symbols(); ++x) out += "symbol(" + std::to_string(x) + ").\n";
  for (State s = 1; s <= a.states(); ++s)
    for (Symbol x = 1; x <= a.symbols(); ++x)
      out += "transition(" + std::to_string(s) + "," + std::to_string(x) + "," +
             std::to_string(a.next(s, x)) + ").\n";
  return out;
}

AspProgram emit_asp(const Automaton& a, AspFormulation f, std::uint32_t c, AspOptions options) {
  if (c < 1) throw DomainError("bound c must be at least 1");
  const bool opt = is_optimizing(f);
  const bool sink_test = f == AspFormulation::asp1 || f == AspFormulation::asp1opt;
  const auto cs = std::to_string(c);
  const auto ns = std::to_string(a.states());

  std::string t;
  t += "% " + std::string(to_string(f)) + ", c = " + cs + ", n = " + ns + ", k = " +
       std::to_string(a.symbols()) + "\n";
  t += emit_facts(a);

  if (opt) {
    t += "1 { shortest(1.." + cs + ") } 1.\n";
    t += "step(J) :- shortest(I), J = 1..I.\n";
  } else {
    t += "step(1.." + cs + ").\n";
  }
  t += "path(S,1,S) :- state(S).\n";
  t += "path(S,I+1,Q) :- path(S,I,R), synchro(I,X), transition(R,X,Q), "
       "state(S), state(R), state(Q), symbol(X), step(I).\n";
  t += "1 { synchro(I,J) : symbol(J) } 1 :- step(I).\n";

  if (sink_test) {
    t += "1 { sink(F) : state(F) } 1.\n";
    if (opt)
      t += ":- sink(F), shortest(L), not path(S,L+1,F), state(S), state(F).\n";
    else
      t += ":- sink(F), not path(S," + std::to_string(c + 1) + ",F), state(S), state(F).\n";
  } else if (a.states() > 1) {
    // Positions range over every traced step, including the final one.
    t += "merged(R) :- path(R,I,S), path(R+1,I,S), state(S), state(R), state(R+1).\n";
    t += ":- state(R), R < " + ns + ", not merged(R).\n";
  }

  if (opt) {
    if (options.legacy_syntax)
      t += "#minimize [ shortest(L) = L ].\n";
    else
      t += "#minimize { L : shortest(L) }.\n";
  }
  t += "#show synchro/2.\n";
  if (opt) t += "#show shortest/1.\n";
  return AspProgram{f, c, std::move(t)};
}

std::vector<GroundAtom> parse_atoms(std::string_view text) {
  std::vector<GroundAtom> out;
  std::size_t i = 0;
  auto is_ident = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
  while (i < text.size()) {
    if (!std::islower(static_cast<unsigned char>(text[i])) || (i > 0 && is_ident(text[i - 1]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_ident(text[j])) ++j;
    if (j >= text.size() || text[j] != '(') {
      i = j;
      continue;
    }
    const auto close = text.find(')', j);
    if (close == std::string_view::npos) break;
    GroundAtom atom{std::string(text.substr(i, j - i)), {}};
    bool ok = true;
    std::size_t p = j + 1;
    while (p < close) {
      std::size_t q = text.find(',', p);
      if (q == std::string_view::npos || q > close) q = close;
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + p, text.data() + q, v);
      if (ec != std::errc{} || ptr != text.data() + q) {
        ok = false;
        break;
      }
      atom.args.push_back(v);
      p = q + 1;
    }
    if (ok) out.push_back(std::move(atom));
    i = close + 1;
  }
  return out;
}

DecodedAnswer decode_answer_set(const AspProgram& p, const std::vector<GroundAtom>& atoms) {
  const bool opt = is_optimizing(p.formulation);
  std::map<std::int64_t, std::int64_t> chosen;
  std::optional<std::uint32_t> shortest;
  for (const auto& atom : atoms) {
    if (atom.predicate == "synchro" && atom.args.size() == 2) {
      const auto step = atom.args[0];
      if (step < 1 || step > p.bound_c)
        throw DecodeError("synchro step " + std::to_string(step) + " outside 1.." + std::to_string(p.bound_c));
      if (!chosen.emplace(step, atom.args[1]).second)
        throw DecodeError("duplicate synchro atoms at step " + std::to_string(step));
    } else if (opt && atom.predicate == "shortest" && atom.args.size() == 1) {
      if (shortest) throw DecodeError("more than one shortest/1 atom");
      if (atom.args[0] < 1 || atom.args[0] > p.bound_c) throw DecodeError("shortest/1 value out of range");
      shortest = static_cast<std::uint32_t>(atom.args[0]);
    }
  }
  if (opt && !shortest) throw DecodeError("optimizing program answer lacks shortest/1");
  const std::uint32_t len = opt ? *shortest : p.bound_c;
  DecodedAnswer out;
  out.length = shortest;
  for (std::uint32_t i = 1; i <= len; ++i) {
    auto it = chosen.find(i);
    if (it == chosen.end()) throw DecodeError("no synchro atom for step " + std::to_string(i));
    if (it->second < 1) throw DecodeError("synchro symbol out of range");
    out.word.push_back(static_cast<Symbol>(it->second));
  }
  return out;
}

DecodedAnswer decode_answer_set(const AspProgram& p, std::string_view atom_text) {
  return decode_answer_set(p, parse_atoms(atom_text));
}

AspSolverOutput parse_asp_output(std::string_view text) {
  AspSolverOutput out;
  bool expect_atoms = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    pos = end + 1;
    if (expect_atoms) {
      out.atoms = parse_atoms(line);
      expect_atoms = false;
    } else if (line.starts_with("Answer:")) {
      expect_atoms = true;
    } else if (line == "SATISFIABLE") {
      out.verdict = AspVerdict::satisfiable;
    } else if (line == "UNSATISFIABLE") {
      out.verdict = AspVerdict::unsatisfiable;
    } else if (line == "OPTIMUM FOUND") {
      out.verdict = AspVerdict::optimum;
    } else if (line == "UNKNOWN") {
      out.verdict = AspVerdict::unknown;
    }
    if (end == text.size()) break;
  }
  return out;
}

}  // namespace syncword
