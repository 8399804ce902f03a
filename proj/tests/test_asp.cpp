#include <doctest.h>

#include <cstdlib>
#include <random>
#include <set>

#include "oracle.hpp"
#include "syncword/asp_encoding.hpp"
#include "syncword/errors.hpp"
#include "syncword/exact.hpp"
#include "syncword/external.hpp"

using namespace syncword;

namespace {

std::string normalize(const std::string& s) {
  std::string out;
  bool space = false;
  for (char ch : s) {
    if (ch == ' ' || ch == '\n' || ch == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += ch;
  }
  return out;
}

const char* asp_command() {
  const char* cmd = std::getenv("SYNCWORD_ASP_CMD");
  return cmd && *cmd ? cmd : nullptr;
}

AspSolverOutput solve(const AspProgram& p, const std::string& extra = "") {
  return parse_asp_output(run_external(p.text, std::string(asp_command()) + extra).output);
}

}  // namespace

TEST_CASE("emit_facts") {
  const auto facts = emit_facts(oracle::a1());
  CHECK(facts.find("transition(1,1,2).") != std::string::npos);
  CHECK(facts.find("transition(3,2,1).") != std::string::npos);
  CHECK(normalize(emit_facts(Automaton(1, 1, {1}))) == "state(1). symbol(1). transition(1,1,1).");
  const auto r = emit_facts(generate_random(5, 2, 1));
  CHECK(std::count(r.begin(), r.end(), '\n') == 5 + 2 + 10);
}

TEST_CASE("formulation texts") {
  const auto a = oracle::a1();
  const auto p1 = emit_asp1(a, 4);
  CHECK(p1.formulation == AspFormulation::asp1);
  CHECK(p1.bound_c == 4);
  CHECK(p1.text.find("step(1..4).") != std::string::npos);
  CHECK(p1.text.find("1 { synchro(I,J) : symbol(J) } 1 :- step(I).") != std::string::npos);
  CHECK(p1.text.find("1 { sink(F) : state(F) } 1.") != std::string::npos);
  CHECK(p1.text.find(":- sink(F), not path(S,5,F), state(S), state(F).") != std::string::npos);
  CHECK(p1.text.find("merged") == std::string::npos);
  CHECK(p1.text.find("#minimize") == std::string::npos);

  const auto p2 = emit_asp2(a, 4);
  CHECK(p2.text.find(":- state(R), R < 3, not merged(R).") != std::string::npos);
  CHECK(p2.text.find("sink") == std::string::npos);
  CHECK(emit_asp2(Automaton(1, 1, {1}), 3).text.find("merged") == std::string::npos);

  const auto o1 = emit_asp1_opt(a, 6);
  CHECK(o1.text.find("1 { shortest(1..6) } 1.") != std::string::npos);
  CHECK(o1.text.find("step(J) :- shortest(I), J = 1..I.") != std::string::npos);
  CHECK(o1.text.find(":- sink(F), shortest(L), not path(S,L+1,F), state(S), state(F).") != std::string::npos);
  CHECK(o1.text.find("#minimize { L : shortest(L) }.") != std::string::npos);
  CHECK(o1.text.find("step(1..") == std::string::npos);
  CHECK(emit_asp2_opt(a, 6, {true}).text.find("#minimize [ shortest(L) = L ].") != std::string::npos);

  CHECK(emit_asp1(a, 4).text == p1.text);  // byte-stable
  CHECK_THROWS_AS(emit_asp1(a, 0), DomainError);
  CHECK(parse_formulation("asp2opt") == AspFormulation::asp2opt);
  CHECK_FALSE(parse_formulation("asp3"));
}

TEST_CASE("decode_answer_set") {
  const auto p = emit_asp1(oracle::a1(), 4);
  const auto d = decode_answer_set(p, "synchro(1,2) synchro(2,1) synchro(3,1) synchro(4,2) sink(1)");
  CHECK(d.word == Word{2, 1, 1, 2});
  CHECK_FALSE(d.length);
  CHECK_THROWS_AS(decode_answer_set(p, "synchro(1,2) synchro(3,1) synchro(4,2)"), DecodeError);
  CHECK_THROWS_AS(decode_answer_set(p, "synchro(1,2) synchro(1,1) synchro(2,1) synchro(3,1) synchro(4,2)"),
                  DecodeError);
  CHECK_THROWS_AS(decode_answer_set(p, "synchro(5,1)"), DecodeError);

  const Automaton reset(3, 1, {1, 1, 1});
  const auto o = emit_asp2_opt(reset, 3);
  const auto od = decode_answer_set(o, "shortest(1) synchro(1,1)");
  CHECK(od.word == Word{1});
  CHECK(od.length == 1u);
  CHECK_THROWS_AS(decode_answer_set(o, "synchro(1,1)"), DecodeError);
  CHECK_THROWS_AS(decode_answer_set(o, "shortest(2) synchro(1,1)"), DecodeError);
}

TEST_CASE("parse_asp_output") {
  const auto out = parse_asp_output(
      "clingo version 5.8.2\nReading from stdin\nSolving...\nAnswer: 1\nsynchro(1,1) shortest(2)\n"
      "Optimization: 2\nAnswer: 2\nsynchro(1,2) shortest(1)\nOptimization: 1\nOPTIMUM FOUND\n\n"
      "Models       : 2\n");
  CHECK(out.verdict == AspVerdict::optimum);
  REQUIRE(out.atoms.size() == 2);
  CHECK(out.atoms[0] == GroundAtom{"synchro", {1, 2}});
  CHECK(out.atoms[1] == GroundAtom{"shortest", {1}});
  CHECK(parse_asp_output("Solving...\nUNSATISFIABLE\n").verdict == AspVerdict::unsatisfiable);
  CHECK(parse_asp_output("Answer: 1\n\nSATISFIABLE\n").verdict == AspVerdict::satisfiable);
  CHECK(parse_asp_output("garbage").verdict == AspVerdict::unknown);
}

TEST_CASE("programs solve as intended with an external ASP solver") {
  if (!asp_command()) {
    MESSAGE("SYNCWORD_ASP_CMD not set; skipping solver-backed ASP checks");
    return;
  }
  const auto a = oracle::a1();
  for (auto f : {AspFormulation::asp1, AspFormulation::asp2}) {
    const auto sat = solve(emit_asp(a, f, 4));
    CHECK(sat.verdict == AspVerdict::satisfiable);
    const auto p = emit_asp(a, f, 4);
    CHECK(oracle::synchronizes(a, decode_answer_set(p, sat.atoms).word));
    CHECK(solve(emit_asp(a, f, 3)).verdict == AspVerdict::unsatisfiable);
    CHECK(solve(emit_asp(oracle::swap2(), f, 5)).verdict == AspVerdict::unsatisfiable);
  }
  for (auto f : {AspFormulation::asp1opt, AspFormulation::asp2opt}) {
    const auto p = emit_asp(a, f, 6);
    const auto r = solve(p);
    CHECK(r.verdict == AspVerdict::optimum);
    const auto d = decode_answer_set(p, r.atoms);
    CHECK(d.length == 4u);
    CHECK(oracle::synchronizes(a, d.word));
    CHECK(solve(emit_asp(a, f, 2)).verdict == AspVerdict::unsatisfiable);
    const auto c4 = emit_asp(generate_cerny(4), f, 16);
    CHECK(decode_answer_set(c4, solve(c4).atoms).length == 9u);
  }
}

TEST_CASE("asp1 and asp2 admit the same words") {
  if (!asp_command()) return;
  auto words = [](const AspProgram& p) {
    // Every answer set, one per "Answer:" block.
    const auto text = run_external(p.text, std::string(asp_command()) + " 0").output;
    std::set<Word> out;
    std::size_t pos = 0;
    while ((pos = text.find("Answer:", pos)) != std::string::npos) {
      const auto line_start = text.find('\n', pos) + 1;
      const auto line_end = text.find('\n', line_start);
      out.insert(decode_answer_set(p, text.substr(line_start, line_end - line_start)).word);
      pos = line_end;
    }
    return out;
  };
  const auto a = oracle::a1();
  for (std::uint32_t c = 4; c <= 6; ++c) {
    const auto w1 = words(emit_asp1(a, c));
    const auto w2 = words(emit_asp2(a, c));
    CHECK(!w1.empty());
    CHECK(w1 == w2);
    std::uint64_t expected = 0;
    oracle::for_each_word(2, c, [&](const Word& w) {
      expected += oracle::synchronizes(a, w);
      return false;
    });
    CHECK(w1.size() == expected);
  }
}
