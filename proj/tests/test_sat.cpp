#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "syncword/cnf.hpp"
#include "syncword/dpll.hpp"
#include "syncword/errors.hpp"
#include "syncword/exact.hpp"
#include "syncword/sat_encoding.hpp"

using namespace syncword;

TEST_CASE("variable map is a bijection onto 1..V") {
  for (auto [n, k, c] : {std::tuple{3u, 2u, 4u}, {1u, 1u, 1u}, {5u, 3u, 7u}}) {
    const VarMap vm{n, k, c};
    std::vector<int> hits(vm.var_count() + 1, 0);
    for (std::uint32_t l = 1; l <= c; ++l)
      for (std::uint32_t x = 1; x <= k; ++x) ++hits.at(vm.x(l, x));
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t j = 1; j <= c + 1; ++j)
        for (std::uint32_t s = 1; s <= n; ++s) ++hits.at(vm.s(i, j, s));
    for (std::uint32_t i = 1; i <= n; ++i) ++hits.at(vm.y(i));
    CHECK(hits[0] == 0);
    CHECK(std::all_of(hits.begin() + 1, hits.end(), [](int h) { return h == 1; }));
  }
}

TEST_CASE("encode_sat on the three-state example") {
  const auto a = oracle::a1();
  const auto cnf = encode_sat(a, 4);
  CHECK(cnf.var_count() == 56);
  CHECK(cnf.clauses().size() == sat_clause_count(3, 2, 4));
  // 4*(1+1) + 3*5*(3+1) + 3 + 9*4*2 + (3+1) + 9
  CHECK(sat_clause_count(3, 2, 4) == 8 + 60 + 3 + 72 + 4 + 9);

  const auto model = solve_internal(cnf);
  REQUIRE(model);
  CHECK(model->satisfies(cnf));
  const auto w = decode_model(a, 4, *model);
  CHECK(w.size() == 4);
  CHECK(oracle::synchronizes(a, w));

  CHECK_FALSE(solve_internal(encode_sat(a, 3)));
  CHECK_THROWS_AS(encode_sat(a, 0), DomainError);
}

TEST_CASE("non-synchronizable automaton is unsatisfiable at every bound") {
  for (std::uint32_t c = 1; c <= 6; ++c) CHECK_FALSE(solve_internal(encode_sat(oracle::swap2(), c)));
}

TEST_CASE("decode_model error paths") {
  const auto a = oracle::a1();
  const VarMap vm{3, 2, 4};
  const auto model = *solve_internal(encode_sat(a, 4));
  Assignment both = model;
  both.set(static_cast<std::uint32_t>(vm.x(1, 1)), true);
  both.set(static_cast<std::uint32_t>(vm.x(1, 2)), true);
  CHECK_THROWS_AS(decode_model(a, 4, both), DecodeError);
  Assignment none = model;
  none.set(static_cast<std::uint32_t>(vm.x(2, 1)), false);
  none.set(static_cast<std::uint32_t>(vm.x(2, 2)), false);
  CHECK_THROWS_AS(decode_model(a, 4, none), DecodeError);
  CHECK_THROWS_AS(decode_model(a, 4, Assignment(10)), DecodeError);
  // well-formed but wrong word: "aaaa" is a permutation power
  Assignment wrong(vm.var_count());
  for (std::uint32_t l = 1; l <= 4; ++l) wrong.set(static_cast<std::uint32_t>(vm.x(l, 1)), true);
  CHECK_THROWS_AS(decode_model(a, 4, wrong), SoundnessError);
}

TEST_CASE("one-symbol automaton decodes to the repeated symbol") {
  const Automaton a(3, 1, {1, 1, 2});
  for (std::uint32_t c = 2; c <= 4; ++c) {
    const auto m = solve_internal(encode_sat(a, c));
    REQUIRE(m);
    CHECK(decode_model(a, c, *m) == Word(c, 1));
  }
  CHECK_FALSE(solve_internal(encode_sat(a, 1)));
}

TEST_CASE("DIMACS writer") {
  const CnfInstance tiny(2, {{1, -2}});
  CHECK(write_dimacs(tiny) == "p cnf 2 1\n1 -2 0\n");
  const auto cnf = encode_sat(oracle::a1(), 4);
  const auto text = write_dimacs(cnf);
  CHECK(text.find("p cnf 56 " + std::to_string(cnf.clauses().size()) + "\n") != std::string::npos);
  CHECK(text.find("c n 3 k 2 c 4\n") != std::string::npos);
  const auto zeros = std::count(text.begin(), text.end(), '\n') - 6;  // 5 comments + header
  CHECK(static_cast<std::size_t>(zeros) == cnf.clauses().size());
}

TEST_CASE("DIMACS round trip preserves the clause multiset") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto a = generate_random(static_cast<std::uint32_t>(rng() % 5 + 1), static_cast<std::uint32_t>(rng() % 3 + 1), rng());
    const auto cnf = encode_sat(a, static_cast<std::uint32_t>(rng() % 5 + 1));
    const auto back = parse_dimacs(write_dimacs(cnf));
    CHECK(back.var_count() == cnf.var_count());
    auto x = cnf.clauses(), y = back.clauses();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    CHECK(x == y);
  }
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
}

TEST_CASE("CnfInstance rejects malformed clauses") {
  CHECK_THROWS_AS(CnfInstance(2, {{}}), DomainError);
  CHECK_THROWS_AS(CnfInstance(2, {{3}}), DomainError);
  CHECK_THROWS_AS(CnfInstance(2, {{0}}), DomainError);
}

TEST_CASE("parse_model tolerates framing and line breaks") {
  const auto m = parse_model("s SATISFIABLE\nv 1 -2\nv 3 0\n", 4);
  CHECK(m.value(1));
  CHECK_FALSE(m.value(2));
  CHECK(m.value(3));
  CHECK_FALSE(m.value(4));
  const auto bare = parse_model("-1\n2\n  -3 4 0", 4);
  CHECK(bare.value(2));
  CHECK(bare.value(4));
  CHECK_FALSE(bare.value(1));
  CHECK_THROWS_AS(parse_model("v 9 0", 4), ParseError);
  CHECK_THROWS_AS(parse_model("v x 0", 4), ParseError);
}

TEST_CASE("soundness, completeness and state tracing on random automata") {
  std::mt19937_64 rng(314);
  int sat_models = 0;
  for (int t = 0; t < 60; ++t) {
    const auto n = static_cast<std::uint32_t>(rng() % 6 + 2);
    const auto k = static_cast<std::uint32_t>(rng() % 3 + 1);
    const auto a = generate_random(n, k, rng());
    const auto bfs = shortest_sync_bfs(a);
    const std::uint32_t top = bfs ? std::min<std::uint32_t>(8, static_cast<std::uint32_t>(bfs->length) + 2) : 4;
    for (std::uint32_t c = 1; c <= top; ++c) {
      const auto cnf = encode_sat(a, c);
      const auto model = solve_internal(cnf);
      CHECK(model.has_value() == (bfs && bfs->length <= c));
      if (!model) continue;
      ++sat_models;
      CHECK(model->satisfies(cnf));
      const auto w = decode_model(a, c, *model);
      CHECK(oracle::synchronizes(a, w));
      const VarMap vm = *cnf.varmap();
      for (State i = 1; i <= n; ++i) {
        for (std::uint32_t l = 1; l <= c + 1; ++l) {
          const auto expect = apply_word(a, i, std::span(w).first(l - 1));
          int trues = 0;
          for (State s = 1; s <= n; ++s)
            if (model->value(static_cast<std::uint32_t>(vm.s(i, l, s)))) {
              ++trues;
              CHECK(s == expect);
            }
          CHECK(trues == 1);
        }
      }
    }
  }
  CHECK(sat_models > 50);
}
