#include <doctest.h>

#include <random>

#include "syncword/cnf.hpp"
#include "syncword/dpll.hpp"
#include "syncword/errors.hpp"

using namespace syncword;

namespace {

// Exhaustive satisfiability for small formulas.
bool brute_sat(const CnfInstance& cnf) {
  const auto v = cnf.var_count();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << v); ++bits) {
    Assignment a(v);
    for (std::uint32_t i = 1; i <= v; ++i) a.set(i, (bits >> (i - 1)) & 1);
    if (a.satisfies(cnf)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("unit clause and its negation") {
  CHECK_FALSE(solve_internal(CnfInstance(1, {{1}, {-1}})));
  CHECK(solve_internal(CnfInstance(1, {{1}}))->value(1));
}

TEST_CASE("true-first branching on ascending variables") {
  const auto m = solve_internal(CnfInstance(3, {{1, 2, 3}}));
  REQUIRE(m);
  CHECK(m->value(1));
  CHECK(m->value(2));
  CHECK(m->value(3));
  const auto forced = solve_internal(CnfInstance(3, {{-1, -2}, {-1, 3}, {-3, -1}}));
  REQUIRE(forced);
  CHECK_FALSE(forced->value(1));
  CHECK(forced->value(2));
}

TEST_CASE("pigeonhole 4 into 3 is unsatisfiable") {
  std::vector<Clause> cl;
  auto var = [](int p, int h) { return p * 3 + h + 1; };
  for (int p = 0; p < 4; ++p) cl.push_back({var(p, 0), var(p, 1), var(p, 2)});
  for (int h = 0; h < 3; ++h)
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) cl.push_back({-var(p, h), -var(q, h)});
  DpllStats stats;
  CHECK_FALSE(solve_internal(CnfInstance(12, cl), {}, &stats));
  CHECK(stats.conflicts > 0);
}

TEST_CASE("agrees with exhaustive search on random 3-CNF") {
  std::mt19937_64 rng(77);
  int sat = 0, unsat = 0;
  for (int t = 0; t < 400; ++t) {
    const auto v = static_cast<std::uint32_t>(rng() % 10 + 1);
    const auto m = rng() % (5 * v) + 1;
    std::vector<Clause> cl;
    for (std::uint64_t i = 0; i < m; ++i) {
      Clause c;
      const auto width = rng() % 3 + 1;
      for (std::uint64_t j = 0; j < width; ++j) {
        const auto x = static_cast<Literal>(rng() % v + 1);
        c.push_back(rng() & 1 ? x : -x);
      }
      cl.push_back(c);
    }
    const CnfInstance cnf(v, cl);
    const auto model = solve_internal(cnf);
    CHECK(model.has_value() == brute_sat(cnf));
    if (model) {
      CHECK(model->satisfies(cnf));
      ++sat;
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 50);
  CHECK(unsat > 50);
}

TEST_CASE("variable cap") {
  DpllOptions opts;
  opts.max_vars = 5;
  CHECK_THROWS_AS(solve_internal(CnfInstance(6, {{1}}), opts), ResourceError);
}
