#include <doctest.h>

#include "syncword/errors.hpp"
#include "syncword/kiss.hpp"

using namespace syncword;

TEST_CASE("cubes expand to minterms in first-appearance order") {
  const auto m = parse_kiss2(
      ".i 2\n.o 1\n.p 4\n.s 2\n.r st0\n"
      "0- st0 st1 0\n"
      "1- st0 st0 1\n"
      "-- st1 st0 0\n"
      ".e\n");
  CHECK(m.automaton.states() == 2);
  CHECK(m.automaton.symbols() == 4);
  CHECK(m.state_names == std::vector<std::string>{"st0", "st1"});
  CHECK(m.symbol_names == std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(m.automaton.next(1, 1) == 2);
  CHECK(m.automaton.next(1, 3) == 1);
  for (Symbol x = 1; x <= 4; ++x) CHECK(m.automaton.next(2, x) == 1);
}

TEST_CASE("symbolic inputs and comments") {
  const auto m = parse_kiss2("# machine\ngo a b 0\nstop a a 0\ngo b b 1\nstop b a 1\n");
  CHECK(m.symbol_names == std::vector<std::string>{"go", "stop"});
  CHECK(m.automaton.next(2, 2) == 1);
}

TEST_CASE("overlapping cubes that agree are fine") {
  const auto m = parse_kiss2("0- a b 0\n00 a b 1\n1- a a 0\n-- b b 0\n");
  CHECK(m.automaton.next(1, 1) == 2);
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(parse_kiss2("0 a b 0\n0 a a 0\n1 a a 0\n- b a 0\n"), ParseError);  // nondeterministic
  CHECK_THROWS_AS(parse_kiss2("0 a b 0\n1 a a 0\n0 b a 0\n"), ParseError);          // b lacks input 1
  CHECK_THROWS_AS(parse_kiss2("0 a * 0\n1 a a 0\n"), ParseError);
  CHECK_THROWS_AS(parse_kiss2(".i 2\n0 a a 0\n"), ParseError);
  CHECK_THROWS_AS(parse_kiss2(".i 1\n.e\n"), ParseError);
  CHECK_THROWS_AS(parse_kiss2("0 a\n"), ParseError);
}
