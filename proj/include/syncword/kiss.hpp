#pragma once
#include <string>
#include <string_view>
#include <vector>

#include "syncword/automaton.hpp"

namespace syncword {

struct KissMachine {
  Automaton automaton;
  std::vector<std::string> state_names;   // index s-1 names state s
  std::vector<std::string> symbol_names;  // index x-1 names symbol x
};

// Reads KISS2 transition lines "input present next output", dropping
// outputs. Binary input cubes are expanded to minterms (so .i inputs give up
// to 2^i symbols); other input tokens are taken as symbolic names. States
// and symbols are numbered in order of first appearance. Throws ParseError
// unless the transitions form a total deterministic function.
KissMachine parse_kiss2(std::string_view text);

}  // namespace syncword
