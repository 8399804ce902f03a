#pragma once
#include <cstdint>

#include "syncword/automaton.hpp"
#include "syncword/cnf.hpp"

namespace syncword {

// CNF satisfiable iff `a` has a synchronizing word of length c. Clauses in
// order: input choice per step, one current state per (start, step) for
// steps 1..c+1, initial states, transitions, sink choice, sink reached.
CnfInstance encode_sat(const Automaton& a, std::uint32_t c);

// Closed-form clause count of encode_sat.
std::uint64_t sat_clause_count(std::uint32_t n, std::uint32_t k, std::uint32_t c);

// Word chosen by the input variables. Throws DecodeError if a step has not
// exactly one symbol, SoundnessError if the word does not synchronize `a`.
Word decode_model(const Automaton& a, std::uint32_t c, const Assignment& model);

}  // namespace syncword
