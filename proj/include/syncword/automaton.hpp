#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace syncword {

// States are 1..n, symbols 1..k.
using State = std::uint32_t;
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

// Deterministic, completely specified automaton. Immutable once built.
class Automaton {
public:
  // `table` is row-major: entry (s-1)*k + (x-1) holds delta(s, x).
  Automaton(std::uint32_t n, std::uint32_t k, std::vector<State> table);

  std::uint32_t states() const noexcept { return n_; }
  std::uint32_t symbols() const noexcept { return k_; }

  // Checked transition.
  State next(State s, Symbol x) const;

  // Unchecked, 0-based transition for hot loops.
  std::uint32_t next0(std::uint32_t s0, std::uint32_t x0) const noexcept {
    return table_[s0 * k_ + x0] - 1;
  }

  std::span<const State> table() const noexcept { return table_; }

  bool operator==(const Automaton&) const = default;

private:
  std::uint32_t n_;
  std::uint32_t k_;
  std::vector<State> table_;
};

State apply_word(const Automaton& a, State q, std::span<const Symbol> w);

bool is_synchronizing_word(const Automaton& a, std::span<const Symbol> w);

// Native text format: "n k" then n rows of k targets; '#' starts a comment.
Automaton parse_fa(std::string_view text);
std::string serialize_fa(const Automaton& a);

// Every entry uniform over 1..n, drawn row-major from mt19937_64(seed) with
// rejection sampling, so a seed reproduces on every platform.
Automaton generate_random(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

// Cerny automaton C_n: a = cyclic shift, b fixes all states except n -> 1.
Automaton generate_cerny(std::uint32_t n);

// Letters a..z when k <= 26, numbers otherwise; space separated.
std::string format_word(std::span<const Symbol> w, std::uint32_t k);
Word parse_word(std::string_view text, std::uint32_t k);

}  // namespace syncword
