#pragma once
#include <bit>
#include <cstdint>
#include <vector>

#include "syncword/automaton.hpp"

namespace syncword {

// Fixed-width membership vector over states 1..n.
class StateSet {
public:
  explicit StateSet(std::uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static StateSet full(std::uint32_t n);

  std::uint32_t universe() const noexcept { return n_; }

  bool contains(State s) const noexcept {
    const auto i = s - 1;
    return (words_[i / 64] >> (i % 64)) & 1U;
  }
  void insert(State s) noexcept {
    const auto i = s - 1;
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  void erase(State s) noexcept {
    const auto i = s - 1;
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  std::uint32_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }

  // Ascending list of members.
  std::vector<State> members() const;

  StateSet image(const Automaton& a, Symbol x) const;
  StateSet image(const Automaton& a, std::span<const Symbol> w) const;

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  bool operator==(const StateSet&) const = default;

private:
  std::uint32_t n_;
  std::vector<std::uint64_t> words_;
};

}  // namespace syncword
