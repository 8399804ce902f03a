#pragma once
#include <cstddef>
#include <cstdint>
#include <optional>

#include "syncword/automaton.hpp"

namespace syncword {

struct BfsResult {
  std::uint64_t length = 0;
  Word witness;
  State sink = 1;
};

struct BfsLimits {
  // Maximum number of distinct state sets the search may store.
  std::size_t max_visited = std::size_t{1} << 26;

  // Cap derived from a memory budget for an n-state automaton.
  static BfsLimits from_memory(std::size_t bytes, std::uint32_t n);
  static std::size_t bytes_per_visited(std::uint32_t n);
};

struct BfsStats {
  std::size_t visited = 0;
  std::size_t bytes_estimate = 0;
};

// Pair-automaton test, O(n^2 k).
bool check_synchronizable(const Automaton& a);

// Breadth-first search over the power-set automaton from Q down to a
// singleton. Symbols are expanded in ascending order, so the witness is the
// lexicographically smallest among the shortest. Throws ResourceError when
// more than `limits.max_visited` sets would be stored.
std::optional<BfsResult> shortest_sync_bfs(const Automaton& a, BfsLimits limits = {},
                                           BfsStats* stats = nullptr);

// Repeatedly appends a shortest word merging some pair of the current image.
std::optional<Word> greedy_sync(const Automaton& a);

// Shortest word merging states p and q, or nullopt when none exists.
std::optional<Word> merging_word(const Automaton& a, State p, State q);

// floor(n(7n^2+6n-16)/48), the best known bound on the shortest reset word
// (0 for n = 1).
std::uint64_t reset_length_upper_bound(std::uint32_t n);

}  // namespace syncword
