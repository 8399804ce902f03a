#include "syncword/exact.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <limits>
#include <string>

#include "syncword/errors.hpp"
#include "syncword/state_set.hpp"

namespace syncword {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Inverse transition lists in CSR layout, one block per symbol.
struct Preimages {
  std::uint32_t n;
  std::vector<std::uint32_t> offsets;  // k * (n + 1)
  std::vector<std::uint32_t> sources;  // k * n, 0-based

  explicit Preimages(const Automaton& a) : n(a.states()) {
    const auto k = a.symbols();
    offsets.assign(std::size_t{k} * (n + 1), 0);
    sources.resize(std::size_t{k} * n);
    for (std::uint32_t x = 0; x < k; ++x) {
      auto* off = &offsets[std::size_t{x} * (n + 1)];
      for (std::uint32_t s = 0; s < n; ++s) ++off[a.next0(s, x) + 1];
      for (std::uint32_t t = 0; t < n; ++t) off[t + 1] += off[t];
      std::vector<std::uint32_t> fill(off, off + n);
      auto* src = &sources[std::size_t{x} * n];
      for (std::uint32_t s = 0; s < n; ++s) src[fill[a.next0(s, x)]++] = s;
    }
  }

  std::span<const std::uint32_t> of(std::uint32_t x, std::uint32_t t) const {
    const auto* off = &offsets[std::size_t{x} * (n + 1)];
    return {&sources[std::size_t{x} * n + off[t]], off[t + 1] - off[t]};
  }
};

// Shortest merging words for every unordered pair, from a backward search
// rooted at the diagonal. Pair (p,q) with p <= q is stored at p*n+q.
struct PairGraph {
  std::uint32_t n;
  std::vector<std::uint32_t> dist;
  std::vector<std::uint32_t> symbol;     // first symbol of the merging word
  std::vector<std::uint32_t> successor;  // pair reached after that symbol

  explicit PairGraph(const Automaton& a) : n(a.states()) {
    const std::size_t cells = std::size_t{n} * n;
    dist.assign(cells, kUnreached);
    symbol.assign(cells, 0);
    successor.assign(cells, 0);
    const Preimages pre(a);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t p = 0; p < n; ++p) {
      dist[std::size_t{p} * n + p] = 0;
      queue.push_back(p * n + p);
    }
    while (!queue.empty()) {
      const auto cell = queue.front();
      queue.pop_front();
      const auto t = cell / n, u = cell % n;
      for (std::uint32_t x = 0; x < a.symbols(); ++x) {
        for (auto p : pre.of(x, t)) {
          for (auto q : pre.of(x, u)) {
            if (p == q) continue;
            const auto lo = std::min(p, q), hi = std::max(p, q);
            const auto idx = lo * n + hi;
            if (dist[idx] != kUnreached) continue;
            dist[idx] = dist[cell] + 1;
            symbol[idx] = x + 1;
            successor[idx] = cell;
            queue.push_back(idx);
          }
        }
      }
    }
  }

  std::uint32_t distance(std::uint32_t p0, std::uint32_t q0) const {
    return dist[std::size_t{std::min(p0, q0)} * n + std::max(p0, q0)];
  }

  Word word(std::uint32_t p0, std::uint32_t q0) const {
    Word w;
    auto cell = std::min(p0, q0) * n + std::max(p0, q0);
    while (cell / n != cell % n) {
      w.push_back(symbol[cell]);
      cell = successor[cell];
    }
    return w;
  }

  bool all_reached() const {
    for (std::uint32_t p = 0; p < n; ++p)
      for (std::uint32_t q = p + 1; q < n; ++q)
        if (dist[std::size_t{p} * n + q] == kUnreached) return false;
    return true;
  }
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Visited sets in BFS order plus an open-addressing index over them.
// kWords == 0 selects a runtime width.
template <std::size_t kWords>
class SetStore {
public:
  SetStore(std::size_t words, std::size_t max_visited)
      : words_(kWords ? kWords : words), max_visited_(max_visited) {
    slots_.assign(1024, 0);
  }

  std::size_t width() const noexcept { return kWords ? kWords : words_; }
  std::size_t size() const noexcept { return parent_.size(); }
  const std::uint64_t* set(std::uint32_t idx) const { return &arena_[idx * width()]; }
  std::uint32_t parent(std::uint32_t idx) const { return parent_[idx]; }
  std::uint32_t symbol(std::uint32_t idx) const { return symbol_[idx]; }

  // Returns false when `key` was already present.
  bool insert(const std::uint64_t* key, std::uint32_t parent, std::uint32_t sym) {
    const auto w = width();
    auto mask = slots_.size() - 1;
    auto h = hash(key) & mask;
    while (auto slot = slots_[h]) {
      if (std::equal(key, key + w, set(slot - 1))) return false;
      h = (h + 1) & mask;
    }
    if (size() >= max_visited_)
      throw ResourceError("power-set search exceeded the visited-set cap of " +
                          std::to_string(max_visited_) + " sets");
    arena_.insert(arena_.end(), key, key + w);
    parent_.push_back(parent);
    symbol_.push_back(sym);
    slots_[h] = static_cast<std::uint32_t>(size());
    if (size() * 2 > slots_.size()) grow();
    return true;
  }

private:
  std::uint64_t hash(const std::uint64_t* key) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < width(); ++i) h = mix64(h ^ key[i]);
    return h;
  }

  void grow() {
    std::vector<std::uint32_t> next(slots_.size() * 2, 0);
    const auto mask = next.size() - 1;
    for (std::uint32_t idx = 0; idx < size(); ++idx) {
      auto h = hash(set(idx)) & mask;
      while (next[h]) h = (h + 1) & mask;
      next[h] = idx + 1;
    }
    slots_.swap(next);
  }

  std::size_t words_;
  std::size_t max_visited_;
  std::vector<std::uint64_t> arena_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> symbol_;
  std::vector<std::uint32_t> slots_;
};

constexpr std::uint32_t kRoot = std::numeric_limits<std::uint32_t>::max();

// Single-word image via per-byte lookup tables.
class ByteImage {
public:
  explicit ByteImage(const Automaton& a)
      : chunks_((a.states() + 7) / 8), table_(std::size_t{a.symbols()} * chunks_ * 256, 0) {
    for (std::uint32_t x = 0; x < a.symbols(); ++x)
      for (std::size_t c = 0; c < chunks_; ++c)
        for (std::uint32_t byte = 1; byte < 256; ++byte) {
          std::uint64_t img = 0;
          for (std::uint32_t b = 0; b < 8; ++b) {
            const auto s = static_cast<std::uint32_t>(c * 8 + b);
            if ((byte >> b) & 1U && s < a.states()) img |= std::uint64_t{1} << a.next0(s, x);
          }
          table_[(x * chunks_ + c) * 256 + byte] = img;
        }
  }

  std::uint64_t operator()(std::uint64_t set, std::uint32_t x0) const {
    std::uint64_t img = 0;
    const auto* row = &table_[x0 * chunks_ * 256];
    for (std::size_t c = 0; c < chunks_; ++c, set >>= 8) img |= row[c * 256 + (set & 0xff)];
    return img;
  }

private:
  std::size_t chunks_;
  std::vector<std::uint64_t> table_;
};

template <std::size_t kWords, class ImageFn>
std::optional<BfsResult> power_set_bfs(const Automaton& a, std::size_t words, BfsLimits limits,
                                       BfsStats* stats, ImageFn image) {
  SetStore<kWords> store(words, limits.max_visited);
  const auto w = store.width();
  std::vector<std::uint64_t> full(w, 0);
  for (std::uint32_t s = 0; s < a.states(); ++s) full[s / 64] |= std::uint64_t{1} << (s % 64);
  store.insert(full.data(), kRoot, 0);

  auto finish = [&](std::uint32_t idx) {
    BfsResult r;
    for (auto cur = idx; store.parent(cur) != kRoot; cur = store.parent(cur))
      r.witness.push_back(store.symbol(cur));
    std::reverse(r.witness.begin(), r.witness.end());
    r.length = r.witness.size();
    const auto* bits = store.set(idx);
    for (std::size_t i = 0; i < w; ++i)
      if (bits[i]) r.sink = static_cast<State>(i * 64 + std::countr_zero(bits[i])) + 1;
    if (stats) {
      stats->visited = store.size();
      stats->bytes_estimate = store.size() * BfsLimits::bytes_per_visited(a.states());
    }
    return r;
  };
  if (a.states() == 1) return finish(0);

  std::vector<std::uint64_t> img(w);
  for (std::uint32_t head = 0; head < store.size(); ++head) {
    for (std::uint32_t x = 0; x < a.symbols(); ++x) {
      image(store.set(head), x, img.data());
      if (!store.insert(img.data(), head, x + 1)) continue;
      std::uint32_t card = 0;
      for (auto word : img) card += static_cast<std::uint32_t>(std::popcount(word));
      if (card == 1) return finish(static_cast<std::uint32_t>(store.size() - 1));
    }
  }
  if (stats) {
    stats->visited = store.size();
    stats->bytes_estimate = store.size() * BfsLimits::bytes_per_visited(a.states());
  }
  return std::nullopt;
}

}  // namespace

std::size_t BfsLimits::bytes_per_visited(std::uint32_t n) {
  // set words + parent + symbol + hash slots at load <= 1/2 (transiently 1/4)
  return std::size_t{(n + 63) / 64} * 8 + 4 + 4 + 16;
}

BfsLimits BfsLimits::from_memory(std::size_t bytes, std::uint32_t n) {
  return BfsLimits{std::max<std::size_t>(1, bytes / bytes_per_visited(n))};
}

bool check_synchronizable(const Automaton& a) { return PairGraph(a).all_reached(); }

std::optional<BfsResult> shortest_sync_bfs(const Automaton& a, BfsLimits limits, BfsStats* stats) {
  const std::size_t words = (a.states() + 63) / 64;
  if (words == 1) {
    const ByteImage byte_image(a);
    return power_set_bfs<1>(a, 1, limits, stats,
                            [&](const std::uint64_t* src, std::uint32_t x, std::uint64_t* dst) {
                              dst[0] = byte_image(src[0], x);
                            });
  }
  return power_set_bfs<0>(
      a, words, limits, stats, [&](const std::uint64_t* src, std::uint32_t x, std::uint64_t* dst) {
        std::fill(dst, dst + words, 0);
        for (std::size_t i = 0; i < words; ++i) {
          for (auto bits = src[i]; bits; bits &= bits - 1) {
            const auto s = static_cast<std::uint32_t>(i * 64 + std::countr_zero(bits));
            const auto t = a.next0(s, x);
            dst[t / 64] |= std::uint64_t{1} << (t % 64);
          }
        }
      });
}

std::optional<Word> greedy_sync(const Automaton& a) {
  const PairGraph pairs(a);
  if (!pairs.all_reached()) return std::nullopt;
  Word out;
  StateSet current = StateSet::full(a.states());
  while (current.size() > 1) {
    const auto m = current.members();
    std::uint32_t best_p = 0, best_q = 0, best = kUnreached;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        const auto d = pairs.distance(m[i] - 1, m[j] - 1);
        if (d < best) {
          best = d;
          best_p = m[i] - 1;
          best_q = m[j] - 1;
        }
      }
    const auto piece = pairs.word(best_p, best_q);
    current = current.image(a, piece);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

std::optional<Word> merging_word(const Automaton& a, State p, State q) {
  if (p < 1 || p > a.states() || q < 1 || q > a.states()) throw DomainError("state out of range");
  const PairGraph pairs(a);
  if (pairs.distance(p - 1, q - 1) == kUnreached) return std::nullopt;
  return pairs.word(p - 1, q - 1);
}

std::uint64_t reset_length_upper_bound(std::uint32_t n) {
  const std::int64_t nn = n;
  const std::int64_t v = nn * (7 * nn * nn + 6 * nn - 16);
  return v <= 0 ? 0 : static_cast<std::uint64_t>(v / 48);
}

}  // namespace syncword
