#include "syncword/state_set.hpp"

namespace syncword {

StateSet StateSet::full(std::uint32_t n) {
  StateSet s(n);
  for (State q = 1; q <= n; ++q) s.insert(q);
  return s;
}

std::uint32_t StateSet::size() const noexcept {
  std::uint32_t c = 0;
  for (auto w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
  return c;
}

std::vector<State> StateSet::members() const {
  std::vector<State> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w) {
      out.push_back(static_cast<State>(i * 64 + std::countr_zero(w)) + 1);
      w &= w - 1;
    }
  }
  return out;
}

StateSet StateSet::image(const Automaton& a, Symbol x) const {
  StateSet out(n_);
  for (State s : members()) out.insert(a.next(s, x));
  return out;
}

StateSet StateSet::image(const Automaton& a, std::span<const Symbol> w) const {
  StateSet cur = *this;
  for (Symbol x : w) cur = cur.image(a, x);
  return cur;
}

}  // namespace syncword
