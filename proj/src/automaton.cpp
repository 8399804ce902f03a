#include "syncword/automaton.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>

#include "syncword/errors.hpp"

namespace syncword {

Automaton::Automaton(std::uint32_t n, std::uint32_t k, std::vector<State> table)
    : n_(n), k_(k), table_(std::move(table)) {
  if (n_ == 0 || k_ == 0) throw DomainError("automaton needs n >= 1 and k >= 1");
  if (table_.size() != std::size_t{n_} * k_)
    throw DomainError("transition table must have n*k entries");
  for (State t : table_)
    if (t < 1 || t > n_) throw DomainError("transition target out of range 1..n");
}

State Automaton::next(State s, Symbol x) const {
  if (s < 1 || s > n_) throw DomainError("state " + std::to_string(s) + " out of range");
  if (x < 1 || x > k_) throw DomainError("symbol " + std::to_string(x) + " out of range");
  return table_[(s - 1) * k_ + (x - 1)];
}

State apply_word(const Automaton& a, State q, std::span<const Symbol> w) {
  if (q < 1 || q > a.states()) throw DomainError("state " + std::to_string(q) + " out of range");
  for (Symbol x : w) q = a.next(q, x);
  return q;
}

bool is_synchronizing_word(const Automaton& a, std::span<const Symbol> w) {
  const State target = apply_word(a, 1, w);
  for (State q = 2; q <= a.states(); ++q)
    if (apply_word(a, q, w) != target) return false;
  return true;
}

namespace {

std::vector<std::uint64_t> parse_ints(std::string_view line, std::size_t lineno) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
    if (ec != std::errc{} || ptr != line.data() + j)
      throw ParseError(lineno, "expected a non-negative integer, got '" +
                                   std::string(line.substr(i, j - i)) + "'");
    out.push_back(v);
    i = j;
  }
  return out;
}

}  // namespace

Automaton parse_fa(std::string_view text) {
  std::uint32_t n = 0, k = 0;
  bool have_header = false;
  std::vector<State> table;
  std::size_t rows = 0;
  std::size_t lineno = 0, last_content = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto ints = parse_ints(line, lineno);
    if (ints.empty()) {
      if (end == text.size()) break;
      continue;
    }
    last_content = lineno;
    if (!have_header) {
      if (ints.size() != 2) throw ParseError(lineno, "header must be 'n k'");
      if (ints[0] == 0 || ints[1] == 0) throw ParseError(lineno, "n and k must be positive");
      if (ints[0] > UINT32_MAX || ints[1] > UINT32_MAX || ints[0] * ints[1] > (1ULL << 32))
        throw ParseError(lineno, "automaton too large");
      n = static_cast<std::uint32_t>(ints[0]);
      k = static_cast<std::uint32_t>(ints[1]);
      table.reserve(std::size_t{n} * k);
      have_header = true;
    } else {
      if (rows == n) throw ParseError(lineno, "more than n=" + std::to_string(n) + " rows");
      if (ints.size() != k)
        throw ParseError(lineno, "expected " + std::to_string(k) + " entries, got " +
                                     std::to_string(ints.size()));
      for (auto v : ints) {
        if (v < 1 || v > n)
          throw ParseError(lineno, "entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
        table.push_back(static_cast<State>(v));
      }
      ++rows;
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(last_content, "missing 'n k' header");
  if (rows != n)
    throw ParseError(last_content, "expected " + std::to_string(n) + " rows, got " + std::to_string(rows));
  return Automaton(n, k, std::move(table));
}

std::string serialize_fa(const Automaton& a) {
  std::string out = std::to_string(a.states()) + " " + std::to_string(a.symbols()) + "\n";
  const auto t = a.table();
  for (std::uint32_t s = 0; s < a.states(); ++s) {
    for (std::uint32_t x = 0; x < a.symbols(); ++x) {
      if (x) out += ' ';
      out += std::to_string(t[s * a.symbols() + x]);
    }
    out += '\n';
  }
  return out;
}

Automaton generate_random(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
  if (n == 0 || k == 0) throw DomainError("generate_random needs n >= 1 and k >= 1");
  std::mt19937_64 rng(seed);
  // Largest multiple of n representable, for unbiased rejection.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
  std::vector<State> table(std::size_t{n} * k);
  for (auto& entry : table) {
    std::uint64_t r;
    do r = rng();
    while (r > limit);
    entry = static_cast<State>(r % n) + 1;
  }
  return Automaton(n, k, std::move(table));
}

Automaton generate_cerny(std::uint32_t n) {
  if (n < 2) throw DomainError("Cerny automaton needs n >= 2");
  std::vector<State> table(std::size_t{n} * 2);
  for (State i = 1; i <= n; ++i) {
    table[(i - 1) * 2] = i % n + 1;
    table[(i - 1) * 2 + 1] = i == n ? 1 : i;
  }
  return Automaton(n, 2, std::move(table));
}

std::string format_word(std::span<const Symbol> w, std::uint32_t k) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    if (k <= 26)
      out += static_cast<char>('a' + w[i] - 1);
    else
      out += std::to_string(w[i]);
  }
  return out;
}

Word parse_word(std::string_view text, std::uint32_t k) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  auto letter = [](char ch) { return ch >= 'a' && ch <= 'z'; };
  while (in >> tok) {
    // compact form: "baab"
    if (tok.size() > 1 && k <= 26 && std::all_of(tok.begin(), tok.end(), letter)) {
      for (char ch : tok) {
        const auto x = static_cast<Symbol>(ch - 'a' + 1);
        if (x > k) throw DomainError("symbol '" + std::string(1, ch) + "' out of range");
        w.push_back(x);
      }
      continue;
    }
    Symbol x = 0;
    if (tok.size() == 1 && letter(tok[0])) {
      x = static_cast<Symbol>(tok[0] - 'a' + 1);
    } else {
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw DomainError("bad symbol '" + tok + "'");
    }
    if (x < 1 || x > k) throw DomainError("symbol '" + tok + "' out of range");
    w.push_back(x);
  }
  return w;
}

}  // namespace syncword
