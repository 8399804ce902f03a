#include "syncword/kiss.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "syncword/errors.hpp"

namespace syncword {

namespace {

class Names {
public:
  std::uint32_t id(const std::string& name) {
    auto [it, added] = index_.emplace(name, static_cast<std::uint32_t>(names_.size()));
    if (added) names_.push_back(name);
    return it->second;
  }
  std::vector<std::string>& names() { return names_; }
  std::size_t size() const { return names_.size(); }

private:
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::string> names_;
};

bool is_cube(const std::string& s) {
  return !s.empty() && s.find_first_not_of("01-") == std::string::npos;
}

void expand(const std::string& cube, std::size_t at, std::string& cur, std::vector<std::string>& out) {
  if (at == cube.size()) {
    out.push_back(cur);
    return;
  }
  if (cube[at] == '-') {
    for (char bit : {'0', '1'}) {
      cur[at] = bit;
      expand(cube, at + 1, cur, out);
    }
    cur[at] = '-';
  } else {
    expand(cube, at + 1, cur, out);
  }
}

}  // namespace

KissMachine parse_kiss2(std::string_view text) {
  Names states, symbols;
  // (present, symbol) -> (next, line)
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::uint32_t, std::size_t>> delta;
  std::optional<std::size_t> declared_inputs;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0][0] == '.') {
      if (tok[0] == ".e" || tok[0] == ".end") break;
      if (tok[0] == ".i" && tok.size() >= 2) declared_inputs = std::stoul(tok[1]);
      continue;  // .o .p .s .r carry nothing we need
    }
    if (tok.size() < 3) throw ParseError(lineno, "transition lines need input, present and next state");
    const auto& input = tok[0];
    const auto& present = tok[1];
    const auto& next = tok[2];
    if (present == "*" || next == "*" || present == "ANY")
      throw ParseError(lineno, "unspecified state '*' makes the machine incompletely specified");
    std::vector<std::string> minterms;
    if (is_cube(input)) {
      if (declared_inputs && input.size() != *declared_inputs)
        throw ParseError(lineno, "input cube width differs from .i");
      std::string cur = input;
      expand(input, 0, cur, minterms);
    } else {
      minterms.push_back(input);
    }
    const auto p = states.id(present);
    const auto q = states.id(next);
    for (const auto& mt : minterms) {
      const auto x = symbols.id(mt);
      auto [it, added] = delta.emplace(std::pair{p, x}, std::pair{q, lineno});
      if (!added && it->second.first != q)
        throw ParseError(lineno, "nondeterministic: state '" + present + "' on input " + mt + " goes to '" +
                                     states.names()[it->second.first] + "' (line " +
                                     std::to_string(it->second.second) + ") and '" + next + "'");
    }
  }
  if (states.size() == 0) throw ParseError(lineno, "no transitions");
  const auto n = static_cast<std::uint32_t>(states.size());
  const auto k = static_cast<std::uint32_t>(symbols.size());
  std::vector<State> table(std::size_t{n} * k);
  for (std::uint32_t p = 0; p < n; ++p)
    for (std::uint32_t x = 0; x < k; ++x) {
      auto it = delta.find({p, x});
      if (it == delta.end())
        throw ParseError(lineno, "incompletely specified: no transition from '" + states.names()[p] + "' on input " +
                                     symbols.names()[x]);
      table[std::size_t{p} * k + x] = it->second.first + 1;
    }
  return KissMachine{Automaton(n, k, std::move(table)), std::move(states.names()), std::move(symbols.names())};
}

}  // namespace syncword
