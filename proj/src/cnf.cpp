#include "syncword/cnf.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

#include "syncword/errors.hpp"

namespace syncword {

CnfInstance::CnfInstance(std::uint32_t var_count, std::vector<Clause> clauses,
                         std::optional<VarMap> varmap)
    : var_count_(var_count), clauses_(std::move(clauses)), varmap_(varmap) {
  for (const auto& cl : clauses_) {
    if (cl.empty()) throw DomainError("empty clause");
    for (auto lit : cl)
      if (lit == 0 || static_cast<std::uint32_t>(std::abs(lit)) > var_count_)
        throw DomainError("literal " + std::to_string(lit) + " outside 1.." +
                          std::to_string(var_count_));
  }
  if (varmap_ && varmap_->var_count() != var_count_)
    throw DomainError("variable map does not match the variable count");
}

bool Assignment::satisfies(const CnfInstance& cnf) const {
  for (const auto& cl : cnf.clauses()) {
    bool sat = false;
    for (auto lit : cl)
      if (satisfies(lit)) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

std::string write_dimacs(const CnfInstance& cnf) {
  std::string out;
  if (const auto& vm = cnf.varmap()) {
    out += "c synchronizing word of length " + std::to_string(vm->c) + "\n";
    out += "c n " + std::to_string(vm->n) + " k " + std::to_string(vm->k) + " c " +
           std::to_string(vm->c) + "\n";
    out += "c X(l,x) = (l-1)*k + x\n";
    out += "c S(i,j,s) = c*k + ((i-1)*(c+1) + (j-1))*n + s\n";
    out += "c Y(i) = c*k + n*n*(c+1) + i\n";
  }
  out += "p cnf " + std::to_string(cnf.var_count()) + " " + std::to_string(cnf.clauses().size()) + "\n";
  for (const auto& cl : cnf.clauses()) {
    for (auto lit : cl) {
      out += std::to_string(lit);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

CnfInstance parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::uint32_t vars = 0;
  std::size_t expected = 0;
  std::vector<Clause> clauses;
  Clause current;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == 'c') continue;
    if (tok == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> vars >> expected) || fmt != "cnf")
        throw ParseError(lineno, "bad problem line");
      header = true;
      continue;
    }
    if (!header) throw ParseError(lineno, "clause before problem line");
    do {
      Literal lit = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(lineno, "bad literal '" + tok + "'");
      if (lit == 0) {
        clauses.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(lit);
      }
    } while (ls >> tok);
  }
  if (!header) throw ParseError(lineno, "missing problem line");
  if (!current.empty()) throw ParseError(lineno, "unterminated clause");
  if (clauses.size() != expected)
    throw ParseError(lineno, "header announces " + std::to_string(expected) + " clauses, found " +
                                 std::to_string(clauses.size()));
  try {
    return CnfInstance(vars, std::move(clauses));
  } catch (const DomainError& e) {
    throw ParseError(lineno, e.what());
  }
}

Assignment parse_model(std::string_view text, std::uint32_t var_count) {
  Assignment model(var_count);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "s" || tok == "c" || tok == "SAT" || tok == "UNSAT") continue;
    if (tok != "v") ls.seekg(0);
    while (ls >> tok) {
      if (tok == "v") continue;
      Literal lit = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(lineno, "bad literal '" + tok + "' in model");
      if (lit == 0) continue;
      const auto var = static_cast<std::uint32_t>(std::abs(lit));
      if (var > var_count)
        throw ParseError(lineno, "model mentions variable " + std::to_string(var) + " beyond " +
                                     std::to_string(var_count));
      model.set(var, lit > 0);
    }
  }
  return model;
}

}  // namespace syncword
