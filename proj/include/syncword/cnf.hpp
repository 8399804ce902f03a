#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace syncword {

using Literal = std::int32_t;
using Clause = std::vector<Literal>;

// Variable numbering of the synchronizing-word encoding for bound c:
//   X(l,x)   = (l-1)k + x                          l in 1..c, x in 1..k
//   S(i,j,s) = ck + ((i-1)(c+1) + (j-1))n + s      i,s in 1..n, j in 1..c+1
//   Y(i)     = ck + n^2(c+1) + i                   i in 1..n
struct VarMap {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t c = 0;

  Literal x(std::uint32_t step, std::uint32_t symbol) const {
    return static_cast<Literal>((step - 1) * k + symbol);
  }
  Literal s(std::uint32_t start, std::uint32_t step, std::uint32_t state) const {
    return static_cast<Literal>(c * k + ((start - 1) * (c + 1) + (step - 1)) * n + state);
  }
  Literal y(std::uint32_t state) const {
    return static_cast<Literal>(c * k + n * n * (c + 1) + state);
  }
  std::uint32_t var_count() const { return c * k + n * n * (c + 1) + n; }

  bool operator==(const VarMap&) const = default;
};

class CnfInstance {
public:
  // Throws DomainError on an empty clause or a literal outside +-1..var_count.
  CnfInstance(std::uint32_t var_count, std::vector<Clause> clauses,
              std::optional<VarMap> varmap = std::nullopt);

  std::uint32_t var_count() const noexcept { return var_count_; }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  const std::optional<VarMap>& varmap() const noexcept { return varmap_; }

private:
  std::uint32_t var_count_;
  std::vector<Clause> clauses_;
  std::optional<VarMap> varmap_;
};

// Total assignment; index 0 is unused.
class Assignment {
public:
  explicit Assignment(std::uint32_t var_count) : values_(std::size_t{var_count} + 1, false) {}

  std::uint32_t var_count() const noexcept { return static_cast<std::uint32_t>(values_.size() - 1); }
  bool value(std::uint32_t var) const { return values_.at(var); }
  void set(std::uint32_t var, bool v) { values_.at(var) = v; }
  bool satisfies(Literal lit) const {
    return lit > 0 ? value(static_cast<std::uint32_t>(lit)) : !value(static_cast<std::uint32_t>(-lit));
  }
  bool satisfies(const CnfInstance& cnf) const;

private:
  std::vector<bool> values_;
};

// "p cnf V M" then one 0-terminated clause per line. Instances carrying a
// VarMap get leading comment lines describing it.
std::string write_dimacs(const CnfInstance& cnf);
CnfInstance parse_dimacs(std::string_view text);

// Signed literals separated by whitespace; "v"/"s"/"c" line framing and a
// terminating 0 are tolerated. Unmentioned variables are false.
Assignment parse_model(std::string_view text, std::uint32_t var_count);

}  // namespace syncword
