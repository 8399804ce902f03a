#include "syncword/sat_encoding.hpp"

#include "syncword/errors.hpp"

namespace syncword {

namespace {

// Exactly one of `vars`: one at-least-one clause and all pairwise exclusions.
void exactly_one(std::vector<Clause>& out, const std::vector<Literal>& vars) {
  out.push_back(vars);
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j) out.push_back({-vars[i], -vars[j]});
}

std::uint64_t choose2(std::uint64_t m) { return m * (m - 1) / 2; }

}  // namespace

std::uint64_t sat_clause_count(std::uint32_t n, std::uint32_t k, std::uint32_t c) {
  const std::uint64_t nn = n, kk = k, cc = c;
  return cc * (choose2(kk) + 1) + nn * (cc + 1) * (choose2(nn) + 1) + nn + nn * nn * cc * kk +
         (choose2(nn) + 1) + nn * nn;
}

CnfInstance encode_sat(const Automaton& a, std::uint32_t c) {
  if (c < 1) throw DomainError("bound c must be at least 1");
  const VarMap vm{a.states(), a.symbols(), c};
  const auto n = vm.n, k = vm.k;
  if (std::uint64_t{c} * k + std::uint64_t{n} * n * (c + 1) + n > INT32_MAX)
    throw ResourceError("encoding exceeds the 31-bit DIMACS variable range");

  std::vector<Clause> clauses;
  clauses.reserve(sat_clause_count(n, k, c));
  std::vector<Literal> group;

  for (std::uint32_t l = 1; l <= c; ++l) {
    group.clear();
    for (std::uint32_t x = 1; x <= k; ++x) group.push_back(vm.x(l, x));
    exactly_one(clauses, group);
  }
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t l = 1; l <= c + 1; ++l) {
      group.clear();
      for (std::uint32_t j = 1; j <= n; ++j) group.push_back(vm.s(i, l, j));
      exactly_one(clauses, group);
    }
  for (std::uint32_t i = 1; i <= n; ++i) clauses.push_back({vm.s(i, 1, i)});
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j)
      for (std::uint32_t l = 1; l <= c; ++l)
        for (std::uint32_t x = 1; x <= k; ++x)
          clauses.push_back({-vm.s(i, l, j), -vm.x(l, x), vm.s(i, l + 1, a.next(j, x))});
  group.clear();
  for (std::uint32_t i = 1; i <= n; ++i) group.push_back(vm.y(i));
  exactly_one(clauses, group);
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = 1; j <= n; ++j) clauses.push_back({-vm.y(i), vm.s(j, c + 1, i)});

  return CnfInstance(vm.var_count(), std::move(clauses), vm);
}

Word decode_model(const Automaton& a, std::uint32_t c, const Assignment& model) {
  const VarMap vm{a.states(), a.symbols(), c};
  if (model.var_count() < vm.var_count())
    throw DecodeError("model has " + std::to_string(model.var_count()) + " variables, encoding needs " +
                      std::to_string(vm.var_count()));
  Word w;
  w.reserve(c);
  for (std::uint32_t l = 1; l <= c; ++l) {
    Symbol chosen = 0;
    for (std::uint32_t x = 1; x <= vm.k; ++x) {
      if (!model.value(static_cast<std::uint32_t>(vm.x(l, x)))) continue;
      if (chosen) throw DecodeError("step " + std::to_string(l) + " selects more than one symbol");
      chosen = x;
    }
    if (!chosen) throw DecodeError("step " + std::to_string(l) + " selects no symbol");
    w.push_back(chosen);
  }
  if (!is_synchronizing_word(a, w))
    throw SoundnessError("decoded word " + format_word(w, a.symbols()) + " does not synchronize the automaton");
  return w;
}

}  // namespace syncword
