#include "syncword/dpll.hpp"

#include <cstdlib>
#include <string>
#include <vector>

#include "syncword/errors.hpp"

namespace syncword {

namespace {

// Literal code: 2*var for positive, 2*var+1 for negative.
inline std::uint32_t code(Literal lit) {
  return lit > 0 ? 2 * static_cast<std::uint32_t>(lit) : 2 * static_cast<std::uint32_t>(-lit) + 1;
}

class Dpll {
public:
  Dpll(const CnfInstance& cnf, const DpllOptions& options, DpllStats& stats)
      : deadline_(options.deadline), vars_(cnf.var_count()), value_(std::size_t{vars_} + 1, 0), watches_(2 * (std::size_t{vars_} + 1)),
        stats_(stats) {
    for (const auto& cl : cnf.clauses()) {
      if (cl.size() == 1) {
        units_.push_back(cl[0]);
        continue;
      }
      const auto id = static_cast<std::uint32_t>(starts_.size());
      starts_.push_back(static_cast<std::uint32_t>(lits_.size()));
      lits_.insert(lits_.end(), cl.begin(), cl.end());
      sizes_.push_back(static_cast<std::uint32_t>(cl.size()));
      watches_[code(-cl[0])].push_back(id);
      watches_[code(-cl[1])].push_back(id);
    }
  }

  std::optional<Assignment> run() {
    for (auto lit : units_) {
      if (is_false(lit)) return std::nullopt;
      if (!is_true(lit)) assign(lit);
    }
    if (!propagate()) return std::nullopt;
    std::uint32_t cursor = 1;
    for (;;) {
      while (cursor <= vars_ && value_[cursor] != 0) ++cursor;
      if (cursor > vars_) break;
      decide(static_cast<Literal>(cursor), false);
      while (!propagate()) {
        if (++stats_.conflicts % 4096 == 0 && deadline_ && std::chrono::steady_clock::now() > *deadline_)
          throw TimeoutError("internal SAT search passed its deadline");
        if (!backtrack(cursor)) return std::nullopt;
      }
    }
    Assignment model(vars_);
    for (std::uint32_t v = 1; v <= vars_; ++v) model.set(v, value_[v] > 0);
    return model;
  }

private:
  struct Decision {
    Literal lit;
    bool flipped;
    std::size_t trail_size;
  };

  bool is_true(Literal lit) const {
    const auto v = value_[static_cast<std::size_t>(std::abs(lit))];
    return lit > 0 ? v > 0 : v < 0;
  }
  bool is_false(Literal lit) const {
    const auto v = value_[static_cast<std::size_t>(std::abs(lit))];
    return lit > 0 ? v < 0 : v > 0;
  }

  void assign(Literal lit) {
    value_[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
    trail_.push_back(lit);
  }

  void decide(Literal lit, bool flipped) {
    ++stats_.decisions;
    decisions_.push_back({lit, flipped, trail_.size()});
    assign(lit);
  }

  // Undo to the most recent unflipped decision and take its other branch.
  bool backtrack(std::uint32_t& cursor) {
    while (!decisions_.empty()) {
      const auto d = decisions_.back();
      decisions_.pop_back();
      while (trail_.size() > d.trail_size) {
        const auto var = static_cast<std::uint32_t>(std::abs(trail_.back()));
        value_[var] = 0;
        if (var < cursor) cursor = var;
        trail_.pop_back();
      }
      head_ = trail_.size();
      if (!d.flipped) {
        decide(-d.lit, true);
        return true;
      }
    }
    return false;
  }

  // Returns false on conflict.
  bool propagate() {
    while (head_ < trail_.size()) {
      const Literal falsified = -trail_[head_++];
      auto& list = watches_[code(trail_[head_ - 1])];
      std::size_t keep = 0;
      for (std::size_t w = 0; w < list.size(); ++w) {
        const auto id = list[w];
        Literal* cl = &lits_[starts_[id]];
        const auto size = sizes_[id];
        if (cl[0] == falsified) std::swap(cl[0], cl[1]);
        // cl[1] is the falsified watch now.
        if (is_true(cl[0])) {
          list[keep++] = id;
          continue;
        }
        bool moved = false;
        for (std::uint32_t i = 2; i < size; ++i) {
          if (!is_false(cl[i])) {
            std::swap(cl[1], cl[i]);
            watches_[code(-cl[1])].push_back(id);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        list[keep++] = id;
        if (is_false(cl[0])) {
          for (++w; w < list.size(); ++w) list[keep++] = list[w];
          list.resize(keep);
          head_ = trail_.size();
          return false;
        }
        ++stats_.propagations;
        assign(cl[0]);
      }
      list.resize(keep);
    }
    return true;
  }

  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::uint32_t vars_;
  std::vector<std::int8_t> value_;
  // watches_[code(l)] lists clauses watching -l, i.e. visited when l becomes true.
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<Literal> lits_;
  std::vector<std::uint32_t> starts_;
  std::vector<std::uint32_t> sizes_;
  std::vector<Literal> units_;
  std::vector<Literal> trail_;
  std::vector<Decision> decisions_;
  std::size_t head_ = 0;
  DpllStats& stats_;
};

}  // namespace

std::optional<Assignment> solve_internal(const CnfInstance& cnf, DpllOptions options, DpllStats* stats) {
  if (cnf.var_count() > options.max_vars)
    throw ResourceError("instance has " + std::to_string(cnf.var_count()) +
                        " variables, above the internal solver cap of " + std::to_string(options.max_vars) +
                        "; use an external solver (method sat-external)");
  DpllStats local;
  Dpll solver(cnf, options, stats ? *stats : local);
  return solver.run();
}

}  // namespace syncword
