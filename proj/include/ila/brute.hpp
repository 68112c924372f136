//
// Copyright 2026 The ilatk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Exhaustive-evaluation decision procedure for small instances. Plain
// queries are enumerated blind over their free variables (so the reported
// witness is least in lexicographic variable order); unrolled transition
// systems are walked as executions with values discovered lazily, which
// keeps the search inside the cone of influence of the checked property.

#ifndef ILA_BRUTE_HPP_
#define ILA_BRUTE_HPP_

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ila/transition.hpp"

namespace ila {

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

// A satisfiability query: the conjunction of the assertions.
struct SmtQuery {
  std::shared_ptr<TermContext> ctx;
  std::vector<Expr> assertions;
  std::string id;
};

enum class SolveStatus { kSat, kUnsat, kUnknown };

struct SolveResult {
  SolveStatus status = SolveStatus::kUnknown;
  Valuation model;                         // on sat
  std::map<std::string, BvValue> uf_model; // "f(1,2)" -> value, on sat
  // Array variables whose reconstructed default is a placeholder, i.e. only
  // the addresses the formula mentions are meaningful.
  std::set<std::string> unconstrained_defaults;
  std::string reason;                      // on unknown
  double wall_seconds = 0.0;
  uint64_t paths = 0;                      // enumeration statistics
  std::string engine_id;
};

inline std::string uf_key(const std::string& name,
                          const std::vector<BvValue>& args) {
  std::string key = name + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) key += ",";
    key += args[i].str();
  }
  return key + ")";
}

namespace detail {

// Depth-first odometer over the decisions of one evaluation path. A path
// reads its decisions in discovery order; advancing truncates unread stale
// cells, then increments the deepest non-exhausted decision.
class DecisionTape {
 public:
  explicit DecisionTape(unsigned bit_budget) : budget_(bit_budget) {}

  BvValue next(unsigned width) {
    if (cursor_ < cells_.size()) return cells_[cursor_++].value;
    bits_ += width;
    if (bits_ > budget_)
      throw BudgetExceeded("enumeration needs more than " +
                           std::to_string(budget_) + " free bits");
    cells_.push_back(Cell{width, BvValue(0)});
    ++cursor_;
    return BvValue(0);
  }

  bool next_bool() { return next(1) != 0; }

  /// Moves to the next path; false when the space is exhausted.
  bool advance() {
    while (cells_.size() > cursor_) {
      bits_ -= cells_.back().width;
      cells_.pop_back();
    }
    while (!cells_.empty()) {
      Cell& c = cells_.back();
      if (c.value == bv_mask(c.width)) {
        bits_ -= c.width;
        cells_.pop_back();
      } else {
        ++c.value;
        cursor_ = 0;
        return true;
      }
    }
    return false;
  }

  uint64_t bits_in_use() const { return bits_; }

 private:
  struct Cell {
    unsigned width;
    BvValue value;
  };
  std::vector<Cell> cells_;
  size_t cursor_ = 0;
  uint64_t bits_ = 0;
  unsigned budget_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Plain queries.

namespace detail {

inline void collect_apply_terms(Expr e, std::set<Expr>& out) {
  if (e.op() == Op::kApply) out.insert(e);
  for (const Expr& a : e.args()) collect_apply_terms(a, out);
}

/// Address expressions per array variable: every index position whose array
/// argument can reach the variable.
inline void collect_address_terms(Expr e,
                                  std::map<VarRef, std::set<Expr>>& out) {
  if (e.op() == Op::kSelect || e.op() == Op::kStore) {
    for (const VarRef& v : free_vars(e.arg(0)))
      if (v.sort.is_array()) out[v].insert(e.arg(1));
  }
  for (const Expr& a : e.args()) collect_address_terms(a, out);
}

}  // namespace detail

/// Decides a query by enumeration. The free bits of the query (scalar
/// variables, array defaults plus cells at the addresses the query mentions,
/// and uninterpreted results) must fit the budget. On sat, the witness is the
/// least assignment in lexicographic variable order, scalars ascending.
inline SolveResult brute_force(const SmtQuery& q, unsigned bit_budget = 20) {
  auto start = std::chrono::steady_clock::now();
  SolveResult res;
  res.engine_id = "brute";

  std::set<VarRef> vars;
  std::set<Expr> applies;
  std::map<VarRef, std::set<Expr>> addr_terms;
  for (const Expr& a : q.assertions) {
    collect_free_vars(a, vars);
    detail::collect_apply_terms(a, applies);
    detail::collect_address_terms(a, addr_terms);
  }

  std::vector<VarRef> scalars, arrays;
  for (const VarRef& v : vars)
    (v.sort.is_array() ? arrays : scalars).push_back(v);

  // Up-front budget accounting; lazy evaluation can only use less.
  uint64_t bits = 0;
  for (const VarRef& v : scalars)
    bits += v.sort.is_bool() ? 1 : v.sort.width();
  for (const VarRef& v : arrays)
    bits += static_cast<uint64_t>(v.sort.data_width()) *
            (addr_terms[v].size() + 1);
  for (const Expr& ap : applies)
    bits += ap.sort().is_bool() ? 1 : ap.sort().width();
  if (bits > bit_budget)
    throw BudgetExceeded("query has " + std::to_string(bits) +
                         " free bits, budget is " +
                         std::to_string(bit_budget));

  detail::DecisionTape tape(bit_budget);
  do {
    ++res.paths;
    Valuation assign;
    std::map<std::string, BvValue> ufm;
    auto uf_fn = [&tape, &ufm](const FuncSymbol& f,
                               const std::vector<BvValue>& args) {
      std::string key = uf_key(f.name, args);
      auto it = ufm.find(key);
      if (it != ufm.end()) return it->second;
      BvValue v = tape.next(f.result_sort.is_bool() ? 1
                                                    : f.result_sort.width());
      ufm.emplace(std::move(key), v);
      return v;
    };

    for (const VarRef& v : scalars)
      assign[v] = v.sort.is_bool() ? Value(tape.next_bool())
                                   : Value(tape.next(v.sort.width()));
    for (const VarRef& v : arrays)
      assign[v] = ArrayValue{tape.next(v.sort.data_width()), {}};

    // Materialize array cells at the addresses the query mentions. Address
    // terms may read arrays themselves, so iterate to a fixpoint.
    size_t rounds = 1;
    for (const auto& [v, terms] : addr_terms) rounds += terms.size();
    for (size_t round = 0; round < rounds; ++round) {
      bool grew = false;
      for (const VarRef& v : arrays) {
        auto terms = addr_terms.find(v);
        if (terms == addr_terms.end()) continue;
        std::set<BvValue> addrs;
        for (const Expr& t : terms->second) {
          Evaluator ev(
              [&assign](const VarRef& x) -> Value {
                auto it = assign.find(x);
                if (it == assign.end()) throw MissingBinding(x.name);
                return it->second;
              },
              uf_fn);
          addrs.insert(as_bv(ev.eval(t)));
        }
        ArrayValue av = as_array(assign[v]);
        for (const BvValue& a : addrs) {
          if (av.overrides.count(a)) continue;
          av.overrides[a] = tape.next(v.sort.data_width());
          grew = true;
        }
        assign[v] = av;
      }
      if (!grew) break;
    }

    bool ok = true;
    for (const Expr& a : q.assertions) {
      Evaluator ev(
          [&assign](const VarRef& x) -> Value {
            auto it = assign.find(x);
            if (it == assign.end()) throw MissingBinding(x.name);
            return it->second;
          },
          uf_fn);
      if (!as_bool(ev.eval(a))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      res.status = SolveStatus::kSat;
      res.model = std::move(assign);
      res.uf_model = std::move(ufm);
      res.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      return res;
    }
  } while (tape.advance());

  res.status = SolveStatus::kUnsat;
  res.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return res;
}

// ---------------------------------------------------------------------------
// Unrolled transition systems: bounded exhaustive execution with lazy value
// discovery. State at step 0, inputs at every step, array cells, and
// uninterpreted results become decisions only when something actually reads
// them; everything else is computed from the transition functions.

namespace detail {

class TemporalSim {
 public:
  // Arrays are handles into a shared cell store, so cells decided while
  // reading one time step stay consistent across steps and across both sides
  // of a product system.
  struct LazyArray {
    int base;
    unsigned data_width;
    std::map<BvValue, BvValue> over;
  };
  using LVal = std::variant<bool, BvValue, LazyArray>;

  TemporalSim(const TransitionSystem& ts, unsigned k, DecisionTape& tape)
      : ts_(ts), k_(k), tape_(tape) {
    for (size_t i = 0; i < ts.vars.size(); ++i)
      state_index_[ts.vars[i].name] = static_cast<int>(i);
    for (size_t i = 0; i < ts.inputs.size(); ++i)
      input_index_[ts.inputs[i].name] = static_cast<int>(i);
    alias_.resize(ts.vars.size());
    for (size_t i = 0; i < alias_.size(); ++i) alias_[i] = static_cast<int>(i);
  }

  /// Identifies the initial values of two state variables, so equality
  /// assumptions over initial state cost no extra decisions. The assumption
  /// itself still evaluates (to true) afterwards.
  void alias_initial(const std::string& a, const std::string& b) {
    auto ia = state_index_.find(a);
    auto ib = state_index_.find(b);
    if (ia == state_index_.end() || ib == state_index_.end()) return;
    int ra = alias_root(ia->second);
    int rb = alias_root(ib->second);
    if (ra != rb) alias_[std::max(ra, rb)] = std::min(ra, rb);
  }

  void begin_path() {
    state_at_.assign(k_ + 1, {});
    input_at_.assign(k_ + 1, {});
    for (auto& v : state_at_) v.assign(ts_.vars.size(), std::nullopt);
    for (auto& v : input_at_) v.assign(ts_.inputs.size(), std::nullopt);
    cells_.clear();
    defaults_.clear();
    ufm_.clear();
    memo_.clear();
  }

  bool eval_bool_at(Expr e, unsigned t) { return std::get<bool>(eval(e, t)); }

  /// Evaluates an expression over time-indexed variables (name@t).
  bool eval_indexed_bool(Expr e) { return std::get<bool>(eval(e, kIndexed)); }

  Value materialize(const LVal& v) const {
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
    if (std::holds_alternative<BvValue>(v)) return std::get<BvValue>(v);
    const LazyArray& la = std::get<LazyArray>(v);
    ArrayValue av;
    auto d = defaults_.find(la.base);
    av.def = d == defaults_.end() ? BvValue(0) : d->second;
    for (const auto& [key, val] : cells_)
      if (key.first == la.base) av.overrides[key.second] = val;
    for (const auto& [a, val] : la.over) av.overrides[a] = val;
    // Canonical form: drop overrides equal to the default.
    for (auto it = av.overrides.begin(); it != av.overrides.end();)
      it = it->second == av.def ? av.overrides.erase(it) : std::next(it);
    return av;
  }

  /// Complete valuation over indexed variables: forced values, zeros
  /// elsewhere. Suitable for counterexample replay.
  Valuation snapshot() {
    Valuation out;
    for (unsigned t = 0; t <= k_; ++t) {
      for (size_t i = 0; i < ts_.vars.size(); ++i) {
        const VarRef& v = ts_.vars[i];
        LVal lv = state_at_[t][i] ? *state_at_[t][i] : zero_of(v.sort, -1);
        out[TimeIndexer::indexed(v, t)] = materialize(lv);
      }
      for (size_t i = 0; i < ts_.inputs.size(); ++i) {
        const VarRef& v = ts_.inputs[i];
        LVal lv = input_at_[t][i] ? *input_at_[t][i] : zero_of(v.sort, -1);
        out[TimeIndexer::indexed(v, t)] = materialize(lv);
      }
    }
    return out;
  }

  const std::map<std::string, BvValue>& uf_model() const { return ufm_; }

 private:
  static constexpr unsigned kIndexed = ~0u;

  LVal zero_of(const Sort& s, int base) const {
    if (s.is_bool()) return false;
    if (s.is_bv()) return BvValue(0);
    return LazyArray{base, s.data_width(), {}};
  }

  LVal decide(const Sort& s, int base) {
    if (s.is_bool()) return tape_.next_bool();
    if (s.is_bv()) return tape_.next(s.width());
    return LazyArray{base, s.data_width(), {}};
  }

  // Base ids: state slot i at time 0 is i; input slot i at time t is
  // (t+1) * stride + i. Array-valued state evolves through stores, so only
  // its time-0 base ever allocates cells.
  int state_base(int slot) const { return slot; }
  int input_base(int slot, unsigned t) const {
    int stride = static_cast<int>(ts_.vars.size() + ts_.inputs.size() + 1);
    return (static_cast<int>(t) + 1) * stride + static_cast<int>(slot);
  }

  int alias_root(int slot) {
    while (alias_[slot] != slot) slot = alias_[slot] = alias_[alias_[slot]];
    return slot;
  }

  LVal force_state(int slot, unsigned t) {
    if (state_at_[t][slot]) return *state_at_[t][slot];
    LVal v;
    if (t == 0) {
      int root = alias_root(slot);
      if (root != slot) {
        v = force_state(root, 0);
      } else {
        v = decide(ts_.vars[slot].sort, state_base(slot));
      }
    } else {
      v = eval(ts_.next.at(ts_.vars[slot]), t - 1);
    }
    state_at_[t][slot] = v;
    return v;
  }

  LVal force_input(int slot, unsigned t) {
    if (input_at_[t][slot]) return *input_at_[t][slot];
    LVal v = decide(ts_.inputs[slot].sort, input_base(slot, t));
    input_at_[t][slot] = v;
    return v;
  }

  BvValue cell(const LazyArray& la, const BvValue& addr) {
    auto o = la.over.find(addr);
    if (o != la.over.end()) return o->second;
    auto key = std::make_pair(la.base, addr);
    auto it = cells_.find(key);
    if (it != cells_.end()) return it->second;
    BvValue v = tape_.next(la.data_width);
    cells_.emplace(key, v);
    return v;
  }

  BvValue array_default(const LazyArray& la) {
    auto it = defaults_.find(la.base);
    if (it != defaults_.end()) return it->second;
    BvValue v = tape_.next(la.data_width);
    defaults_.emplace(la.base, v);
    return v;
  }

  bool arrays_equal(const LazyArray& a, const LazyArray& b) {
    std::set<BvValue> addrs;
    for (const auto& [x, v] : a.over) addrs.insert(x);
    for (const auto& [x, v] : b.over) addrs.insert(x);
    if (a.base == b.base) {
      for (const BvValue& x : addrs)
        if (cell(a, x) != cell(b, x)) return false;
      return true;
    }
    for (const auto& [key, v] : cells_) {
      if (key.first == a.base || key.first == b.base) addrs.insert(key.second);
    }
    for (const BvValue& x : addrs)
      if (cell(a, x) != cell(b, x)) return false;
    return array_default(a) == array_default(b);
  }

  LVal resolve_var(const VarRef& v, unsigned t) {
    if (t == kIndexed) {
      auto pos = v.name.rfind('@');
      if (pos == std::string::npos)
        throw MissingBinding(v.name + " (expected a time-indexed variable)");
      unsigned step = static_cast<unsigned>(
          std::stoul(v.name.substr(pos + 1)));
      if (step > k_)
        throw IndexOutOfBound(v.name + " exceeds bound " +
                              std::to_string(k_));
      std::string base = v.name.substr(0, pos);
      auto si = state_index_.find(base);
      if (si != state_index_.end()) return force_state(si->second, step);
      auto ii = input_index_.find(base);
      if (ii != input_index_.end()) return force_input(ii->second, step);
      throw MissingBinding(v.name);
    }
    auto si = state_index_.find(v.name);
    if (si != state_index_.end()) return force_state(si->second, t);
    auto ii = input_index_.find(v.name);
    if (ii != input_index_.end()) return force_input(ii->second, t);
    throw MissingBinding(v.name);
  }

  bool ebool(Expr e, unsigned t) { return std::get<bool>(eval(e, t)); }
  BvValue ebv(Expr e, unsigned t) { return std::get<BvValue>(eval(e, t)); }

  LVal eval(Expr e, unsigned t) {
    auto key = std::make_pair(e.node(), t);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    LVal v = compute(e, t);
    memo_.emplace(key, v);
    return v;
  }

  LVal compute(Expr e, unsigned t) {
    switch (e.op()) {
      case Op::kVar:
        return resolve_var(e.var(), t);
      case Op::kBoolConst:
        return e.bool_value();
      case Op::kBvConst:
        return e.bv_value();
      case Op::kNot:
        return !ebool(e.arg(0), t);
      case Op::kAnd: {
        for (const Expr& a : e.args())
          if (!ebool(a, t)) return false;
        return true;
      }
      case Op::kOr: {
        for (const Expr& a : e.args())
          if (ebool(a, t)) return true;
        return false;
      }
      case Op::kXor:
        return ebool(e.arg(0), t) != ebool(e.arg(1), t);
      case Op::kImplies:
        return !ebool(e.arg(0), t) || ebool(e.arg(1), t);
      case Op::kIte:
        return ebool(e.arg(0), t) ? eval(e.arg(1), t) : eval(e.arg(2), t);
      case Op::kBvNot:
        return BvValue(bv_mask(e.sort().width()) ^ ebv(e.arg(0), t));
      case Op::kBvAnd:
      case Op::kBvOr:
      case Op::kBvXor:
      case Op::kBvAdd:
      case Op::kBvSub:
      case Op::kBvMul:
      case Op::kBvUdiv:
      case Op::kBvUrem:
      case Op::kShl:
      case Op::kLshr:
      case Op::kAshr:
        return scalar_bv_binop(e.op(), e.sort().width(), ebv(e.arg(0), t),
                               ebv(e.arg(1), t));
      case Op::kConcat:
        return scalar_concat(e.arg(1).sort().width(), ebv(e.arg(0), t),
                             ebv(e.arg(1), t));
      case Op::kExtract:
        return scalar_extract(e.param0(), e.param1(), ebv(e.arg(0), t));
      case Op::kZeroExtend:
        return ebv(e.arg(0), t);
      case Op::kSignExtend:
        return scalar_sign_extend(e.arg(0).sort().width(), e.sort().width(),
                                  ebv(e.arg(0), t));
      case Op::kEq: {
        const Sort& s = e.arg(0).sort();
        if (s.is_array())
          return arrays_equal(std::get<LazyArray>(eval(e.arg(0), t)),
                              std::get<LazyArray>(eval(e.arg(1), t)));
        if (s.is_bool()) return ebool(e.arg(0), t) == ebool(e.arg(1), t);
        return ebv(e.arg(0), t) == ebv(e.arg(1), t);
      }
      case Op::kUlt:
      case Op::kUle:
      case Op::kSlt:
      case Op::kSle:
        return scalar_bv_cmp(e.op(), e.arg(0).sort().width(),
                             ebv(e.arg(0), t), ebv(e.arg(1), t));
      case Op::kSelect: {
        LazyArray la = std::get<LazyArray>(eval(e.arg(0), t));
        return cell(la, ebv(e.arg(1), t));
      }
      case Op::kStore: {
        LazyArray la = std::get<LazyArray>(eval(e.arg(0), t));
        la.over[ebv(e.arg(1), t)] = ebv(e.arg(2), t);
        return la;
      }
      case Op::kApply: {
        std::vector<BvValue> args;
        for (const Expr& a : e.args()) {
          LVal v = eval(a, t);
          args.push_back(std::holds_alternative<bool>(v)
                             ? BvValue(std::get<bool>(v) ? 1 : 0)
                             : std::get<BvValue>(v));
        }
        std::string key = uf_key(e.func().name, args);
        auto it = ufm_.find(key);
        if (it != ufm_.end()) {
          if (e.sort().is_bool()) return it->second != 0;
          return it->second;
        }
        BvValue v = tape_.next(e.sort().is_bool() ? 1 : e.sort().width());
        ufm_.emplace(std::move(key), v);
        if (e.sort().is_bool()) return v != 0;
        return v;
      }
    }
    throw std::runtime_error("unreachable expression kind");
  }

  struct KeyHash {
    size_t operator()(const std::pair<const ExprNode*, unsigned>& k) const {
      return std::hash<const void*>()(k.first) ^
             (static_cast<size_t>(k.second) * 0x9e3779b9u);
    }
  };

  const TransitionSystem& ts_;
  unsigned k_;
  DecisionTape& tape_;
  std::vector<int> alias_;
  std::map<std::string, int> state_index_;
  std::map<std::string, int> input_index_;
  std::vector<std::vector<std::optional<LVal>>> state_at_;
  std::vector<std::vector<std::optional<LVal>>> input_at_;
  std::map<std::pair<int, BvValue>, BvValue> cells_;
  std::map<int, BvValue> defaults_;
  std::map<std::string, BvValue> ufm_;
  std::unordered_map<std::pair<const ExprNode*, unsigned>, LVal, KeyHash>
      memo_;
};

}  // namespace detail

/// Decides an unrolled formula by bounded exhaustive execution. Decisions are
/// discovered lazily, so the per-path free bits (reachable initial state,
/// consumed inputs, touched array cells, applied uninterpreted results) must
/// fit the budget.
inline SolveResult brute_force(const UnrolledFormula& f,
                               unsigned bit_budget = 20) {
  auto start = std::chrono::steady_clock::now();
  SolveResult res;
  res.engine_id = "brute";
  const TransitionSystem& ts = *f.ts;
  detail::DecisionTape tape(bit_budget);
  detail::TemporalSim sim(ts, f.k, tape);

  // Equalities between plain variables at step 0 (typical for mapped
  // corresponding-state assumptions) identify the underlying decisions.
  {
    std::function<void(Expr)> scan = [&](Expr e) {
      if (e.op() == Op::kAnd) {
        for (const Expr& a : e.args()) scan(a);
        return;
      }
      if (e.op() != Op::kEq || !e.arg(0).is_var() || !e.arg(1).is_var())
        return;
      const VarRef& x = e.arg(0).var();
      const VarRef& y = e.arg(1).var();
      auto base_at0 = [](const std::string& n) -> std::optional<std::string> {
        auto pos = n.rfind("@0");
        if (pos == std::string::npos || pos + 2 != n.size())
          return std::nullopt;
        return n.substr(0, pos);
      };
      auto bx = base_at0(x.name);
      auto by = base_at0(y.name);
      if (bx && by && x.sort == y.sort) sim.alias_initial(*bx, *by);
    };
    for (const Expr& e : f.extra) scan(e);
  }
  do {
    ++res.paths;
    sim.begin_path();
    bool feasible = true;
    if (ts.init.valid() && !sim.eval_bool_at(ts.init, 0)) feasible = false;
    for (unsigned t = 0; feasible && t <= f.k; ++t)
      for (const Expr& c : ts.constraints)
        if (!sim.eval_bool_at(c, t)) {
          feasible = false;
          break;
        }
    for (const Expr& x : f.extra) {
      if (!feasible) break;
      if (!sim.eval_indexed_bool(x)) feasible = false;
    }
    if (feasible && (!f.goal.valid() || sim.eval_indexed_bool(f.goal))) {
      res.status = SolveStatus::kSat;
      res.model = sim.snapshot();
      res.uf_model = sim.uf_model();
      res.wall_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      return res;
    }
  } while (tape.advance());
  res.status = SolveStatus::kUnsat;
  res.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return res;
}

}  // namespace ila

#endif  // ILA_BRUTE_HPP_
