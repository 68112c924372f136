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

#ifndef ILA_INTERP_HPP_
#define ILA_INTERP_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ila/model.hpp"

namespace ila {

class MissingBinding : public std::runtime_error {
 public:
  explicit MissingBinding(const std::string& name)
      : std::runtime_error("no binding for variable " + name) {}
};

class DynamicOneHotViolation : public std::runtime_error {
 public:
  DynamicOneHotViolation(const std::string& path, size_t fired,
                         std::string valuation)
      : std::runtime_error("decode one-hot violation in " + path + ": " +
                           std::to_string(fired) + " decodes true"),
        path_(path),
        valuation_(std::move(valuation)) {}
  const std::string& path() const { return path_; }
  const std::string& valuation() const { return valuation_; }

 private:
  std::string path_;
  std::string valuation_;
};

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(size_t budget)
      : std::runtime_error("child program did not quiesce within " +
                           std::to_string(budget) + " steps") {}
};

/// Concrete bindings for variables. Hierarchy snapshots key state by the
/// path-qualified variable; plain expression evaluation keys by the variable
/// as written.
using Valuation = std::map<VarRef, Value>;

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Executable interpretations for uninterpreted functions. Symbols without an
// installed definition get a seeded pseudo-random function of the argument
// tuple, stable for the lifetime of the table.
class UfTable {
 public:
  explicit UfTable(uint64_t seed = 0) : seed_(seed) {}

  void define(const std::string& name,
              std::function<BvValue(const std::vector<BvValue>&)> fn) {
    defs_[name] = std::move(fn);
  }

  BvValue apply(const FuncSymbol& f, const std::vector<BvValue>& args) {
    if (!f.result_sort.is_bv() && !f.result_sort.is_bool())
      throw SortError("uninterpreted function " + f.name +
                      " must return a bitvector or boolean");
    auto def = defs_.find(f.name);
    if (def != defs_.end()) {
      BvValue out = def->second(args);
      return f.result_sort.is_bool() ? out & 1
                                     : bv_trunc(out, f.result_sort.width());
    }
    std::string key = f.name;
    for (const auto& a : args) key += "," + a.str();
    auto memo = memo_.find(key);
    if (memo != memo_.end()) return memo->second;
    uint64_t h = splitmix64(seed_ ^ std::hash<std::string>()(key));
    BvValue out = f.result_sort.is_bool()
                      ? BvValue(h & 1)
                      : bv_trunc(BvValue(h) * BvValue(splitmix64(h)),
                                 f.result_sort.width());
    memo_.emplace(std::move(key), out);
    return out;
  }

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  std::map<std::string, std::function<BvValue(const std::vector<BvValue>&)>>
      defs_;
  std::map<std::string, BvValue> memo_;
};

// ---------------------------------------------------------------------------
// Scalar operator semantics, shared by the interpreter and the enumeration
// engine. Conventions follow the solver standard: wrap-around arithmetic,
// division by zero yields all ones, remainder by zero yields the dividend.

inline BvValue scalar_bv_binop(Op op, unsigned w, const BvValue& a,
                               const BvValue& b) {
  switch (op) {
    case Op::kBvAnd: return a & b;
    case Op::kBvOr: return a | b;
    case Op::kBvXor: return a ^ b;
    case Op::kBvAdd: return bv_trunc(a + b, w);
    case Op::kBvSub: return bv_trunc(a - b + (BvValue(1) << w), w);
    case Op::kBvMul: return bv_trunc(a * b, w);
    case Op::kBvUdiv: return b == 0 ? bv_mask(w) : BvValue(a / b);
    case Op::kBvUrem: return b == 0 ? a : BvValue(a % b);
    case Op::kShl:
      if (b >= w) return BvValue(0);
      return bv_trunc(a << b.convert_to<unsigned>(), w);
    case Op::kLshr:
      if (b >= w) return BvValue(0);
      return BvValue(a >> b.convert_to<unsigned>());
    case Op::kAshr: {
      bool neg = bit_test(a, w - 1);
      if (b >= w) return neg ? bv_mask(w) : BvValue(0);
      unsigned s = b.convert_to<unsigned>();
      BvValue out = a >> s;
      if (neg) out |= bv_mask(w) ^ bv_mask(w - s);
      return out;
    }
    default:
      throw std::runtime_error("not a bitvector binary operator");
  }
}

inline bool scalar_bv_cmp(Op op, unsigned w, const BvValue& a,
                          const BvValue& b) {
  switch (op) {
    case Op::kUlt: return a < b;
    case Op::kUle: return a <= b;
    case Op::kSlt: return bv_to_signed(a, w) < bv_to_signed(b, w);
    case Op::kSle: return bv_to_signed(a, w) <= bv_to_signed(b, w);
    default:
      throw std::runtime_error("not a comparison operator");
  }
}

inline BvValue scalar_extract(unsigned hi, unsigned lo, const BvValue& a) {
  return bv_trunc(a >> lo, hi - lo + 1);
}

inline BvValue scalar_sign_extend(unsigned w_in, unsigned w_out,
                                  const BvValue& a) {
  if (bit_test(a, w_in - 1)) return a | (bv_mask(w_out) ^ bv_mask(w_in));
  return a;
}

inline BvValue scalar_concat(unsigned w_rhs, const BvValue& a,
                             const BvValue& b) {
  return (a << w_rhs) | b;
}

// ---------------------------------------------------------------------------
// Expression evaluation. The evaluator resolves leaves through callbacks so
// concrete simulation and counterexample replay share one code path.

class Evaluator {
 public:
  using VarFn = std::function<Value(const VarRef&)>;
  using UfFn =
      std::function<BvValue(const FuncSymbol&, const std::vector<BvValue>&)>;

  Evaluator(VarFn var_fn, UfFn uf_fn)
      : var_fn_(std::move(var_fn)), uf_fn_(std::move(uf_fn)) {}

  void reset() { memo_.clear(); }

  Value eval(Expr e) {
    auto it = memo_.find(e.node());
    if (it != memo_.end()) return it->second;
    Value v = compute(e);
    memo_.emplace(e.node(), v);
    return v;
  }

  bool eval_bool(Expr e) { return as_bool(eval(e)); }
  BvValue eval_bv(Expr e) { return as_bv(eval(e)); }

 private:
  Value compute(Expr e) {
    switch (e.op()) {
      case Op::kVar:
        return var_fn_(e.var());
      case Op::kBoolConst:
        return e.bool_value();
      case Op::kBvConst:
        return e.bv_value();
      case Op::kNot:
        return !eval_bool(e.arg(0));
      case Op::kAnd: {
        for (const Expr& a : e.args())
          if (!eval_bool(a)) return false;
        return true;
      }
      case Op::kOr: {
        for (const Expr& a : e.args())
          if (eval_bool(a)) return true;
        return false;
      }
      case Op::kXor:
        return eval_bool(e.arg(0)) != eval_bool(e.arg(1));
      case Op::kImplies:
        return !eval_bool(e.arg(0)) || eval_bool(e.arg(1));
      case Op::kIte:
        return eval_bool(e.arg(0)) ? eval(e.arg(1)) : eval(e.arg(2));
      case Op::kBvNot:
        return bv_mask(e.sort().width()) ^ eval_bv(e.arg(0));
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
        return scalar_bv_binop(e.op(), e.sort().width(), eval_bv(e.arg(0)),
                               eval_bv(e.arg(1)));
      case Op::kConcat:
        return scalar_concat(e.arg(1).sort().width(), eval_bv(e.arg(0)),
                             eval_bv(e.arg(1)));
      case Op::kExtract:
        return scalar_extract(e.param0(), e.param1(), eval_bv(e.arg(0)));
      case Op::kZeroExtend:
        return eval_bv(e.arg(0));
      case Op::kSignExtend:
        return scalar_sign_extend(e.arg(0).sort().width(), e.sort().width(),
                                  eval_bv(e.arg(0)));
      case Op::kEq: {
        Value a = eval(e.arg(0));
        Value b = eval(e.arg(1));
        return value_equal(a, b, e.arg(0).sort());
      }
      case Op::kUlt:
      case Op::kUle:
      case Op::kSlt:
      case Op::kSle:
        return scalar_bv_cmp(e.op(), e.arg(0).sort().width(),
                             eval_bv(e.arg(0)), eval_bv(e.arg(1)));
      case Op::kSelect: {
        ArrayValue a = as_array(eval(e.arg(0)));
        return a.get(eval_bv(e.arg(1)));
      }
      case Op::kStore: {
        ArrayValue a = as_array(eval(e.arg(0)));
        a.set(eval_bv(e.arg(1)), eval_bv(e.arg(2)));
        return a;
      }
      case Op::kApply: {
        std::vector<BvValue> args;
        args.reserve(e.num_args());
        for (const Expr& a : e.args()) {
          Value v = eval(a);
          args.push_back(value_is_bool(v) ? BvValue(as_bool(v) ? 1 : 0)
                                          : as_bv(v));
        }
        BvValue out = uf_fn_(e.func(), args);
        if (e.sort().is_bool()) return out != 0;
        return out;
      }
    }
    throw std::runtime_error("unreachable expression kind");
  }

  VarFn var_fn_;
  UfFn uf_fn_;
  std::unordered_map<const ExprNode*, Value> memo_;
};

/// Evaluates a closed-over expression against explicit bindings.
inline Value eval(Expr e, const Valuation& v, UfTable& ufs) {
  Evaluator ev(
      [&v](const VarRef& var) -> Value {
        auto it = v.find(var);
        if (it == v.end()) throw MissingBinding(var.name);
        return it->second;
      },
      [&ufs](const FuncSymbol& f, const std::vector<BvValue>& args) {
        return ufs.apply(f, args);
      });
  return ev.eval(e);
}

inline Value eval(Expr e, const Valuation& v) {
  UfTable ufs;
  return eval(e, v, ufs);
}

// ---------------------------------------------------------------------------
// Hierarchical execution.

struct StepOutcome {
  // Path and instruction name of the fired (child-)instruction; empty when
  // the machine stalled.
  std::optional<std::pair<std::string, std::string>> fired;
  Valuation next;  // state slots, keyed by path-qualified variable
};

struct TraceStep {
  Valuation inputs;  // keyed by the root model's input variables
  StepOutcome outcome;
};

using Trace = std::vector<TraceStep>;

// Slot-level simulator for one flattened hierarchy. The step rule: the
// deepest node whose valid function holds executes its unique enabled
// instruction; parent instructions wait while any descendant is active; with
// nothing enabled the step is a stall (identity).
class Machine {
 public:
  Machine(const FlatModel& fm, UfTable& ufs) : fm_(fm), ufs_(ufs) {
    vals_.resize(fm.slots().size());
  }

  /// Loads state from the model's constant initial values, seeding any
  /// unconstrained variables from the table's seed.
  void reset_from_init() {
    for (size_t i = 0; i < fm_.slots().size(); ++i) {
      const auto& slot = fm_.slots()[i];
      if (slot.kind == VarKind::kInput) continue;
      if (slot.init) {
        vals_[i] = *slot.init;
      } else {
        uint64_t h = splitmix64(ufs_.seed() ^
                                std::hash<std::string>()(slot.qual_name));
        if (slot.var.sort.is_bool())
          vals_[i] = (h & 1) != 0;
        else if (slot.var.sort.is_bv())
          vals_[i] = bv_trunc(BvValue(h), slot.var.sort.width());
        else
          vals_[i] = ArrayValue{
              bv_trunc(BvValue(h), slot.var.sort.data_width()), {}};
      }
    }
  }

  void set_state(const Valuation& state) {
    for (size_t i = 0; i < fm_.slots().size(); ++i) {
      const auto& slot = fm_.slots()[i];
      if (slot.kind == VarKind::kInput) continue;
      VarRef key{slot.qual_name, slot.var.sort, slot.var.kind};
      auto it = state.find(key);
      if (it == state.end()) throw MissingBinding(slot.qual_name);
      if (!value_fits(it->second, slot.var.sort))
        throw SortError("value for " + slot.qual_name + " does not fit " +
                        slot.var.sort.str());
      vals_[i] = it->second;
    }
  }

  Valuation state() const {
    Valuation out;
    for (size_t i = 0; i < fm_.slots().size(); ++i) {
      const auto& slot = fm_.slots()[i];
      if (slot.kind == VarKind::kInput) continue;
      out[VarRef{slot.qual_name, slot.var.sort, slot.var.kind}] = vals_[i];
    }
    return out;
  }

  void set_inputs(const Valuation& inputs) {
    for (int i : fm_.input_slots()) {
      const auto& slot = fm_.slots()[i];
      auto it = inputs.find(slot.var);
      if (it == inputs.end()) throw MissingBinding(slot.var.name);
      if (!value_fits(it->second, slot.var.sort))
        throw SortError("input " + slot.var.name + " does not fit " +
                        slot.var.sort.str());
      vals_[i] = it->second;
    }
  }

  /// Index of the scheduled node, or -1 when everything is inactive.
  /// With children_only, the root is never considered.
  int active_node(bool children_only = false) {
    for (int n : fm_.priority()) {
      if (children_only && fm_.nodes()[n].parent < 0) continue;
      if (eval_bool_in(n, fm_.nodes()[n].model->valid())) return n;
    }
    return -1;
  }

  /// One execution step with the given inputs already applied.
  StepOutcome step_applied(bool children_only = false) {
    int n = active_node(children_only);
    StepOutcome out;
    if (n < 0) {
      out.next = state();
      return out;
    }
    const Model& m = *fm_.nodes()[n].model;
    BvValue opcode = eval_bv_in(n, m.fetch());
    const Instruction* fired = nullptr;
    size_t true_count = 0;
    for (const auto& instr : m.instructions()) {
      if (decode_holds(n, instr, opcode)) {
        ++true_count;
        fired = &instr;
      }
    }
    if (true_count != 1) {
      std::string dump = "opcode=" + opcode.str();
      throw DynamicOneHotViolation(fm_.nodes()[n].path, true_count, dump);
    }
    // Simultaneous update: evaluate every right-hand side against the old
    // state, then commit.
    std::vector<std::pair<int, Value>> writes;
    for (const auto& [v, e] : fired->next)
      writes.emplace_back(fm_.slot_of(n, v), eval_in(n, e));
    for (auto& [slot, val] : writes) vals_[slot] = std::move(val);
    out.fired = std::make_pair(fm_.nodes()[n].path, fired->name);
    out.next = state();
    return out;
  }

  StepOutcome step(const Valuation& inputs) {
    set_inputs(inputs);
    return step_applied();
  }

  bool decode_holds(int node, const Instruction& instr,
                    const BvValue& opcode) {
    (void)node;
    Evaluator ev(
        [&](const VarRef& v) -> Value {
          if (v.kind == VarKind::kOpcode) return opcode;
          throw MissingBinding(v.name);
        },
        [&](const FuncSymbol& f, const std::vector<BvValue>& args) {
          return ufs_.apply(f, args);
        });
    return as_bool(ev.eval(instr.decode));
  }

  Value eval_in(int node, Expr e) {
    Evaluator ev(
        [&](const VarRef& v) -> Value {
          return vals_[fm_.slot_of(node, v)];
        },
        [&](const FuncSymbol& f, const std::vector<BvValue>& args) {
          return ufs_.apply(f, args);
        });
    return ev.eval(e);
  }

  bool eval_bool_in(int node, Expr e) { return as_bool(eval_in(node, e)); }
  BvValue eval_bv_in(int node, Expr e) { return as_bv(eval_in(node, e)); }

  const FlatModel& flat() const { return fm_; }

 private:
  const FlatModel& fm_;
  UfTable& ufs_;
  std::vector<Value> vals_;
};

/// One step of the hierarchy from an explicit state.
inline StepOutcome step(const FlatModel& fm, const Valuation& state,
                        const Valuation& inputs, UfTable& ufs) {
  Machine mach(fm, ufs);
  mach.set_state(state);
  return mach.step(inputs);
}

/// Runs the machine over an input trace. The initial state comes from the
/// model's constant initial values unless an explicit one is supplied;
/// unconstrained variables are filled deterministically from the seed.
inline Trace run(const FlatModel& fm, const std::vector<Valuation>& inputs,
                 UfTable& ufs,
                 const std::optional<Valuation>& initial = std::nullopt) {
  Machine mach(fm, ufs);
  if (initial)
    mach.set_state(*initial);
  else
    mach.reset_from_init();
  Trace trace;
  trace.reserve(inputs.size());
  for (const auto& in : inputs) {
    StepOutcome out = mach.step(in);
    trace.push_back(TraceStep{in, std::move(out)});
  }
  return trace;
}

/// Steps descendants only, until no child-ILA is active; inputs are held at
/// the supplied values throughout. Fails if the child-program does not
/// quiesce within the budget.
inline Valuation run_child_to_completion(const FlatModel& fm,
                                         const Valuation& state,
                                         const Valuation& inputs,
                                         size_t budget, UfTable& ufs) {
  Machine mach(fm, ufs);
  mach.set_state(state);
  mach.set_inputs(inputs);
  for (size_t i = 0; i <= budget; ++i) {
    if (mach.active_node(/*children_only=*/true) < 0) return mach.state();
    if (i == budget) break;
    mach.step_applied(/*children_only=*/true);
  }
  throw BudgetExhausted(budget);
}

/// True when no descendant of the root is active (quiescence).
inline bool quiescent(const FlatModel& fm, const Valuation& state,
                      const Valuation& inputs, UfTable& ufs) {
  Machine mach(fm, ufs);
  mach.set_state(state);
  mach.set_inputs(inputs);
  return mach.active_node(/*children_only=*/true) < 0;
}

}  // namespace ila

#endif  // ILA_INTERP_HPP_
