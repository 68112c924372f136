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

#ifndef ILA_TRANSITION_HPP_
#define ILA_TRANSITION_HPP_

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ila/interp.hpp"
#include "ila/model.hpp"

namespace ila {

class IndexOutOfBound : public std::runtime_error {
 public:
  explicit IndexOutOfBound(const std::string& what)
      : std::runtime_error(what) {}
};

// A flat labeled transition system: per-variable next-state functions over
// vars and inputs, an initial-state predicate, step constraints assumed at
// every time point, and named boolean labels.
struct TransitionSystem {
  std::shared_ptr<TermContext> ctx;
  std::vector<VarRef> vars;
  std::vector<VarRef> inputs;
  Expr init;                              // Bool over vars
  std::map<VarRef, Expr> next;            // total over vars
  std::vector<Expr> constraints;          // Bool over vars+inputs
  std::vector<std::pair<std::string, Expr>> labels;

  Expr label(const std::string& name) const {
    for (const auto& [n, e] : labels)
      if (n == name) return e;
    return Expr();
  }

  bool has_var(const VarRef& v) const {
    for (const auto& x : vars)
      if (x == v) return true;
    for (const auto& x : inputs)
      if (x == v) return true;
    return false;
  }
};

// ---------------------------------------------------------------------------
// Lowering: compile the hierarchy away. Each node's activity condition is its
// valid function over resolved slots; the scheduler guard of a node holds
// when the node is active and no higher-priority (deeper, or same depth and
// earlier) node is. Every (child-)instruction becomes one guarded case of
// each written variable's cascade; the final else keeps the variable.

namespace detail {

inline Expr resolve_in_node(TermContext& ctx, const FlatModel& fm, int node,
                            Expr e) {
  return rename_vars(ctx, e, [&fm, node](const VarRef& v) {
    int slot = fm.slot_of(node, v);
    const auto& s = fm.slots()[slot];
    return VarRef{s.qual_name, s.var.sort, s.kind};
  });
}

}  // namespace detail

inline TransitionSystem lower(ModelPtr model) {
  FlatModel fm(model);
  auto ctx = model->context();
  TransitionSystem ts;
  ts.ctx = ctx;

  for (const auto& s : fm.slots()) {
    VarRef v{s.qual_name, s.var.sort, s.kind};
    if (s.kind == VarKind::kInput)
      ts.inputs.push_back(v);
    else
      ts.vars.push_back(v);
  }

  // Initial-state predicate from the constant initial values.
  std::vector<Expr> init_eqs;
  for (const auto& s : fm.slots()) {
    if (s.kind == VarKind::kInput || !s.init) continue;
    Expr v = ctx->var(VarRef{s.qual_name, s.var.sort, s.kind});
    if (s.var.sort.is_bool())
      init_eqs.push_back(as_bool(*s.init) ? v : ctx->lnot(v));
    else
      init_eqs.push_back(
          ctx->eq(v, ctx->bv_const(s.var.sort.width(), as_bv(*s.init))));
  }
  ts.init = ctx->and_all(init_eqs);

  // Activity conditions and scheduler guards in priority order.
  const auto& prio = fm.priority();
  std::vector<Expr> act(fm.nodes().size());
  for (size_t i = 0; i < fm.nodes().size(); ++i)
    act[i] = detail::resolve_in_node(*ctx, fm, static_cast<int>(i),
                                     fm.nodes()[i].model->valid());
  std::vector<Expr> sched(fm.nodes().size());
  {
    std::vector<Expr> blockers;
    for (int n : prio) {
      Expr g = act[n];
      for (const Expr& b : blockers) g = ctx->land(g, ctx->lnot(b));
      sched[n] = g;
      blockers.push_back(act[n]);
    }
  }

  // Fire conditions per (node, instruction), decode with the fetch inlined.
  struct Case {
    int node;
    const Instruction* instr;
    Expr fire;
  };
  std::vector<Case> cases;
  for (int n : prio) {
    const Model& m = *fm.nodes()[n].model;
    Expr fetch = detail::resolve_in_node(*ctx, fm, n, m.fetch());
    for (const auto& instr : m.instructions()) {
      Expr dec = substitute(*ctx, instr.decode, {{m.opcode_var(), fetch}});
      dec = detail::resolve_in_node(*ctx, fm, n, dec);
      Expr fire = ctx->land(sched[n], dec);
      cases.push_back(Case{n, &instr, fire});
      ts.labels.emplace_back("fire:" + fm.nodes()[n].path + "." + instr.name,
                             fire);
    }
  }

  // Quiescent: no descendant active.
  {
    std::vector<Expr> none;
    for (size_t i = 0; i < fm.nodes().size(); ++i)
      if (fm.nodes()[i].parent >= 0) none.push_back(ctx->lnot(act[i]));
    ts.labels.emplace_back("quiescent", ctx->and_all(none));
  }

  // Next-state cascades, built from the lowest-priority case outward so the
  // highest-priority guard is tested first.
  for (const auto& s : fm.slots()) {
    if (s.kind == VarKind::kInput) continue;
    VarRef v{s.qual_name, s.var.sort, s.kind};
    Expr chain = ctx->var(v);
    for (auto it = cases.rbegin(); it != cases.rend(); ++it) {
      Expr update;
      for (const auto& [w, u] : it->instr->next) {
        int slot = fm.slot_of(it->node, w);
        if (fm.slots()[slot].qual_name == s.qual_name) {
          update = detail::resolve_in_node(*ctx, fm, it->node, u);
          break;
        }
      }
      if (update.valid()) chain = ctx->ite(it->fire, update, chain);
    }
    ts.next[v] = chain;
  }

  return ts;
}

// ---------------------------------------------------------------------------
// Stepping a transition system concretely (used by tests, the enumeration
// engine, and counterexample replay).

inline Valuation ts_step(const TransitionSystem& ts, const Valuation& state,
                         const Valuation& inputs, UfTable& ufs) {
  Valuation env = state;
  for (const auto& [k, v] : inputs) env[k] = v;
  Valuation out;
  for (const auto& v : ts.vars) {
    auto it = ts.next.find(v);
    if (it == ts.next.end()) throw MissingBinding("next of " + v.name);
    out[v] = eval(it->second, env, ufs);
  }
  return out;
}

inline bool ts_label_holds(const TransitionSystem& ts,
                           const std::string& label, const Valuation& state,
                           const Valuation& inputs, UfTable& ufs) {
  Expr e = ts.label(label);
  if (!e.valid()) throw std::runtime_error("no label " + label);
  Valuation env = state;
  for (const auto& [k, v] : inputs) env[k] = v;
  return as_bool(eval(e, env, ufs));
}

// ---------------------------------------------------------------------------
// Unrolling.

/// Maps system variables to their copy at a time step; t ranges over [0, k].
class TimeIndexer {
 public:
  TimeIndexer(TermContext& ctx, unsigned k) : ctx_(ctx), k_(k) {}

  static VarRef indexed(const VarRef& v, unsigned t) {
    return VarRef{v.name + "@" + std::to_string(t), v.sort, v.kind};
  }

  Expr at(const VarRef& v, unsigned t) const {
    check(t);
    return ctx_.var(indexed(v, t));
  }

  /// Renames every variable in e to its copy at step t.
  Expr at(Expr e, unsigned t) const {
    check(t);
    return rename_vars(ctx_, e,
                       [t](const VarRef& v) { return indexed(v, t); });
  }

  unsigned bound() const { return k_; }

 private:
  void check(unsigned t) const {
    if (t > k_)
      throw IndexOutOfBound("time index " + std::to_string(t) +
                            " exceeds bound " + std::to_string(k_));
  }
  TermContext& ctx_;
  unsigned k_;
};

// An unrolled bounded reachability formula. The flat view (constraint list
// plus goal over indexed variables) feeds the solver backend; the retained
// system and bound let the enumeration engine walk executions directly.
struct UnrolledFormula {
  std::shared_ptr<TransitionSystem> ts;
  unsigned k = 0;
  std::vector<Expr> constraints;  // init@0, transitions, stepwise constraints
  std::vector<Expr> extra;        // caller-added indexed assumptions
  Expr goal;                      // over indexed variables

  std::vector<Expr> all_assertions() const {
    std::vector<Expr> out = constraints;
    out.insert(out.end(), extra.begin(), extra.end());
    if (goal.valid()) out.push_back(goal);
    return out;
  }
};

/// Unrolls ts for k steps; the result is satisfiable iff some execution of
/// length k from an initial state meets every constraint and the goal.
inline UnrolledFormula unroll(std::shared_ptr<TransitionSystem> ts, unsigned k,
                              Expr goal) {
  TermContext& ctx = *ts->ctx;
  TimeIndexer ix(ctx, k);
  UnrolledFormula f;
  f.ts = ts;
  f.k = k;
  if (ts->init.valid()) f.constraints.push_back(ix.at(ts->init, 0));
  for (unsigned t = 0; t < k; ++t) {
    for (const auto& v : ts->vars) {
      Expr rhs = ix.at(ts->next.at(v), t);
      f.constraints.push_back(ctx.eq(ix.at(v, t + 1), rhs));
    }
  }
  for (unsigned t = 0; t <= k; ++t)
    for (const Expr& c : ts->constraints) f.constraints.push_back(ix.at(c, t));
  if (goal.valid()) {
    // Every variable of the goal must be an indexed copy within the bound.
    for (const VarRef& v : free_vars(goal)) {
      auto pos = v.name.rfind('@');
      bool ok = false;
      if (pos != std::string::npos) {
        unsigned t = static_cast<unsigned>(
            std::stoul(v.name.substr(pos + 1)));
        VarRef base{v.name.substr(0, pos), v.sort, v.kind};
        ok = t <= k && ts->has_var(base);
      }
      if (!ok)
        throw IndexOutOfBound("goal variable " + v.name +
                              " is not an indexed system variable within "
                              "the bound");
    }
    f.goal = goal;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Product construction.

/// Disjoint union of two systems after prefixing, with selected inputs
/// identified. Shared inputs take the first system's prefixed name.
inline TransitionSystem product(
    const TransitionSystem& a, const TransitionSystem& b,
    const std::string& prefix_a, const std::string& prefix_b,
    const std::vector<std::pair<VarRef, VarRef>>& shared_inputs,
    std::shared_ptr<TermContext> ctx) {
  auto pa = [&prefix_a](const VarRef& v) {
    return VarRef{prefix_a + "." + v.name, v.sort, v.kind};
  };
  std::map<VarRef, VarRef> b_map;  // b var -> product var
  for (const auto& [ai, bi] : shared_inputs) {
    if (ai.sort != bi.sort)
      throw SortError("shared input " + ai.name + "/" + bi.name +
                      " has mismatched sorts");
    b_map[bi] = pa(ai);
  }
  auto pb = [&prefix_b, &b_map](const VarRef& v) {
    auto it = b_map.find(v);
    if (it != b_map.end()) return it->second;
    return VarRef{prefix_b + "." + v.name, v.sort, v.kind};
  };

  TransitionSystem out;
  out.ctx = ctx;
  auto import_a = [&](Expr e) { return rename_vars(*ctx, e, pa); };
  auto import_b = [&](Expr e) { return rename_vars(*ctx, e, pb); };

  for (const auto& v : a.vars) out.vars.push_back(pa(v));
  for (const auto& v : b.vars) out.vars.push_back(pb(v));
  for (const auto& v : a.inputs) out.inputs.push_back(pa(v));
  for (const auto& v : b.inputs) {
    VarRef mapped = pb(v);
    bool dup = false;
    for (const auto& x : out.inputs)
      if (x == mapped) dup = true;
    if (!dup) out.inputs.push_back(mapped);
  }

  Expr ia = a.init.valid() ? import_a(a.init) : ctx->bool_const(true);
  Expr ib = b.init.valid() ? import_b(b.init) : ctx->bool_const(true);
  out.init = ctx->land(ia, ib);
  for (const auto& [v, e] : a.next) out.next[pa(v)] = import_a(e);
  for (const auto& [v, e] : b.next) out.next[pb(v)] = import_b(e);
  for (const Expr& c : a.constraints) out.constraints.push_back(import_a(c));
  for (const Expr& c : b.constraints) out.constraints.push_back(import_b(c));
  for (const auto& [n, e] : a.labels)
    out.labels.emplace_back(prefix_a + "." + n, import_a(e));
  for (const auto& [n, e] : b.labels)
    out.labels.emplace_back(prefix_b + "." + n, import_b(e));
  return out;
}

/// Makes the transitions of selected variables conditional: they advance only
/// when cond holds and stutter otherwise (used to synchronize a specification
/// with an implementation's commit points).
inline void gate_transitions(TransitionSystem& ts, Expr cond,
                             const std::function<bool(const VarRef&)>& pick) {
  for (auto& [v, e] : ts.next)
    if (pick(v)) e = ts.ctx->ite(cond, e, ts.ctx->var(v));
}

/// Renames every variable and input of a system, expressions included.
inline TransitionSystem rename_ts(
    const TransitionSystem& ts,
    const std::function<VarRef(const VarRef&)>& rename) {
  TransitionSystem out;
  out.ctx = ts.ctx;
  TermContext& ctx = *ts.ctx;
  auto ren = [&](Expr e) { return rename_vars(ctx, e, rename); };
  for (const auto& v : ts.vars) out.vars.push_back(rename(v));
  for (const auto& v : ts.inputs) out.inputs.push_back(rename(v));
  if (ts.init.valid()) out.init = ren(ts.init);
  for (const auto& [v, e] : ts.next) out.next[rename(v)] = ren(e);
  for (const Expr& c : ts.constraints) out.constraints.push_back(ren(c));
  for (const auto& [n, e] : ts.labels) out.labels.emplace_back(n, ren(e));
  return out;
}

/// Drops the model-name path component that lowering prepends, so system
/// variables carry the names users wrote ("iv" instead of "fsm.iv").
inline TransitionSystem strip_root_prefix(const TransitionSystem& ts,
                                          const std::string& root) {
  std::string prefix = root + ".";
  return rename_ts(ts, [&prefix](const VarRef& v) {
    if (v.name.rfind(prefix, 0) == 0)
      return VarRef{v.name.substr(prefix.size()), v.sort, v.kind};
    return v;
  });
}

}  // namespace ila

#endif  // ILA_TRANSITION_HPP_
