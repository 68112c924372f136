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

// The verification engine: decode one-hot validation, per-instruction
// equivalence between two models under a state mapping, completion
// equivalence for instructions implemented by child programs, refinement of
// an FSM implementation against a model at commit points, and one-step
// invariant induction. Obligations are discharged either by the enumeration
// engine or by an external solver; counterexamples must replay concretely
// before they are reported.

#ifndef ILA_EQCHECK_HPP_
#define ILA_EQCHECK_HPP_

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "ila/smt.hpp"

namespace ila {

class UnpairedInstruction : public std::runtime_error {
 public:
  explicit UnpairedInstruction(const std::string& name)
      : std::runtime_error("no instruction named " + name) {}
};

// Correspondence between two models: expression pairs asserted equal in
// corresponding states, plus per-side invariants used to prune unreachable
// states. Pair expressions are written over each side's own top-level
// variables.
struct StateMapping {
  std::vector<std::pair<Expr, Expr>> pairs;  // (a-side, b-side)
  std::vector<Expr> invariants_a;
  std::vector<Expr> invariants_b;
};

// How to check one model against an FSM implementation: the mapping (model
// side first), the commit predicate over implementation variables, the
// per-instruction issue conditions, step assumptions, warmup commits, and
// the search bound.
struct RefinementSpec {
  StateMapping mapping;
  Expr commit;  // over implementation vars and inputs
  std::vector<std::pair<std::string, Expr>> issues;  // instr -> condition
  std::vector<Expr> assumes_impl;  // assumed at every step
  unsigned warmup = 0;
  unsigned bound = 1;

  Expr issue_for(const std::string& instr) const {
    for (const auto& [n, e] : issues)
      if (n == instr) return e;
    return Expr();
  }
};

enum class CheckStatus { kProved, kCounterexample, kUnknown };

inline const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kProved: return "proved";
    case CheckStatus::kCounterexample: return "counterexample";
    case CheckStatus::kUnknown: return "unknown";
  }
  return "?";
}

struct CheckReport {
  std::string obligation;
  CheckStatus status = CheckStatus::kUnknown;
  std::string detail;  // reason for unknown, short description otherwise
  Valuation witness;   // counterexample valuation (demangled names)
  std::map<std::string, BvValue> uf_witness;
  Trace trace_a, trace_b;  // replayed executions for temporal obligations
  bool replayed = false;
  double wall_seconds = 0.0;
  std::string engine_id;
};

// A dischargeable proof obligation: the property holds iff the formula is
// unsatisfiable. Probe obligations flag incompleteness instead (sat means
// the bound was insufficient, not that the property fails).
struct Obligation {
  std::string id;
  std::variant<SmtQuery, UnrolledFormula> formula;
  bool is_probe = false;

  std::vector<Expr> assertions() const {
    if (std::holds_alternative<SmtQuery>(formula))
      return std::get<SmtQuery>(formula).assertions;
    return std::get<UnrolledFormula>(formula).all_assertions();
  }
};

// ---------------------------------------------------------------------------
// Engines.

class SolveEngine {
 public:
  static SolveEngine brute(unsigned bit_budget = 20) {
    SolveEngine e;
    e.kind_ = Kind::kBrute;
    e.budget_ = bit_budget;
    return e;
  }
  static SolveEngine external(SolverConfig cfg) {
    SolveEngine e;
    e.kind_ = Kind::kSolver;
    e.cfg_ = std::move(cfg);
    return e;
  }

  bool is_brute() const { return kind_ == Kind::kBrute; }
  unsigned budget() const { return budget_; }
  const SolverConfig& config() const { return cfg_; }

  SolveResult decide(const Obligation& ob) const {
    if (std::holds_alternative<SmtQuery>(ob.formula)) {
      const SmtQuery& q = std::get<SmtQuery>(ob.formula);
      return kind_ == Kind::kBrute ? brute_force(q, budget_) : solve(q, cfg_);
    }
    const UnrolledFormula& f = std::get<UnrolledFormula>(ob.formula);
    return kind_ == Kind::kBrute ? brute_force(f, budget_) : solve(f, cfg_);
  }

 private:
  enum class Kind { kBrute, kSolver };
  Kind kind_ = Kind::kBrute;
  unsigned budget_ = 20;
  SolverConfig cfg_;
};

/// Discharges obligations concurrently; results keep obligation order.
inline std::vector<SolveResult> run_obligations(
    const std::vector<Obligation>& obs, const SolveEngine& engine,
    unsigned jobs = 1) {
  std::vector<SolveResult> results(obs.size());
  if (jobs <= 1 || obs.size() <= 1) {
    for (size_t i = 0; i < obs.size(); ++i) results[i] = engine.decide(obs[i]);
    return results;
  }
  std::atomic<size_t> next{0};
  std::vector<std::string> errors(obs.size());
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= obs.size()) return;
      try {
        results[i] = engine.decide(obs[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (size_t i = 0; i < obs.size(); ++i)
    if (!errors[i].empty())
      throw std::runtime_error("obligation " + obs[i].id + ": " + errors[i]);
  return results;
}

namespace eq_detail {

/// Confirms that a sat model satisfies the query when evaluated concretely.
inline bool replay_query(const SmtQuery& q, const SolveResult& r) {
  UfTable ufs;
  std::set<std::string> names;
  for (const Expr& a : q.assertions) {
    std::set<FuncSymbol> fs;
    collect_func_symbols(a, fs);
    for (const auto& f : fs) names.insert(f.name);
  }
  for (const std::string& name : names)
    ufs.define(name, [&r, name](const std::vector<BvValue>& args) {
      auto it = r.uf_model.find(uf_key(name, args));
      return it == r.uf_model.end() ? BvValue(0) : it->second;
    });
  for (const Expr& a : q.assertions) {
    Valuation v = r.model;
    for (const VarRef& fv : free_vars(a)) {
      if (v.count(fv)) continue;
      if (fv.sort.is_bool())
        v[fv] = false;
      else if (fv.sort.is_bv())
        v[fv] = BvValue(0);
      else
        v[fv] = ArrayValue{BvValue(0), {}};
    }
    if (!as_bool(eval(a, v, ufs))) return false;
  }
  return true;
}

inline CheckReport interpret_unsat_obligation(const Obligation& ob,
                                              const SolveResult& r) {
  CheckReport rep;
  rep.obligation = ob.id;
  rep.engine_id = r.engine_id;
  rep.wall_seconds = r.wall_seconds;
  switch (r.status) {
    case SolveStatus::kUnsat:
      rep.status = CheckStatus::kProved;
      break;
    case SolveStatus::kSat: {
      rep.status = CheckStatus::kCounterexample;
      rep.witness = r.model;
      rep.uf_witness = r.uf_model;
      if (std::holds_alternative<SmtQuery>(ob.formula)) {
        if (!replay_query(std::get<SmtQuery>(ob.formula), r))
          throw std::logic_error("counterexample for " + ob.id +
                                 " failed to replay; this is a toolkit bug");
        rep.replayed = true;
      }
      break;
    }
    case SolveStatus::kUnknown:
      rep.status = CheckStatus::kUnknown;
      rep.detail = r.reason;
      break;
  }
  return rep;
}

// Two-model combined namespace for the combinational checks: state variables
// get a side prefix, inputs are shared by name across the sides.
inline Expr rename_side(TermContext& ctx, const std::string& prefix, Expr e) {
  return rename_vars(ctx, e, [&prefix](const VarRef& v) {
    if (v.kind == VarKind::kInput) return v;
    return VarRef{prefix + "." + v.name, v.sort, v.kind};
  });
}

/// Inlines the fetch into an instruction's decode.
inline Expr decode_over_state(const Model& m, const Instruction& instr) {
  return substitute(*m.context(), instr.decode,
                    {{m.opcode_var(), m.fetch()}});
}

/// Post-state view of an expression under an instruction: state variables
/// are replaced by their updates, unwritten ones stay.
inline Expr after_instr(const Model& m, const Instruction& instr, Expr e) {
  std::map<VarRef, Expr> subst;
  for (const auto& [v, u] : instr.next) subst[v] = u;
  return substitute(*m.context(), e, subst);
}

inline std::vector<Expr> mapping_assumptions(TermContext& ctx,
                                             const StateMapping& map) {
  std::vector<Expr> out;
  for (const auto& [ea, eb] : map.pairs)
    out.push_back(
        ctx.eq(rename_side(ctx, "a", import_expr(ctx, ea)),
               rename_side(ctx, "b", import_expr(ctx, eb))));
  for (const Expr& inv : map.invariants_a)
    out.push_back(rename_side(ctx, "a", import_expr(ctx, inv)));
  for (const Expr& inv : map.invariants_b)
    out.push_back(rename_side(ctx, "b", import_expr(ctx, inv)));
  return out;
}

}  // namespace eq_detail

// ---------------------------------------------------------------------------
// Decode one-hot validation.

/// Obligations per hierarchy node: pairwise decode disjointness over the
/// opcode, and valid <=> some decode fires (fetch inlined).
inline std::vector<Obligation> onehot_obligations(ModelPtr model) {
  std::vector<Obligation> out;
  auto ctx = model->context();
  for (const auto& entry : collect_hierarchy(*model)) {
    const Model& m = *entry.model;
    std::vector<Expr> overlaps;
    for (size_t i = 0; i < m.instructions().size(); ++i)
      for (size_t j = i + 1; j < m.instructions().size(); ++j)
        overlaps.push_back(ctx->land(m.instructions()[i].decode,
                                     m.instructions()[j].decode));
    if (!overlaps.empty()) {
      std::string id = "onehot:" + entry.path + ":overlap";
      out.push_back(
          Obligation{id, SmtQuery{ctx, {ctx->or_all(overlaps)}, id}, false});
    }
    std::vector<Expr> fired;
    for (const auto& instr : m.instructions())
      fired.push_back(
          substitute(*ctx, instr.decode, {{m.opcode_var(), m.fetch()}}));
    Expr covered = ctx->or_all(fired);
    std::string id = "onehot:" + entry.path + ":coverage";
    out.push_back(Obligation{
        id, SmtQuery{ctx, {ctx->lxor(m.valid(), covered)}, id}, false});
  }
  return out;
}

/// One-hot status for a whole hierarchy, aggregated. Counterexamples carry
/// the witness opcode (or state/input valuation for coverage violations).
inline CheckReport check_decode_onehot(ModelPtr model,
                                       const SolveEngine& engine) {
  CheckReport agg;
  agg.obligation = "onehot:" + model->name();
  agg.status = CheckStatus::kProved;
  for (const Obligation& ob : onehot_obligations(model)) {
    SolveResult r = engine.decide(ob);
    CheckReport rep = eq_detail::interpret_unsat_obligation(ob, r);
    agg.wall_seconds += rep.wall_seconds;
    agg.engine_id = rep.engine_id;
    if (rep.status == CheckStatus::kCounterexample &&
        agg.status != CheckStatus::kCounterexample) {
      agg.status = CheckStatus::kCounterexample;
      agg.detail = ob.id;
      agg.witness = rep.witness;
      agg.replayed = rep.replayed;
    } else if (rep.status == CheckStatus::kUnknown &&
               agg.status == CheckStatus::kProved) {
      agg.status = CheckStatus::kUnknown;
      agg.detail = rep.detail;
    }
  }
  return agg;
}

// ---------------------------------------------------------------------------
// Per-instruction equivalence, checks (i)-(iii).

/// Instructions of models with children are checked by completion
/// equivalence; the plain update check applies only to child-free models.
inline bool has_child_programs(const Model& m) { return !m.children().empty(); }

/// Builds the combinational equivalence obligations for a pairing: the
/// equivalence of the valid functions once, and per pair the equivalence of
/// decode and (for child-free models) of the state updates under the mapping.
inline std::vector<Obligation> instr_equiv_obligations(
    ModelPtr a, ModelPtr b, const StateMapping& map,
    const std::vector<std::pair<std::string, std::string>>& pairing) {
  auto ctx = std::make_shared<TermContext>();
  std::vector<Expr> assume = eq_detail::mapping_assumptions(*ctx, map);
  std::vector<Obligation> out;

  auto make = [&](const std::string& id, std::vector<Expr> asserts) {
    out.push_back(Obligation{id, SmtQuery{ctx, std::move(asserts), id},
                             false});
  };

  Expr va = eq_detail::rename_side(*ctx, "a", import_expr(*ctx, a->valid()));
  Expr vb = eq_detail::rename_side(*ctx, "b", import_expr(*ctx, b->valid()));
  {
    std::vector<Expr> asserts = assume;
    asserts.push_back(ctx->lxor(va, vb));
    make("eq:valid", std::move(asserts));
  }

  bool plain = !has_child_programs(*a) && !has_child_programs(*b);
  for (const auto& [na, nb] : pairing) {
    const Instruction* ia = a->find_instruction(na);
    const Instruction* ib = b->find_instruction(nb);
    if (!ia) throw UnpairedInstruction(na);
    if (!ib) throw UnpairedInstruction(nb);

    Expr da = eq_detail::rename_side(
        *ctx, "a", import_expr(*ctx, eq_detail::decode_over_state(*a, *ia)));
    Expr db = eq_detail::rename_side(
        *ctx, "b", import_expr(*ctx, eq_detail::decode_over_state(*b, *ib)));
    {
      std::vector<Expr> asserts = assume;
      asserts.push_back(ctx->lxor(da, db));
      make("eq:decode:" + na + "/" + nb, std::move(asserts));
    }

    if (!plain) continue;
    std::vector<Expr> post_eqs;
    for (const auto& [ea, eb] : map.pairs) {
      Expr pa = eq_detail::rename_side(
          *ctx, "a", import_expr(*ctx, eq_detail::after_instr(*a, *ia, ea)));
      Expr pb = eq_detail::rename_side(
          *ctx, "b", import_expr(*ctx, eq_detail::after_instr(*b, *ib, eb)));
      post_eqs.push_back(ctx->eq(pa, pb));
    }
    std::vector<Expr> asserts = assume;
    asserts.push_back(da);
    asserts.push_back(db);
    asserts.push_back(ctx->lnot(ctx->and_all(post_eqs)));
    make("eq:update:" + na + "/" + nb, std::move(asserts));
  }
  return out;
}

/// Runs checks (i)-(iii) for every pair and interprets the results.
inline std::vector<CheckReport> check_instr_equiv(
    ModelPtr a, ModelPtr b, const StateMapping& map,
    const std::vector<std::pair<std::string, std::string>>& pairing,
    const SolveEngine& engine, unsigned jobs = 1) {
  std::vector<Obligation> obs = instr_equiv_obligations(a, b, map, pairing);
  std::vector<SolveResult> results = run_obligations(obs, engine, jobs);
  std::vector<CheckReport> reports;
  for (size_t i = 0; i < obs.size(); ++i)
    reports.push_back(
        eq_detail::interpret_unsat_obligation(obs[i], results[i]));
  return reports;
}

// ---------------------------------------------------------------------------
// Completion equivalence.

namespace eq_detail {

/// Per-side transition system for the flush phase: step 0 may fire anything,
/// afterwards only child programs run. A ghost latch disables top-level
/// instructions once set; the initial-state predicate is dropped because
/// completion checks start from arbitrary mapped states.
inline std::shared_ptr<TransitionSystem> flush_ts(ModelPtr m) {
  TransitionSystem ts = lower(m);
  auto ctx = ts.ctx;
  VarRef started{"__started", Sort::boolean(), VarKind::kState};
  Expr not_started = ctx->lnot(ctx->var(started));

  std::string root_path = collect_hierarchy(*m)[0].path;
  std::map<const ExprNode*, Expr> gated;  // old fire guard -> gated guard
  for (auto& [name, e] : ts.labels) {
    if (name.rfind("fire:" + root_path + ".", 0) == 0 &&
        name.find('.', 5 + root_path.size() + 1) == std::string::npos) {
      Expr g = ctx->land(not_started, e);
      gated[e.node()] = g;
      e = g;
    }
  }
  std::function<Expr(Expr)> patch = [&](Expr x) -> Expr {
    if (x.op() == Op::kIte) {
      auto it = gated.find(x.arg(0).node());
      Expr g = it != gated.end() ? it->second : x.arg(0);
      return ctx->ite(g, x.arg(1), patch(x.arg(2)));
    }
    return x;
  };
  for (auto& [v, e] : ts.next) e = patch(e);

  ts.vars.push_back(started);
  ts.next[started] = ctx->bool_const(true);
  ts.init = Expr();
  return std::make_shared<TransitionSystem>(std::move(ts));
}

// In the product namespace, a side's state variable "x" of the root model
// lives at "<side>.<root>.x" and every input is shared at the first side's
// root ("a.<root_a>.<name>").
struct ProductNames {
  std::string a_root, b_root;
  VarRef a_state(const VarRef& v) const {
    return VarRef{"a." + a_root + "." + v.name, v.sort, v.kind};
  }
  VarRef b_state(const VarRef& v) const {
    return VarRef{"b." + b_root + "." + v.name, v.sort, v.kind};
  }
  VarRef input(const VarRef& v) const {
    return VarRef{"a." + a_root + "." + v.name, v.sort, v.kind};
  }
  Expr rename(TermContext& ctx, bool side_a, Expr e) const {
    return rename_vars(ctx, e, [this, side_a](const VarRef& v) {
      if (v.kind == VarKind::kInput) return input(v);
      return side_a ? a_state(v) : b_state(v);
    });
  }
};

}  // namespace eq_detail

struct CompletionObligations {
  Obligation violation;  // sat: mapped states differ at quiescence
  Obligation probe;      // sat: some side fails to quiesce within the bound
  std::shared_ptr<TransitionSystem> product_ts;  // for replay
  eq_detail::ProductNames names;
  unsigned bound = 0;
};

/// Builds the completion-equivalence obligation for one instruction pair:
/// start both sides in mapped, invariant-satisfying, quiescent states; fire
/// the paired instruction on both with shared inputs; freeze the inputs and
/// run the child programs; the mapped state must agree once both sides are
/// quiescent, and both sides must quiesce within the bound.
inline CompletionObligations completion_obligations(
    ModelPtr a, ModelPtr b, const std::string& instr_a,
    const std::string& instr_b, const StateMapping& map, unsigned bound) {
  if (!a->find_instruction(instr_a)) throw UnpairedInstruction(instr_a);
  if (!b->find_instruction(instr_b)) throw UnpairedInstruction(instr_b);

  auto tsa = eq_detail::flush_ts(a);
  auto tsb = eq_detail::flush_ts(b);
  auto ctx = std::make_shared<TermContext>();

  // Same-named root inputs are the shared interface.
  std::vector<std::pair<VarRef, VarRef>> shared;
  for (const auto& wa : tsa->inputs) {
    std::string base_a = wa.name.substr(wa.name.find('.') + 1);
    for (const auto& wb : tsb->inputs)
      if (base_a == wb.name.substr(wb.name.find('.') + 1))
        shared.emplace_back(wa, wb);
  }
  auto prod = std::make_shared<TransitionSystem>(
      product(*tsa, *tsb, "a", "b", shared, ctx));

  eq_detail::ProductNames names{a->name(), b->name()};
  TimeIndexer ix(*ctx, bound);
  std::vector<Expr> extra;

  auto label = [&](const std::string& name) {
    Expr e = prod->label(name);
    if (!e.valid()) throw std::runtime_error("missing label " + name);
    return e;
  };

  extra.push_back(ix.at(
      ctx->lnot(ctx->var(VarRef{"a." + a->name() + ".__started",
                                Sort::boolean(), VarKind::kState})),
      0));
  extra.push_back(ix.at(
      ctx->lnot(ctx->var(VarRef{"b." + b->name() + ".__started",
                                Sort::boolean(), VarKind::kState})),
      0));
  extra.push_back(ix.at(label("a.quiescent"), 0));
  extra.push_back(ix.at(label("b.quiescent"), 0));
  for (const Expr& inv : map.invariants_a)
    extra.push_back(ix.at(names.rename(*ctx, true, inv), 0));
  for (const Expr& inv : map.invariants_b)
    extra.push_back(ix.at(names.rename(*ctx, false, inv), 0));

  std::vector<Expr> map_eqs;
  for (const auto& [ea, eb] : map.pairs)
    map_eqs.push_back(ctx->eq(names.rename(*ctx, true, ea),
                              names.rename(*ctx, false, eb)));
  Expr map_all = ctx->and_all(map_eqs);
  extra.push_back(ix.at(map_all, 0));

  extra.push_back(ix.at(label("a.fire:" + a->name() + "." + instr_a), 0));
  extra.push_back(ix.at(label("b.fire:" + b->name() + "." + instr_b), 0));

  for (const auto& w : prod->inputs)
    for (unsigned t = 1; t <= bound; ++t)
      extra.push_back(ctx->eq(ix.at(w, t), ix.at(w, 0)));

  Expr quiet_k = ctx->land(ix.at(label("a.quiescent"), bound),
                           ix.at(label("b.quiescent"), bound));

  CompletionObligations out;
  out.product_ts = prod;
  out.names = names;
  out.bound = bound;
  std::string base = "completion:" + instr_a + "/" + instr_b;
  {
    UnrolledFormula f = unroll(
        prod, bound, ctx->land(quiet_k, ctx->lnot(ix.at(map_all, bound))));
    f.extra = extra;
    out.violation = Obligation{base, std::move(f), false};
  }
  {
    UnrolledFormula f = unroll(prod, bound, ctx->lnot(quiet_k));
    f.extra = extra;
    out.probe = Obligation{base + ":quiesce", std::move(f), true};
  }
  return out;
}

namespace eq_detail {

/// Extracts one side's interpreter state from a product model at step 0 and
/// replays: apply the issued instruction, then run the child program to
/// completion with frozen inputs. Returns the final state and the trace.
struct SideReplay {
  Valuation final_state;
  Valuation inputs;  // the side model's root inputs
  Trace trace;
};

inline SideReplay replay_side(ModelPtr m, const std::string& side_prefix,
                              const ProductNames& names,
                              const Valuation& model_at0, unsigned bound,
                              UfTable& ufs) {
  FlatModel fm(m);
  Valuation state;
  for (const auto& slot : fm.slots()) {
    if (slot.kind == VarKind::kInput) continue;
    VarRef prod_var{side_prefix + "." + slot.qual_name, slot.var.sort,
                    slot.var.kind};
    VarRef key = TimeIndexer::indexed(prod_var, 0);
    auto it = model_at0.find(key);
    Value v;
    if (it != model_at0.end()) {
      v = it->second;
    } else if (slot.var.sort.is_bool()) {
      v = false;
    } else if (slot.var.sort.is_bv()) {
      v = BvValue(0);
    } else {
      v = ArrayValue{BvValue(0), {}};
    }
    state[VarRef{slot.qual_name, slot.var.sort, slot.var.kind}] = v;
  }
  Valuation inputs;
  for (const auto& w : m->inputs()) {
    VarRef key = TimeIndexer::indexed(names.input(w), 0);
    auto it = model_at0.find(key);
    Value v;
    if (it != model_at0.end())
      v = it->second;
    else if (w.sort.is_bool())
      v = false;
    else if (w.sort.is_bv())
      v = BvValue(0);
    else
      v = ArrayValue{BvValue(0), {}};
    inputs[w] = v;
  }

  SideReplay out;
  out.inputs = inputs;
  Machine mach(fm, ufs);
  mach.set_state(state);
  StepOutcome first = mach.step(inputs);
  out.trace.push_back(TraceStep{inputs, first});
  Valuation cur = first.next;
  for (unsigned t = 1; t <= bound; ++t) {
    if (quiescent(fm, cur, inputs, ufs)) break;
    Machine m2(fm, ufs);
    m2.set_state(cur);
    m2.set_inputs(inputs);
    StepOutcome o = m2.step_applied(/*children_only=*/true);
    out.trace.push_back(TraceStep{inputs, o});
    cur = o.next;
  }
  out.final_state = cur;
  return out;
}

}  // namespace eq_detail

/// Completion equivalence for one instruction pair. Counterexamples are
/// replayed through the interpreter on both sides before being reported.
inline CheckReport check_completion_equiv(ModelPtr a, ModelPtr b,
                                          const std::string& instr_a,
                                          const std::string& instr_b,
                                          const StateMapping& map,
                                          unsigned bound,
                                          const SolveEngine& engine) {
  CompletionObligations obs =
      completion_obligations(a, b, instr_a, instr_b, map, bound);
  SolveResult rv = engine.decide(obs.violation);
  CheckReport rep;
  rep.obligation = obs.violation.id;
  rep.engine_id = rv.engine_id;
  rep.wall_seconds = rv.wall_seconds;
  if (rv.status == SolveStatus::kUnknown) {
    rep.status = CheckStatus::kUnknown;
    rep.detail = rv.reason;
    return rep;
  }
  if (rv.status == SolveStatus::kSat) {
    rep.status = CheckStatus::kCounterexample;
    rep.witness = rv.model;
    rep.uf_witness = rv.uf_model;
    // Replay both sides concretely and confirm the mapped mismatch.
    UfTable ufs;
    for (const auto& [key, val] : rv.uf_model) {
      std::string name = key.substr(0, key.find('('));
      ufs.define(name, [&rv, name](const std::vector<BvValue>& args) {
        auto it = rv.uf_model.find(uf_key(name, args));
        return it == rv.uf_model.end() ? BvValue(0) : it->second;
      });
    }
    eq_detail::SideReplay ra =
        eq_detail::replay_side(a, "a", obs.names, rv.model, bound, ufs);
    eq_detail::SideReplay rb =
        eq_detail::replay_side(b, "b", obs.names, rv.model, bound, ufs);
    bool mismatch = false;
    for (const auto& [ea, eb] : map.pairs) {
      Valuation env_a = ra.final_state;
      for (const auto& [k, v] : ra.inputs) env_a[k] = v;
      Valuation env_b = rb.final_state;
      for (const auto& [k, v] : rb.inputs) env_b[k] = v;
      // Pair expressions are over unqualified top-level names.
      Expr pea = rename_vars(*a->context(), ea, [&a](const VarRef& v) {
        if (v.kind == VarKind::kInput) return v;
        return VarRef{a->name() + "." + v.name, v.sort, v.kind};
      });
      Expr peb = rename_vars(*b->context(), eb, [&b](const VarRef& v) {
        if (v.kind == VarKind::kInput) return v;
        return VarRef{b->name() + "." + v.name, v.sort, v.kind};
      });
      Value va = eval(pea, env_a, ufs);
      Value vb = eval(peb, env_b, ufs);
      if (!value_equal(va, vb, pea.sort())) mismatch = true;
    }
    if (!mismatch)
      throw std::logic_error("completion counterexample for " +
                             rep.obligation +
                             " failed to replay; this is a toolkit bug");
    rep.replayed = true;
    rep.trace_a = ra.trace;
    rep.trace_b = rb.trace;
    return rep;
  }
  SolveResult rp = engine.decide(obs.probe);
  rep.wall_seconds += rp.wall_seconds;
  if (rp.status == SolveStatus::kSat) {
    rep.status = CheckStatus::kUnknown;
    rep.detail = "no quiescence within bound " + std::to_string(bound);
    rep.witness = rp.model;
    return rep;
  }
  if (rp.status == SolveStatus::kUnknown) {
    rep.status = CheckStatus::kUnknown;
    rep.detail = rp.reason;
    return rep;
  }
  rep.status = CheckStatus::kProved;
  return rep;
}

// ---------------------------------------------------------------------------
// FSM refinement at commit points.

struct RefinementObligations {
  Obligation violation;  // sat: mapped states differ when the instruction commits
  Obligation probe;      // sat: the instruction may fail to commit in bound
  std::shared_ptr<TransitionSystem> product_ts;
  unsigned bound = 0;
  unsigned warmup = 0;
  Expr commit_prod;      // commit predicate over product vars
  Expr map_prod;         // conjunction of mapped equalities over product vars
};

/// Builds the refinement obligation for one instruction: from an arbitrary
/// implementation state satisfying the invariants, let warmup instructions
/// commit (assuming correspondence at the last warmup commit), constrain the
/// next instruction by the issue condition, and require correspondence when
/// it commits; the specification side steps exactly at commits.
inline RefinementObligations refinement_obligations(
    ModelPtr spec, std::shared_ptr<TransitionSystem> impl,
    const RefinementSpec& r, const std::string& instr) {
  Expr issue = r.issue_for(instr);
  if (!issue.valid()) throw UnpairedInstruction(instr);

  auto ts_spec = std::make_shared<TransitionSystem>(lower(spec));
  ts_spec->init = Expr();  // arbitrary start, constrained by the mapping
  auto ctx = std::make_shared<TermContext>();

  // Shared inputs by name: the specification's root inputs against the
  // implementation's inputs.
  std::vector<std::pair<VarRef, VarRef>> shared;
  for (const auto& ws : ts_spec->inputs) {
    std::string base = ws.name.substr(ws.name.find('.') + 1);
    for (const auto& wi : impl->inputs)
      if (base == wi.name) shared.emplace_back(ws, wi);
  }
  auto prod = std::make_shared<TransitionSystem>(
      product(*ts_spec, *impl, "spec", "impl", shared, ctx));

  std::string spec_root = spec->name();
  auto spec_rename = [&spec_root](const VarRef& v) {
    return VarRef{"spec." + spec_root + "." + v.name, v.sort, v.kind};
  };
  auto impl_rename = [&](const VarRef& v) {
    if (v.kind == VarKind::kInput) {
      // Shared inputs live under the spec prefix.
      for (const auto& [ws, wi] : shared)
        if (wi.name == v.name)
          return VarRef{"spec." + ws.name, ws.sort, ws.kind};
      return VarRef{"impl." + v.name, v.sort, v.kind};
    }
    return VarRef{"impl." + v.name, v.sort, v.kind};
  };
  auto to_spec = [&](Expr e) {
    return rename_vars(*ctx, e, [&](const VarRef& v) {
      if (v.kind == VarKind::kInput)
        return VarRef{"spec." + spec_root + "." + v.name, v.sort, v.kind};
      return spec_rename(v);
    });
  };
  auto to_impl = [&](Expr e) { return rename_vars(*ctx, e, impl_rename); };

  Expr commit = to_impl(import_expr(*ctx, r.commit));

  // The specification advances exactly when the implementation commits.
  gate_transitions(*prod, commit, [](const VarRef& v) {
    return v.name.rfind("spec.", 0) == 0;
  });

  // Ghost commit counter.
  unsigned cw = 8;
  VarRef commits{"__commits", Sort::bitvec(cw), VarKind::kState};
  Expr commits_e = ctx->var(commits);
  prod->vars.push_back(commits);
  prod->next[commits] =
      ctx->ite(commit, ctx->bvadd(commits_e, ctx->bv_const(cw, 1)),
               commits_e);

  for (const Expr& asum : r.assumes_impl)
    prod->constraints.push_back(to_impl(import_expr(*ctx, asum)));

  unsigned k = r.bound;
  TimeIndexer ix(*ctx, k);
  std::vector<Expr> extra;
  extra.push_back(ctx->eq(ix.at(commits_e, 0), ctx->bv_const(cw, 0)));
  for (const Expr& inv : r.mapping.invariants_b)
    extra.push_back(ix.at(to_impl(import_expr(*ctx, inv)), 0));
  for (const Expr& inv : r.mapping.invariants_a)
    extra.push_back(ix.at(to_spec(import_expr(*ctx, inv)), 0));

  std::vector<Expr> map_eqs;
  for (const auto& [es, ei] : r.mapping.pairs)
    map_eqs.push_back(ctx->eq(to_spec(import_expr(*ctx, es)),
                              to_impl(import_expr(*ctx, ei))));
  Expr map_all = ctx->and_all(map_eqs);
  Expr issue_p = to_impl(import_expr(*ctx, issue));

  // Issue point: the first step where the commit count equals the warmup.
  // With warmup = 0 that is step 0.
  Expr warm = ctx->bv_const(cw, r.warmup);
  if (r.warmup == 0) {
    // Issue point is step 0; plain assumptions let the enumeration engine
    // unify mapped variable pairs.
    extra.push_back(ix.at(map_all, 0));
    extra.push_back(ix.at(issue_p, 0));
  } else {
    // Issue point: the first step whose commit count equals the warmup.
    for (unsigned t = 1; t <= k; ++t) {
      Expr cond = ctx->land(ctx->eq(ix.at(commits_e, t), warm),
                            ctx->eq(ix.at(commits_e, t - 1),
                                    ctx->bv_const(cw, r.warmup - 1)));
      extra.push_back(ctx->implies(cond, ix.at(map_all, t)));
      extra.push_back(ctx->implies(cond, ix.at(issue_p, t)));
    }
  }

  // Violation: the (warmup+1)-th commit lands and the mapping fails there.
  Expr done = ctx->bv_const(cw, r.warmup + 1);
  std::vector<Expr> bad;
  for (unsigned t = 1; t <= k; ++t)
    bad.push_back(ctx->and_all({ctx->eq(ix.at(commits_e, t), done),
                                ctx->eq(ix.at(commits_e, t - 1), warm),
                                ctx->lnot(ix.at(map_all, t))}));
  RefinementObligations out;
  out.product_ts = prod;
  out.bound = k;
  out.warmup = r.warmup;
  out.commit_prod = commit;
  out.map_prod = map_all;
  std::string base = "refine:" + instr;
  {
    UnrolledFormula f = unroll(prod, k, ctx->or_all(bad));
    f.extra = extra;
    out.violation = Obligation{base, std::move(f), false};
  }
  {
    UnrolledFormula f =
        unroll(prod, k, ctx->ult(ix.at(commits_e, k), done));
    f.extra = extra;
    out.probe = Obligation{base + ":commit", std::move(f), true};
  }
  return out;
}

/// Refinement check for one instruction; counterexamples are replayed by
/// stepping the product system concretely.
inline CheckReport check_fsm_refinement(ModelPtr spec,
                                        std::shared_ptr<TransitionSystem> impl,
                                        const RefinementSpec& r,
                                        const std::string& instr,
                                        const SolveEngine& engine) {
  RefinementObligations obs = refinement_obligations(spec, impl, r, instr);
  SolveResult rv = engine.decide(obs.violation);
  CheckReport rep;
  rep.obligation = obs.violation.id;
  rep.engine_id = rv.engine_id;
  rep.wall_seconds = rv.wall_seconds;
  if (rv.status == SolveStatus::kUnknown) {
    rep.status = CheckStatus::kUnknown;
    rep.detail = rv.reason;
    return rep;
  }
  if (rv.status == SolveStatus::kSat) {
    rep.status = CheckStatus::kCounterexample;
    rep.witness = rv.model;
    rep.uf_witness = rv.uf_model;

    // Replay: walk the product system from the witness state, find the
    // commit after the issue point, and confirm the mapped mismatch.
    const TransitionSystem& ts = *obs.product_ts;
    UfTable ufs;
    for (const auto& [key, val] : rv.uf_model) {
      std::string name = key.substr(0, key.find('('));
      ufs.define(name, [&rv, name](const std::vector<BvValue>& args) {
        auto it = rv.uf_model.find(uf_key(name, args));
        return it == rv.uf_model.end() ? BvValue(0) : it->second;
      });
    }
    auto value_at = [&](const VarRef& v, unsigned t) -> Value {
      auto it = rv.model.find(TimeIndexer::indexed(v, t));
      if (it != rv.model.end()) return it->second;
      if (v.sort.is_bool()) return false;
      if (v.sort.is_bv()) return BvValue(0);
      return ArrayValue{BvValue(0), {}};
    };
    Valuation state;
    for (const auto& v : ts.vars) state[v] = value_at(v, 0);
    bool confirmed = false;
    BvValue commits = 0;
    Trace trace;
    for (unsigned t = 0; t < obs.bound && !confirmed; ++t) {
      Valuation inputs;
      for (const auto& w : ts.inputs) inputs[w] = value_at(w, t);
      Valuation env = state;
      for (const auto& [kk, vv] : inputs) env[kk] = vv;
      bool c = as_bool(eval(obs.commit_prod, env, ufs));
      Valuation next = ts_step(ts, state, inputs, ufs);
      TraceStep step;
      step.inputs = inputs;
      step.outcome.next = next;
      if (c) step.outcome.fired = std::make_pair("impl", "commit");
      trace.push_back(step);
      if (c) {
        commits += 1;
        if (commits == BvValue(obs.warmup) + 1) {
          Valuation env2 = next;
          for (const auto& [kk, vv] : inputs) env2[kk] = vv;
          confirmed = !as_bool(eval(obs.map_prod, env2, ufs));
        }
      }
      state = next;
    }
    if (!confirmed)
      throw std::logic_error("refinement counterexample for " +
                             rep.obligation +
                             " failed to replay; this is a toolkit bug");
    rep.replayed = true;
    rep.trace_a = trace;
    return rep;
  }
  SolveResult rp = engine.decide(obs.probe);
  rep.wall_seconds += rp.wall_seconds;
  if (rp.status == SolveStatus::kSat) {
    rep.status = CheckStatus::kUnknown;
    rep.detail = "no commit within bound " + std::to_string(obs.bound);
    return rep;
  }
  if (rp.status == SolveStatus::kUnknown) {
    rep.status = CheckStatus::kUnknown;
    rep.detail = rp.reason;
    return rep;
  }
  rep.status = CheckStatus::kProved;
  return rep;
}

// ---------------------------------------------------------------------------
// One-step invariant induction.

inline std::vector<Obligation> induction_obligations(
    std::shared_ptr<TransitionSystem> ts, Expr inv, const std::string& name) {
  auto ctx = ts->ctx;
  std::vector<Obligation> out;
  {
    // Base: an initial state violating the invariant.
    UnrolledFormula f = unroll(ts, 0, TimeIndexer(*ctx, 0).at(ctx->lnot(inv), 0));
    out.push_back(Obligation{"induct:" + name + ":base", std::move(f), false});
  }
  {
    // Step: an invariant state whose successor violates the invariant.
    auto ts2 = std::make_shared<TransitionSystem>(*ts);
    ts2->init = inv;
    UnrolledFormula f =
        unroll(ts2, 1, TimeIndexer(*ctx, 1).at(ctx->lnot(inv), 1));
    out.push_back(Obligation{"induct:" + name + ":step", std::move(f), true});
  }
  return out;
}

/// One-induction: proved only if the invariant holds initially and is
/// preserved by every transition. A failing induction step is reported as
/// Unknown with the failing valuation; it is not a refutation.
inline CheckReport check_invariant_inductive(
    std::shared_ptr<TransitionSystem> ts, Expr inv, const std::string& name,
    const SolveEngine& engine) {
  std::vector<Obligation> obs = induction_obligations(ts, inv, name);
  CheckReport rep;
  rep.obligation = "induct:" + name;

  SolveResult base = engine.decide(obs[0]);
  rep.engine_id = base.engine_id;
  rep.wall_seconds = base.wall_seconds;
  if (base.status == SolveStatus::kSat) {
    rep.status = CheckStatus::kCounterexample;
    rep.detail = "violated in an initial state";
    rep.witness = base.model;
    rep.replayed = true;
    return rep;
  }
  if (base.status == SolveStatus::kUnknown) {
    rep.status = CheckStatus::kUnknown;
    rep.detail = base.reason;
    return rep;
  }
  SolveResult step = engine.decide(obs[1]);
  rep.wall_seconds += step.wall_seconds;
  if (step.status == SolveStatus::kSat) {
    rep.status = CheckStatus::kUnknown;
    rep.detail = "not inductive";
    rep.witness = step.model;
    return rep;
  }
  if (step.status == SolveStatus::kUnknown) {
    rep.status = CheckStatus::kUnknown;
    rep.detail = step.reason;
    return rep;
  }
  rep.status = CheckStatus::kProved;
  return rep;
}

}  // namespace ila

#endif  // ILA_EQCHECK_HPP_
