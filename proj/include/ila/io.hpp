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

// Textual formats: model files, traces, check reports, and mapping /
// refinement files. All formats are parenthesized symbolic expressions;
// serialization is canonical, so parse-serialize reaches a fixpoint after
// one round trip.

#ifndef ILA_IO_HPP_
#define ILA_IO_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ila/eqcheck.hpp"
#include "ila/sexpr.hpp"

namespace ila {

namespace io_detail {

// Scope for expression parsing: declared variables plus, inside decode
// forms, the opcode variable.
struct ExprScope {
  std::map<std::string, VarRef> vars;
  std::map<std::string, FuncSymbol> funcs;
  std::optional<VarRef> opcode;

  const VarRef* find(const std::string& name) const {
    if (opcode && name == opcode->name) return &*opcode;
    auto it = vars.find(name);
    return it == vars.end() ? nullptr : &it->second;
  }
};

inline unsigned parse_uint(const SNode& n, const char* what) {
  const std::string& a = n.expect_atom(what);
  for (char c : a)
    if (c < '0' || c > '9')
      throw SyntaxError(n.span, std::string("expected ") + what + ", got " + a);
  return static_cast<unsigned>(std::stoul(a));
}

inline Sort parse_sort(const SNode& n) {
  if (n.is_atom) {
    if (n.atom == "bool") return Sort::boolean();
    throw SyntaxError(n.span, "unknown sort " + n.atom);
  }
  const std::string head = n.head();
  try {
    if (head == "bv" && n.size() == 2)
      return Sort::bitvec(parse_uint(n[1], "width"));
    if (head == "array" && n.size() == 3)
      return Sort::array(parse_uint(n[1], "address width"),
                         parse_uint(n[2], "data width"));
  } catch (const SortError& e) {
    throw SyntaxError(n.span, e.what());
  }
  throw SyntaxError(n.span, "unknown sort form");
}

inline Expr parse_expr(TermContext& ctx, const SNode& n,
                       const ExprScope& scope) {
  try {
    if (n.is_atom) {
      if (n.atom == "true") return ctx.bool_const(true);
      if (n.atom == "false") return ctx.bool_const(false);
      const VarRef* v = scope.find(n.atom);
      if (!v) throw SyntaxError(n.span, "unknown variable " + n.atom);
      return ctx.var(*v);
    }
    const std::string head = n.head();
    if (head.empty()) throw SyntaxError(n.span, "expected an operator");
    if (head == "bv") {
      unsigned w = parse_uint(n[1], "width");
      const std::string& digits = n[2].expect_atom("value");
      return ctx.bv_const(w, BvValue(digits));
    }
    if (head == "extract")
      return ctx.extract(parse_uint(n[1], "high bit"),
                         parse_uint(n[2], "low bit"),
                         parse_expr(ctx, n[3], scope));
    if (head == "zero_extend")
      return ctx.zero_extend(parse_uint(n[1], "extension"),
                             parse_expr(ctx, n[2], scope));
    if (head == "sign_extend")
      return ctx.sign_extend(parse_uint(n[1], "extension"),
                             parse_expr(ctx, n[2], scope));
    if (head == "apply") {
      const std::string& fname = n[1].expect_atom("function name");
      auto it = scope.funcs.find(fname);
      if (it == scope.funcs.end())
        throw SyntaxError(n[1].span, "unknown function " + fname);
      std::vector<Expr> args;
      for (size_t i = 2; i < n.size(); ++i)
        args.push_back(parse_expr(ctx, n[i], scope));
      return ctx.apply(it->second, args);
    }
    static const std::map<std::string, Op> ops = {
        {"not", Op::kNot},       {"and", Op::kAnd},
        {"or", Op::kOr},         {"xor", Op::kXor},
        {"implies", Op::kImplies}, {"ite", Op::kIte},
        {"bvnot", Op::kBvNot},   {"bvand", Op::kBvAnd},
        {"bvor", Op::kBvOr},     {"bvxor", Op::kBvXor},
        {"bvadd", Op::kBvAdd},   {"bvsub", Op::kBvSub},
        {"bvmul", Op::kBvMul},   {"bvudiv", Op::kBvUdiv},
        {"bvurem", Op::kBvUrem}, {"shl", Op::kShl},
        {"lshr", Op::kLshr},     {"ashr", Op::kAshr},
        {"concat", Op::kConcat}, {"eq", Op::kEq},
        {"ult", Op::kUlt},       {"ule", Op::kUle},
        {"slt", Op::kSlt},       {"sle", Op::kSle},
        {"select", Op::kSelect}, {"store", Op::kStore}};
    auto op = ops.find(head);
    if (op == ops.end())
      throw SyntaxError(n.span, "unknown operator " + head);
    std::vector<Expr> args;
    for (size_t i = 1; i < n.size(); ++i)
      args.push_back(parse_expr(ctx, n[i], scope));
    return ctx.app(op->second, args);
  } catch (const SortError& e) {
    throw SyntaxError(n.span, e.what());
  } catch (const ValueOutOfRange& e) {
    throw SyntaxError(n.span, e.what());
  }
}

inline std::optional<Value> parse_init_value(const SNode& n) {
  if (n.is_atom) {
    if (n.atom == "unconstrained") return std::nullopt;
    if (n.atom == "true") return Value(true);
    if (n.atom == "false") return Value(false);
    throw SyntaxError(n.span, "expected an initial value");
  }
  if (n.head() == "bv" && n.size() == 3)
    return Value(bv_trunc(BvValue(n[2].atom), parse_uint(n[1], "width")));
  throw SyntaxError(n.span, "expected an initial value");
}

inline Value parse_value(const SNode& n, const Sort& sort) {
  if (sort.is_array()) {
    if (n.head() != "array-value")
      throw SyntaxError(n.span, "expected (array-value ...)");
    ArrayValue av;
    if (n[1].is_atom && n[1].atom == "unconstrained")
      av.def = 0;
    else
      av.def = as_bv(*parse_init_value(n[1]));
    for (size_t i = 2; i < n.size(); ++i) {
      const SNode& cell = n[i];
      if (cell.size() != 2)
        throw SyntaxError(cell.span, "expected (addr value)");
      av.overrides[as_bv(*parse_init_value(cell[0]))] =
          as_bv(*parse_init_value(cell[1]));
    }
    return av;
  }
  auto v = parse_init_value(n);
  if (!v) throw SyntaxError(n.span, "unconstrained not allowed here");
  return *v;
}

inline std::string value_text(const Value& v, const Sort& sort) {
  if (sort.is_bool()) return as_bool(v) ? "true" : "false";
  if (sort.is_bv())
    return "(bv " + std::to_string(sort.width()) + " " + as_bv(v).str() + ")";
  const ArrayValue& av = as_array(v);
  std::string out = "(array-value (bv " + std::to_string(sort.data_width()) +
                    " " + av.def.str() + ")";
  for (const auto& [a, val] : av.overrides)
    out += " ((bv " + std::to_string(sort.addr_width()) + " " + a.str() +
           ") (bv " + std::to_string(sort.data_width()) + " " + val.str() +
           "))";
  return out + ")";
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// Model files.

struct ParsedModel {
  ModelPtr model;  // null when diagnostics are non-empty
  std::vector<Diagnostic> diagnostics;
};

namespace io_detail {

inline ModelPtr build_model_form(std::shared_ptr<TermContext> ctx,
                                 const SNode& form,
                                 std::vector<Diagnostic>& diags,
                                 std::map<std::string, SrcSpan>& spans);

inline void parse_ila_body(ModelBuilder& b, std::shared_ptr<TermContext> ctx,
                           const SNode& form, ExprScope& scope,
                           std::vector<Diagnostic>& diags,
                           std::map<std::string, SrcSpan>& spans,
                           const std::string& model_name) {
  auto note_span = [&](const std::string& key, const SrcSpan& s) {
    spans.emplace(model_name + "." + key, s);
  };

  // Declarations first so expressions can resolve names.
  for (size_t i = 2; i < form.size(); ++i) {
    const SNode& item = form[i];
    const std::string head = item.head();
    if (head == "state" || head == "input") {
      for (size_t j = 1; j < item.size(); ++j) {
        const SNode& decl = item[j];
        if (decl.is_atom || decl.size() != 2)
          throw SyntaxError(decl.span, "expected (name sort)");
        const std::string& name = decl[0].expect_atom("variable name");
        Sort sort = parse_sort(decl[1]);
        Expr var = head == "state" ? b.add_state(name, sort)
                                   : b.add_input(name, sort);
        scope.vars[name] = var.var();
        note_span(name, decl.span);
      }
    } else if (head == "uf") {
      const std::string& name = item[1].expect_atom("function name");
      FuncSymbol f;
      f.name = name;
      if (!item[2].is_list())
        throw SyntaxError(item[2].span, "expected argument sort list");
      for (const SNode& s : item[2].items)
        f.arg_sorts.push_back(parse_sort(s));
      f.result_sort = parse_sort(item[3]);
      b.declare_func(f);
      scope.funcs[name] = f;
      note_span("uf " + name, item.span);
    }
  }

  // Fetch before instructions: decode expressions mention the opcode.
  for (size_t i = 2; i < form.size(); ++i) {
    const SNode& item = form[i];
    if (item.head() != "fetch") continue;
    unsigned width = parse_uint(item[1], "fetch width");
    Expr fetch = parse_expr(*ctx, item[2], scope);
    if (fetch.sort().is_bv() && fetch.sort().width() != width)
      throw SyntaxError(item.span,
                        "fetch width " + std::to_string(width) +
                            " does not match expression of sort " +
                            fetch.sort().str());
    Expr opcode = b.set_fetch(fetch);
    if (opcode.valid()) scope.opcode = opcode.var();
    note_span("fetch", item.span);
  }

  for (size_t i = 2; i < form.size(); ++i) {
    const SNode& item = form[i];
    const std::string head = item.head();
    if (head == "state" || head == "input" || head == "uf" ||
        head == "fetch") {
      continue;
    } else if (head == "init") {
      for (size_t j = 1; j < item.size(); ++j) {
        const SNode& pair = item[j];
        if (pair.is_atom || pair.size() != 2)
          throw SyntaxError(pair.span, "expected (variable value)");
        const std::string& name = pair[0].expect_atom("variable name");
        const VarRef* v = scope.find(name);
        if (!v) throw SyntaxError(pair[0].span, "unknown variable " + name);
        auto value = parse_init_value(pair[1]);
        if (value)
          b.set_init(*v, *value);
        else
          b.set_init_unconstrained(*v);
      }
    } else if (head == "valid") {
      ExprScope s = scope;
      s.opcode.reset();
      b.set_valid(parse_expr(*ctx, item[1], s));
      note_span("valid", item.span);
    } else if (head == "instruction") {
      const std::string& name = item[1].expect_atom("instruction name");
      note_span("instruction " + name, item.span);
      Expr decode;
      std::map<VarRef, Expr> next;
      for (size_t j = 2; j < item.size(); ++j) {
        const SNode& part = item[j];
        if (part.head() == "decode") {
          decode = parse_expr(*ctx, part[1], scope);
        } else if (part.head() == "update") {
          ExprScope s = scope;
          s.opcode.reset();
          for (size_t u = 1; u < part.size(); ++u) {
            const SNode& upd = part[u];
            if (upd.is_atom || upd.size() != 2)
              throw SyntaxError(upd.span, "expected (variable expr)");
            const std::string& vn = upd[0].expect_atom("variable name");
            const VarRef* v = s.find(vn);
            if (!v) throw SyntaxError(upd[0].span, "unknown variable " + vn);
            next[*v] = parse_expr(*ctx, upd[1], s);
          }
        } else {
          throw SyntaxError(part.span, "expected (decode ...) or (update ...)");
        }
      }
      if (!decode.valid())
        throw SyntaxError(item.span, "instruction without decode");
      b.add_instruction(name, decode, std::move(next));
    } else if (head == "child") {
      const std::string& flavor = item[1].expect_atom("micro or sub");
      if (flavor != "micro" && flavor != "sub")
        throw SyntaxError(item[1].span, "expected micro or sub");
      ModelPtr child = build_model_form(ctx, item[2], diags, spans);
      std::vector<std::pair<VarRef, VarRef>> shared;
      for (size_t j = 3; j < item.size(); ++j) {
        const SNode& sh = item[j];
        if (sh.head() != "share")
          throw SyntaxError(sh.span, "expected (share ...)");
        for (size_t p = 1; p < sh.size(); ++p) {
          const SNode& pair = sh[p];
          if (pair.is_atom || pair.size() != 2)
            throw SyntaxError(pair.span, "expected (parent child)");
          const std::string& pn = pair[0].expect_atom("parent variable");
          const std::string& cn = pair[1].expect_atom("child variable");
          const VarRef* pv = scope.find(pn);
          if (!pv)
            throw SyntaxError(pair[0].span, "unknown parent variable " + pn);
          std::optional<VarRef> cv =
              child ? child->find_state(cn) : std::nullopt;
          if (child && !cv)
            throw SyntaxError(pair[1].span, "unknown child variable " + cn);
          if (child) shared.emplace_back(*pv, *cv);
        }
      }
      if (child) {
        note_span("child " + child->name(), item.span);
        b.add_child(child, flavor == "micro", std::move(shared));
      }
    } else {
      throw SyntaxError(item.span, "unknown form " + head);
    }
  }
}

inline ModelPtr build_model_form(std::shared_ptr<TermContext> ctx,
                                 const SNode& form,
                                 std::vector<Diagnostic>& diags,
                                 std::map<std::string, SrcSpan>& spans) {
  if (form.head() != "ila")
    throw SyntaxError(form.span, "expected (ila ...)");
  const std::string& name = form[1].expect_atom("model name");
  ModelBuilder b(ctx, name);
  ExprScope scope;
  parse_ila_body(b, ctx, form, scope, diags, spans, name);
  std::vector<Diagnostic> local;
  ModelPtr m = b.build_checked(local);
  diags.insert(diags.end(), local.begin(), local.end());
  return m;
}

}  // namespace io_detail

/// Parses a model file. Grammar errors throw SyntaxError (with spans);
/// validation problems come back as diagnostics, located where possible.
inline ParsedModel parse_model(const std::string& text) {
  std::vector<SNode> forms = parse_sexprs(text);
  if (forms.empty())
    throw SyntaxError(SrcSpan{1, 1}, "empty input, expected (ila ...)");
  if (forms.size() > 1)
    throw SyntaxError(forms[1].span, "expected a single (ila ...) form");
  auto ctx = std::make_shared<TermContext>();
  ParsedModel out;
  std::map<std::string, SrcSpan> spans;
  out.model = io_detail::build_model_form(ctx, forms[0], out.diagnostics,
                                          spans);
  for (auto& d : out.diagnostics) {
    auto it = spans.find(d.where);
    if (it != spans.end()) d.where = it->second.str() + ": " + d.where;
  }
  return out;
}

/// Parses and validates, throwing on any problem.
inline ModelPtr parse_model_or_throw(const std::string& text) {
  ParsedModel pm = parse_model(text);
  if (!pm.model) throw ValidationError(pm.diagnostics);
  return pm.model;
}

namespace io_detail {

inline void serialize_model_into(const Model& m, std::string& out,
                                 const std::string& indent) {
  auto line = [&out, &indent](const std::string& s) {
    out += indent + s + "\n";
  };
  line("(ila " + m.name());
  if (!m.state_vars().empty()) {
    line("  (state");
    for (const auto& v : m.state_vars())
      line("    (" + v.name + " " + v.sort.str() + ")");
    out.erase(out.size() - 1);
    out += ")\n";
  }
  if (!m.inputs().empty()) {
    line("  (input");
    for (const auto& v : m.inputs())
      line("    (" + v.name + " " + v.sort.str() + ")");
    out.erase(out.size() - 1);
    out += ")\n";
  }
  for (const auto& f : m.func_symbols()) {
    std::string s = "  (uf " + f.name + " (";
    for (size_t i = 0; i < f.arg_sorts.size(); ++i) {
      if (i) s += " ";
      s += f.arg_sorts[i].str();
    }
    s += ") " + f.result_sort.str() + ")";
    line(s);
  }
  if (!m.state_vars().empty()) {
    line("  (init");
    for (const auto& v : m.state_vars()) {
      auto init = m.init_of(v);
      std::string val = init ? value_text(*init, v.sort) : "unconstrained";
      line("    (" + v.name + " " + val + ")");
    }
    out.erase(out.size() - 1);
    out += ")\n";
  }
  line("  (valid " + expr_str(m.valid()) + ")");
  line("  (fetch " + std::to_string(m.fetch_width()) + " " +
       expr_str(m.fetch()) + ")");
  for (const auto& instr : m.instructions()) {
    line("  (instruction " + instr.name);
    std::string dec = "    (decode " + expr_str(instr.decode) + ")";
    if (instr.next.empty()) {
      line(dec + ")");
      continue;
    }
    line(dec);
    line("    (update");
    for (const auto& [v, e] : instr.next)
      line("      (" + v.name + " " + expr_str(e) + ")");
    out.erase(out.size() - 1);
    out += "))\n";
  }
  for (const auto& c : m.children()) {
    line(std::string("  (child ") + (c.is_micro ? "micro" : "sub"));
    std::string body;
    serialize_model_into(*c.child, body, indent + "    ");
    out += body;
    if (!c.shared.empty()) {
      line("    (share");
      for (const auto& [p, cv] : c.shared)
        line("      (" + p.name + " " + cv.name + ")");
      out.erase(out.size() - 1);
      out += ")";
      out += ")\n";
    } else {
      out.erase(out.size() - 1);
      out += ")\n";
    }
  }
  out += indent + ")\n";
}

}  // namespace io_detail

/// Canonical model text; parse(serialize(m)) is structurally equal to m.
inline std::string serialize_model(const Model& m) {
  std::string out;
  io_detail::serialize_model_into(m, out, "");
  return out;
}

// ---------------------------------------------------------------------------
// Traces.

inline std::string serialize_trace(const Model& root, const Trace& trace,
                                   bool with_state) {
  std::string out = "(trace\n";
  for (const TraceStep& step : trace) {
    out += "  (step (in";
    for (const auto& w : root.inputs()) {
      auto it = step.inputs.find(w);
      if (it == step.inputs.end()) continue;
      out += " (" + w.name + " " + io_detail::value_text(it->second, w.sort) +
             ")";
    }
    out += ")";
    if (step.outcome.fired)
      out += " (fired " + step.outcome.fired->first + "." +
             step.outcome.fired->second + ")";
    else
      out += " (fired none)";
    if (with_state) {
      out += "\n    (state";
      for (const auto& [v, val] : step.outcome.next)
        out += " (" + v.name + " " + io_detail::value_text(val, v.sort) + ")";
      out += ")";
    }
    out += ")\n";
  }
  out += ")\n";
  return out;
}

/// Reads a trace: per-step input bindings, with optional fired/state parts
/// (ignored for simulation inputs, preserved when present).
inline Trace parse_trace(const std::string& text, ModelPtr root) {
  std::vector<SNode> forms = parse_sexprs(text);
  if (forms.empty())
    throw SyntaxError(SrcSpan{1, 1}, "empty input, expected (trace ...)");
  const SNode& tr = forms[0];
  if (tr.head() != "trace") throw SyntaxError(tr.span, "expected (trace ...)");
  FlatModel fm(root);
  Trace out;
  for (size_t i = 1; i < tr.size(); ++i) {
    const SNode& step = tr[i];
    if (step.head() != "step")
      throw SyntaxError(step.span, "expected (step ...)");
    TraceStep ts;
    for (size_t j = 1; j < step.size(); ++j) {
      const SNode& part = step[j];
      if (part.head() == "in") {
        for (size_t p = 1; p < part.size(); ++p) {
          const SNode& pair = part[p];
          const std::string& name = pair[0].expect_atom("input name");
          auto w = root->find_input(name);
          if (!w) throw SyntaxError(pair[0].span, "unknown input " + name);
          ts.inputs[*w] = io_detail::parse_value(pair[1], w->sort);
        }
      } else if (part.head() == "fired") {
        const std::string& f = part[1].expect_atom("instruction");
        if (f != "none") {
          auto dot = f.rfind('.');
          if (dot == std::string::npos)
            throw SyntaxError(part[1].span, "expected path.instruction");
          ts.outcome.fired =
              std::make_pair(f.substr(0, dot), f.substr(dot + 1));
        }
      } else if (part.head() == "state") {
        for (size_t p = 1; p < part.size(); ++p) {
          const SNode& pair = part[p];
          const std::string& name = pair[0].expect_atom("variable name");
          bool found = false;
          for (const auto& slot : fm.slots()) {
            if (slot.qual_name != name) continue;
            ts.outcome.next[VarRef{slot.qual_name, slot.var.sort,
                                   slot.var.kind}] =
                io_detail::parse_value(pair[1], slot.var.sort);
            found = true;
          }
          if (!found)
            throw SyntaxError(pair[0].span, "unknown state variable " + name);
        }
      } else {
        throw SyntaxError(part.span, "unknown step part");
      }
    }
    // Missing inputs default to zero so hand-written traces stay short.
    for (const auto& w : root->inputs()) {
      if (ts.inputs.count(w)) continue;
      if (w.sort.is_bool())
        ts.inputs[w] = false;
      else if (w.sort.is_bv())
        ts.inputs[w] = BvValue(0);
      else
        ts.inputs[w] = ArrayValue{BvValue(0), {}};
    }
    out.push_back(std::move(ts));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Check reports.

inline std::string serialize_report(const CheckReport& rep) {
  std::string out = "(report\n";
  out += "  (obligation " + quote_string(rep.obligation) + ")\n";
  out += "  (status " + std::string(check_status_name(rep.status)) + ")\n";
  if (!rep.engine_id.empty()) out += "  (engine " + rep.engine_id + ")\n";
  if (!rep.detail.empty())
    out += "  (detail " + quote_string(rep.detail) + ")\n";
  if (rep.status == CheckStatus::kCounterexample && !rep.witness.empty()) {
    out += "  (witness";
    for (const auto& [v, val] : rep.witness)
      out += "\n    (" + v.name + " " + io_detail::value_text(val, v.sort) +
             ")";
    out += ")\n";
  }
  if (!rep.uf_witness.empty()) {
    out += "  (uf-witness";
    for (const auto& [k, v] : rep.uf_witness)
      out += "\n    (" + quote_string(k) + " " + v.str() + ")";
    out += ")\n";
  }
  if (rep.replayed) out += "  (replayed true)\n";
  out += ")\n";
  return out;
}

inline std::string serialize_reports(const std::vector<CheckReport>& reps) {
  std::string out;
  for (const auto& r : reps) out += serialize_report(r);
  return out;
}

// ---------------------------------------------------------------------------
// Mapping and refinement files.

namespace io_detail {

// Mapping and refinement expressions may reach descendant state through
// dotted relative paths ("block.Counter"); the flattened hierarchy provides
// exactly those names.
inline ExprScope scope_of(ModelPtr m) {
  ExprScope s;
  FlatModel fm(m);
  std::string prefix = m->name() + ".";
  for (const auto& slot : fm.slots()) {
    std::string rel = slot.qual_name.substr(prefix.size());
    s.vars[rel] = VarRef{rel, slot.var.sort, slot.kind};
  }
  for (const auto& f : fm.func_symbols()) s.funcs[f.name] = f;
  return s;
}

inline void parse_map_body(const SNode& form, TermContext& ctx,
                           const ExprScope& sa, const ExprScope& sb,
                           StateMapping& out) {
  for (size_t i = 1; i < form.size(); ++i) {
    const SNode& item = form[i];
    const std::string head = item.head();
    if (head == "pair") {
      Expr ea = parse_expr(ctx, item[1], sa);
      Expr eb = parse_expr(ctx, item[2], sb);
      if (ea.sort() != eb.sort())
        throw SyntaxError(item.span, "pair sorts differ: " + ea.sort().str() +
                                         " vs " + eb.sort().str());
      out.pairs.emplace_back(ea, eb);
    } else if (head == "invariant") {
      const std::string& side = item[1].expect_atom("side (a or b)");
      Expr e = parse_expr(ctx, item[2], side == "a" ? sa : sb);
      if (side == "a")
        out.invariants_a.push_back(e);
      else if (side == "b")
        out.invariants_b.push_back(e);
      else
        throw SyntaxError(item[1].span, "side must be a or b");
    } else {
      throw SyntaxError(item.span, "unknown mapping form " + head);
    }
  }
}

}  // namespace io_detail

/// Mapping file: (map (pair <exprA> <exprB>)... (invariant a|b <expr>)...).
inline StateMapping parse_mapping(const std::string& text, ModelPtr a,
                                  ModelPtr b) {
  std::vector<SNode> forms = parse_sexprs(text);
  if (forms.empty() || forms[0].head() != "map")
    throw SyntaxError(SrcSpan{1, 1}, "expected (map ...)");
  StateMapping out;
  TermContext& ctx = *a->context();
  io_detail::parse_map_body(forms[0], ctx, io_detail::scope_of(a),
                            io_detail::scope_of(b), out);
  return out;
}

/// Identity mapping: pairs same-named, same-sorted top-level state variables.
inline StateMapping identity_mapping(const Model& a, const Model& b) {
  StateMapping out;
  TermContext& ctx = *a.context();
  for (const auto& va : a.state_vars())
    for (const auto& vb : b.state_vars())
      if (va.name == vb.name && va.sort == vb.sort)
        out.pairs.emplace_back(ctx.var(va), ctx.var(vb));
  return out;
}

/// Refinement file:
///   (refine (map ...) (commit <expr>) (assume <expr>)...
///           (warmup <n>) (bound <k>) (issue <instr> <expr>)...)
/// Mapping side a is the model, side b the implementation; commit, assume,
/// and issue expressions are over the implementation's variables.
inline RefinementSpec parse_refinement(const std::string& text,
                                       ModelPtr spec, ModelPtr impl) {
  std::vector<SNode> forms = parse_sexprs(text);
  if (forms.empty() || forms[0].head() != "refine")
    throw SyntaxError(SrcSpan{1, 1}, "expected (refine ...)");
  RefinementSpec out;
  TermContext& ctx = *spec->context();
  io_detail::ExprScope ss = io_detail::scope_of(spec);
  io_detail::ExprScope si = io_detail::scope_of(impl);
  for (size_t i = 1; i < forms[0].size(); ++i) {
    const SNode& item = forms[0][i];
    const std::string head = item.head();
    if (head == "map") {
      io_detail::parse_map_body(item, ctx, ss, si, out.mapping);
    } else if (head == "commit") {
      out.commit = io_detail::parse_expr(ctx, item[1], si);
    } else if (head == "assume") {
      out.assumes_impl.push_back(io_detail::parse_expr(ctx, item[1], si));
    } else if (head == "warmup") {
      out.warmup = io_detail::parse_uint(item[1], "warmup");
    } else if (head == "bound") {
      out.bound = io_detail::parse_uint(item[1], "bound");
    } else if (head == "issue") {
      const std::string& name = item[1].expect_atom("instruction name");
      out.issues.emplace_back(name,
                              io_detail::parse_expr(ctx, item[2], si));
    } else {
      throw SyntaxError(item.span, "unknown refinement form " + head);
    }
  }
  if (!out.commit.valid())
    throw SyntaxError(forms[0].span, "refinement without (commit ...)");
  return out;
}

}  // namespace ila

#endif  // ILA_IO_HPP_
