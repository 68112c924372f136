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

#ifndef ILA_MODEL_HPP_
#define ILA_MODEL_HPP_

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ila/expr.hpp"

namespace ila {

// A structured validation finding. `where` names the offending model element;
// the io module prefixes source spans when the model came from a file.
struct Diagnostic {
  enum class Code {
    kUndeclaredVariable,
    kSortError,
    kDuplicateName,
    kHierarchyViolation,
    kSharedInitMismatch,
    kBadInit,
    kMissingPiece,
  };
  Code code;
  std::string where;
  std::string message;

  std::string str() const { return where + ": " + message; }
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diags)
      : std::runtime_error(join(diags)), diags_(std::move(diags)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  static std::string join(const std::vector<Diagnostic>& ds) {
    std::string s = "model validation failed:";
    for (const auto& d : ds) s += "\n  " + d.str();
    return s;
  }
  std::vector<Diagnostic> diags_;
};

// One instruction: a decode predicate over the opcode variable and a sparse
// next-state map. State variables missing from the map are unchanged.
struct Instruction {
  std::string name;
  Expr decode;
  std::map<VarRef, Expr> next;
  bool writes(const VarRef& v) const { return next.count(v) != 0; }
};

class Model;
using ModelPtr = std::shared_ptr<const Model>;

// A nested model plus its micro/sub flag and the identification of child
// state variables with parent state variables (shared state).
struct ChildEntry {
  ModelPtr child;
  bool is_micro = true;
  std::vector<std::pair<VarRef, VarRef>> shared;  // (parent var, child var)

  std::optional<VarRef> parent_of(const VarRef& child_var) const {
    for (const auto& [p, c] : shared)
      if (c == child_var) return p;
    return std::nullopt;
  }
};

// An immutable, validated instruction-level model. Build through
// ModelBuilder; construction validates all structural invariants and reports
// every violation at once.
class Model {
 public:
  const std::string& name() const { return name_; }
  const std::vector<VarRef>& state_vars() const { return state_vars_; }
  const std::vector<VarRef>& inputs() const { return inputs_; }
  const std::map<VarRef, std::optional<Value>>& init() const { return init_; }
  Expr valid() const { return valid_; }
  Expr fetch() const { return fetch_; }
  unsigned fetch_width() const { return fetch_width_; }
  const VarRef& opcode_var() const { return opcode_var_; }
  const std::vector<Instruction>& instructions() const { return instrs_; }
  const std::vector<ChildEntry>& children() const { return children_; }
  const std::vector<FuncSymbol>& func_symbols() const { return funcs_; }
  const std::shared_ptr<TermContext>& context() const { return ctx_; }

  const Instruction* find_instruction(const std::string& name) const {
    for (const auto& i : instrs_)
      if (i.name == name) return &i;
    return nullptr;
  }

  std::optional<VarRef> find_state(const std::string& name) const {
    for (const auto& v : state_vars_)
      if (v.name == name) return v;
    return std::nullopt;
  }

  std::optional<VarRef> find_input(const std::string& name) const {
    for (const auto& v : inputs_)
      if (v.name == name) return v;
    return std::nullopt;
  }

  std::optional<Value> init_of(const VarRef& v) const {
    auto it = init_.find(v);
    return it == init_.end() ? std::nullopt : it->second;
  }

  /// True when every state variable in the whole hierarchy has a constant
  /// initial value (required for seedless simulation).
  bool all_init_constant() const {
    for (const auto& v : state_vars_)
      if (!init_of(v)) return false;
    for (const auto& c : children_)
      if (!c.child->all_init_constant()) return false;
    return true;
  }

 private:
  friend class ModelBuilder;
  Model() = default;

  std::string name_;
  std::vector<VarRef> state_vars_;
  std::vector<VarRef> inputs_;
  std::map<VarRef, std::optional<Value>> init_;
  Expr valid_;
  Expr fetch_;
  unsigned fetch_width_ = 0;
  VarRef opcode_var_;
  std::vector<Instruction> instrs_;
  std::vector<ChildEntry> children_;
  std::vector<FuncSymbol> funcs_;
  std::shared_ptr<TermContext> ctx_;
};

// Accumulates the pieces of a model and validates them as a whole. The
// opcode variable is created when the fetch function is set; decode
// expressions may reference only that variable.
class ModelBuilder {
 public:
  ModelBuilder(std::shared_ptr<TermContext> ctx, std::string name)
      : ctx_(std::move(ctx)) {
    m_.name_ = std::move(name);
    m_.ctx_ = ctx_;
  }

  TermContext& ctx() { return *ctx_; }

  Expr add_state(const std::string& name, const Sort& sort) {
    VarRef v{name, sort, VarKind::kState};
    m_.state_vars_.push_back(v);
    m_.init_[v] = std::nullopt;
    return ctx_->var(v);
  }

  Expr add_input(const std::string& name, const Sort& sort) {
    VarRef v{name, sort, VarKind::kInput};
    m_.inputs_.push_back(v);
    return ctx_->var(v);
  }

  void set_init(const VarRef& v, const Value& value) { m_.init_[v] = value; }
  void set_init_unconstrained(const VarRef& v) { m_.init_[v] = std::nullopt; }

  void set_valid(Expr e) { m_.valid_ = e; }

  /// Sets the fetch function and creates the opcode variable of its width.
  Expr set_fetch(Expr e) {
    m_.fetch_ = e;
    if (e.valid() && e.sort().is_bv()) {
      m_.fetch_width_ = e.sort().width();
      m_.opcode_var_ =
          VarRef{"opcode", Sort::bitvec(m_.fetch_width_), VarKind::kOpcode};
      return ctx_->var(m_.opcode_var_);
    }
    return Expr();
  }

  /// The opcode variable; only valid after set_fetch.
  Expr opcode() const { return m_.ctx_->var(m_.opcode_var_); }

  void declare_func(const FuncSymbol& f) { m_.funcs_.push_back(f); }

  void add_instruction(const std::string& name, Expr decode,
                       std::map<VarRef, Expr> next) {
    m_.instrs_.push_back(Instruction{name, decode, std::move(next)});
  }

  void add_child(ModelPtr child, bool is_micro,
                 std::vector<std::pair<VarRef, VarRef>> shared) {
    m_.children_.push_back(ChildEntry{std::move(child), is_micro,
                                      std::move(shared)});
  }

  /// Validates and freezes the model. All violations are reported together.
  ModelPtr build() {
    std::vector<Diagnostic> diags;
    ModelPtr m = build_checked(diags);
    if (!m) throw ValidationError(std::move(diags));
    return m;
  }

  /// Like build() but collects diagnostics instead of throwing.
  ModelPtr build_checked(std::vector<Diagnostic>& diags) {
    validate(diags);
    if (!diags.empty()) return nullptr;
    auto out = std::shared_ptr<Model>(new Model(std::move(m_)));
    return out;
  }

 private:
  void diag(std::vector<Diagnostic>& ds, Diagnostic::Code code,
            const std::string& where, const std::string& msg) {
    ds.push_back(Diagnostic{code, m_.name_ + "." + where, msg});
  }

  bool declared(const VarRef& v) const {
    for (const auto& s : m_.state_vars_)
      if (s == v) return true;
    for (const auto& s : m_.inputs_)
      if (s == v) return true;
    return false;
  }

  void check_scope(std::vector<Diagnostic>& ds, Expr e,
                   const std::string& where, bool opcode_only) {
    if (!e.valid()) return;
    for (const VarRef& v : free_vars(e)) {
      if (opcode_only) {
        if (v != m_.opcode_var_)
          diag(ds, Diagnostic::Code::kUndeclaredVariable, where,
               "decode may mention only the opcode variable, found " + v.name);
      } else if (v.kind == VarKind::kOpcode) {
        diag(ds, Diagnostic::Code::kUndeclaredVariable, where,
             "opcode variable cannot appear outside decode expressions");
      } else if (!declared(v)) {
        diag(ds, Diagnostic::Code::kUndeclaredVariable, where,
             "undeclared variable " + v.name);
      }
    }
  }

  void validate(std::vector<Diagnostic>& diags) {
    // Name uniqueness within this model's namespace.
    std::set<std::string> names;
    for (const auto& v : m_.state_vars_)
      if (!names.insert(v.name).second)
        diag(diags, Diagnostic::Code::kDuplicateName, v.name,
             "duplicate variable name");
    for (const auto& v : m_.inputs_)
      if (!names.insert(v.name).second)
        diag(diags, Diagnostic::Code::kDuplicateName, v.name,
             "duplicate variable name");
    std::set<std::string> inames;
    for (const auto& i : m_.instrs_)
      if (!inames.insert(i.name).second)
        diag(diags, Diagnostic::Code::kDuplicateName, i.name,
             "duplicate instruction name");

    if (!m_.valid_.valid()) {
      diag(diags, Diagnostic::Code::kMissingPiece, "valid",
           "valid function not set");
    } else if (!m_.valid_.sort().is_bool()) {
      diag(diags, Diagnostic::Code::kSortError, "valid",
           "valid function must be boolean, got " + m_.valid_.sort().str());
    } else {
      check_scope(diags, m_.valid_, "valid", false);
    }

    if (!m_.fetch_.valid()) {
      diag(diags, Diagnostic::Code::kMissingPiece, "fetch",
           "fetch function not set");
    } else if (!m_.fetch_.sort().is_bv()) {
      diag(diags, Diagnostic::Code::kSortError, "fetch",
           "fetch function must be a bitvector, got " +
               m_.fetch_.sort().str());
    } else {
      if (m_.fetch_.sort().width() != m_.fetch_width_)
        diag(diags, Diagnostic::Code::kSortError, "fetch",
             "fetch width disagrees with fetch expression");
      check_scope(diags, m_.fetch_, "fetch", false);
    }

    for (const auto& instr : m_.instrs_) {
      const std::string where = "instruction " + instr.name;
      if (!instr.decode.valid() || !instr.decode.sort().is_bool())
        diag(diags, Diagnostic::Code::kSortError, where,
             "decode must be a boolean expression");
      else
        check_scope(diags, instr.decode, where, true);
      for (const auto& [v, e] : instr.next) {
        bool is_state = false;
        for (const auto& s : m_.state_vars_)
          if (s == v) is_state = true;
        if (!is_state) {
          diag(diags, Diagnostic::Code::kUndeclaredVariable, where,
               "update target " + v.name + " is not a declared state variable");
          continue;
        }
        if (e.sort() != v.sort)
          diag(diags, Diagnostic::Code::kSortError, where,
               "update for " + v.name + " has sort " + e.sort().str() +
                   ", expected " + v.sort.str());
        check_scope(diags, e, where, false);
      }
    }

    // Uninterpreted symbols: declared once, scalar signatures, and every
    // application in the model must match a declaration.
    std::map<std::string, FuncSymbol> declared_funcs;
    for (const auto& f : m_.funcs_) {
      auto [it, fresh] = declared_funcs.emplace(f.name, f);
      if (!fresh && !(it->second == f))
        diag(diags, Diagnostic::Code::kDuplicateName, "uf " + f.name,
             "redeclared with a different signature");
      bool scalar = f.result_sort.is_bool() || f.result_sort.is_bv();
      for (const auto& s : f.arg_sorts)
        if (s.is_array()) scalar = false;
      if (!scalar)
        diag(diags, Diagnostic::Code::kSortError, "uf " + f.name,
             "uninterpreted functions take and return scalars only");
    }
    {
      std::set<FuncSymbol> used;
      auto scan = [&used](Expr e) {
        if (e.valid()) collect_func_symbols(e, used);
      };
      scan(m_.valid_);
      scan(m_.fetch_);
      for (const auto& i : m_.instrs_) {
        scan(i.decode);
        for (const auto& [v, e] : i.next) scan(e);
      }
      for (const auto& f : used) {
        auto it = declared_funcs.find(f.name);
        if (it == declared_funcs.end())
          diag(diags, Diagnostic::Code::kUndeclaredVariable, "uf " + f.name,
               "applied but not declared");
        else if (!(it->second == f))
          diag(diags, Diagnostic::Code::kSortError, "uf " + f.name,
               "applied with a signature differing from its declaration");
      }
    }

    for (const auto& [v, val] : m_.init_) {
      if (!val) continue;
      if (v.sort.is_array()) {
        diag(diags, Diagnostic::Code::kBadInit, v.name,
             "array state must have unconstrained initial value");
        continue;
      }
      if (!value_fits(*val, v.sort))
        diag(diags, Diagnostic::Code::kBadInit, v.name,
             "initial value does not fit sort " + v.sort.str());
    }

    // Children: shared-state identification, input containment, micro rule.
    std::set<std::string> cnames;
    for (const auto& entry : m_.children_) {
      if (!entry.child) continue;
      const std::string where = "child " + entry.child->name();
      if (!cnames.insert(entry.child->name()).second)
        diag(diags, Diagnostic::Code::kDuplicateName, where,
             "duplicate child name");
      std::set<VarRef> seen_child_vars;
      for (const auto& [pv, cv] : entry.shared) {
        bool pdecl = false;
        for (const auto& s : m_.state_vars_)
          if (s == pv) pdecl = true;
        if (!pdecl)
          diag(diags, Diagnostic::Code::kUndeclaredVariable, where,
               "shared parent variable " + pv.name + " not declared");
        bool cdecl = false;
        for (const auto& s : entry.child->state_vars())
          if (s == cv) cdecl = true;
        if (!cdecl)
          diag(diags, Diagnostic::Code::kUndeclaredVariable, where,
               "shared child variable " + cv.name + " not declared in child");
        if (!seen_child_vars.insert(cv).second)
          diag(diags, Diagnostic::Code::kDuplicateName, where,
               "child variable " + cv.name + " shared twice");
        if (pdecl && cdecl) {
          if (pv.sort != cv.sort)
            diag(diags, Diagnostic::Code::kSortError, where,
                 "shared pair " + pv.name + "/" + cv.name +
                     " has mismatched sorts");
          auto pinit = m_.init_.count(pv) ? m_.init_.at(pv) : std::nullopt;
          auto cinit = entry.child->init_of(cv);
          bool same = (!pinit && !cinit) ||
                      (pinit && cinit && value_equal(*pinit, *cinit, pv.sort));
          if (!same)
            diag(diags, Diagnostic::Code::kSharedInitMismatch, where,
                 "shared pair " + pv.name + "/" + cv.name +
                     " has differing initial values");
        }
      }
      for (const auto& w : entry.child->inputs()) {
        bool found = false;
        for (const auto& pw : m_.inputs_)
          if (pw.name == w.name && pw.sort == w.sort) found = true;
        if (!found)
          diag(diags, Diagnostic::Code::kUndeclaredVariable, where,
               "child input " + w.name + " is not an input of the parent");
      }
      if (entry.is_micro && has_sub_entry(*entry.child))
        diag(diags, Diagnostic::Code::kHierarchyViolation, where,
             "a micro child may only contain micro children");
    }
  }

  static bool has_sub_entry(const Model& m) {
    for (const auto& e : m.children()) {
      if (!e.is_micro) return true;
      if (e.child && has_sub_entry(*e.child)) return true;
    }
    return false;
  }

  std::shared_ptr<TermContext> ctx_;
  Model m_;
};

// ---------------------------------------------------------------------------
// Hierarchy flattening.

/// Preorder traversal of the hierarchy: (dot-joined path, model, micro flag).
struct HierarchyEntry {
  std::string path;
  const Model* model;
  bool is_micro;  // false for the root
};

inline void collect_hierarchy_into(const Model& m, const std::string& prefix,
                                   bool micro,
                                   std::vector<HierarchyEntry>& out) {
  std::string path = prefix.empty() ? m.name() : prefix + "." + m.name();
  out.push_back(HierarchyEntry{path, &m, micro});
  for (const auto& e : m.children())
    collect_hierarchy_into(*e.child, path, e.is_micro, out);
}

inline std::vector<HierarchyEntry> collect_hierarchy(const Model& m) {
  std::vector<HierarchyEntry> out;
  collect_hierarchy_into(m, "", false, out);
  return out;
}

// The flattened view of a hierarchy: one node per (child-)model, one slot per
// distinct state or input variable after identifying shared state with the
// parent's slot. The interpreter and the lowering pass share this resolution
// so that shared state stays in lock step by construction.
class FlatModel {
 public:
  struct Node {
    std::string path;
    const Model* model;
    bool is_micro;
    int parent;  // node index, -1 for root
    int depth;
  };
  struct Slot {
    std::string qual_name;  // path-qualified, e.g. "aes.block.Counter"
    VarRef var;             // the owning model's variable
    VarKind kind;
    std::optional<Value> init;
    int owner;  // node index
  };

  explicit FlatModel(ModelPtr root) : root_(std::move(root)) {
    add_node(*root_, "", false, -1, 0);
    // Scheduler priority: deepest nodes first, preorder position breaking
    // ties, root last.
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
      priority_.push_back(i);
    std::stable_sort(priority_.begin(), priority_.end(),
                     [this](int a, int b) {
                       return nodes_[a].depth > nodes_[b].depth;
                     });
  }

  const Model& root() const { return *root_; }
  ModelPtr root_ptr() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Slot>& slots() const { return slots_; }
  const std::vector<int>& priority() const { return priority_; }

  /// Slot index of a variable as seen from a node; resolves shared state.
  int slot_of(int node, const VarRef& v) const {
    auto it = resolve_.find(key(node, v));
    if (it == resolve_.end())
      throw std::runtime_error("unresolved variable " + v.name + " in node " +
                               nodes_[node].path);
    return it->second;
  }

  bool has_slot(int node, const VarRef& v) const {
    return resolve_.count(key(node, v)) != 0;
  }

  int num_state_slots() const { return num_state_slots_; }

  std::vector<int> state_slots() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(slots_.size()); ++i)
      if (slots_[i].kind != VarKind::kInput) out.push_back(i);
    return out;
  }
  std::vector<int> input_slots() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(slots_.size()); ++i)
      if (slots_[i].kind == VarKind::kInput) out.push_back(i);
    return out;
  }

  /// Collected function symbols from the whole hierarchy.
  std::vector<FuncSymbol> func_symbols() const {
    std::vector<FuncSymbol> out;
    std::set<std::string> seen;
    for (const auto& n : nodes_)
      for (const auto& f : n.model->func_symbols())
        if (seen.insert(f.name).second) out.push_back(f);
    return out;
  }

 private:
  static std::string key(int node, const VarRef& v) {
    return std::to_string(node) + "/" + v.name;
  }

  int add_node(const Model& m, const std::string& prefix, bool micro,
               int parent, int depth) {
    int idx = static_cast<int>(nodes_.size());
    std::string path = prefix.empty() ? m.name() : prefix + "." + m.name();
    nodes_.push_back(Node{path, &m, micro, parent, depth});

    // Inputs resolve upward by name; the root owns all input slots.
    for (const auto& w : m.inputs()) {
      if (parent < 0) {
        int s = static_cast<int>(slots_.size());
        slots_.push_back(Slot{path + "." + w.name, w, VarKind::kInput,
                              std::nullopt, idx});
        resolve_[key(idx, w)] = s;
      } else {
        // Find the same-named input in the parent chain.
        resolve_[key(idx, w)] = resolve_.at(key(parent, VarRef{
            w.name, w.sort, VarKind::kInput}));
      }
    }

    // State: shared vars alias the parent slot, others get fresh slots.
    const ChildEntry* entry = nullptr;
    if (parent >= 0) {
      for (const auto& e : nodes_[parent].model->children())
        if (e.child.get() == &m) entry = &e;
    }
    for (const auto& v : m.state_vars()) {
      std::optional<VarRef> pv =
          entry ? entry->parent_of(v) : std::nullopt;
      if (pv) {
        resolve_[key(idx, v)] = resolve_.at(key(parent, *pv));
      } else {
        int s = static_cast<int>(slots_.size());
        slots_.push_back(Slot{path + "." + v.name, v, v.kind, m.init_of(v),
                              idx});
        resolve_[key(idx, v)] = s;
        ++num_state_slots_;
      }
    }

    for (const auto& e : m.children())
      add_node(*e.child, path, e.is_micro, idx, depth + 1);
    return idx;
  }

  ModelPtr root_;
  std::vector<Node> nodes_;
  std::vector<Slot> slots_;
  std::vector<int> priority_;
  std::map<std::string, int> resolve_;
  int num_state_slots_ = 0;
};

}  // namespace ila

#endif  // ILA_MODEL_HPP_
