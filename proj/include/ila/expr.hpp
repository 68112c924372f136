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

#ifndef ILA_EXPR_HPP_
#define ILA_EXPR_HPP_

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ila/sort.hpp"
#include "ila/value.hpp"

namespace ila {

enum class VarKind : uint8_t { kState, kInput, kOpcode };

// A variable reference: identity is (name, sort, kind).
struct VarRef {
  std::string name;
  Sort sort;
  VarKind kind = VarKind::kState;

  bool operator==(const VarRef& o) const {
    return name == o.name && sort == o.sort && kind == o.kind;
  }
  bool operator!=(const VarRef& o) const { return !(*this == o); }
  bool operator<(const VarRef& o) const {
    if (name != o.name) return name < o.name;
    if (kind != o.kind) return kind < o.kind;
    return sort < o.sort;
  }
};

// An uninterpreted function symbol with a fixed signature.
struct FuncSymbol {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result_sort;

  bool operator==(const FuncSymbol& o) const {
    return name == o.name && arg_sorts == o.arg_sorts &&
           result_sort == o.result_sort;
  }
  bool operator<(const FuncSymbol& o) const {
    if (name != o.name) return name < o.name;
    if (result_sort != o.result_sort) return result_sort < o.result_sort;
    return arg_sorts < o.arg_sorts;
  }
};

enum class Op : uint8_t {
  kVar,
  kBoolConst,
  kBvConst,
  kNot,
  kAnd,
  kOr,
  kXor,
  kImplies,
  kIte,
  kBvNot,
  kBvAnd,
  kBvOr,
  kBvXor,
  kBvAdd,
  kBvSub,
  kBvMul,
  kBvUdiv,
  kBvUrem,
  kShl,
  kLshr,
  kAshr,
  kConcat,
  kExtract,
  kZeroExtend,
  kSignExtend,
  kEq,
  kUlt,
  kUle,
  kSlt,
  kSle,
  kSelect,
  kStore,
  kApply,
};

inline const char* op_name(Op op) {
  switch (op) {
    case Op::kVar: return "var";
    case Op::kBoolConst: return "boolconst";
    case Op::kBvConst: return "bv";
    case Op::kNot: return "not";
    case Op::kAnd: return "and";
    case Op::kOr: return "or";
    case Op::kXor: return "xor";
    case Op::kImplies: return "implies";
    case Op::kIte: return "ite";
    case Op::kBvNot: return "bvnot";
    case Op::kBvAnd: return "bvand";
    case Op::kBvOr: return "bvor";
    case Op::kBvXor: return "bvxor";
    case Op::kBvAdd: return "bvadd";
    case Op::kBvSub: return "bvsub";
    case Op::kBvMul: return "bvmul";
    case Op::kBvUdiv: return "bvudiv";
    case Op::kBvUrem: return "bvurem";
    case Op::kShl: return "shl";
    case Op::kLshr: return "lshr";
    case Op::kAshr: return "ashr";
    case Op::kConcat: return "concat";
    case Op::kExtract: return "extract";
    case Op::kZeroExtend: return "zero_extend";
    case Op::kSignExtend: return "sign_extend";
    case Op::kEq: return "eq";
    case Op::kUlt: return "ult";
    case Op::kUle: return "ule";
    case Op::kSlt: return "slt";
    case Op::kSle: return "sle";
    case Op::kSelect: return "select";
    case Op::kStore: return "store";
    case Op::kApply: return "apply";
  }
  return "?";
}

class Expr;
class TermContext;

// One interned node. Nodes are immutable and owned by their TermContext;
// children are always nodes of the same context, so pointer equality decides
// structural equality.
class ExprNode {
 public:
  Op op() const { return op_; }
  const Sort& sort() const { return sort_; }
  const std::vector<Expr>& args() const;
  const VarRef& var() const { return var_; }
  const FuncSymbol& func() const { return func_; }
  const BvValue& bv_value() const { return cval_; }
  bool bool_value() const { return cval_ != 0; }
  unsigned param0() const { return p0_; }  // extract hi / extend n
  unsigned param1() const { return p1_; }  // extract lo
  uint64_t id() const { return id_; }

 private:
  friend class TermContext;
  ExprNode() = default;

  Op op_ = Op::kBoolConst;
  Sort sort_;
  BvValue cval_;
  VarRef var_;
  FuncSymbol func_;
  unsigned p0_ = 0;
  unsigned p1_ = 0;
  std::vector<Expr> args_;
  uint64_t id_ = 0;
};

// Lightweight handle to an interned node. Equality is O(1) node identity.
class Expr {
 public:
  Expr() : node_(nullptr) {}
  explicit Expr(const ExprNode* node) : node_(node) {}

  bool valid() const { return node_ != nullptr; }
  const ExprNode* node() const { return node_; }

  Op op() const { return node_->op(); }
  const Sort& sort() const { return node_->sort(); }
  const std::vector<Expr>& args() const { return node_->args(); }
  Expr arg(size_t i) const { return node_->args()[i]; }
  size_t num_args() const { return node_->args().size(); }

  bool is_var() const { return node_->op() == Op::kVar; }
  bool is_const() const {
    return node_->op() == Op::kBoolConst || node_->op() == Op::kBvConst;
  }
  const VarRef& var() const { return node_->var(); }
  const FuncSymbol& func() const { return node_->func(); }
  const BvValue& bv_value() const { return node_->bv_value(); }
  bool bool_value() const { return node_->bool_value(); }
  unsigned param0() const { return node_->param0(); }
  unsigned param1() const { return node_->param1(); }
  uint64_t id() const { return node_->id(); }

  bool operator==(const Expr& o) const { return node_ == o.node_; }
  bool operator!=(const Expr& o) const { return node_ != o.node_; }
  bool operator<(const Expr& o) const {
    return (node_ ? node_->id() : 0) < (o.node_ ? o.node_->id() : 0);
  }

 private:
  const ExprNode* node_;
};

inline const std::vector<Expr>& ExprNode::args() const { return args_; }

// Term interner and factory. All construction is sort-checked; terms are
// immutable and shared. A context may be used from several threads; the
// intern table is guarded by a mutex.
class TermContext {
 public:
  TermContext() = default;
  TermContext(const TermContext&) = delete;
  TermContext& operator=(const TermContext&) = delete;

  Expr bool_const(bool v) {
    ExprNode n;
    n.op_ = Op::kBoolConst;
    n.sort_ = Sort::boolean();
    n.cval_ = v ? 1 : 0;
    return intern(std::move(n));
  }

  Expr bv_const(unsigned width, const BvValue& v) {
    if (!bv_fits(v, width))
      throw ValueOutOfRange("constant " + v.str() + " does not fit " +
                            std::to_string(width) + " bits");
    ExprNode n;
    n.op_ = Op::kBvConst;
    n.sort_ = Sort::bitvec(width);
    n.cval_ = v;
    return intern(std::move(n));
  }

  /// Constant of the given sort. Array constants are rejected: arrays
  /// originate as variables and evolve through store.
  Expr mk_const(const Sort& sort, const BvValue& v) {
    if (sort.is_bool()) {
      if (v != 0 && v != 1)
        throw ValueOutOfRange("boolean constant must be 0 or 1");
      return bool_const(v != 0);
    }
    if (sort.is_bv()) return bv_const(sort.width(), v);
    throw SortError("no array constants; build arrays from variables");
  }

  Expr var(const VarRef& ref) {
    ExprNode n;
    n.op_ = Op::kVar;
    n.sort_ = ref.sort;
    n.var_ = ref;
    return intern(std::move(n));
  }

  Expr var(const std::string& name, const Sort& sort,
           VarKind kind = VarKind::kState) {
    return var(VarRef{name, sort, kind});
  }

  Expr apply(const FuncSymbol& f, const std::vector<Expr>& args) {
    if (args.size() != f.arg_sorts.size())
      throw SortError("apply " + f.name + ": expected " +
                      std::to_string(f.arg_sorts.size()) + " arguments, got " +
                      std::to_string(args.size()));
    for (size_t i = 0; i < args.size(); ++i)
      if (args[i].sort() != f.arg_sorts[i])
        throw SortError("apply " + f.name + ": argument " + std::to_string(i) +
                        " has sort " + args[i].sort().str() + ", expected " +
                        f.arg_sorts[i].str());
    ExprNode n;
    n.op_ = Op::kApply;
    n.sort_ = f.result_sort;
    n.func_ = f;
    n.args_ = args;
    return intern(std::move(n));
  }

  Expr extract(unsigned hi, unsigned lo, Expr e) {
    require_bv(Op::kExtract, e, 0);
    if (!(e.sort().width() > hi && hi >= lo))
      throw SortError("extract [" + std::to_string(hi) + ":" +
                      std::to_string(lo) + "] out of range for " +
                      e.sort().str());
    ExprNode n;
    n.op_ = Op::kExtract;
    n.sort_ = Sort::bitvec(hi - lo + 1);
    n.p0_ = hi;
    n.p1_ = lo;
    n.args_ = {e};
    return intern(std::move(n));
  }

  Expr zero_extend(unsigned by, Expr e) { return extend(Op::kZeroExtend, by, e); }
  Expr sign_extend(unsigned by, Expr e) { return extend(Op::kSignExtend, by, e); }

  /// Generic checked constructor for all fixed-signature operators.
  Expr app(Op op, const std::vector<Expr>& args) {
    switch (op) {
      case Op::kNot:
        require_arity(op, args, 1);
        require_bool(op, args[0], 0);
        return node(op, Sort::boolean(), args);
      case Op::kAnd:
      case Op::kOr:
        if (args.size() < 2)
          throw SortError(std::string(op_name(op)) +
                          " takes at least two arguments");
        for (size_t i = 0; i < args.size(); ++i)
          require_bool(op, args[i], i);
        return node(op, Sort::boolean(), args);
      case Op::kXor:
      case Op::kImplies:
        require_arity(op, args, 2);
        require_bool(op, args[0], 0);
        require_bool(op, args[1], 1);
        return node(op, Sort::boolean(), args);
      case Op::kIte:
        require_arity(op, args, 3);
        require_bool(op, args[0], 0);
        require_same(op, args[1], args[2], 2);
        return node(op, args[1].sort(), args);
      case Op::kBvNot:
        require_arity(op, args, 1);
        require_bv(op, args[0], 0);
        return node(op, args[0].sort(), args);
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
        require_arity(op, args, 2);
        require_bv(op, args[0], 0);
        require_bv(op, args[1], 1);
        require_same(op, args[0], args[1], 1);
        return node(op, args[0].sort(), args);
      case Op::kConcat: {
        require_arity(op, args, 2);
        require_bv(op, args[0], 0);
        require_bv(op, args[1], 1);
        unsigned w = args[0].sort().width() + args[1].sort().width();
        return node(op, Sort::bitvec(w), args);
      }
      case Op::kEq:
        require_arity(op, args, 2);
        require_same(op, args[0], args[1], 1);
        return node(op, Sort::boolean(), args);
      case Op::kUlt:
      case Op::kUle:
      case Op::kSlt:
      case Op::kSle:
        require_arity(op, args, 2);
        require_bv(op, args[0], 0);
        require_bv(op, args[1], 1);
        require_same(op, args[0], args[1], 1);
        return node(op, Sort::boolean(), args);
      case Op::kSelect: {
        require_arity(op, args, 2);
        require_array(op, args[0], 0);
        require_bv(op, args[1], 1);
        if (args[1].sort().width() != args[0].sort().addr_width())
          throw SortError("select: address sort " + args[1].sort().str() +
                          " does not match " + args[0].sort().str());
        return node(op, Sort::bitvec(args[0].sort().data_width()), args);
      }
      case Op::kStore: {
        require_arity(op, args, 3);
        require_array(op, args[0], 0);
        require_bv(op, args[1], 1);
        require_bv(op, args[2], 2);
        if (args[1].sort().width() != args[0].sort().addr_width())
          throw SortError("store: address sort " + args[1].sort().str() +
                          " does not match " + args[0].sort().str());
        if (args[2].sort().width() != args[0].sort().data_width())
          throw SortError("store: data sort " + args[2].sort().str() +
                          " does not match " + args[0].sort().str());
        return node(op, args[0].sort(), args);
      }
      case Op::kExtract:
      case Op::kZeroExtend:
      case Op::kSignExtend:
        throw SortError(std::string(op_name(op)) +
                        " requires its dedicated constructor");
      case Op::kVar:
      case Op::kBoolConst:
      case Op::kBvConst:
      case Op::kApply:
        throw SortError("app() cannot build leaf or apply nodes");
    }
    throw SortError("unknown operator");
  }

  // Convenience wrappers.
  Expr lnot(Expr a) { return app(Op::kNot, {a}); }
  Expr land(Expr a, Expr b) { return app(Op::kAnd, {a, b}); }
  Expr lor(Expr a, Expr b) { return app(Op::kOr, {a, b}); }
  Expr lxor(Expr a, Expr b) { return app(Op::kXor, {a, b}); }
  Expr implies(Expr a, Expr b) { return app(Op::kImplies, {a, b}); }
  Expr ite(Expr c, Expr t, Expr e) { return app(Op::kIte, {c, t, e}); }
  Expr eq(Expr a, Expr b) { return app(Op::kEq, {a, b}); }
  Expr ne(Expr a, Expr b) { return lnot(eq(a, b)); }
  Expr ult(Expr a, Expr b) { return app(Op::kUlt, {a, b}); }
  Expr ule(Expr a, Expr b) { return app(Op::kUle, {a, b}); }
  Expr bvadd(Expr a, Expr b) { return app(Op::kBvAdd, {a, b}); }
  Expr bvsub(Expr a, Expr b) { return app(Op::kBvSub, {a, b}); }
  Expr bvxor(Expr a, Expr b) { return app(Op::kBvXor, {a, b}); }
  Expr concat(Expr a, Expr b) { return app(Op::kConcat, {a, b}); }
  Expr select(Expr a, Expr i) { return app(Op::kSelect, {a, i}); }
  Expr store(Expr a, Expr i, Expr v) { return app(Op::kStore, {a, i, v}); }

  /// Conjunction of zero or more booleans (true when empty).
  Expr and_all(const std::vector<Expr>& xs) {
    if (xs.empty()) return bool_const(true);
    if (xs.size() == 1) return xs[0];
    return app(Op::kAnd, xs);
  }
  /// Disjunction of zero or more booleans (false when empty).
  Expr or_all(const std::vector<Expr>& xs) {
    if (xs.empty()) return bool_const(false);
    if (xs.size() == 1) return xs[0];
    return app(Op::kOr, xs);
  }

  size_t num_interned() const {
    std::lock_guard<std::mutex> lock(mu_);
    return arena_.size();
  }

 private:
  Expr extend(Op op, unsigned by, Expr e) {
    require_bv(op, e, 0);
    ExprNode n;
    n.op_ = op;
    n.sort_ = Sort::bitvec(e.sort().width() + by);
    n.p0_ = by;
    n.args_ = {e};
    return intern(std::move(n));
  }

  Expr node(Op op, const Sort& sort, const std::vector<Expr>& args) {
    ExprNode n;
    n.op_ = op;
    n.sort_ = sort;
    n.args_ = args;
    return intern(std::move(n));
  }

  static void require_arity(Op op, const std::vector<Expr>& args, size_t n) {
    if (args.size() != n)
      throw SortError(std::string(op_name(op)) + ": expected " +
                      std::to_string(n) + " arguments, got " +
                      std::to_string(args.size()));
  }
  static void require_bool(Op op, Expr e, size_t idx) {
    if (!e.sort().is_bool())
      throw SortError(std::string(op_name(op)) + ": argument " +
                      std::to_string(idx) + " has sort " + e.sort().str() +
                      ", expected bool");
  }
  static void require_bv(Op op, Expr e, size_t idx) {
    if (!e.sort().is_bv())
      throw SortError(std::string(op_name(op)) + ": argument " +
                      std::to_string(idx) + " has sort " + e.sort().str() +
                      ", expected a bitvector");
  }
  static void require_array(Op op, Expr e, size_t idx) {
    if (!e.sort().is_array())
      throw SortError(std::string(op_name(op)) + ": argument " +
                      std::to_string(idx) + " has sort " + e.sort().str() +
                      ", expected an array");
  }
  static void require_same(Op op, Expr a, Expr b, size_t idx) {
    if (a.sort() != b.sort())
      throw SortError(std::string(op_name(op)) + ": argument " +
                      std::to_string(idx) + " has sort " + b.sort().str() +
                      ", expected " + a.sort().str());
  }

  struct NodeHash {
    size_t operator()(const ExprNode* n) const {
      size_t h = std::hash<int>()(static_cast<int>(n->op()));
      auto mix = [&h](size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      };
      mix(n->sort().hash());
      mix(static_cast<size_t>(n->param0()) * 31 + n->param1());
      if (n->op() == Op::kVar) {
        mix(std::hash<std::string>()(n->var().name));
        mix(static_cast<size_t>(n->var().kind));
      } else if (n->op() == Op::kApply) {
        mix(std::hash<std::string>()(n->func().name));
      } else if (n->op() == Op::kBvConst || n->op() == Op::kBoolConst) {
        mix(boost::multiprecision::hash_value(n->bv_value()));
      }
      for (const Expr& a : n->args())
        mix(std::hash<const void*>()(a.node()));
      return h;
    }
  };
  struct NodeEq {
    bool operator()(const ExprNode* a, const ExprNode* b) const {
      if (a->op() != b->op() || a->sort() != b->sort()) return false;
      if (a->param0() != b->param0() || a->param1() != b->param1())
        return false;
      if (a->op() == Op::kVar && a->var() != b->var()) return false;
      if (a->op() == Op::kApply && !(a->func() == b->func())) return false;
      if ((a->op() == Op::kBvConst || a->op() == Op::kBoolConst) &&
          a->bv_value() != b->bv_value())
        return false;
      if (a->args().size() != b->args().size()) return false;
      for (size_t i = 0; i < a->args().size(); ++i)
        if (a->args()[i].node() != b->args()[i].node()) return false;
      return true;
    }
  };

  Expr intern(ExprNode&& n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find(&n);
    if (it != table_.end()) return Expr(*it);
    auto owned = std::make_unique<ExprNode>(std::move(n));
    owned->id_ = next_id_++;
    const ExprNode* p = owned.get();
    arena_.push_back(std::move(owned));
    table_.insert(p);
    return Expr(p);
  }

  mutable std::mutex mu_;
  std::deque<std::unique_ptr<ExprNode>> arena_;
  std::unordered_set<const ExprNode*, NodeHash, NodeEq> table_;
  uint64_t next_id_ = 1;
};

/// Deep structural equality; works across contexts.
inline bool structurally_equal(Expr a, Expr b) {
  if (a.node() == b.node()) return true;
  if (!a.valid() || !b.valid()) return false;
  if (a.op() != b.op() || a.sort() != b.sort()) return false;
  if (a.param0() != b.param0() || a.param1() != b.param1()) return false;
  switch (a.op()) {
    case Op::kVar:
      if (a.var() != b.var()) return false;
      break;
    case Op::kApply:
      if (!(a.func() == b.func())) return false;
      break;
    case Op::kBoolConst:
    case Op::kBvConst:
      if (a.bv_value() != b.bv_value()) return false;
      break;
    default:
      break;
  }
  if (a.num_args() != b.num_args()) return false;
  for (size_t i = 0; i < a.num_args(); ++i)
    if (!structurally_equal(a.arg(i), b.arg(i))) return false;
  return true;
}

/// All variables occurring in e.
inline void collect_free_vars(Expr e, std::set<VarRef>& out) {
  if (e.is_var()) {
    out.insert(e.var());
    return;
  }
  for (const Expr& a : e.args()) collect_free_vars(a, out);
}

inline std::set<VarRef> free_vars(Expr e) {
  std::set<VarRef> out;
  collect_free_vars(e, out);
  return out;
}

/// All uninterpreted function symbols occurring in e.
inline void collect_func_symbols(Expr e, std::set<FuncSymbol>& out) {
  if (e.op() == Op::kApply) out.insert(e.func());
  for (const Expr& a : e.args()) collect_func_symbols(a, out);
}

namespace detail {

// Rebuilds e inside ctx, mapping leaves through the two callbacks. Non-leaf
// structure is preserved. Serves substitution, renaming, and cross-context
// import; memoized on node identity.
class Rebuilder {
 public:
  using VarFn = std::function<Expr(const VarRef&)>;  // invalid Expr = keep
  using FuncFn = std::function<FuncSymbol(const FuncSymbol&)>;

  Rebuilder(TermContext& ctx, VarFn var_fn, FuncFn func_fn = nullptr)
      : ctx_(ctx), var_fn_(var_fn), func_fn_(func_fn) {}

  Expr run(Expr e) {
    auto it = memo_.find(e.node());
    if (it != memo_.end()) return it->second;
    Expr result;
    switch (e.op()) {
      case Op::kVar: {
        Expr mapped = var_fn_ ? var_fn_(e.var()) : Expr();
        if (mapped.valid()) {
          if (mapped.sort() != e.sort())
            throw SortError("substitution for " + e.var().name +
                            " has sort " + mapped.sort().str() +
                            ", expected " + e.sort().str());
          result = mapped;
        } else {
          result = ctx_.var(e.var());
        }
        break;
      }
      case Op::kBoolConst:
        result = ctx_.bool_const(e.bool_value());
        break;
      case Op::kBvConst:
        result = ctx_.bv_const(e.sort().width(), e.bv_value());
        break;
      case Op::kExtract: {
        Expr a = run(e.arg(0));
        result = ctx_.extract(e.param0(), e.param1(), a);
        break;
      }
      case Op::kZeroExtend: {
        Expr a = run(e.arg(0));
        result = ctx_.zero_extend(e.param0(), a);
        break;
      }
      case Op::kSignExtend: {
        Expr a = run(e.arg(0));
        result = ctx_.sign_extend(e.param0(), a);
        break;
      }
      case Op::kApply: {
        std::vector<Expr> args;
        args.reserve(e.num_args());
        for (const Expr& a : e.args()) args.push_back(run(a));
        result = ctx_.apply(func_fn_ ? func_fn_(e.func()) : e.func(), args);
        break;
      }
      default: {
        std::vector<Expr> args;
        args.reserve(e.num_args());
        for (const Expr& a : e.args()) args.push_back(run(a));
        result = ctx_.app(e.op(), args);
        break;
      }
    }
    memo_.emplace(e.node(), result);
    return result;
  }

 private:
  TermContext& ctx_;
  VarFn var_fn_;
  FuncFn func_fn_;
  std::unordered_map<const ExprNode*, Expr> memo_;
};

}  // namespace detail

/// Simultaneous substitution of variables; unbound variables are unchanged.
inline Expr substitute(TermContext& ctx, Expr e,
                       const std::map<VarRef, Expr>& bindings) {
  detail::Rebuilder rb(ctx, [&bindings](const VarRef& v) -> Expr {
    auto it = bindings.find(v);
    return it == bindings.end() ? Expr() : it->second;
  });
  return rb.run(e);
}

/// Rebuilds e in ctx with every variable passed through rename.
inline Expr rename_vars(TermContext& ctx, Expr e,
                        const std::function<VarRef(const VarRef&)>& rename) {
  detail::Rebuilder rb(ctx, [&ctx, &rename](const VarRef& v) -> Expr {
    return ctx.var(rename(v));
  });
  return rb.run(e);
}

/// Rebuilds e in ctx renaming both variables and function symbols.
inline Expr rename_symbols(
    TermContext& ctx, Expr e,
    const std::function<VarRef(const VarRef&)>& var_rename,
    const std::function<FuncSymbol(const FuncSymbol&)>& func_rename) {
  detail::Rebuilder rb(
      ctx,
      [&ctx, &var_rename](const VarRef& v) -> Expr {
        return ctx.var(var_rename(v));
      },
      func_rename);
  return rb.run(e);
}

/// Imports a term from another context unchanged.
inline Expr import_expr(TermContext& ctx, Expr e) {
  return substitute(ctx, e, {});
}

/// Debug rendering as an s-expression (the io module owns the file formats).
inline std::string expr_str(Expr e) {
  if (!e.valid()) return "<invalid>";
  switch (e.op()) {
    case Op::kVar:
      return e.var().name;
    case Op::kBoolConst:
      return e.bool_value() ? "true" : "false";
    case Op::kBvConst:
      return "(bv " + std::to_string(e.sort().width()) + " " +
             e.bv_value().str() + ")";
    case Op::kExtract:
      return "(extract " + std::to_string(e.param0()) + " " +
             std::to_string(e.param1()) + " " + expr_str(e.arg(0)) + ")";
    case Op::kZeroExtend:
    case Op::kSignExtend:
      return "(" + std::string(op_name(e.op())) + " " +
             std::to_string(e.param0()) + " " + expr_str(e.arg(0)) + ")";
    case Op::kApply: {
      std::string s = "(apply " + e.func().name;
      for (const Expr& a : e.args()) s += " " + expr_str(a);
      return s + ")";
    }
    default: {
      std::string s = "(" + std::string(op_name(e.op()));
      for (const Expr& a : e.args()) s += " " + expr_str(a);
      return s + ")";
    }
  }
}

}  // namespace ila

namespace std {
template <>
struct hash<ila::VarRef> {
  size_t operator()(const ila::VarRef& v) const {
    return hash<string>()(v.name) ^ (v.sort.hash() << 1) ^
           static_cast<size_t>(v.kind);
  }
};
}  // namespace std

#endif  // ILA_EXPR_HPP_
