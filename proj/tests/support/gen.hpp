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

// Seeded random generators for terms and models, shared by the property
// tests and the acceptance suite.

#ifndef ILA_TESTS_SUPPORT_GEN_HPP_
#define ILA_TESTS_SUPPORT_GEN_HPP_

#include <random>
#include <string>
#include <vector>

#include "ila/interp.hpp"
#include "ila/model.hpp"

namespace ila::testgen {

class ExprGen {
 public:
  ExprGen(TermContext& ctx, uint64_t seed) : ctx_(ctx), rng_(seed) {}

  void add_var(Expr v) {
    if (v.sort().is_bool())
      bool_vars_.push_back(v);
    else if (v.sort().is_bv())
      bv_vars_.push_back(v);
    else
      array_vars_.push_back(v);
  }

  uint64_t roll(uint64_t n) { return rng_() % n; }

  BvValue random_bv_value(unsigned width) {
    BvValue v = 0;
    for (unsigned i = 0; i < width; i += 32)
      v = (v << 32) | (rng_() & 0xffffffffu);
    return bv_trunc(v, width);
  }

  Expr gen_bool(int depth) {
    if (depth <= 0 || roll(5) == 0) {
      if (!bool_vars_.empty() && roll(2) == 0)
        return bool_vars_[roll(bool_vars_.size())];
      return ctx_.bool_const(roll(2) == 0);
    }
    switch (roll(7)) {
      case 0:
        return ctx_.lnot(gen_bool(depth - 1));
      case 1:
        return ctx_.land(gen_bool(depth - 1), gen_bool(depth - 1));
      case 2:
        return ctx_.lor(gen_bool(depth - 1), gen_bool(depth - 1));
      case 3:
        return ctx_.lxor(gen_bool(depth - 1), gen_bool(depth - 1));
      case 4:
        return ctx_.implies(gen_bool(depth - 1), gen_bool(depth - 1));
      case 5: {
        unsigned w = 1 + static_cast<unsigned>(roll(8));
        Op cmp[] = {Op::kEq, Op::kUlt, Op::kUle, Op::kSlt, Op::kSle};
        return ctx_.app(cmp[roll(5)],
                        {gen_bv(w, depth - 1), gen_bv(w, depth - 1)});
      }
      default:
        return ctx_.ite(gen_bool(depth - 1), gen_bool(depth - 1),
                        gen_bool(depth - 1));
    }
  }

  Expr gen_bv(unsigned width, int depth) {
    if (depth <= 0 || roll(5) == 0) {
      for (size_t tries = 0; tries < bv_vars_.size(); ++tries) {
        Expr v = bv_vars_[roll(bv_vars_.size())];
        if (v.sort().width() == width && roll(3) != 0) return v;
      }
      return ctx_.bv_const(width, random_bv_value(width));
    }
    switch (roll(10)) {
      case 0:
        return ctx_.app(Op::kBvNot, {gen_bv(width, depth - 1)});
      case 1:
      case 2: {
        Op bin[] = {Op::kBvAnd, Op::kBvOr,  Op::kBvXor,  Op::kBvAdd,
                    Op::kBvSub, Op::kBvMul, Op::kBvUdiv, Op::kBvUrem,
                    Op::kShl,   Op::kLshr,  Op::kAshr};
        return ctx_.app(bin[roll(11)],
                        {gen_bv(width, depth - 1), gen_bv(width, depth - 1)});
      }
      case 3: {
        if (width < 2) return gen_bv(width, depth - 1);
        unsigned wa = 1 + static_cast<unsigned>(roll(width - 1));
        return ctx_.concat(gen_bv(wa, depth - 1),
                           gen_bv(width - wa, depth - 1));
      }
      case 4: {
        unsigned wider = width + static_cast<unsigned>(roll(4));
        unsigned lo = static_cast<unsigned>(roll(wider - width + 1));
        return ctx_.extract(lo + width - 1, lo, gen_bv(wider, depth - 1));
      }
      case 5: {
        if (width < 2) return gen_bv(width, depth - 1);
        unsigned by = 1 + static_cast<unsigned>(roll(width - 1));
        Expr inner = gen_bv(width - by, depth - 1);
        return roll(2) == 0 ? ctx_.zero_extend(by, inner)
                            : ctx_.sign_extend(by, inner);
      }
      case 6:
        return ctx_.ite(gen_bool(depth - 1), gen_bv(width, depth - 1),
                        gen_bv(width, depth - 1));
      case 7: {
        for (const Expr& a : array_vars_) {
          if (a.sort().data_width() == width && roll(2) == 0) {
            Expr addr = gen_bv(a.sort().addr_width(), depth - 1);
            return ctx_.select(maybe_store(a, depth - 1), addr);
          }
        }
        return gen_bv(width, depth - 1);
      }
      default: {
        Op bin[] = {Op::kBvAdd, Op::kBvXor, Op::kBvAnd, Op::kBvOr};
        return ctx_.app(bin[roll(4)],
                        {gen_bv(width, depth - 1), gen_bv(width, depth - 1)});
      }
    }
  }

  Expr maybe_store(Expr arr, int depth) {
    if (depth <= 0 || roll(3) != 0) return arr;
    Expr addr = gen_bv(arr.sort().addr_width(), depth - 1);
    Expr val = gen_bv(arr.sort().data_width(), depth - 1);
    return maybe_store(ctx_.store(arr, addr, val), depth - 1);
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  TermContext& ctx_;
  std::mt19937_64 rng_;
  std::vector<Expr> bool_vars_;
  std::vector<Expr> bv_vars_;
  std::vector<Expr> array_vars_;
};

// Random well-formed models for the lowering-soundness and format suites.
// Decodes are one-hot over the opcode by construction and the valid function
// is derived from them, so execution never trips the dynamic one-hot check.
struct RandomModelOptions {
  int max_instructions = 3;
  int max_children = 1;
  int max_state_vars = 3;
  int max_state_bits = 20;
  int expr_depth = 3;
};

class ModelGen {
 public:
  ModelGen(std::shared_ptr<TermContext> ctx, uint64_t seed)
      : ctx_(std::move(ctx)), rng_(seed), seed_(seed) {}

  ModelPtr gen(const RandomModelOptions& opt = RandomModelOptions()) {
    int budget = opt.max_state_bits;
    return gen_node("m" + std::to_string(counter_++), opt, budget,
                    opt.max_children, nullptr);
  }

 private:
  uint64_t roll(uint64_t n) { return rng_() % n; }

  ModelPtr gen_node(const std::string& name, const RandomModelOptions& opt,
                    int& bit_budget, int children_left,
                    ModelBuilder* parent) {
    ModelBuilder b(ctx_, name);
    ExprGen eg(*ctx_, rng_());

    std::vector<Expr> states;
    std::vector<Value> inits;
    int nvars = 1 + static_cast<int>(roll(opt.max_state_vars));
    for (int i = 0; i < nvars && bit_budget > 0; ++i) {
      unsigned w = 1 + static_cast<unsigned>(
                           roll(std::min(bit_budget, 4)));
      bit_budget -= static_cast<int>(w);
      Expr v = b.add_state("s" + std::to_string(i), Sort::bitvec(w));
      Value iv = random_init(w);
      b.set_init(v.var(), iv);
      states.push_back(v);
      inits.push_back(iv);
      eg.add_var(v);
    }
    Expr in;
    if (bit_budget >= 2 && parent == nullptr) {
      unsigned w = 2;
      bit_budget -= 2;
      in = b.add_input("w0", Sort::bitvec(w));
      eg.add_var(in);
    }

    // Fetch selects among instructions; decodes partition its range.
    unsigned fw = 2;
    Expr fetch = eg.gen_bv(fw, opt.expr_depth);
    Expr opcode = b.set_fetch(fetch);

    int ninstr = 1 + static_cast<int>(roll(opt.max_instructions));
    if (ninstr > (1 << fw)) ninstr = 1 << fw;
    std::vector<Expr> decodes;
    for (int i = 0; i < ninstr; ++i) {
      Expr dec = ctx_->eq(opcode, ctx_->bv_const(fw, i));
      decodes.push_back(dec);
      std::map<VarRef, Expr> next;
      for (const Expr& s : states)
        if (roll(2) == 0)
          next[s.var()] = eg.gen_bv(s.sort().width(), opt.expr_depth);
      b.add_instruction("i" + std::to_string(i), dec, std::move(next));
    }

    // valid <=> some decode fires, with the fetch inlined.
    std::vector<Expr> fired;
    for (int i = 0; i < ninstr; ++i)
      fired.push_back(ctx_->eq(fetch, ctx_->bv_const(fw, i)));
    Expr valid = ctx_->or_all(fired);
    // Option: gate a child on the first state variable being nonzero.
    if (children_left > 0 && bit_budget >= 2 && !states.empty() &&
        roll(2) == 0) {
      ModelPtr child =
          gen_child(name + "c", opt, bit_budget, states[0], inits[0]);
      // Share the gate variable so the child can retire itself.
      b.add_child(child, true,
                  {{states[0].var(), child->state_vars()[0]}});
    }
    b.set_valid(valid);
    return b.build();
  }

  // A child gated on the shared variable being nonzero; each step decrements
  // the gate, so child programs always terminate.
  ModelPtr gen_child(const std::string& name, const RandomModelOptions& opt,
                     int& bit_budget, Expr gate, const Value& gate_init) {
    ModelBuilder b(ctx_, name);
    ExprGen eg(*ctx_, rng_());
    unsigned gw = gate.sort().width();
    Expr g = b.add_state(gate.var().name, gate.sort());
    b.set_init(g.var(), gate_init);
    eg.add_var(g);
    Expr extra;
    if (bit_budget >= 2) {
      bit_budget -= 2;
      extra = b.add_state("c0", Sort::bitvec(2));
      b.set_init(extra.var(), BvValue(0));
      eg.add_var(extra);
    }
    b.set_valid(ctx_->ne(g, ctx_->bv_const(gw, 0)));
    Expr opcode = b.set_fetch(g);
    std::map<VarRef, Expr> next;
    next[g.var()] = ctx_->bvsub(g, ctx_->bv_const(gw, 1));
    if (extra.valid())
      next[extra.var()] = eg.gen_bv(2, opt.expr_depth);
    b.add_instruction("tick", ctx_->ne(opcode, ctx_->bv_const(gw, 0)),
                      std::move(next));
    return b.build();
  }

  Value random_init(unsigned w) {
    BvValue v = 0;
    for (unsigned i = 0; i < w; i += 32) v = (v << 32) | (rng_() & 0xffffffffu);
    return bv_trunc(v, w);
  }

  std::shared_ptr<TermContext> ctx_;
  std::mt19937_64 rng_;
  uint64_t seed_;
  int counter_ = 0;
};

/// Random input valuations for a model's declared inputs.
inline Valuation random_inputs(const Model& m, std::mt19937_64& rng) {
  Valuation v;
  for (const auto& w : m.inputs()) {
    if (w.sort.is_bool()) {
      v[w] = (rng() & 1) != 0;
    } else {
      BvValue x = 0;
      for (unsigned i = 0; i < w.sort.width(); i += 32)
        x = (x << 32) | (rng() & 0xffffffffu);
      v[w] = bv_trunc(x, w.sort.width());
    }
  }
  return v;
}

}  // namespace ila::testgen

#endif  // ILA_TESTS_SUPPORT_GEN_HPP_
