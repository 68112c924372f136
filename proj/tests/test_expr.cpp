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

#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "ila/expr.hpp"
#include "ila/interp.hpp"
#include "support/gen.hpp"
#include "support/ref_eval.hpp"

using namespace ila;

TEST_CASE("constants are checked against their sort") {
  TermContext ctx;
  Expr bound = ctx.mk_const(Sort::bitvec(16), 0xFF00);
  CHECK(bound.sort() == Sort::bitvec(16));
  CHECK(bound.bv_value() == 0xFF00);

  Expr t = ctx.mk_const(Sort::boolean(), 1);
  CHECK(t.bool_value());

  CHECK_THROWS_AS(ctx.mk_const(Sort::bitvec(4), 16), ValueOutOfRange);
  CHECK_THROWS_AS(ctx.mk_const(Sort::array(4, 4), 0), SortError);
  CHECK_THROWS_AS(Sort::bitvec(0), SortError);
  CHECK_THROWS_AS(Sort::array(0, 8), SortError);
}

TEST_CASE("application nodes are sort checked") {
  TermContext ctx;
  Expr in_addr = ctx.var("InAddr", Sort::bitvec(16), VarKind::kInput);
  Expr lo = ctx.ule(ctx.bv_const(16, 0xFF00), in_addr);
  Expr hi = ctx.ule(in_addr, ctx.bv_const(16, 0xFF10));
  Expr valid = ctx.land(lo, hi);
  CHECK(valid.sort().is_bool());

  Expr imem = ctx.var("IMEM", Sort::array(16, 8));
  Expr pc = ctx.var("PC", Sort::bitvec(16));
  Expr fetch = ctx.select(imem, pc);
  CHECK(fetch.sort() == Sort::bitvec(8));

  Expr a8 = ctx.var("a", Sort::bitvec(8));
  Expr b4 = ctx.var("b", Sort::bitvec(4));
  CHECK_THROWS_AS(ctx.bvadd(a8, b4), SortError);
  CHECK_THROWS_AS(ctx.select(imem, ctx.bv_const(8, 1)), SortError);
  CHECK_THROWS_AS(ctx.extract(8, 0, a8), SortError);
  CHECK_THROWS_AS(ctx.extract(3, 5, a8), SortError);
  CHECK_THROWS_AS(ctx.land(a8, b4), SortError);
  CHECK_THROWS_AS(ctx.app(Op::kNot, {a8, a8}), SortError);
}

TEST_CASE("sort_of on composite nodes") {
  TermContext ctx;
  Expr a = ctx.var("a", Sort::bitvec(8));
  Expr b = ctx.var("b", Sort::bitvec(8));
  CHECK(ctx.concat(a, b).sort() == Sort::bitvec(16));
  Expr m = ctx.var("m", Sort::array(16, 8));
  CHECK(ctx.select(m, ctx.concat(a, b)).sort() == Sort::bitvec(8));
  CHECK(ctx.eq(a, b).sort().is_bool());
  CHECK(ctx.extract(6, 2, a).sort() == Sort::bitvec(5));
  CHECK(ctx.zero_extend(3, a).sort() == Sort::bitvec(11));
  CHECK(ctx.store(m, ctx.concat(a, b), a).sort() == Sort::array(16, 8));
}

TEST_CASE("structural equality coincides with interned identity") {
  TermContext ctx;
  testgen::ExprGen gen(ctx, 20260810);
  gen.add_var(ctx.var("x", Sort::bitvec(4)));
  gen.add_var(ctx.var("y", Sort::bitvec(4)));
  gen.add_var(ctx.var("p", Sort::boolean()));
  for (int i = 0; i < 10000; ++i) {
    Expr a = gen.roll(2) == 0 ? gen.gen_bool(3) : gen.gen_bv(4, 3);
    Expr b = gen.roll(2) == 0 ? gen.gen_bool(3) : gen.gen_bv(4, 3);
    bool ident = (a == b);
    bool structural = structurally_equal(a, b);
    REQUIRE(ident == structural);
  }
}

TEST_CASE("interning is stable under concurrent construction") {
  TermContext ctx;
  std::vector<std::thread> threads;
  std::vector<Expr> results(8);
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&ctx, &results, t] {
      Expr acc = ctx.var("x", Sort::bitvec(8));
      for (int i = 0; i < 200; ++i)
        acc = ctx.bvadd(acc, ctx.bv_const(8, i % 256));
      results[t] = acc;
    });
  for (auto& th : threads) th.join();
  for (int t = 1; t < 8; ++t) CHECK(results[t] == results[0]);
}

TEST_CASE("substitution inlines the fetch into a decode") {
  auto ctx = std::make_shared<TermContext>();
  TermContext& c = *ctx;
  Expr in_addr = c.var("InAddr", Sort::bitvec(16), VarKind::kInput);
  Expr in_data = c.var("InData", Sort::bitvec(8), VarKind::kInput);
  Expr fetch = c.concat(in_addr, in_data);
  VarRef opcode{"opcode", Sort::bitvec(24), VarKind::kOpcode};
  Expr dec = c.eq(c.extract(23, 8, c.var(opcode)), c.bv_const(16, 0xFF00));

  Expr inlined = substitute(c, dec, {{opcode, fetch}});
  auto fv = free_vars(inlined);
  CHECK(fv.count(in_addr.var()) == 1);
  CHECK(fv.count(in_data.var()) == 1);
  CHECK(fv.count(opcode) == 0);

  Valuation v;
  v[in_addr.var()] = BvValue(0xFF00);
  v[in_data.var()] = BvValue(0x12);
  CHECK(as_bool(eval(inlined, v)));
}

TEST_CASE("substitution laws") {
  TermContext ctx;
  Expr x = ctx.var("x", Sort::bitvec(8));
  Expr sum = ctx.bvadd(x, x);

  SECTION("empty map is identity") {
    CHECK(substitute(ctx, sum, {}) == sum);
  }
  SECTION("x+x with x bound to 3 evaluates to 6") {
    Expr bound = substitute(ctx, sum, {{x.var(), ctx.bv_const(8, 3)}});
    CHECK(as_bv(eval(bound, {})) == 6);
  }
  SECTION("sort-mismatched binding is rejected") {
    CHECK_THROWS_AS(
        substitute(ctx, sum, {{x.var(), ctx.bv_const(4, 3)}}), SortError);
  }
  SECTION("free variables shrink when binding to a constant") {
    Expr y = ctx.var("y", Sort::bitvec(8));
    Expr e = ctx.bvadd(x, y);
    Expr after = substitute(ctx, e, {{x.var(), ctx.bv_const(8, 1)}});
    auto fv = free_vars(after);
    CHECK(fv.size() == 1);
    CHECK(fv.count(y.var()) == 1);
  }
}

TEST_CASE("substitution composes on random terms") {
  TermContext ctx;
  testgen::ExprGen gen(ctx, 7);
  Expr x = ctx.var("x", Sort::bitvec(4));
  Expr y = ctx.var("y", Sort::bitvec(4));
  Expr z = ctx.var("z", Sort::bitvec(4));
  gen.add_var(x);
  gen.add_var(y);
  gen.add_var(z);
  for (int i = 0; i < 300; ++i) {
    Expr e = gen.gen_bv(4, 4);
    // sigma maps x -> y+1; tau maps z -> 2. Domains and introduced variables
    // are disjoint, so applying them in sequence equals the joint map.
    std::map<VarRef, Expr> sigma{{x.var(), ctx.bvadd(y, ctx.bv_const(4, 1))}};
    std::map<VarRef, Expr> tau{{z.var(), ctx.bv_const(4, 2)}};
    std::map<VarRef, Expr> joint = sigma;
    joint.insert(tau.begin(), tau.end());
    Expr seq = substitute(ctx, substitute(ctx, e, sigma), tau);
    // sigma's replacement mentions y, untouched by tau, so order commutes.
    Expr once = substitute(ctx, e, joint);
    REQUIRE(seq == once);
  }
}

TEST_CASE("sorts are preserved by substitution on random terms") {
  TermContext ctx;
  testgen::ExprGen gen(ctx, 99);
  Expr x = ctx.var("x", Sort::bitvec(6));
  gen.add_var(x);
  for (int i = 0; i < 300; ++i) {
    Expr e = gen.roll(2) == 0 ? gen.gen_bool(4) : gen.gen_bv(6, 4);
    Expr sub = substitute(ctx, e, {{x.var(), gen.gen_bv(6, 2)}});
    REQUIRE(sub.sort() == e.sort());
  }
}

TEST_CASE("free_vars") {
  TermContext ctx;
  Expr imem = ctx.var("IMEM", Sort::array(16, 8));
  Expr pc = ctx.var("PC", Sort::bitvec(16));
  auto fv = free_vars(ctx.select(imem, pc));
  CHECK(fv.size() == 2);
  CHECK(fv.count(imem.var()) == 1);
  CHECK(fv.count(pc.var()) == 1);
  CHECK(free_vars(ctx.bool_const(true)).empty());
}

TEST_CASE("constant folding agreement with the uint64 reference") {
  TermContext ctx;
  testgen::ExprGen gen(ctx, 123456);  // no variables: constant-only terms
  UfTable ufs;
  for (int i = 0; i < 2000; ++i) {
    unsigned w = 1 + static_cast<unsigned>(gen.roll(16));
    Expr e = gen.gen_bv(w, 4);
    uint64_t expect = testref::ref_eval_bv(e);
    BvValue got = as_bv(eval(e, {}, ufs));
    REQUIRE(got == expect);
  }
  for (int i = 0; i < 2000; ++i) {
    Expr e = gen.gen_bool(4);
    bool expect = testref::ref_eval_bool(e);
    bool got = as_bool(eval(e, {}, ufs));
    REQUIRE(got == expect);
  }
}

TEST_CASE("uninterpreted applications check the declared signature") {
  TermContext ctx;
  FuncSymbol k{"kernel", {Sort::bitvec(8), Sort::bitvec(8)}, Sort::bitvec(8)};
  Expr a = ctx.var("a", Sort::bitvec(8));
  Expr call = ctx.apply(k, {a, a});
  CHECK(call.sort() == Sort::bitvec(8));
  CHECK_THROWS_AS(ctx.apply(k, {a}), SortError);
  CHECK_THROWS_AS(ctx.apply(k, {a, ctx.var("b4", Sort::bitvec(4))}),
                  SortError);
  std::set<FuncSymbol> fs;
  collect_func_symbols(call, fs);
  CHECK(fs.size() == 1);
}

TEST_CASE("variable renaming rebuilds terms in a fresh context") {
  TermContext a;
  Expr x = a.var("x", Sort::bitvec(8));
  Expr e = a.bvadd(x, a.bv_const(8, 1));

  TermContext b;
  Expr renamed = rename_vars(b, e, [](const VarRef& v) {
    return VarRef{"m." + v.name, v.sort, v.kind};
  });
  auto fv = free_vars(renamed);
  REQUIRE(fv.size() == 1);
  CHECK(fv.begin()->name == "m.x");
  CHECK(structurally_equal(import_expr(b, e), e));
}
