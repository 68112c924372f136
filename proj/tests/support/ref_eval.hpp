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

// Independent reference evaluation for constant bitvector terms of width up
// to 32, written against plain uint64_t arithmetic so it shares nothing with
// the library's evaluator beyond the operator definitions.

#ifndef ILA_TESTS_SUPPORT_REF_EVAL_HPP_
#define ILA_TESTS_SUPPORT_REF_EVAL_HPP_

#include <cstdint>
#include <stdexcept>

#include "ila/expr.hpp"

namespace ila::testref {

inline uint64_t ref_mask(unsigned w) {
  return w >= 64 ? ~0ull : ((1ull << w) - 1);
}

inline uint64_t ref_eval_bv(Expr e);

inline bool ref_eval_bool(Expr e) {
  switch (e.op()) {
    case Op::kBoolConst:
      return e.bool_value();
    case Op::kNot:
      return !ref_eval_bool(e.arg(0));
    case Op::kAnd: {
      bool r = true;
      for (const Expr& a : e.args()) r = r && ref_eval_bool(a);
      return r;
    }
    case Op::kOr: {
      bool r = false;
      for (const Expr& a : e.args()) r = r || ref_eval_bool(a);
      return r;
    }
    case Op::kXor:
      return ref_eval_bool(e.arg(0)) != ref_eval_bool(e.arg(1));
    case Op::kImplies:
      return !ref_eval_bool(e.arg(0)) || ref_eval_bool(e.arg(1));
    case Op::kIte:
      return ref_eval_bool(e.arg(0)) ? ref_eval_bool(e.arg(1))
                                     : ref_eval_bool(e.arg(2));
    case Op::kEq:
      if (e.arg(0).sort().is_bool())
        return ref_eval_bool(e.arg(0)) == ref_eval_bool(e.arg(1));
      return ref_eval_bv(e.arg(0)) == ref_eval_bv(e.arg(1));
    case Op::kUlt:
      return ref_eval_bv(e.arg(0)) < ref_eval_bv(e.arg(1));
    case Op::kUle:
      return ref_eval_bv(e.arg(0)) <= ref_eval_bv(e.arg(1));
    case Op::kSlt:
    case Op::kSle: {
      unsigned w = e.arg(0).sort().width();
      int64_t a = static_cast<int64_t>(ref_eval_bv(e.arg(0)) << (64 - w)) >>
                  (64 - w);
      int64_t b = static_cast<int64_t>(ref_eval_bv(e.arg(1)) << (64 - w)) >>
                  (64 - w);
      return e.op() == Op::kSlt ? a < b : a <= b;
    }
    default:
      throw std::runtime_error("ref_eval_bool: unsupported op");
  }
}

inline uint64_t ref_eval_bv(Expr e) {
  unsigned w = e.sort().width();
  if (w > 32) throw std::runtime_error("ref_eval_bv: width > 32");
  uint64_t m = ref_mask(w);
  switch (e.op()) {
    case Op::kBvConst:
      return e.bv_value().convert_to<uint64_t>();
    case Op::kBvNot:
      return ~ref_eval_bv(e.arg(0)) & m;
    case Op::kBvAnd:
      return ref_eval_bv(e.arg(0)) & ref_eval_bv(e.arg(1));
    case Op::kBvOr:
      return ref_eval_bv(e.arg(0)) | ref_eval_bv(e.arg(1));
    case Op::kBvXor:
      return ref_eval_bv(e.arg(0)) ^ ref_eval_bv(e.arg(1));
    case Op::kBvAdd:
      return (ref_eval_bv(e.arg(0)) + ref_eval_bv(e.arg(1))) & m;
    case Op::kBvSub:
      return (ref_eval_bv(e.arg(0)) - ref_eval_bv(e.arg(1))) & m;
    case Op::kBvMul:
      return (ref_eval_bv(e.arg(0)) * ref_eval_bv(e.arg(1))) & m;
    case Op::kBvUdiv: {
      uint64_t b = ref_eval_bv(e.arg(1));
      return b == 0 ? m : (ref_eval_bv(e.arg(0)) / b);
    }
    case Op::kBvUrem: {
      uint64_t a = ref_eval_bv(e.arg(0));
      uint64_t b = ref_eval_bv(e.arg(1));
      return b == 0 ? a : (a % b);
    }
    case Op::kShl: {
      uint64_t s = ref_eval_bv(e.arg(1));
      return s >= w ? 0 : (ref_eval_bv(e.arg(0)) << s) & m;
    }
    case Op::kLshr: {
      uint64_t s = ref_eval_bv(e.arg(1));
      return s >= w ? 0 : ref_eval_bv(e.arg(0)) >> s;
    }
    case Op::kAshr: {
      uint64_t a = ref_eval_bv(e.arg(0));
      uint64_t s = ref_eval_bv(e.arg(1));
      bool neg = (a >> (w - 1)) & 1;
      if (s >= w) return neg ? m : 0;
      uint64_t r = a >> s;
      if (neg) r |= m & ~ref_mask(w - s);
      return r;
    }
    case Op::kConcat: {
      unsigned wb = e.arg(1).sort().width();
      return ((ref_eval_bv(e.arg(0)) << wb) | ref_eval_bv(e.arg(1))) & m;
    }
    case Op::kExtract:
      return (ref_eval_bv(e.arg(0)) >> e.param1()) & m;
    case Op::kZeroExtend:
      return ref_eval_bv(e.arg(0));
    case Op::kSignExtend: {
      unsigned wi = e.arg(0).sort().width();
      uint64_t a = ref_eval_bv(e.arg(0));
      if ((a >> (wi - 1)) & 1) a |= m & ~ref_mask(wi);
      return a;
    }
    case Op::kIte:
      return ref_eval_bool(e.arg(0)) ? ref_eval_bv(e.arg(1))
                                     : ref_eval_bv(e.arg(2));
    default:
      throw std::runtime_error("ref_eval_bv: unsupported op");
  }
}

}  // namespace ila::testref

#endif  // ILA_TESTS_SUPPORT_REF_EVAL_HPP_
