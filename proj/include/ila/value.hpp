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

#ifndef ILA_VALUE_HPP_
#define ILA_VALUE_HPP_

#include <map>
#include <string>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

#include "ila/sort.hpp"

namespace ila {

// Unsigned arbitrary-precision integer; bitvector values are kept canonical,
// i.e. 0 <= v < 2^width at all times.
using BvValue = boost::multiprecision::cpp_int;

inline BvValue bv_mask(unsigned width) {
  return (BvValue(1) << width) - 1;
}

inline BvValue bv_trunc(const BvValue& v, unsigned width) {
  return v & bv_mask(width);
}

inline bool bv_fits(const BvValue& v, unsigned width) {
  return v >= 0 && v < (BvValue(1) << width);
}

/// Two's-complement reading of a canonical bitvector value.
inline BvValue bv_to_signed(const BvValue& v, unsigned width) {
  if (bit_test(v, width - 1)) return v - (BvValue(1) << width);
  return v;
}

// Array values are a default plus sparse overrides. Overrides never store the
// default, so structural comparison is extensional comparison as long as the
// override set does not cover the whole address space; cover() handles the
// remaining case.
struct ArrayValue {
  BvValue def;
  std::map<BvValue, BvValue> overrides;

  BvValue get(const BvValue& addr) const {
    auto it = overrides.find(addr);
    return it == overrides.end() ? def : it->second;
  }

  void set(const BvValue& addr, const BvValue& v) {
    if (v == def)
      overrides.erase(addr);
    else
      overrides[addr] = v;
  }

  /// Extensional equality over a 2^addr_width address space.
  static bool equal(const ArrayValue& a, const ArrayValue& b,
                    unsigned addr_width) {
    for (const auto& [addr, v] : a.overrides)
      if (b.get(addr) != v) return false;
    for (const auto& [addr, v] : b.overrides)
      if (a.get(addr) != v) return false;
    if (a.def == b.def) return true;
    // Differing defaults only survive if the overrides jointly cover the
    // whole address space, which we never hit at tool scale but check anyway.
    BvValue space = BvValue(1) << addr_width;
    std::map<BvValue, bool> joint;
    for (const auto& [addr, v] : a.overrides) joint[addr] = true;
    for (const auto& [addr, v] : b.overrides) joint[addr] = true;
    return BvValue(joint.size()) == space;
  }

  bool operator==(const ArrayValue& o) const {
    return def == o.def && overrides == o.overrides;
  }
};

// A concrete value: boolean, canonical bitvector, or array.
using Value = std::variant<bool, BvValue, ArrayValue>;

inline bool value_is_bool(const Value& v) {
  return std::holds_alternative<bool>(v);
}
inline bool value_is_bv(const Value& v) {
  return std::holds_alternative<BvValue>(v);
}
inline bool value_is_array(const Value& v) {
  return std::holds_alternative<ArrayValue>(v);
}

inline bool as_bool(const Value& v) { return std::get<bool>(v); }
inline const BvValue& as_bv(const Value& v) { return std::get<BvValue>(v); }
inline const ArrayValue& as_array(const Value& v) {
  return std::get<ArrayValue>(v);
}

inline bool value_fits(const Value& v, const Sort& s) {
  switch (s.kind()) {
    case Sort::Kind::kBool:
      return value_is_bool(v);
    case Sort::Kind::kBitVec:
      return value_is_bv(v) && bv_fits(as_bv(v), s.width());
    case Sort::Kind::kArray: {
      if (!value_is_array(v)) return false;
      const ArrayValue& a = as_array(v);
      if (!bv_fits(a.def, s.data_width())) return false;
      for (const auto& [addr, val] : a.overrides)
        if (!bv_fits(addr, s.addr_width()) || !bv_fits(val, s.data_width()))
          return false;
      return true;
    }
  }
  return false;
}

inline bool value_equal(const Value& a, const Value& b, const Sort& s) {
  if (s.is_array())
    return ArrayValue::equal(as_array(a), as_array(b), s.addr_width());
  return a == b;
}

inline std::string value_str(const Value& v) {
  if (value_is_bool(v)) return as_bool(v) ? "true" : "false";
  if (value_is_bv(v)) return as_bv(v).str();
  const ArrayValue& a = as_array(v);
  std::string out = "[def=" + a.def.str();
  for (const auto& [addr, val] : a.overrides)
    out += " " + addr.str() + ":" + val.str();
  return out + "]";
}

}  // namespace ila

#endif  // ILA_VALUE_HPP_
