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

#ifndef ILA_SORT_HPP_
#define ILA_SORT_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace ila {

/// Raised when a term or model is constructed with mismatched sorts.
class SortError : public std::runtime_error {
 public:
  explicit SortError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a bitvector constant does not fit its declared width.
class ValueOutOfRange : public std::runtime_error {
 public:
  explicit ValueOutOfRange(const std::string& what)
      : std::runtime_error(what) {}
};

// Sorts are booleans, fixed-width bitvectors, and arrays from bitvector
// addresses to bitvector data. No nested arrays.
class Sort {
 public:
  enum class Kind : uint8_t { kBool, kBitVec, kArray };

  Sort() : kind_(Kind::kBool), a_(0), b_(0) {}

  static Sort boolean() { return Sort(); }

  static Sort bitvec(unsigned width) {
    if (width == 0) throw SortError("bitvector width must be positive");
    Sort s;
    s.kind_ = Kind::kBitVec;
    s.a_ = width;
    return s;
  }

  static Sort array(unsigned addr_width, unsigned data_width) {
    if (addr_width == 0 || data_width == 0)
      throw SortError("array widths must be positive");
    Sort s;
    s.kind_ = Kind::kArray;
    s.a_ = addr_width;
    s.b_ = data_width;
    return s;
  }

  Kind kind() const { return kind_; }
  bool is_bool() const { return kind_ == Kind::kBool; }
  bool is_bv() const { return kind_ == Kind::kBitVec; }
  bool is_array() const { return kind_ == Kind::kArray; }

  /// Width of a bitvector sort.
  unsigned width() const {
    if (!is_bv()) throw SortError("width() on non-bitvector sort " + str());
    return a_;
  }
  unsigned addr_width() const {
    if (!is_array()) throw SortError("addr_width() on non-array sort");
    return a_;
  }
  unsigned data_width() const {
    if (!is_array()) throw SortError("data_width() on non-array sort");
    return b_;
  }

  bool operator==(const Sort& o) const {
    return kind_ == o.kind_ && a_ == o.a_ && b_ == o.b_;
  }
  bool operator!=(const Sort& o) const { return !(*this == o); }
  bool operator<(const Sort& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_;
    if (a_ != o.a_) return a_ < o.a_;
    return b_ < o.b_;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::kBool:
        return "bool";
      case Kind::kBitVec:
        return "(bv " + std::to_string(a_) + ")";
      case Kind::kArray:
        return "(array " + std::to_string(a_) + " " + std::to_string(b_) + ")";
    }
    return "?";
  }

  size_t hash() const {
    return (static_cast<size_t>(kind_) << 48) ^
           (static_cast<size_t>(a_) << 20) ^ static_cast<size_t>(b_);
  }

 private:
  Kind kind_;
  unsigned a_;  // bitvector width or array address width
  unsigned b_;  // array data width
};

}  // namespace ila

namespace std {
template <>
struct hash<ila::Sort> {
  size_t operator()(const ila::Sort& s) const { return s.hash(); }
};
}  // namespace std

#endif  // ILA_SORT_HPP_
