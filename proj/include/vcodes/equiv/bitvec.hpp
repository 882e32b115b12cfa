// Copyright 2026 The VCodes Authors
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

#ifndef VCODES_EQUIV_BITVEC_HPP
#define VCODES_EQUIV_BITVEC_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vcodes::equiv {

// Fixed-width two-valued vector, 1..64 bits. Unsigned arithmetic wraps
// modulo 2^width; signed views use two's complement.
class BitVec {
 public:
  BitVec() : width_(1), bits_(0) {}
  BitVec(int width, uint64_t bits) : width_(check_width(width)), bits_(bits & mask()) {}

  static BitVec from_binary(std::string_view text);  // MSB first, e.g. "0101"

  int width() const { return width_; }
  uint64_t bits() const { return bits_; }
  int64_t to_signed() const {
    if (width_ == 64) return static_cast<int64_t>(bits_);
    uint64_t sign = 1ULL << (width_ - 1);
    return static_cast<int64_t>((bits_ ^ sign)) - static_cast<int64_t>(sign);
  }

  std::string to_binary() const {
    std::string out(static_cast<size_t>(width_), '0');
    for (int i = 0; i < width_; ++i) {
      if ((bits_ >> i) & 1) out[static_cast<size_t>(width_ - 1 - i)] = '1';
    }
    return out;
  }

  bool bit(int i) const { return ((bits_ >> i) & 1) != 0; }

  uint64_t mask() const {
    return width_ == 64 ? ~0ULL : ((1ULL << width_) - 1);
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.width_ == b.width_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }

 private:
  static int check_width(int width) {
    if (width < 1 || width > 64)
      throw std::invalid_argument("BitVec width out of range: " +
                                  std::to_string(width));
    return width;
  }

  int width_;
  uint64_t bits_;
};

inline BitVec BitVec::from_binary(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty binary literal");
  uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("non-binary character in literal");
    bits = (bits << 1) | static_cast<uint64_t>(c == '1');
  }
  return BitVec(static_cast<int>(text.size()), bits);
}

}  // namespace vcodes::equiv

#endif  // VCODES_EQUIV_BITVEC_HPP
