#pragma once

// Small sign-magnitude big integer. Only what the counting and series code
// needs: add, subtract, multiply, compare, decimal printing.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace tapegraph {

class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v) {  // NOLINT: implicit by design, literals are handy
    if (v < 0) {
      neg_ = true;
      v = -v;
    }
    while (v != 0) {
      mag_.push_back(static_cast<uint32_t>(v & 0xffffffffu));
      v = static_cast<long long>(static_cast<unsigned long long>(v) >> 32);
    }
  }

  bool is_zero() const { return mag_.empty(); }
  bool is_negative() const { return neg_; }

  friend bool operator==(BigInt const& a, BigInt const& b) {
    return a.neg_ == b.neg_ && a.mag_ == b.mag_;
  }
  friend bool operator!=(BigInt const& a, BigInt const& b) { return !(a == b); }

  friend bool operator<(BigInt const& a, BigInt const& b) {
    if (a.neg_ != b.neg_) return a.neg_;
    bool lt = cmp_mag(a.mag_, b.mag_) < 0;
    bool gt = cmp_mag(a.mag_, b.mag_) > 0;
    return a.neg_ ? gt : lt;
  }
  friend bool operator<=(BigInt const& a, BigInt const& b) { return !(b < a); }
  friend bool operator>(BigInt const& a, BigInt const& b) { return b < a; }
  friend bool operator>=(BigInt const& a, BigInt const& b) { return !(a < b); }

  friend BigInt operator+(BigInt const& a, BigInt const& b) {
    if (a.neg_ == b.neg_) return make(a.neg_, add_mag(a.mag_, b.mag_));
    int c = cmp_mag(a.mag_, b.mag_);
    if (c == 0) return BigInt();
    if (c > 0) return make(a.neg_, sub_mag(a.mag_, b.mag_));
    return make(b.neg_, sub_mag(b.mag_, a.mag_));
  }
  friend BigInt operator-(BigInt const& a, BigInt const& b) { return a + b.negated(); }
  friend BigInt operator*(BigInt const& a, BigInt const& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    return make(a.neg_ != b.neg_, mul_mag(a.mag_, b.mag_));
  }
  BigInt& operator+=(BigInt const& o) { return *this = *this + o; }
  BigInt& operator-=(BigInt const& o) { return *this = *this - o; }
  BigInt& operator*=(BigInt const& o) { return *this = *this * o; }

  BigInt negated() const {
    BigInt r = *this;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
  }

  static BigInt pow(BigInt base, unsigned long long e) {
    BigInt r(1);
    while (e != 0) {
      if (e & 1u) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  // Floor division by a positive small divisor (enough for floor(a / 2^k)
  // style uses; requires a >= 0).
  BigInt div_floor_small(uint32_t d) const {
    BigInt r;
    r.mag_.assign(mag_.size(), 0);
    uint64_t rem = 0;
    for (size_t i = mag_.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | mag_[i];
      r.mag_[i] = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    r.trim();
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
      uint64_t rem = 0;
      for (size_t i = m.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | m[i];
        m[i] = static_cast<uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (!m.empty() && m.back() == 0) m.pop_back();
      for (int k = 0; k < 9; ++k) {
        digits.push_back(static_cast<char>('0' + rem % 10));
        rem /= 10;
      }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (neg_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
  }

 private:
  using Mag = std::vector<uint32_t>;

  static BigInt make(bool neg, Mag mag) {
    BigInt r;
    r.mag_ = std::move(mag);
    r.trim();
    r.neg_ = r.mag_.empty() ? false : neg;
    return r;
  }

  void trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) neg_ = false;
  }

  static int cmp_mag(Mag const& a, Mag const& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  static Mag add_mag(Mag const& a, Mag const& b) {
    Mag r(std::max(a.size(), b.size()) + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      uint64_t s = carry;
      if (i < a.size()) s += a[i];
      if (i < b.size()) s += b[i];
      r[i] = static_cast<uint32_t>(s);
      carry = s >> 32;
    }
    return r;
  }

  // requires |a| >= |b|
  static Mag sub_mag(Mag const& a, Mag const& b) {
    Mag r = a;
    int64_t borrow = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      int64_t s = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
      if (s < 0) {
        s += (1ll << 32);
        borrow = 1;
      } else {
        borrow = 0;
      }
      r[i] = static_cast<uint32_t>(s);
    }
    return r;
  }

  static Mag mul_mag(Mag const& a, Mag const& b) {
    Mag r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.size(); ++j) {
        uint64_t cur = r[i + j] + static_cast<uint64_t>(a[i]) * b[j] + carry;
        r[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      r[i + b.size()] += static_cast<uint32_t>(carry);
    }
    return r;
  }

  bool neg_ = false;
  Mag mag_;  // little-endian base 2^32, no trailing zeros
};

}  // namespace tapegraph
