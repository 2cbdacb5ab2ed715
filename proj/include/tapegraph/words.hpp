#pragma once

// Combinatorics on words: subsequence counting, the mod-2 profile phi over
// all short patterns, the even-subword search, and the Pirillo-style pair
// search. The Ramsey bound behind the existence guarantee is astronomically
// large and stays symbolic; the searches scan directly and succeed far
// earlier in practice.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tapegraph/bigint.hpp"

namespace tapegraph::words {

using Word = std::string;
using Alphabet = std::string;  // distinct symbols, in order

inline Alphabet alphabet_of(Word const& w) {
  Alphabet a;
  for (char c : w) {
    if (a.find(c) == std::string::npos) a += c;
  }
  std::sort(a.begin(), a.end());
  return a;
}

/// Number of strictly increasing index tuples embedding `sub` in `w`.
/// #(w, eps) = 1 for every w.
inline BigInt subsequence_count(Word const& w, Word const& sub) {
  std::vector<BigInt> dp(sub.size() + 1);
  dp[0] = BigInt(1);
  for (char c : w) {
    for (size_t j = sub.size(); j > 0; --j) {
      if (sub[j - 1] == c) dp[j] += dp[j - 1];
    }
  }
  return dp[sub.size()];
}

/// All non-empty patterns over the alphabet of length <= n, in
/// length-then-lex order, with prefix links for the parity recurrence.
struct PatternTable {
  Alphabet alphabet;
  size_t depth;
  std::vector<std::string> patterns;
  std::vector<int32_t> prefix;  // index of the pattern minus its last symbol; -1 for length 1
  std::vector<char> last;

  PatternTable(Alphabet alph, size_t n) : alphabet(std::move(alph)), depth(n) {
    std::vector<std::string> prev{""};
    std::vector<int32_t> prev_idx{-1};
    for (size_t len = 1; len <= n; ++len) {
      std::vector<std::string> cur;
      std::vector<int32_t> cur_idx;
      for (size_t p = 0; p < prev.size(); ++p) {
        for (char c : alphabet) {
          prefix.push_back(prev_idx[p]);
          last.push_back(c);
          patterns.push_back(prev[p] + c);
          cur.push_back(patterns.back());
          cur_idx.push_back(static_cast<int32_t>(patterns.size() - 1));
        }
      }
      prev = std::move(cur);
      prev_idx = std::move(cur_idx);
    }
  }

  size_t size() const { return patterns.size(); }

  int32_t index_of(std::string const& p) const {
    for (size_t i = 0; i < patterns.size(); ++i) {
      if (patterns[i] == p) return static_cast<int32_t>(i);
    }
    return -1;
  }
};

/// phi(w): the parity of #(w, p) for every pattern p in the table, computed
/// by a bit-only dynamic program (no big integers).
struct ParityProfile {
  PatternTable const* table = nullptr;
  std::vector<uint8_t> bits;

  explicit ParityProfile(PatternTable const& t) : table(&t), bits(t.size(), 0) {}

  void push(char c) {
    // Longest patterns first so each update reads pre-push values.
    for (size_t i = bits.size(); i-- > 0;) {
      if (table->last[i] != c) continue;
      int32_t p = table->prefix[i];
      bits[i] ^= (p < 0) ? 1 : bits[p];
    }
  }

  bool all_zero() const {
    for (uint8_t b : bits) {
      if (b != 0) return false;
    }
    return true;
  }

  uint8_t bit(std::string const& pattern) const {
    int32_t i = table->index_of(pattern);
    if (i < 0) throw std::out_of_range("pattern not in profile domain: " + pattern);
    return bits[i];
  }

  friend bool operator==(ParityProfile const& a, ParityProfile const& b) {
    return a.bits == b.bits;
  }
};

inline ParityProfile parity_profile(Word const& w, PatternTable const& table) {
  ParityProfile prof(table);
  for (char c : w) prof.push(c);
  return prof;
}

inline ParityProfile parity_profile(Word const& w, size_t n, Alphabet const& alphabet,
                                    PatternTable const** table_out = nullptr) {
  static thread_local std::vector<std::unique_ptr<PatternTable>> cache;
  PatternTable* table = nullptr;
  for (auto const& t : cache) {
    if (t->alphabet == alphabet && t->depth == n) {
      table = t.get();
      break;
    }
  }
  if (table == nullptr) {
    cache.push_back(std::make_unique<PatternTable>(alphabet, n));
    table = cache.back().get();
  }
  if (table_out != nullptr) *table_out = table;
  return parity_profile(w, *table);
}

/// Inclusive interval [first, last] of s.
struct Interval {
  size_t first = 0;
  size_t last = 0;
};

/// Smallest subword of s (by length, then start position) whose parity
/// profile to depth n is all even. Alphabet defaults to the symbols of s.
inline std::optional<Interval> even_subword_search(Word const& s, size_t n,
                                                   Alphabet alphabet = "") {
  if (alphabet.empty()) alphabet = alphabet_of(s);
  PatternTable table(alphabet, n);
  std::optional<Interval> best;
  size_t best_len = s.size() + 1;
  for (size_t i = 0; i < s.size(); ++i) {
    ParityProfile prof(table);
    for (size_t j = i; j < s.size(); ++j) {
      prof.push(s[j]);
      size_t len = j - i + 1;
      if (len >= best_len) break;
      if (prof.all_zero()) {
        best = Interval{i, j};
        best_len = len;
        break;  // longer intervals from this start cannot beat this one
      }
    }
  }
  return best;
}

/// A contiguous factorization w1 w2 inside s with phi(w1) = phi(w2) =
/// phi(w1 w2), the k = 2 instance used by the even-subword lemma. The triple
/// equality forces all three profiles to vanish.
struct PirilloSplit {
  size_t first = 0;
  size_t split = 0;  // w1 = s[first, split), w2 = s[split, last]
  size_t last = 0;
  Word w1;
  Word w2;
};

inline std::optional<PirilloSplit> pirillo_pair_search(Word const& s, size_t n,
                                                       Alphabet alphabet = "") {
  if (alphabet.empty()) alphabet = alphabet_of(s);
  PatternTable table(alphabet, n);

  // prof_from[i][x]: profile of s[i, i+x), filled lazily per start.
  std::vector<std::vector<ParityProfile>> prof_from(s.size() + 1);
  auto profiles = [&](size_t i) -> std::vector<ParityProfile>& {
    auto& row = prof_from[i];
    if (row.empty()) {
      row.reserve(s.size() - i + 1);
      row.emplace_back(table);
      for (size_t x = i; x < s.size(); ++x) {
        row.push_back(row.back());
        row.back().push(s[x]);
      }
    }
    return row;
  };

  for (size_t len = 2; len <= s.size(); ++len) {
    for (size_t i = 0; i + len <= s.size(); ++i) {
      auto& from_i = profiles(i);
      ParityProfile const& whole = from_i[len];
      for (size_t k = i + 1; k < i + len; ++k) {
        ParityProfile const& w1 = from_i[k - i];
        if (!(w1 == whole)) continue;
        ParityProfile const& w2 = profiles(k)[i + len - k];
        if (w2 == whole) {
          return PirilloSplit{i, k, i + len - 1, s.substr(i, k - i), s.substr(k, i + len - k)};
        }
      }
    }
  }
  return std::nullopt;
}

/// The concatenation identity
///   #(w1 w2, p) = sum_i #(w1, p[0,i)) * #(w2, p[i,|p|))
/// checked for one triple; a test oracle that must always hold.
inline bool concat_count_identity_check(Word const& w1, Word const& w2, Word const& sub) {
  BigInt direct = subsequence_count(w1 + w2, sub);
  BigInt convolved;
  for (size_t i = 0; i <= sub.size(); ++i) {
    convolved += subsequence_count(w1, sub.substr(0, i)) * subsequence_count(w2, sub.substr(i));
  }
  return direct == convolved;
}

/// The Ramsey-number bound guaranteeing even subwords, kept symbolic: only
/// the profile-domain cardinalities are ever evaluated.
struct RamseyBoundSpec {
  size_t m = 0;  // alphabet size
  size_t n = 0;  // pattern depth

  /// |A^{<=n}| - 1, the number of non-empty patterns: (m^{n+1} - m)/(m - 1).
  BigInt profile_domain_size() const {
    if (m == 1) return BigInt(static_cast<long long>(n));
    BigInt num = BigInt::pow(BigInt(static_cast<long long>(m)), n + 1) -
                 BigInt(static_cast<long long>(m));
    return num.div_floor_small(static_cast<uint32_t>(m - 1));  // always divides exactly
  }

  /// The bound C(m,n) = R(2, 3, 2^((m^(n+1)-1)/(m-1))), rendered, never
  /// evaluated.
  std::string bound_expression() const {
    return "R(2,3,2^((" + std::to_string(m) + "^" + std::to_string(n + 1) + "-1)/(" +
           std::to_string(m) + "-1)))";
  }

  /// The relator-degree recursion over a 2d-symbol alphabet:
  /// r_0 = 16, r_{k+1} = 15 * R(2,3,2^((s^(r_k+1)-1)/(s-1))).
  static std::string degree_recursion(size_t alphabet_size) {
    std::string s = std::to_string(alphabet_size);
    return "r_0 = 16; r_{k+1} = 15*R(2,3,2^((" + s + "^(r_k+1)-1)/(" + s + "-1)))";
  }
};

}  // namespace tapegraph::words
