#include <doctest.h>

#include <random>
#include <string>

#include "tapegraph/words.hpp"

using namespace tapegraph;
using namespace tapegraph::words;

namespace {

std::string random_word(std::mt19937& rng, std::string const& alphabet, size_t len) {
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  std::string w;
  for (size_t i = 0; i < len; ++i) w += alphabet[pick(rng)];
  return w;
}

// Exhaustive parity check of an interval: every non-empty pattern of length
// <= n occurs an even number of times, counted by the plain big-integer DP.
bool interval_even_oracle(Word const& s, Interval iv, size_t n, Alphabet const& alph) {
  Word w = s.substr(iv.first, iv.last - iv.first + 1);
  std::vector<std::string> patterns{""};
  for (size_t len = 1; len <= n; ++len) {
    std::vector<std::string> next;
    for (auto const& p : patterns) {
      if (p.size() + 1 == len) {
        for (char c : alph) next.push_back(p + c);
      }
    }
    for (auto const& p : next) {
      BigInt count = subsequence_count(w, p);
      BigInt two(2);
      // parity via subtraction: count - 2*floor(count/2) == 0
      if (!(count.div_floor_small(2) * two == count)) return false;
    }
    patterns.insert(patterns.end(), next.begin(), next.end());
  }
  return true;
}

}  // namespace

TEST_CASE("subsequence_count") {
  CHECK(subsequence_count("aabbaa", "aba") == BigInt(8));
  CHECK(subsequence_count("abc", "abc") == BigInt(1));
  CHECK(subsequence_count("abc", "") == BigInt(1));
  CHECK(subsequence_count("", "") == BigInt(1));
  CHECK(subsequence_count("ab", "ba") == BigInt(0));

  SUBCASE("#(w, eps) = 1 on random words") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
      CHECK(subsequence_count(random_word(rng, "ab", 1 + i % 30), "") == BigInt(1));
    }
  }
}

TEST_CASE("parity_profile") {
  SUBCASE("aa over {a,b} at depth 1") {
    auto prof = parity_profile("aa", 1, "ab");
    CHECK(prof.bit("a") == 0);
    CHECK(prof.bit("b") == 0);
  }
  SUBCASE("a over {a,b} at depth 1") {
    auto prof = parity_profile("a", 1, "ab");
    CHECK(prof.bit("a") == 1);
    CHECK(prof.bit("b") == 0);
  }
  SUBCASE("aabbaa at depth 3 has an even aba count") {
    auto prof = parity_profile("aabbaa", 3, "ab");
    CHECK(prof.bit("aba") == 0);  // 8 embeddings
  }
  SUBCASE("profile domain size matches (m^(n+1)-m)/(m-1)") {
    PatternTable t2("ab", 3);
    CHECK(t2.size() == 14);
    CHECK(RamseyBoundSpec{2, 3}.profile_domain_size() == BigInt(14));
    PatternTable t3("abc", 2);
    CHECK(t3.size() == 12);
    CHECK(RamseyBoundSpec{3, 2}.profile_domain_size() == BigInt(12));
  }
  SUBCASE("bits agree with the big-integer DP mod 2, exhaustively to length 9") {
    PatternTable table("ab", 3);
    std::vector<Word> words{""};
    for (size_t begin = 0, len = 1; len <= 9; ++len) {
      size_t end = words.size();
      for (size_t i = begin; i < end; ++i) {
        words.push_back(words[i] + 'a');
        words.push_back(words[i] + 'b');
      }
      begin = end;
    }
    for (auto const& w : words) {
      auto prof = parity_profile(w, table);
      for (size_t p = 0; p < table.size(); ++p) {
        BigInt count = subsequence_count(w, table.patterns[p]);
        BigInt even = count.div_floor_small(2) * BigInt(2);
        REQUIRE(prof.bits[p] == (count == even ? 0 : 1));
      }
    }
  }
  SUBCASE("and on random words to length 12") {
    std::mt19937 rng(11);
    PatternTable table("ab", 3);
    for (int i = 0; i < 200; ++i) {
      Word w = random_word(rng, "ab", 1 + i % 12);
      auto prof = parity_profile(w, table);
      for (size_t p = 0; p < table.size(); ++p) {
        BigInt count = subsequence_count(w, table.patterns[p]);
        BigInt even = count.div_floor_small(2) * BigInt(2);
        CHECK(prof.bits[p] == (count == even ? 0 : 1));
      }
    }
  }
}

TEST_CASE("even_subword_search") {
  SUBCASE("aa at depth 1 is its own even subword") {
    auto iv = even_subword_search("aa", 1);
    REQUIRE(iv.has_value());
    CHECK(iv->first == 0);
    CHECK(iv->last == 1);
  }
  SUBCASE("abab at depth 1 needs the whole word") {
    auto iv = even_subword_search("abab", 1, "ab");
    REQUIRE(iv.has_value());
    CHECK(iv->first == 0);
    CHECK(iv->last == 3);
    // no shorter interval qualifies in the scan order
    for (size_t i = 0; i < 4; ++i) {
      for (size_t j = i; j < 4 && j - i < 3; ++j) {
        CHECK_FALSE(interval_even_oracle("abab", {i, j}, 1, "ab"));
      }
    }
  }
  SUBCASE("ab at depth 1 has none") {
    CHECK_FALSE(even_subword_search("ab", 1, "ab").has_value());
  }
  SUBCASE("found intervals always verify exhaustively") {
    std::mt19937 rng(23);
    for (int i = 0; i < 50; ++i) {
      Word s = random_word(rng, "ab", 64);
      auto iv = even_subword_search(s, 2, "ab");
      REQUIRE(iv.has_value());
      CHECK(interval_even_oracle(s, *iv, 2, "ab"));
    }
  }
}

TEST_CASE("pirillo_pair_search") {
  SUBCASE("aaaa splits into aa | aa") {
    auto split = pirillo_pair_search("aaaa", 1, "a");
    REQUIRE(split.has_value());
    CHECK(split->w1 == "aa");
    CHECK(split->w2 == "aa");
  }
  SUBCASE("ab at depth 2 has no split") {
    CHECK_FALSE(pirillo_pair_search("ab", 2, "ab").has_value());
  }
  SUBCASE("abab at depth 1 has no split either") {
    // phi(ab) counts one a and one b, phi(abab) counts two of each; the
    // factor profiles never match the whole, exhaustively over all splits.
    CHECK_FALSE(pirillo_pair_search("abab", 1, "ab").has_value());
    PatternTable table("ab", 1);
    std::string s = "abab";
    for (size_t i = 0; i < s.size(); ++i) {
      for (size_t j = i + 1; j < s.size(); ++j) {
        for (size_t k = i + 1; k <= j; ++k) {
          auto whole = parity_profile(s.substr(i, j - i + 1), table);
          auto w1 = parity_profile(s.substr(i, k - i), table);
          auto w2 = parity_profile(s.substr(k, j - k + 1), table);
          CHECK_FALSE((w1 == whole && w2 == whole));
        }
      }
    }
  }
  SUBCASE("successful splits leave all three profiles all-even") {
    std::mt19937 rng(31);
    PatternTable table("ab", 2);
    int found = 0;
    for (int i = 0; i < 40; ++i) {
      Word s = random_word(rng, "ab", 48);
      auto split = pirillo_pair_search(s, 2, "ab");
      if (!split.has_value()) continue;
      ++found;
      CHECK(parity_profile(split->w1, table).all_zero());
      CHECK(parity_profile(split->w2, table).all_zero());
      CHECK(parity_profile(split->w1 + split->w2, table).all_zero());
    }
    CHECK(found > 0);
  }
}

TEST_CASE("concatenation identity") {
  CHECK(concat_count_identity_check("a", "b", "ab"));
  CHECK(concat_count_identity_check("aab", "baa", "aba"));
  CHECK(concat_count_identity_check("aab", "baa", ""));

  SUBCASE("holds on random triples") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<size_t> len12(0, 12), len4(0, 4), cut(0, 100);
    for (int i = 0; i < 1000; ++i) {
      Word w = random_word(rng, "abc", len12(rng));
      size_t c = w.empty() ? 0 : cut(rng) % (w.size() + 1);
      Word sub = random_word(rng, "abc", len4(rng));
      CHECK(concat_count_identity_check(w.substr(0, c), w.substr(c), sub));
    }
  }
}

TEST_CASE("ramsey bound stays symbolic") {
  RamseyBoundSpec spec{2, 3};
  CHECK(spec.bound_expression() == "R(2,3,2^((2^4-1)/(2-1)))");
  CHECK(RamseyBoundSpec::degree_recursion(4) ==
        "r_0 = 16; r_{k+1} = 15*R(2,3,2^((4^(r_k+1)-1)/(4-1)))");
}
