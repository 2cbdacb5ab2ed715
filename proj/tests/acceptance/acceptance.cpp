// Acceptance suite: the project's end-to-end exit checks, sizes and
// tolerances pinned in code. Prints one PASS/FAIL line per criterion and
// exits nonzero if any failed.

#include <chrono>
#include <cstdint>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "tapegraph/algebra.hpp"
#include "tapegraph/bigint.hpp"
#include "tapegraph/compiler.hpp"
#include "tapegraph/escape.hpp"
#include "tapegraph/group.hpp"
#include "tapegraph/io.hpp"
#include "tapegraph/machine.hpp"
#include "tapegraph/standard_tm.hpp"
#include "tapegraph/tree_order.hpp"
#include "tapegraph/words.hpp"

using namespace tapegraph;

namespace {

int failures = 0;

void report(int id, std::string const& name, bool ok, std::string const& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << name;
  if (!detail.empty()) std::cout << "  (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++failures;
}

std::string fixture(std::string const& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

struct NamedGraph {
  std::string name;
  TapeGraph graph;
};

std::vector<NamedGraph> fixture_graphs() {
  std::vector<NamedGraph> out;
  out.push_back({"Z", io::load_group(fixture("z.json"))});
  out.push_back({"Z^2", io::load_group(fixture("z2.json"))});
  out.push_back({"F_2", io::load_group(fixture("f2.json"))});
  out.push_back({"D_inf", io::load_group(fixture("dihedral.json"))});
  return out;
}

std::vector<GroupWord> words_up_to(uint32_t gens, size_t max_len) {
  std::vector<GroupWord> out{GroupWord{}};
  size_t begin = 0;
  for (size_t len = 1; len <= max_len; ++len) {
    size_t end = out.size();
    for (size_t i = begin; i < end; ++i) {
      for (uint32_t g = 0; g < gens; ++g) {
        GroupWord w = out[i];
        w.push_back(g);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

// --- criterion 1: bisimulation ---------------------------------------------

void criterion_bisimulation() {
  auto start = std::chrono::steady_clock::now();
  StandardTM succ = io::standard_tm_from_json(io::load_json_file(fixture("succ.json")));
  StandardTM pal = io::standard_tm_from_json(io::load_json_file(fixture("palindrome.json")));
  struct Job {
    StandardTM const* m;
    std::string input;
    std::string name;
  };
  std::vector<Job> jobs{{&succ, "111", "successor/111"}, {&pal, "abba", "palindrome/abba"}};

  bool ok = true;
  std::string detail;
  for (auto const& g : fixture_graphs()) {
    for (auto const& job : jobs) {
      BisimReport r = bisimulate(*job.m, g.graph, job.input, 10000);
      if (!r.equivalent || !r.compiled_halted || !r.direct_halted) {
        ok = false;
        detail += g.name + "/" + job.name + ": " + (r.mismatch.empty() ? "no halt" : r.mismatch);
      }
    }
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  if (elapsed >= 30000) {
    ok = false;
    detail += " exceeded 30 s";
  }
  report(1, "bisimulation: 2 machines x 4 tape graphs, fuel 10^4", ok,
         detail.empty() ? std::to_string(elapsed) + " ms" : detail);
}

// --- criterion 2: word-problem walk vs oracle -------------------------------

void criterion_word_problem_walk() {
  bool ok = true;
  std::string detail;
  for (auto const& g : fixture_graphs()) {
    uint32_t n = static_cast<uint32_t>(g.graph.alphabet().size());
    auto words = words_up_to(n, 6);
    std::vector<CanonicalForm> forms(words.size());
    for (size_t i = 0; i < words.size(); ++i) forms[i] = g.graph.canonicalize(words[i]);

    auto worker = [&](size_t lo, size_t hi) -> uint64_t {
      uint64_t bad = 0;
      for (size_t i = lo; i < hi; ++i) {
        for (size_t j = 0; j < words.size(); ++j) {
          bool walk = word_problem_walk(g.graph, words[i], words[j]);
          if (walk != (forms[i] == forms[j])) ++bad;
        }
      }
      return bad;
    };
    size_t mid = words.size() / 2;
    auto half = std::async(std::launch::async, worker, 0, mid);
    uint64_t bad = worker(mid, words.size()) + half.get();
    if (bad != 0) {
      ok = false;
      detail += g.name + ": " + std::to_string(bad) + " disagreements ";
    }
  }
  report(2, "word-problem walk = oracle on all pairs of length <= 6", ok, detail);
}

// --- criterion 3: visitation order ------------------------------------------

void criterion_visitation_order() {
  StandardTM runner = io::standard_tm_from_json(io::load_json_file(fixture("runner.json")));
  bool ok = true;
  std::string detail;
  for (auto const& g : fixture_graphs()) {
    MachineSpec compiled = compile(runner, g.graph);
    auto visits = visitation_order(compiled, g.graph, 10000);
    if (visits.size() < 10) {
      ok = false;
      detail += g.name + ": too few visits ";
      continue;
    }
    std::set<CanonicalForm> seen{g.graph.identity()};
    for (size_t i = 0; i < visits.size(); ++i) {
      if (!is_super_reduced(g.graph, visits[i])) {
        ok = false;
        detail += g.name + ": visit not super-reduced ";
        break;
      }
      if (i > 0 && lex_compare(visits[i - 1], visits[i]) != Ordering::Less) {
        ok = false;
        detail += g.name + ": visits not lex-increasing ";
        break;
      }
      if (!seen.insert(g.graph.canonicalize(visits[i])).second) {
        ok = false;
        detail += g.name + ": group element revisited ";
        break;
      }
    }
  }
  report(3, "visitation order: lex-increasing, super-reduced, no revisits, fuel 10^4", ok, detail);
}

// --- criterion 4: tree-order fixtures ---------------------------------------

void criterion_tree_order_fixtures() {
  auto z = io::load_group(fixture("z.json"));
  auto d = io::load_group(fixture("dihedral.json"));

  // expected rays, stated directly: the (-1)-ray and the (ab)-ray
  std::vector<GroupWord> z_ray, d_ray;
  for (size_t len = 0; len <= 6; ++len) {
    z_ray.push_back(GroupWord(len, 0));
    GroupWord alt;
    for (size_t i = 0; i < len; ++i) alt.push_back(i % 2 == 0 ? 0 : 1);
    d_ray.push_back(alt);
  }
  bool ok = tprime_prefix(z, 6, 7) == z_ray && tprime_prefix(d, 6, 7) == d_ray;

  // and re-derived by exhaustive depth-6 enumeration over all words
  std::vector<std::pair<TapeGraph const*, std::vector<GroupWord> const*>> cases{{&z, &z_ray},
                                                                                {&d, &d_ray}};
  for (auto const& [graph_ptr, expect_ptr] : cases) {
    TapeGraph const& graph = *graph_ptr;
    std::vector<GroupWord> const& expect = *expect_ptr;
    std::vector<GroupWord> nodes, proxies;
    for (auto const& w : words_up_to(2, 6)) {
      if (!is_super_reduced(graph, w)) continue;
      nodes.push_back(w);
      if (w.size() == 6) proxies.push_back(w);
    }
    std::vector<GroupWord> qualified;
    for (auto const& v : nodes) {
      bool below = true;
      for (auto const& s : proxies) {
        if (is_prefix(v, s)) continue;
        if (lex_compare(v, s) != Ordering::Less) {
          below = false;
          break;
        }
      }
      if (below) qualified.push_back(v);
    }
    std::sort(qualified.begin(), qualified.end(),
              [](GroupWord const& a, GroupWord const& b) {
                return lex_compare(a, b) == Ordering::Less;
              });
    ok = ok && qualified == expect;
  }
  report(4, "tree order: Z follows the (-1)-ray, D_inf the (ab)-ray (depth 6)", ok);
}

// --- criterion 5: subsequence counts ----------------------------------------

void criterion_subsequence_counts() {
  bool ok = words::subsequence_count("aabbaa", "aba") == BigInt(8);
  std::mt19937 rng(1009);
  std::uniform_int_distribution<size_t> len(0, 40);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < 100; ++i) {
    std::string w;
    size_t l = len(rng);
    for (size_t k = 0; k < l; ++k) w += bit(rng) != 0 ? 'b' : 'a';
    ok = ok && words::subsequence_count(w, "") == BigInt(1);
  }
  report(5, "#(aabbaa, aba) = 8 and #(w, eps) = 1 on 100 random words", ok);
}

// --- criterion 6: even subwords and the convolution identity ----------------

void criterion_even_subwords() {
  std::mt19937 rng(2027);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<size_t> extra(0, 36);
  bool ok = true;
  std::string detail;

  words::PatternTable table("ab", 2);
  for (int trial = 0; trial < 200; ++trial) {
    size_t l = 64 + extra(rng);
    std::string s;
    for (size_t k = 0; k < l; ++k) s += bit(rng) != 0 ? 'b' : 'a';
    auto iv = words::even_subword_search(s, 2, "ab");
    if (!iv.has_value()) {
      ok = false;
      detail = "search failed on a word of length " + std::to_string(l);
      break;
    }
    std::string sub = s.substr(iv->first, iv->last - iv->first + 1);
    for (auto const& p : table.patterns) {
      BigInt c = words::subsequence_count(sub, p);
      if (!(c.div_floor_small(2) * BigInt(2) == c)) {
        ok = false;
        detail = "odd count of " + p;
        break;
      }
    }
    if (!ok) break;
  }

  std::uniform_int_distribution<size_t> wlen(0, 12), plen(0, 4), cut(0, 12);
  for (int trial = 0; trial < 10000 && ok; ++trial) {
    std::string w;
    size_t l = wlen(rng);
    for (size_t k = 0; k < l; ++k) w += static_cast<char>('a' + rng() % 3);
    size_t c = w.empty() ? 0 : cut(rng) % (w.size() + 1);
    std::string sub;
    size_t pl = plen(rng);
    for (size_t k = 0; k < pl; ++k) sub += static_cast<char>('a' + rng() % 3);
    if (!words::concat_count_identity_check(w.substr(0, c), w.substr(c), sub)) {
      ok = false;
      detail = "convolution identity failed";
    }
  }
  report(6, "even subwords on 200 words (len >= 64, depth 2) + 10^4 convolution checks", ok,
         detail);
}

// --- criterion 7: algebra ----------------------------------------------------

void criterion_algebra() {
  using namespace tapegraph::algebra;
  bool ok = true;
  std::string detail;

  for (size_t d = 1; d <= 3 && ok; ++d) {
    for (size_t i = 0; i < d; ++i) {
      if (!binomial_inverse_check(i, d, 16)) {
        ok = false;
        detail = "binomial inverse failed";
      }
    }
  }

  // 100 even subwords over the 2d-symbol construction alphabet, depth 1
  std::mt19937 rng(40127);
  ConstructionGenerators gens{2};
  std::uniform_int_distribution<int> sym(0, 3);
  int made = 0;
  for (int trial = 0; trial < 200 && made < 100 && ok; ++trial) {
    std::string coded;
    for (int k = 0; k < 80; ++k) coded += static_cast<char>('a' + sym(rng));
    auto iv = words::even_subword_search(coded, 1, "abcd");
    if (!iv.has_value()) continue;
    std::vector<uint32_t> w;
    for (size_t p = iv->first; p <= iv->last; ++p) {
      w.push_back(static_cast<uint32_t>(coded[p] - 'a'));
    }
    try {
      auto comps = relator_from_even_subword(w, gens, 1, 6);
      for (auto const& c : comps) {
        if (!c.is_homogeneous() || c.degree() <= 1) {
          ok = false;
          detail = "bad component";
        }
      }
      ++made;
    } catch (LowDegreeResidue const&) {
      ok = false;
      detail = "low-degree residue on an even subword";
    }
  }
  if (ok && made < 100) {
    ok = false;
    detail = "only " + std::to_string(made) + " even subwords found";
  }

  // GS series for the d=2, eps=1/4 bound-shaped relator counts
  if (ok) {
    std::map<size_t, BigInt> r;
    for (size_t i = 11; i <= 50; ++i) {
      BigInt num = BigInt::pow(BigInt(3), i - 2);
      for (size_t k = 0; k < i + 2; ++k) num = num.div_floor_small(2);
      r[i] = num;
    }
    auto coeffs = gs_series_coefficients(2, r, 50);
    for (auto const& c : coeffs) {
      if (c.is_negative()) {
        ok = false;
        detail = "negative series coefficient";
      }
    }
  }

  // the corollary instance: d=2, eps=1/4, r_i = 2 for i >= 11
  if (ok) {
    std::map<size_t, BigInt> flat;
    for (size_t i = 11; i <= 60; ++i) flat[i] = BigInt(2);
    if (!corollary_bound_check(2, 1, 4, flat)) {
      ok = false;
      detail = "corollary bound rejected the i >= 11 instance";
    }
    std::map<size_t, BigInt> early{{10, BigInt(2)}};
    if (corollary_bound_check(2, 1, 4, early)) {
      ok = false;
      detail = "corollary bound accepted r(10) = 2";
    }
  }

  report(7, "algebra: binomial inverses, 100 relator extractions, GS series, corollary bound", ok,
         detail);
}

// --- criterion 8: escapes ----------------------------------------------------

void criterion_escape() {
  bool ok = true;
  std::string detail;

  auto z = io::load_group(fixture("z.json"));
  auto d = io::load_group(fixture("dihedral.json"));
  struct Case {
    TapeGraph const& graph;
    GroupWord a;
    std::string name;
  };
  std::vector<Case> cases{{z, {z.alphabet().index_of("+1")}, "Z/+1"},
                          {d, {0, 1}, "D_inf/ab"}};
  for (auto const& c : cases) {
    try {
      auto w = make_infinite_order_witness(c.graph, c.a);
      auto s = compute_schedule(c.graph, w, 64);
      if (!verify_escape(c.graph, s.escape_word, 2000)) {
        ok = false;
        detail += c.name + ": escape self-intersects ";
      }
      if (!verify_prefix_lemma(c.graph, s, w, 200)) {
        ok = false;
        detail += c.name + ": prefix lemma failed ";
      }
    } catch (Error const& e) {
      ok = false;
      detail += c.name + ": " + e.what();
    }
  }

  // negative control: a, a, ... in the dihedral group returns at step 2
  auto hit = self_intersection_scan(d, {{}, {0}}, 10);
  if (!(hit.has_value() && *hit == 2)) {
    ok = false;
    detail += "negative control missed";
  }
  report(8, "escapes verified to N=2000, prefix lemma to n=200, negative control", ok, detail);
}

// --- criterion 9: ideal membership vs brute oracle ---------------------------

namespace ideal_oracle {

uint64_t pack(algebra::Monomial const& m) {
  uint64_t bits = 0;
  for (size_t i = 0; i < m.size(); ++i) bits |= static_cast<uint64_t>(m[i]) << i;
  return 1ull << bits;
}

std::vector<algebra::Monomial> monomials_of_degree(size_t e) {
  std::vector<algebra::Monomial> out;
  for (uint64_t code = 0; code < (1ull << e); ++code) {
    algebra::Monomial m(e);
    for (size_t i = 0; i < e; ++i) m[i] = static_cast<uint8_t>((code >> i) & 1);
    out.push_back(std::move(m));
  }
  return out;
}

// All subset sums of the deduplicated slice generators: the span, literally.
// Declines (nullopt) when the closure would exceed 2^20 elements.
std::optional<bool> member(algebra::TruncatedPoly const& probe,
                           algebra::HomogeneousBasis const& basis, size_t e) {
  std::set<uint64_t> gens;
  for (auto const& g : basis.polys) {
    size_t deg = static_cast<size_t>(g.degree());
    if (deg > e) continue;
    for (size_t a = 0; a + deg <= e; ++a) {
      for (auto const& m1 : monomials_of_degree(a)) {
        for (auto const& m2 : monomials_of_degree(e - deg - a)) {
          uint64_t vec = 0;
          for (auto const& gm : g.monomials) {
            algebra::Monomial m = m1;
            m.insert(m.end(), gm.begin(), gm.end());
            m.insert(m.end(), m2.begin(), m2.end());
            vec ^= pack(m);
          }
          if (vec != 0) gens.insert(vec);
        }
      }
    }
  }
  if (gens.size() > 20) return std::nullopt;
  std::unordered_set<uint64_t> span;
  span.reserve(1u << 21);
  span.insert(0);
  std::vector<uint64_t> members{0};
  for (uint64_t g : gens) {
    size_t count = members.size();
    for (size_t i = 0; i < count; ++i) {
      uint64_t v = members[i] ^ g;
      if (span.insert(v).second) members.push_back(v);
    }
  }
  uint64_t target = 0;
  for (auto const& m : probe.monomials) target ^= pack(m);
  return span.contains(target);
}

}  // namespace ideal_oracle

void criterion_ideal_membership() {
  using namespace tapegraph::algebra;
  std::mt19937 rng(55441);
  std::uniform_int_distribution<int> bit(0, 1);
  bool ok = true;
  std::string detail;
  int instances = 0;
  int agreements = 0;

  while (instances < 50 && ok) {
    ++instances;
    bool monomial_gen = instances % 2 == 0;  // single monomials reach degree 6
    size_t gen_deg = 2 + instances % 2;
    TruncatedPoly f{2, 6, {}};
    while (f.is_zero()) {
      int terms = monomial_gen ? 1 : 2;
      for (int t = 0; t < terms; ++t) {
        Monomial m(gen_deg);
        for (auto& v : m) v = static_cast<uint8_t>(bit(rng));
        auto [it, inserted] = f.monomials.insert(std::move(m));
        if (!inserted) f.monomials.erase(it);
      }
    }
    HomogeneousBasis basis{2, 6, {f}};
    size_t max_query = monomial_gen ? 6 : gen_deg + 2;
    for (size_t deg = gen_deg; deg <= max_query && deg <= 6; ++deg) {
      TruncatedPoly probe{2, 6, {}};
      for (int t = 0; t < 3; ++t) {
        Monomial m(deg);
        for (auto& v : m) v = static_cast<uint8_t>(bit(rng));
        auto [it, inserted] = probe.monomials.insert(std::move(m));
        if (!inserted) probe.monomials.erase(it);
      }
      auto oracle = ideal_oracle::member(probe, basis, deg);
      if (!oracle.has_value()) continue;  // slice too large for a literal span
      bool lib = ideal_membership(probe, basis);
      if (lib == *oracle) {
        ++agreements;
      } else {
        ok = false;
        detail = "disagreement at degree " + std::to_string(deg);
      }
    }
  }
  report(9, "ideal membership agrees with the subset-sum oracle on 50 random toys", ok,
         ok ? std::to_string(agreements) + " checks" : detail);
}

}  // namespace

int main() {
  criterion_bisimulation();
  criterion_word_problem_walk();
  criterion_visitation_order();
  criterion_tree_order_fixtures();
  criterion_subsequence_counts();
  criterion_even_subwords();
  criterion_algebra();
  criterion_escape();
  criterion_ideal_membership();
  if (failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << failures << " acceptance criteria failed" << std::endl;
  return 1;
}
