#pragma once

// Constructive escapes: given a minimal-length expression of an infinite
// order element, the loop-splicing bookkeeping (the relation family
// delta(r,s,M) and the alpha/beta/gamma tables), the exponent sequence k_n
// with its three-case recurrence, and the periodic word whose prefix
// products never repeat. Plus finite-prefix self-intersection scans for
// arbitrary eventually periodic sequences.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tapegraph/group.hpp"

namespace tapegraph {

/// Evidence (not proof) that a word has infinite order: a^k != e for all
/// 1 <= k <= bound.
inline bool order_probe(TapeGraph const& graph, GroupWord const& a, uint64_t bound) {
  graph.check_word(a);
  CanonicalForm const e = graph.identity();
  CanonicalForm cur = e;
  for (uint64_t k = 1; k <= bound; ++k) {
    for (uint32_t g : a) cur = graph.apply(cur, g);
    if (cur == e) return false;
  }
  return true;
}

/// Exhaustively checks that no strictly shorter word names the same element.
inline bool is_minimal_expression(TapeGraph const& graph, GroupWord const& a) {
  if (a.empty()) return true;
  CanonicalForm const target = graph.canonicalize(a);
  size_t const n = graph.alphabet().size();
  std::vector<CanonicalForm> frontier{graph.identity()};
  if (frontier.front() == target) return false;
  for (size_t len = 1; len < a.size(); ++len) {
    std::vector<CanonicalForm> next;
    next.reserve(frontier.size() * n);
    for (auto const& cf : frontier) {
      for (uint32_t g = 0; g < n; ++g) {
        CanonicalForm c = graph.apply(cf, g);
        if (c == target) return false;
        next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  return true;
}

struct InfiniteOrderWitness {
  GroupWord word;  // h_0 .. h_{m-1}
  bool minimality_checked = false;
  uint64_t order_probe_bound = 0;
};

/// Probes the order and, on decidable backends, verifies minimality of the
/// expression. Semi-decidable backends leave minimality unchecked and rely
/// on escape verification as the safety net.
inline InfiniteOrderWitness make_infinite_order_witness(TapeGraph const& graph,
                                                        GroupWord const& a,
                                                        uint64_t probe_bound = 256) {
  if (a.empty()) throw Error("the identity has order 1");
  if (!order_probe(graph, a, probe_bound)) {
    throw Error("element has finite order within bound " + std::to_string(probe_bound));
  }
  InfiniteOrderWitness w{a, false, probe_bound};
  if (graph.decidable()) {
    if (!is_minimal_expression(graph, a)) {
      throw Error("expression is not of minimal length");
    }
    w.minimality_checked = true;
  }
  return w;
}

/// The alpha/beta/gamma bookkeeping, the extracted period of the gamma orbit,
/// and the resulting periodic escape word. M_max is recorded so the verifier
/// knows the search bound the tables were built with.
struct EscapeSchedule {
  std::map<uint32_t, std::set<std::pair<uint64_t, uint32_t>>> alpha;  // r -> {(M, s)}
  std::vector<uint64_t> beta;                                         // indexed by r
  std::vector<uint32_t> gamma;                                        // indexed by r
  std::vector<int64_t> k_seq;                                         // k_0 = -1, ...
  std::pair<uint64_t, uint64_t> period{0, 0};                         // iterate indices (j1, j2)
  GroupWord escape_word;                                              // one full period
  uint64_t m_max = 0;

  bool alpha_empty(uint32_t r) const {
    auto it = alpha.find(r);
    return it == alpha.end() || it->second.empty();
  }
};

namespace detail {

// k_{n+1} - k_n as a function of the current gamma iterate.
inline int64_t k_increment(EscapeSchedule const& s, uint32_t r_iter, uint32_t m) {
  if (s.alpha_empty(r_iter)) return r_iter == m - 1 ? 1 : 0;
  return static_cast<int64_t>(s.beta[r_iter]) + 1;
}

}  // namespace detail

/// Scans delta(r, s, M) = (h_{r+1}..h_{m-1}) a^M (h_0..h_{s-1}) = e over
/// 0 <= M <= M_max, builds alpha/beta/gamma, and follows the gamma orbit from
/// m-1 until it cycles; the escape word is one full period of generators.
inline EscapeSchedule compute_schedule(TapeGraph const& graph, InfiniteOrderWitness const& w,
                                       uint64_t m_max = 64) {
  GroupWord const& h = w.word;
  if (h.empty()) throw Error("witness word is empty");
  graph.check_word(h);
  uint32_t const m = static_cast<uint32_t>(h.size());
  CanonicalForm const e = graph.identity();

  EscapeSchedule sched;
  sched.m_max = m_max;
  sched.beta.assign(m, 0);
  sched.gamma.assign(m, 0);

  for (uint32_t r = 0; r < m; ++r) {
    // suffix h_{r+1} .. h_{m-1}, then one more copy of a per M step
    CanonicalForm base = e;
    for (uint32_t i = r + 1; i < m; ++i) base = graph.apply(base, h[i]);
    for (uint64_t M = 0; M <= m_max; ++M) {
      CanonicalForm cur = base;  // delta(r, s=0, M)
      for (uint32_t s = 0; s < m; ++s) {
        if (s > 0) cur = graph.apply(cur, h[s - 1]);
        if (cur == e) {
          // At most one M per s (infinite order) and one s per M (minimality).
          for (auto const& [pm, ps] : sched.alpha[r]) {
            if (ps == s) {
              throw Error("two exponents solve the same relation; element order looks finite");
            }
            if (pm == M) {
              throw Error("two cut points solve the same relation; expression looks non-minimal");
            }
          }
          sched.alpha[r].insert({M, s});
        }
      }
      for (uint32_t g : h) base = graph.apply(base, g);
    }
    if (sched.alpha_empty(r)) {
      sched.beta[r] = 0;
      sched.gamma[r] = (r + 1) % m;
    } else {
      auto const& best = *sched.alpha[r].rbegin();  // pairs sort by M first
      sched.beta[r] = best.first;
      sched.gamma[r] = best.second;
    }
  }

  // The gamma orbit from m-1 is eventually periodic; extract one full cycle
  // with Floyd's tortoise and hare. Iterate indices are 1-based: the escape
  // sequence is h_{gamma(m-1)}, h_{gamma^2(m-1)}, ...
  auto f = [&](uint32_t r) { return sched.gamma[r]; };
  uint32_t const start = m - 1;
  uint32_t tortoise = f(start);
  uint32_t hare = f(f(start));
  while (tortoise != hare) {
    tortoise = f(tortoise);
    hare = f(f(hare));
  }
  uint64_t mu = 0;
  tortoise = start;
  while (tortoise != hare) {
    tortoise = f(tortoise);
    hare = f(hare);
    ++mu;
  }
  uint64_t lambda = 1;
  hare = f(tortoise);
  while (tortoise != hare) {
    hare = f(hare);
    ++lambda;
  }
  uint64_t const j1 = mu == 0 ? 1 : mu;
  uint64_t const j2 = j1 + lambda - 1;
  sched.period = {j1, j2};

  uint32_t it = start;
  std::vector<uint32_t> iterates;  // v_1 .. v_{j2}
  for (uint64_t i = 1; i <= j2; ++i) {
    it = f(it);
    iterates.push_back(it);
  }
  for (uint64_t i = j1; i <= j2; ++i) sched.escape_word.push_back(h[iterates[i - 1]]);

  // k_0 = -1 and the three-case recurrence, recorded one period deep.
  sched.k_seq.push_back(-1);
  uint32_t r_iter = start;
  for (uint64_t n = 0; n < j2; ++n) {
    sched.k_seq.push_back(sched.k_seq.back() + detail::k_increment(sched, r_iter, m));
    r_iter = f(r_iter);
  }
  return sched;
}

namespace detail {

inline CanonicalForm fold_power(TapeGraph const& graph, CanonicalForm cf, GroupWord const& a,
                                int64_t k, std::vector<uint32_t> const& inverse) {
  if (k >= 0) {
    for (int64_t i = 0; i < k; ++i) {
      for (uint32_t g : a) cf = graph.apply(cf, g);
    }
  } else {
    for (int64_t i = 0; i < -k; ++i) {
      for (size_t j = a.size(); j-- > 0;) cf = graph.apply(cf, inverse[a[j]]);
    }
  }
  return cf;
}

}  // namespace detail

/// Checks prod_{i=1}^{n} h_{gamma^i(m-1)} = a^{k_n} h_0 .. h_{gamma^n(m-1)}
/// in the group for all 1 <= n <= n_max, advancing k_n by the recurrence.
inline bool verify_prefix_lemma(TapeGraph const& graph, EscapeSchedule const& sched,
                                InfiniteOrderWitness const& w, uint64_t n_max) {
  GroupWord const& h = w.word;
  uint32_t const m = static_cast<uint32_t>(h.size());
  std::vector<uint32_t> const& inv = graph.alphabet().inverse;

  CanonicalForm lhs = graph.identity();
  int64_t k = -1;
  uint32_t r_iter = m - 1;  // gamma^0(m-1)
  for (uint64_t n = 1; n <= n_max; ++n) {
    k += detail::k_increment(sched, r_iter, m);
    r_iter = sched.gamma[r_iter];
    lhs = graph.apply(lhs, h[r_iter]);  // multiply by h_{gamma^n(m-1)}

    CanonicalForm rhs = detail::fold_power(graph, graph.identity(), h, k, inv);
    for (uint32_t j = 0; j <= r_iter; ++j) rhs = graph.apply(rhs, h[j]);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

/// True iff the first N prefix products of the periodic repetition of `seq`
/// are pairwise distinct elements (the identity at step 0 included).
inline bool verify_escape(TapeGraph const& graph, GroupWord const& seq, uint64_t steps) {
  if (seq.empty()) throw Error("empty periodic word");
  graph.check_word(seq);
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  CanonicalForm cur = graph.identity();
  seen.insert(cur);
  for (uint64_t j = 0; j < steps; ++j) {
    cur = graph.apply(cur, seq[j % seq.size()]);
    if (!seen.insert(cur).second) return false;
  }
  return true;
}

/// Finite description of an eventually periodic generator sequence.
struct PeriodicWord {
  GroupWord head;
  GroupWord cycle;

  uint32_t at(uint64_t j) const {  // 0-based
    if (j < head.size()) return head[j];
    if (cycle.empty()) throw Error("sequence exhausted and no cycle");
    return cycle[(j - head.size()) % cycle.size()];
  }
};

/// Least j <= N whose prefix product equals an earlier one (the identity at
/// step 0 counts), or nothing if the first N products are all new.
inline std::optional<uint64_t> self_intersection_scan(TapeGraph const& graph,
                                                      PeriodicWord const& seq, uint64_t steps) {
  graph.check_word(seq.head);
  graph.check_word(seq.cycle);
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  CanonicalForm cur = graph.identity();
  seen.insert(cur);
  for (uint64_t j = 1; j <= steps; ++j) {
    cur = graph.apply(cur, seq.at(j - 1));
    if (!seen.insert(cur).second) return j;
  }
  return std::nullopt;
}

}  // namespace tapegraph
