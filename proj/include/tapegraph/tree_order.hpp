#pragma once

// Super-reduced word trees and their lexicographic order: the well-ordered
// subtree approximated to a finite depth, and the greedy minimal infinite
// path. A word is super-reduced exactly when its prefix products are pairwise
// distinct, so membership tests ride on canonical forms.

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "tapegraph/group.hpp"

namespace tapegraph {

enum class Ordering { Less, Equal, Greater };

/// Lexicographic comparison under the generator order, with a proper prefix
/// ordered below its extensions (a node precedes everything in its subtree).
inline Ordering lex_compare(GroupWord const& u, GroupWord const& v) {
  size_t n = std::min(u.size(), v.size());
  for (size_t i = 0; i < n; ++i) {
    if (u[i] != v[i]) return u[i] < v[i] ? Ordering::Less : Ordering::Greater;
  }
  if (u.size() == v.size()) return Ordering::Equal;
  return u.size() < v.size() ? Ordering::Less : Ordering::Greater;
}

inline bool is_prefix(GroupWord const& u, GroupWord const& v) {
  if (u.size() > v.size()) return false;
  return std::equal(u.begin(), u.end(), v.begin());
}

/// True iff no contiguous subword of w multiplies to the identity, i.e. all
/// prefix products are distinct elements. The empty word is super-reduced.
inline bool is_super_reduced(TapeGraph const& graph, GroupWord const& w) {
  graph.check_word(w);
  std::unordered_set<CanonicalForm, CanonicalFormHash> prefixes;
  CanonicalForm cur = graph.identity();
  prefixes.insert(cur);
  for (uint32_t g : w) {
    cur = graph.apply(cur, g);
    if (!prefixes.insert(cur).second) return false;
  }
  return true;
}

namespace detail {

struct SrDfs {
  TapeGraph const& graph;

  // Can `cur` (super-reduced, with prefix products = trail) be extended to a
  // super-reduced word of total length `target`?
  bool extendable(std::vector<CanonicalForm>& trail,
                  std::unordered_set<CanonicalForm, CanonicalFormHash>& seen, size_t depth,
                  size_t target) const {
    if (depth == target) return true;
    for (uint32_t g = 0; g < graph.alphabet().size(); ++g) {
      CanonicalForm next = graph.apply(trail.back(), g);
      if (seen.contains(next)) continue;
      trail.push_back(next);
      seen.insert(next);
      bool ok = extendable(trail, seen, depth + 1, target);
      seen.erase(trail.back());
      trail.pop_back();
      if (ok) return true;
    }
    return false;
  }

  void enumerate(std::vector<CanonicalForm>& trail,
                 std::unordered_set<CanonicalForm, CanonicalFormHash>& seen, GroupWord& word,
                 size_t max_depth, std::vector<GroupWord>& out) const {
    out.push_back(word);
    if (word.size() == max_depth) return;
    for (uint32_t g = 0; g < graph.alphabet().size(); ++g) {
      CanonicalForm next = graph.apply(trail.back(), g);
      if (seen.contains(next)) continue;
      trail.push_back(next);
      seen.insert(next);
      word.push_back(g);
      enumerate(trail, seen, word, max_depth, out);
      word.pop_back();
      seen.erase(trail.back());
      trail.pop_back();
    }
  }
};

}  // namespace detail

/// All super-reduced words of length <= max_depth, in depth-first generator
/// order (which is also lexicographic order).
inline std::vector<GroupWord> enumerate_super_reduced(TapeGraph const& graph, size_t max_depth) {
  detail::SrDfs dfs{graph};
  std::vector<CanonicalForm> trail{graph.identity()};
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen{graph.identity()};
  GroupWord word;
  std::vector<GroupWord> out;
  dfs.enumerate(trail, seen, word, max_depth, out);
  return out;
}

class NoPathError : public Error {
 public:
  explicit NoPathError(std::string const& what) : Error(what) {}
};

/// Length-`depth` prefix of the minimal infinite path, computed greedily: at
/// each node take the least child that still extends to a super-reduced word
/// of the full length.
inline GroupWord minimal_path_prefix(TapeGraph const& graph, size_t depth) {
  detail::SrDfs dfs{graph};
  std::vector<CanonicalForm> trail{graph.identity()};
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen{graph.identity()};
  GroupWord word;
  while (word.size() < depth) {
    bool advanced = false;
    for (uint32_t g = 0; g < graph.alphabet().size() && !advanced; ++g) {
      CanonicalForm next = graph.apply(trail.back(), g);
      if (seen.contains(next)) continue;
      trail.push_back(next);
      seen.insert(next);
      if (dfs.extendable(trail, seen, word.size() + 1, depth)) {
        word.push_back(g);
        advanced = true;
      } else {
        seen.erase(trail.back());
        trail.pop_back();
      }
    }
    if (!advanced) {
      throw NoPathError("no super-reduced word of length " + std::to_string(depth));
    }
  }
  return word;
}

/// First k members, in lexicographic order, of the depth-bounded
/// approximation of the well-ordered subtree: nodes that are below (prefix or
/// lexicographically less than) every super-reduced word of the full depth.
inline std::vector<GroupWord> tprime_prefix(TapeGraph const& graph, size_t depth, size_t k) {
  if (k == 0) return {};
  std::vector<GroupWord> nodes = enumerate_super_reduced(graph, depth);
  std::vector<GroupWord> proxies;
  for (auto const& w : nodes) {
    if (w.size() == depth) proxies.push_back(w);
  }
  std::vector<GroupWord> result;
  for (auto const& v : nodes) {
    bool below_all = true;
    for (auto const& s : proxies) {
      if (is_prefix(v, s)) continue;
      if (lex_compare(v, s) != Ordering::Less) {
        below_all = false;
        break;
      }
    }
    if (below_all) {
      result.push_back(v);
      if (result.size() == k) break;  // enumeration order is lexicographic
    }
  }
  return result;
}

}  // namespace tapegraph
