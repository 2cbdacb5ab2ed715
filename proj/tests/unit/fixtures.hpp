#pragma once

// Shared test fixtures: the four standard tape graphs built in code, plus
// independent element evaluators used as oracles against the library's
// canonical forms (integer sums for Z and Z^2, isometries of Z for the
// infinite dihedral group, integer matrices for F2).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tapegraph/group.hpp"
#include "tapegraph/standard_tm.hpp"

namespace fixtures {

using tapegraph::GroupDescription;
using tapegraph::GroupWord;
using tapegraph::TapeGraph;

inline TapeGraph z_graph() {
  GroupDescription d;
  d.kind = "free_abelian";
  d.generators = {"-1", "+1"};
  d.inverses = {{"-1", "+1"}, {"+1", "-1"}};
  return TapeGraph::from_description(d);
}

inline TapeGraph z2_graph() {
  GroupDescription d;
  d.kind = "free_abelian";
  d.generators = {"-x", "-y", "+x", "+y"};
  d.inverses = {{"-x", "+x"}, {"+x", "-x"}, {"-y", "+y"}, {"+y", "-y"}};
  return TapeGraph::from_description(d);
}

inline TapeGraph f2_graph() {
  GroupDescription d;
  d.kind = "free_group";
  d.generators = {"x", "X", "y", "Y"};
  d.inverses = {{"x", "X"}, {"X", "x"}, {"y", "Y"}, {"Y", "y"}};
  return TapeGraph::from_description(d);
}

inline TapeGraph dihedral_graph() {
  GroupDescription d;
  d.kind = "infinite_dihedral";
  d.generators = {"a", "b"};
  d.inverses = {{"a", "a"}, {"b", "b"}};
  return TapeGraph::from_description(d);
}

inline TapeGraph dihedral_fp_graph(uint64_t budget = 2000000) {
  GroupDescription d;
  d.kind = "finitely_presented";
  d.generators = {"a", "b"};
  d.inverses = {{"a", "a"}, {"b", "b"}};
  d.relators = {{"a", "a"}, {"b", "b"}};
  d.budget = budget;
  return TapeGraph::from_description(d);
}

// ---------------------------------------------------------------------------
// independent evaluators

// z_graph: generator 0 is -1, generator 1 is +1
inline int64_t z_eval(GroupWord const& w) {
  int64_t v = 0;
  for (uint32_t g : w) v += g == 1 ? 1 : -1;
  return v;
}

// z2_graph: generators -x, -y, +x, +y in that order
inline std::pair<int64_t, int64_t> z2_eval(GroupWord const& w) {
  int64_t x = 0, y = 0;
  for (uint32_t g : w) {
    switch (g) {
      case 0: x -= 1; break;
      case 1: y -= 1; break;
      case 2: x += 1; break;
      default: y += 1; break;
    }
  }
  return {x, y};
}

// dihedral_graph: a and b act on Z as x -> -x and x -> -x + 1; an element is
// the isometry (sign, translation).
struct DihedralElem {
  int64_t sign = 1;
  int64_t trans = 0;
  friend bool operator==(DihedralElem const&, DihedralElem const&) = default;
};

inline DihedralElem dihedral_eval(GroupWord const& w) {
  DihedralElem acc;
  for (uint32_t g : w) {
    int64_t s = -1;
    int64_t t = g == 0 ? 0 : 1;
    acc = DihedralElem{acc.sign * s, acc.trans + acc.sign * t};
  }
  return acc;
}

// f2_graph: x, y map to the integer matrices [[1,2],[0,1]] and [[1,0],[2,1]],
// which generate a free group.
struct Mat2 {
  std::array<int64_t, 4> m{1, 0, 0, 1};
  friend bool operator==(Mat2 const&, Mat2 const&) = default;
};

inline Mat2 mat_mul(Mat2 const& a, Mat2 const& b) {
  return Mat2{{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
               a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

inline Mat2 f2_eval(GroupWord const& w) {
  static const std::array<Mat2, 4> gens = {
      Mat2{{1, 2, 0, 1}},   // x
      Mat2{{1, -2, 0, 1}},  // X
      Mat2{{1, 0, 2, 1}},   // y
      Mat2{{1, 0, -2, 1}},  // Y
  };
  Mat2 acc;
  for (uint32_t g : w) acc = mat_mul(acc, gens[g]);
  return acc;
}

// ---------------------------------------------------------------------------
// machines

inline tapegraph::StandardTM successor_tm() {
  tapegraph::StandardTM tm({"q0", "scan", "accept"}, {"_", "1"}, "_", {"1"}, "q0", {"accept"});
  tm.set_rule("q0", "_", "scan", "_", tapegraph::Direction::Right);
  tm.set_rule("q0", "1", "scan", "1", tapegraph::Direction::Right);
  tm.set_rule("scan", "1", "scan", "1", tapegraph::Direction::Right);
  tm.set_rule("scan", "_", "accept", "1", tapegraph::Direction::Left);
  tm.validate();
  return tm;
}

inline tapegraph::StandardTM right_runner_tm() {
  tapegraph::StandardTM tm({"go"}, {"_", "1"}, "_", {"1"}, "go", {});
  tm.set_rule("go", "_", "go", "1", tapegraph::Direction::Right);
  tm.set_rule("go", "1", "go", "1", tapegraph::Direction::Right);
  tm.validate();
  return tm;
}

inline std::string fixture_path(std::string const& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

// All words over `gens` generators of length <= max_len, in shortlex order.
inline std::vector<GroupWord> all_words(uint32_t gens, size_t max_len) {
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

}  // namespace fixtures
