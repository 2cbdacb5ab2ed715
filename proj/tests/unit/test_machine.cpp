#include <doctest.h>

#include <vector>

#include "fixtures.hpp"
#include "tapegraph/machine.hpp"

using namespace tapegraph;

namespace {

// One-state machine writing 1 and moving by the given generator forever.
MachineSpec drifter(TapeGraph const& graph, std::string const& gen) {
  MachineSpec spec({"go"}, {"_", "1"}, "_", {"1"}, "go", {});
  spec.set_rule("go", "_", "go", "1", Move::generator(graph.alphabet().index_of(gen)));
  spec.set_rule("go", "1", "go", "1", Move::generator(graph.alphabet().index_of(gen)));
  spec.validate(graph.alphabet());
  return spec;
}

// Successor machine over Z as a native graph machine: scan along +1, append a
// 1 at the first blank.
MachineSpec successor_over_z(TapeGraph const& z) {
  MachineSpec spec({"q0", "scan", "accept"}, {"_", "1"}, "_", {"1"}, "q0", {"accept"});
  uint32_t plus = z.alphabet().index_of("+1");
  spec.set_rule("q0", "_", "scan", "_", Move::generator(plus));
  spec.set_rule("q0", "1", "scan", "1", Move::generator(plus));
  spec.set_rule("scan", "1", "scan", "1", Move::generator(plus));
  spec.set_rule("scan", "_", "accept", "1", Move::stay());
  spec.validate(z.alphabet());
  return spec;
}

}  // namespace

TEST_CASE("step") {
  auto z = fixtures::z_graph();
  SUBCASE("write and move") {
    MachineSpec spec = drifter(z, "+1");
    Configuration cfg = initial_configuration(spec, z);
    Configuration next = step(spec, z, cfg);
    CHECK(next.steps == 1);
    CHECK(next.head.data == std::vector<int32_t>{1});
    CHECK(next.tape.at(z.identity()) == spec.symbol_id("1"));
  }
  SUBCASE("stay leaves the head in place") {
    MachineSpec spec({"p", "q"}, {"_", "1"}, "_", {"1"}, "p", {"q"});
    spec.set_rule("p", "_", "q", "1", Move::stay());
    spec.set_rule("p", "1", "q", "1", Move::stay());
    Configuration cfg = initial_configuration(spec, z);
    Configuration next = step(spec, z, cfg);
    CHECK(next.head == cfg.head);
    CHECK(next.steps == 1);
  }
  SUBCASE("head moves through the oracle's canonical forms") {
    auto d = fixtures::dihedral_graph();
    MachineSpec spec = drifter(d, "b");
    Configuration cfg = initial_configuration(spec, d);
    cfg.head = d.canonicalize({0});  // at [a]
    Configuration next = step(spec, d, cfg);
    CHECK(next.head == d.canonicalize({0, 1}));  // [a b]
  }
  SUBCASE("stepping a terminal state is an error") {
    MachineSpec spec({"stop"}, {"_"}, "_", {}, "stop", {"stop"});
    Configuration cfg = initial_configuration(spec, z);
    CHECK_THROWS_AS(step(spec, z, cfg), Error);
  }
}

TEST_CASE("run") {
  auto z = fixtures::z_graph();
  SUBCASE("zero fuel returns the configuration unchanged") {
    MachineSpec spec = drifter(z, "+1");
    Configuration cfg = initial_configuration(spec, z);
    auto [end, trace, halt] = run(spec, z, cfg, 0);
    CHECK(end.steps == 0);
    CHECK(trace.empty());
    CHECK_FALSE(halt.is_terminal());
  }
  SUBCASE("unary successor turns 111 into 1111 and accepts") {
    MachineSpec spec = successor_over_z(z);
    Configuration cfg = initial_configuration(spec, z);
    uint32_t one = spec.symbol_id("1");
    for (int i = 1; i <= 3; ++i) {
      cfg.tape[z.canonicalize(GroupWord(i, 1))] = one;  // cells +1, +2, +3
    }
    auto [end, trace, halt] = run(spec, z, cfg, 100);
    REQUIRE(halt.is_terminal());
    CHECK(halt.state == "accept");
    CHECK(end.tape.size() == 4);
    for (int i = 1; i <= 4; ++i) {
      CHECK(end.tape.at(z.canonicalize(GroupWord(i, 1))) == one);
    }
  }
  SUBCASE("runaway machine reports OutOfFuel at the right cell") {
    MachineSpec spec({"q"}, {"_"}, "_", {}, "q", {});
    spec.set_rule("q", "_", "q", "_", Move::generator(z.alphabet().index_of("+1")));
    Configuration cfg = initial_configuration(spec, z);
    auto [end, trace, halt] = run(spec, z, cfg, 10);
    CHECK_FALSE(halt.is_terminal());
    CHECK(end.head.data == std::vector<int32_t>{10});
    CHECK(end.steps == 10);
  }
  SUBCASE("runs are deterministic") {
    MachineSpec spec = successor_over_z(z);
    Configuration cfg = initial_configuration(spec, z);
    cfg.tape[z.canonicalize({1})] = spec.symbol_id("1");
    auto [end1, trace1, halt1] = run(spec, z, cfg, 50);
    auto [end2, trace2, halt2] = run(spec, z, cfg, 50);
    CHECK(end1.steps == end2.steps);
    REQUIRE(trace1.size() == trace2.size());
    for (size_t i = 0; i < trace1.size(); ++i) {
      CHECK(trace1[i].state == trace2[i].state);
      CHECK(trace1[i].head_word == trace2[i].head_word);
    }
  }
  SUBCASE("tape support never exceeds steps plus initial support") {
    MachineSpec spec = drifter(z, "-1");
    Configuration cfg = initial_configuration(spec, z);
    size_t initial = cfg.tape.size();
    auto [end, trace, halt] = run(spec, z, cfg, 37);
    CHECK(end.tape.size() <= initial + end.steps);
  }
}

TEST_CASE("word_problem_walk") {
  auto z = fixtures::z_graph();
  CHECK(word_problem_walk(z, {1, 1}, {1, 1}));
  CHECK(word_problem_walk(z, {1, 0}, {}));  // +1 -1 vs empty
  auto d = fixtures::dihedral_graph();
  CHECK_FALSE(word_problem_walk(d, {0, 1}, {1, 0}));  // ab vs ba

  SUBCASE("writes exactly one pointer per u-step, even on self-intersections") {
    WalkStats stats;
    // +1 -1 +1 -1 revisits the origin and cell 1 twice each
    CHECK(word_problem_walk(z, {1, 0, 1, 0}, {}, &stats));
    CHECK(stats.pointer_writes == 4);
    CHECK(stats.pointer_pops == 4);
  }

  SUBCASE("agrees with words_equal on all pairs to length 4") {
    for (auto const& g : {fixtures::z_graph(), fixtures::dihedral_graph()}) {
      auto words = fixtures::all_words(2, 4);
      for (auto const& u : words) {
        for (auto const& v : words) {
          CHECK(word_problem_walk(g, u, v) == (g.words_equal(u, v) == WordVerdict::Equal));
        }
      }
    }
    auto f2 = fixtures::f2_graph();
    for (auto const& u : fixtures::all_words(4, 2)) {
      for (auto const& v : fixtures::all_words(4, 2)) {
        CHECK(word_problem_walk(f2, u, v) == (f2.words_equal(u, v) == WordVerdict::Equal));
      }
    }
  }
}

TEST_CASE("transition tables must be total") {
  auto z = fixtures::z_graph();
  MachineSpec spec({"p"}, {"_", "1"}, "_", {"1"}, "p", {});
  spec.set_rule("p", "_", "p", "1", Move::stay());
  CHECK_THROWS_AS(spec.validate(z.alphabet()), Error);  // (p, 1) missing
}
