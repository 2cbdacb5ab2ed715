#pragma once

// Turing machines whose tape is a tape graph. The head is a canonical form,
// the tape a sparse map from canonical forms to symbols, and every head move
// goes through the group backend: this is the oracle simulation where the
// machine "maintains a list of nodes" keyed by resolved addresses. Also home
// to the pointer-trail word problem walk.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tapegraph/group.hpp"

namespace tapegraph {

/// Head move: one generator of the bound alphabet, or stay put.
struct Move {
  static constexpr int32_t kStay = -1;
  int32_t value = kStay;

  static Move stay() { return Move{}; }
  static Move generator(uint32_t g) { return Move{static_cast<int32_t>(g)}; }
  bool is_stay() const { return value < 0; }
  uint32_t gen() const { return static_cast<uint32_t>(value); }
  friend bool operator==(Move const& a, Move const& b) { return a.value == b.value; }
};

struct MachineAction {
  uint32_t next_state = 0;
  uint32_t write = 0;
  Move move;
};

/// The 7-tuple over (G, S). States and tape symbols are interned strings;
/// delta must be total on (Q \ F) x Gamma.
class MachineSpec {
 public:
  MachineSpec(std::vector<std::string> states, std::vector<std::string> symbols,
              std::string const& blank, std::vector<std::string> const& input,
              std::string const& start, std::vector<std::string> const& terminals)
      : states_(std::move(states)), symbols_(std::move(symbols)) {
    for (uint32_t i = 0; i < states_.size(); ++i) {
      if (!state_ids_.emplace(states_[i], i).second) {
        throw Error("duplicate state name: " + states_[i]);
      }
    }
    for (uint32_t i = 0; i < symbols_.size(); ++i) {
      if (!symbol_ids_.emplace(symbols_[i], i).second) {
        throw Error("duplicate tape symbol: " + symbols_[i]);
      }
    }
    blank_ = symbol_id(blank);
    start_ = state_id(start);
    terminal_.assign(states_.size(), false);
    for (auto const& t : terminals) terminal_[state_id(t)] = true;
    input_.assign(symbols_.size(), false);
    for (auto const& s : input) {
      uint32_t id = symbol_id(s);
      if (id == blank_) throw Error("blank symbol cannot be an input symbol");
      input_[id] = true;
    }
    delta_.assign(states_.size() * symbols_.size(), std::nullopt);
  }

  void set_rule(std::string const& state, std::string const& read, std::string const& next,
                std::string const& write, Move move) {
    set_rule_ids(state_id(state), symbol_id(read), {state_id(next), symbol_id(write), move});
  }

  void set_rule_ids(uint32_t state, uint32_t read, MachineAction action) {
    if (terminal_[state]) throw Error("transition out of terminal state " + states_[state]);
    auto& slot = delta_[state * symbols_.size() + read];
    if (slot.has_value()) {
      throw Error("duplicate transition for (" + states_[state] + ", " + symbols_[read] + ")");
    }
    slot = action;
  }

  /// Missing entries on non-terminal states are a load-time error.
  void validate(GeneratorAlphabet const& alph) const {
    for (uint32_t q = 0; q < states_.size(); ++q) {
      if (terminal_[q]) continue;
      for (uint32_t s = 0; s < symbols_.size(); ++s) {
        auto const& slot = delta_[q * symbols_.size() + s];
        if (!slot.has_value()) {
          throw Error("transition table not total: missing (" + states_[q] + ", " + symbols_[s] +
                      ")");
        }
        if (!slot->move.is_stay() && slot->move.gen() >= alph.size()) {
          throw Error("transition moves by unknown generator");
        }
      }
    }
  }

  uint32_t state_id(std::string const& name) const {
    auto it = state_ids_.find(name);
    if (it == state_ids_.end()) throw Error("unknown state: " + name);
    return it->second;
  }
  uint32_t symbol_id(std::string const& name) const {
    auto it = symbol_ids_.find(name);
    if (it == symbol_ids_.end()) throw Error("unknown tape symbol: " + name);
    return it->second;
  }

  std::vector<std::string> const& states() const { return states_; }
  std::vector<std::string> const& symbols() const { return symbols_; }
  uint32_t blank() const { return blank_; }
  uint32_t start() const { return start_; }
  bool is_terminal(uint32_t q) const { return terminal_.at(q); }
  bool is_input_symbol(uint32_t s) const { return input_.at(s); }
  std::vector<std::string> terminal_names() const {
    std::vector<std::string> out;
    for (uint32_t q = 0; q < states_.size(); ++q) {
      if (terminal_[q]) out.push_back(states_[q]);
    }
    return out;
  }
  std::vector<std::string> input_names() const {
    std::vector<std::string> out;
    for (uint32_t s = 0; s < symbols_.size(); ++s) {
      if (input_[s]) out.push_back(symbols_[s]);
    }
    return out;
  }

  MachineAction const& action(uint32_t state, uint32_t read) const {
    auto const& slot = delta_[state * symbols_.size() + read];
    if (!slot.has_value()) throw Error("undefined transition");
    return *slot;
  }

 private:
  std::vector<std::string> states_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, uint32_t> state_ids_;
  std::unordered_map<std::string, uint32_t> symbol_ids_;
  uint32_t blank_ = 0;
  uint32_t start_ = 0;
  std::vector<bool> terminal_;
  std::vector<bool> input_;
  std::vector<std::optional<MachineAction>> delta_;
};

/// Running state: cells absent from the map hold the blank, and blank writes
/// delete entries so the map is a faithful support set.
struct Configuration {
  uint32_t state = 0;
  CanonicalForm head;
  std::unordered_map<CanonicalForm, uint32_t, CanonicalFormHash> tape;
  uint64_t steps = 0;

  uint32_t read(MachineSpec const& spec) const {
    auto it = tape.find(head);
    return it == tape.end() ? spec.blank() : it->second;
  }

  void write(MachineSpec const& spec, CanonicalForm const& cell, uint32_t symbol) {
    if (symbol == spec.blank()) {
      tape.erase(cell);
    } else {
      tape[cell] = symbol;
    }
  }
};

inline Configuration initial_configuration(MachineSpec const& spec, TapeGraph const& graph) {
  Configuration cfg;
  cfg.state = spec.start();
  cfg.head = graph.identity();
  (void)spec;
  return cfg;
}

struct TraceEntry {
  uint64_t step;
  std::string state;
  std::string head_word;
  std::string read;
  std::string write;
  std::string move;  // generator name or "STAY"
};

using RunTrace = std::vector<TraceEntry>;

struct HaltReason {
  enum class Kind { Terminal, OutOfFuel } kind = Kind::OutOfFuel;
  std::string state;

  static HaltReason terminal(std::string s) { return {Kind::Terminal, std::move(s)}; }
  static HaltReason out_of_fuel() { return {Kind::OutOfFuel, ""}; }
  bool is_terminal() const { return kind == Kind::Terminal; }
};

/// Applies delta once: write, then move the head by the generator (resolved
/// through the oracle) or stay.
inline Configuration step(MachineSpec const& spec, TapeGraph const& graph,
                          Configuration const& cfg) {
  if (spec.is_terminal(cfg.state)) throw Error("step on terminal state");
  uint32_t read = cfg.read(spec);
  MachineAction const& act = spec.action(cfg.state, read);
  Configuration next = cfg;
  next.write(spec, cfg.head, act.write);
  if (!act.move.is_stay()) next.head = graph.apply(cfg.head, act.move.gen());
  next.state = act.next_state;
  next.steps = cfg.steps + 1;
  return next;
}

/// Iterates step until a terminal state or the fuel runs out.
inline std::tuple<Configuration, RunTrace, HaltReason> run(MachineSpec const& spec,
                                                           TapeGraph const& graph,
                                                           Configuration cfg, uint64_t fuel,
                                                           bool keep_trace = true) {
  RunTrace trace;
  for (uint64_t i = 0; i < fuel; ++i) {
    if (spec.is_terminal(cfg.state)) {
      return {cfg, trace, HaltReason::terminal(spec.states()[cfg.state])};
    }
    uint32_t read = cfg.read(spec);
    MachineAction const& act = spec.action(cfg.state, read);
    if (keep_trace) {
      trace.push_back({cfg.steps, spec.states()[cfg.state], graph.render_element(cfg.head),
                       spec.symbols()[read], spec.symbols()[act.write],
                       act.move.is_stay() ? "STAY" : graph.alphabet().names[act.move.gen()]});
    }
    Configuration next = std::move(cfg);
    next.write(spec, next.head, act.write);
    if (!act.move.is_stay()) next.head = graph.apply(next.head, act.move.gen());
    next.state = act.next_state;
    next.steps += 1;
    cfg = std::move(next);
  }
  if (spec.is_terminal(cfg.state)) {
    return {cfg, trace, HaltReason::terminal(spec.states()[cfg.state])};
  }
  return {cfg, trace, HaltReason::out_of_fuel()};
}

/// Diagnostics from the pointer-trail walk, exposed for tests.
struct WalkStats {
  uint64_t pointer_writes = 0;
  uint64_t pointer_pops = 0;
};

/// The word problem solved as a head-level walk on a fresh sparse tape:
/// follow u writing at each cell the inverse of the generator just traversed
/// (the pointer back), mark the final cell, follow the pointers back to the
/// origin, then follow v and report whether the arrival cell is marked.
///
/// A self-intersecting u-walk would overwrite a live pointer, so each cell
/// keeps a stack of (visit index, pointer) pairs and the return phase pops
/// them in reverse visit order.
inline bool word_problem_walk(TapeGraph const& graph, GroupWord const& u, GroupWord const& v,
                              WalkStats* stats = nullptr) {
  graph.check_word(u);
  graph.check_word(v);

  // The tape stays tiny (at most |u|+1 cells), so a flat vector with linear
  // scans beats hashing. Pointer stacks are threaded through `entries` via
  // per-cell top indices.
  struct Cell {
    CanonicalForm cf;
    int32_t top = -1;
  };
  struct PointerEntry {
    uint64_t visit;
    uint32_t back;
    int32_t below;
  };
  std::vector<Cell> tape;
  std::vector<PointerEntry> entries;
  tape.reserve(u.size() + 1);
  entries.reserve(u.size());
  auto cell_of = [&](CanonicalForm const& cf) -> Cell& {
    for (auto& c : tape) {
      if (c.cf == cf) return c;
    }
    tape.push_back(Cell{cf, -1});
    return tape.back();
  };

  CanonicalForm const origin = graph.identity();

  // Phase 1: walk u, leaving at each cell a pointer back to its predecessor.
  CanonicalForm cur = origin;
  for (size_t i = 0; i < u.size(); ++i) {
    cur = graph.apply(cur, u[i]);
    Cell& cell = cell_of(cur);
    entries.push_back({i + 1, graph.alphabet().inverse_of(u[i]), cell.top});
    cell.top = static_cast<int32_t>(entries.size() - 1);
    if (stats != nullptr) stats->pointer_writes += 1;
  }
  CanonicalForm const marked = cur;

  // Phase 2: follow pointers back to the origin, consuming them newest-first.
  for (size_t i = u.size(); i > 0; --i) {
    Cell& cell = cell_of(cur);
    if (cell.top < 0) throw Error("pointer trail broken during return walk");
    PointerEntry const& entry = entries[cell.top];
    if (entry.visit != i) throw Error("pointer trail out of order during return walk");
    cell.top = entry.below;
    if (stats != nullptr) stats->pointer_pops += 1;
    cur = graph.apply(cur, entry.back);
  }
  if (!(cur == origin)) throw Error("return walk did not reach the origin");

  // Phase 3: walk v and test the mark.
  for (uint32_t g : v) cur = graph.apply(cur, g);
  return cur == marked;
}

}  // namespace tapegraph
