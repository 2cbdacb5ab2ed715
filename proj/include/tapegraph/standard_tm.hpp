#pragma once

// Classical one-dimensional one-tape Turing machine, in the one-way form the
// compiler targets: cell 0 is blank at start, input occupies cells 1..k, the
// head starts on cell 0, and a left move at the origin stays put.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tapegraph/group.hpp"

namespace tapegraph {

enum class Direction { Left, Right };

struct StandardAction {
  uint32_t next_state = 0;
  uint32_t write = 0;
  Direction dir = Direction::Right;
};

class StandardTM {
 public:
  StandardTM(std::vector<std::string> states, std::vector<std::string> symbols,
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
                std::string const& write, Direction dir) {
    uint32_t q = state_id(state);
    if (terminal_[q]) throw Error("transition out of terminal state " + state);
    auto& slot = delta_[q * symbols_.size() + symbol_id(read)];
    if (slot.has_value()) throw Error("duplicate transition for (" + state + ", " + read + ")");
    slot = StandardAction{state_id(next), symbol_id(write), dir};
  }

  void validate() const {
    for (uint32_t q = 0; q < states_.size(); ++q) {
      if (terminal_[q]) continue;
      for (uint32_t s = 0; s < symbols_.size(); ++s) {
        if (!delta_[q * symbols_.size() + s].has_value()) {
          throw Error("transition table not total: missing (" + states_[q] + ", " + symbols_[s] +
                      ")");
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

  StandardAction const& action(uint32_t state, uint32_t read) const {
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
  std::vector<std::optional<StandardAction>> delta_;
};

struct StandardConfiguration {
  uint32_t state = 0;
  size_t head = 0;
  std::vector<uint32_t> tape;  // grows on demand; entries are symbol ids
  uint64_t steps = 0;
};

inline StandardConfiguration standard_initial(StandardTM const& tm, std::string const& input) {
  StandardConfiguration cfg;
  cfg.state = tm.start();
  cfg.tape.assign(input.size() + 2, tm.blank());
  for (size_t i = 0; i < input.size(); ++i) {
    uint32_t s = tm.symbol_id(std::string(1, input[i]));
    if (!tm.is_input_symbol(s)) throw Error("not an input symbol: " + std::string(1, input[i]));
    cfg.tape[i + 1] = s;
  }
  return cfg;
}

struct StandardStep {
  uint32_t state;  // state before the step
  uint32_t read;   // symbol read before the step
  size_t head;
};

struct StandardRunResult {
  StandardConfiguration final_cfg;
  std::vector<StandardStep> trace;  // one entry per step, plus the halting configuration
  bool halted = false;
};

inline StandardRunResult standard_run(StandardTM const& tm, StandardConfiguration cfg,
                                      uint64_t fuel) {
  StandardRunResult result;
  for (uint64_t i = 0; i <= fuel; ++i) {
    uint32_t read = cfg.tape.at(cfg.head);
    result.trace.push_back({cfg.state, read, cfg.head});
    if (tm.is_terminal(cfg.state)) {
      result.halted = true;
      break;
    }
    if (i == fuel) break;
    StandardAction const& act = tm.action(cfg.state, read);
    cfg.tape[cfg.head] = act.write;
    if (act.dir == Direction::Right) {
      cfg.head += 1;
      if (cfg.head == cfg.tape.size()) cfg.tape.push_back(tm.blank());
    } else if (cfg.head > 0) {
      cfg.head -= 1;  // left at the origin stays
    }
    cfg.state = act.next_state;
    cfg.steps += 1;
  }
  result.final_cfg = std::move(cfg);
  return result;
}

}  // namespace tapegraph
