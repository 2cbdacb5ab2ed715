#pragma once

// Compiles a standard one-dimensional TM into a machine over an arbitrary
// tape graph. The compiled machine stores the simulated tape on a spanning
// tree it discovers on-line, one well-ordered node per simulated cell.
//
// Tape symbols are quadruples (gamma, sigma, A, B): the simulated symbol, the
// generator leading one step toward the tree root, the set of tree edges
// pointing away from the root, and the set of edges ruled out of the tree.
// States come in five families:
//   C q    computing; the simulated machine is in state q
//   R q x  moving right; x is the edge (parent-side label) just exhausted
//   L q x  moving left; x bounds the branches still below the start
//   E q x  probing a fresh cell along edge x
//   B q x  backtracking after a failed probe along x
// The two sentinels g0 < every generator < gmax act as identity moves and
// only survive inside state names, where they serve as -inf/+inf markers.
//
// When a rootward move hands x to the parent, the label is stored as the
// parent-side (downward) edge name, i.e. the inverse of the sigma pointer
// that was followed; the A/B comparisons in the L and R rows happen at the
// parent and read parent-side labels.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tapegraph/group.hpp"
#include "tapegraph/machine.hpp"
#include "tapegraph/standard_tm.hpp"

namespace tapegraph {

namespace sprime {

// S' codes: 0 is g0, 1..n are the generators shifted by one, n+1 is gmax.
constexpr uint32_t kG0 = 0;
inline uint32_t code(uint32_t gen) { return gen + 1; }
inline uint32_t gen_of(uint32_t code) { return code - 1; }
inline uint32_t gmax(size_t n) { return static_cast<uint32_t>(n) + 1; }
inline bool is_sentinel(uint32_t c, size_t n) { return c == kG0 || c == gmax(n); }

inline std::string token(uint32_t c, GeneratorAlphabet const& alph) {
  if (c == kG0) return "^";
  if (c == gmax(alph.size())) return "$";
  return alph.names.at(gen_of(c));
}

inline uint32_t parse_token(std::string const& tok, GeneratorAlphabet const& alph) {
  if (tok == "^") return kG0;
  if (tok == "$") return gmax(alph.size());
  return code(alph.index_of(tok));
}

}  // namespace sprime

enum class CompiledKind : char { C = 'C', R = 'R', L = 'L', E = 'E', B = 'B' };

namespace detail {

inline std::vector<std::string> split(std::string const& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline std::string join_mask(uint32_t mask, GeneratorAlphabet const& alph) {
  std::string out;
  for (uint32_t g = 0; g < alph.size(); ++g) {
    if ((mask >> g) & 1u) {
      if (!out.empty()) out += ',';
      out += alph.names[g];
    }
  }
  return out;
}

inline uint32_t parse_mask(std::string const& text, GeneratorAlphabet const& alph) {
  uint32_t mask = 0;
  for (auto const& name : split(text, ',')) {
    if (name.empty()) continue;
    mask |= 1u << alph.index_of(name);
  }
  return mask;
}

}  // namespace detail

inline std::string compiled_state_name(CompiledKind kind, std::string const& q,
                                       uint32_t x_code, GeneratorAlphabet const& alph) {
  std::string name(1, static_cast<char>(kind));
  name += ':';
  name += q;
  if (kind != CompiledKind::C) {
    name += ':';
    name += sprime::token(x_code, alph);
  }
  return name;
}

inline std::string compiled_symbol_name(std::string const& gamma, uint32_t sigma_code,
                                        uint32_t a_mask, uint32_t b_mask,
                                        GeneratorAlphabet const& alph) {
  return gamma + ";" + sprime::token(sigma_code, alph) + ";" + detail::join_mask(a_mask, alph) +
         ";" + detail::join_mask(b_mask, alph);
}

/// Emits a MachineSpec over the graph whose transition table is the
/// simulation table, row for row: five state families over the simulated
/// state set, tape symbols (gamma, sigma, A, B) with A and B disjoint, blank
/// (b, g0, {}, {}), and sentinel moves emitted as Stay.
inline MachineSpec compile(StandardTM const& m, TapeGraph const& graph) {
  m.validate();
  GeneratorAlphabet const& alph = graph.alphabet();
  alph.validate();
  size_t const n = alph.size();
  if (n > 16) throw Error("tape alphabet too large to compile (3^|S| symbol annotations)");
  uint32_t const gmax = sprime::gmax(n);

  for (auto const& name : m.states()) {
    for (char c : name) {
      if (c == ':' || c == ';' || c == ',') throw Error("state name not compilable: " + name);
    }
  }
  for (auto const& name : m.symbols()) {
    for (char c : name) {
      if (c == ':' || c == ';' || c == ',') throw Error("symbol name not compilable: " + name);
    }
  }

  // State families, enumerated C, R, L, E, B.
  std::vector<std::string> states;
  for (auto const& q : m.states()) states.push_back(compiled_state_name(CompiledKind::C, q, 0, alph));
  for (auto kind : {CompiledKind::R, CompiledKind::L}) {
    for (auto const& q : m.states()) {
      for (uint32_t x = 0; x <= gmax; ++x) {
        states.push_back(compiled_state_name(kind, q, x, alph));
      }
    }
  }
  for (auto kind : {CompiledKind::E, CompiledKind::B}) {
    for (auto const& q : m.states()) {
      for (uint32_t g = 0; g < n; ++g) {
        states.push_back(compiled_state_name(kind, q, sprime::code(g), alph));
      }
    }
  }

  // Disjoint (A, B) mask pairs, ranked.
  std::vector<std::pair<uint32_t, uint32_t>> ab_pairs;
  uint32_t const full = n >= 32 ? 0xffffffffu : ((1u << n) - 1);
  for (uint32_t a = 0; a <= full; ++a) {
    for (uint32_t b = 0; b <= full; ++b) {
      if ((a & b) == 0) ab_pairs.emplace_back(a, b);
    }
  }

  std::vector<std::string> symbols;
  for (auto const& gamma : m.symbols()) {
    for (uint32_t sigma = 0; sigma <= gmax; ++sigma) {
      for (auto const& [a, b] : ab_pairs) {
        symbols.push_back(compiled_symbol_name(gamma, sigma, a, b, alph));
      }
    }
  }
  size_t const per_gamma = (gmax + 1) * ab_pairs.size();
  std::unordered_map<uint64_t, size_t> ab_rank;
  for (size_t i = 0; i < ab_pairs.size(); ++i) {
    ab_rank[(static_cast<uint64_t>(ab_pairs[i].first) << 32) | ab_pairs[i].second] = i;
  }
  auto symbol_of = [&](uint32_t gamma, uint32_t sigma, uint32_t a, uint32_t b) -> uint32_t {
    auto it = ab_rank.find((static_cast<uint64_t>(a) << 32) | b);
    if (it == ab_rank.end()) throw Error("A and B sets overlap");
    return static_cast<uint32_t>(gamma * per_gamma + sigma * ab_pairs.size() + it->second);
  };

  std::string const blank_name =
      compiled_symbol_name(m.symbols()[m.blank()], sprime::kG0, 0, 0, alph);
  std::vector<std::string> input_names;
  for (auto const& s : m.input_names()) {
    for (uint32_t sigma = 0; sigma <= gmax; ++sigma) {
      for (auto const& [a, b] : ab_pairs) {
        input_names.push_back(compiled_symbol_name(s, sigma, a, b, alph));
      }
    }
  }
  std::vector<std::string> terminal_names;
  for (auto const& q : m.terminal_names()) {
    terminal_names.push_back(compiled_state_name(CompiledKind::C, q, 0, alph));
  }
  std::string const start_name =
      compiled_state_name(CompiledKind::C, m.states()[m.start()], 0, alph);

  MachineSpec spec(states, symbols, blank_name, input_names, start_name, terminal_names);

  // State ids follow the enumeration order above.
  size_t const nq = m.states().size();
  size_t const ns = gmax + 1;
  auto c_id = [&](uint32_t q) -> uint32_t { return q; };
  auto r_id = [&](uint32_t q, uint32_t x) -> uint32_t {
    return static_cast<uint32_t>(nq + q * ns + x);
  };
  auto l_id = [&](uint32_t q, uint32_t x) -> uint32_t {
    return static_cast<uint32_t>(nq + nq * ns + q * ns + x);
  };
  auto e_id = [&](uint32_t q, uint32_t g) -> uint32_t {
    return static_cast<uint32_t>(nq + 2 * nq * ns + q * n + g);
  };
  auto b_id = [&](uint32_t q, uint32_t g) -> uint32_t {
    return static_cast<uint32_t>(nq + 2 * nq * ns + nq * n + q * n + g);
  };

  // Rootward moves hand the traversed edge to the parent under its
  // parent-side name: the inverse of the sigma pointer followed.
  auto down_code = [&](uint32_t sigma) -> uint32_t {
    if (sprime::is_sentinel(sigma, n)) return sigma;
    return sprime::code(alph.inverse_of(sprime::gen_of(sigma)));
  };
  auto move_of = [&](uint32_t sigma) -> Move {
    if (sprime::is_sentinel(sigma, n)) return Move::stay();
    return Move::generator(sprime::gen_of(sigma));
  };

  for (uint32_t sym = 0; sym < symbols.size(); ++sym) {
    uint32_t const gamma = static_cast<uint32_t>(sym / per_gamma);
    uint32_t const sigma = static_cast<uint32_t>((sym % per_gamma) / ab_pairs.size());
    auto const [a_mask, b_mask] = ab_pairs[sym % ab_pairs.size()];
    uint32_t const keep = sym;  // write-back of the unchanged symbol

    for (uint32_t q = 0; q < nq; ++q) {
      // C row: run one simulated step, then turn right or left.
      if (!m.is_terminal(q)) {
        StandardAction const& act = m.action(q, gamma);
        uint32_t written = symbol_of(act.write, sigma, a_mask, b_mask);
        if (act.dir == Direction::Right) {
          spec.set_rule_ids(c_id(q), sym, {r_id(act.next_state, sprime::kG0), written, Move::stay()});
        } else {
          spec.set_rule_ids(c_id(q), sym,
                            {l_id(act.next_state, down_code(sigma)), written, move_of(sigma)});
        }
      }

      for (uint32_t x = 0; x <= gmax; ++x) {
        // L row: either every tree branch here is >= x and this cell is the
        // predecessor, or descend the greatest branch below x and keep
        // chasing greatest children (x = gmax) until a dead end.
        {
          bool has_lower = false;
          uint32_t best = 0;
          for (uint32_t g = 0; g < n; ++g) {
            if (((a_mask >> g) & 1u) && sprime::code(g) < x) {
              has_lower = true;
              best = g;
            }
          }
          if (!has_lower) {
            spec.set_rule_ids(l_id(q, x), sym, {c_id(q), keep, Move::stay()});
          } else {
            spec.set_rule_ids(l_id(q, x), sym, {l_id(q, gmax), keep, Move::generator(best)});
          }
        }
        // R row: use the tree above x if it exists, else probe the least
        // unruled edge past x, else climb toward the root.
        {
          uint32_t next_tree = 0;
          bool has_tree = false;
          for (uint32_t g = n; g-- > 0;) {
            if (((a_mask >> g) & 1u) && sprime::code(g) > x) {
              next_tree = g;
              has_tree = true;
            }
          }
          uint32_t probe = 0;
          bool has_probe = false;
          for (uint32_t g = n; g-- > 0;) {
            if (!((b_mask >> g) & 1u) && sprime::code(g) > x) {
              probe = g;
              has_probe = true;
            }
          }
          if (has_tree) {
            spec.set_rule_ids(r_id(q, x), sym, {c_id(q), keep, Move::generator(next_tree)});
          } else if (has_probe) {
            uint32_t written = symbol_of(gamma, sigma, a_mask | (1u << probe), b_mask);
            spec.set_rule_ids(r_id(q, x), sym,
                              {e_id(q, probe), written, Move::generator(probe)});
          } else {
            spec.set_rule_ids(r_id(q, x), sym, {r_id(q, down_code(sigma)), keep, move_of(sigma)});
          }
        }
      }

      for (uint32_t g = 0; g < n; ++g) {
        uint32_t const inv = alph.inverse_of(g);
        // E row: a blank-annotated cell is genuinely new; otherwise back out.
        if (a_mask == 0 && b_mask == 0) {
          uint32_t written = symbol_of(gamma, sprime::code(inv), 0, 1u << inv);
          spec.set_rule_ids(e_id(q, g), sym, {c_id(q), written, Move::stay()});
        } else {
          spec.set_rule_ids(e_id(q, g), sym, {b_id(q, g), keep, Move::generator(inv)});
        }
        // B row: rule the failed edge out of the tree and resume the search.
        {
          uint32_t written = symbol_of(gamma, sigma, a_mask & ~(1u << g), b_mask | (1u << g));
          spec.set_rule_ids(b_id(q, g), sym, {r_id(q, sprime::code(g)), written, Move::stay()});
        }
      }
    }
  }

  spec.validate(alph);
  return spec;
}

/// Decoded view of a compiled machine, reconstructed by parsing the
/// structured state and symbol names.
struct CompiledView {
  struct StateInfo {
    CompiledKind kind;
    std::string q;    // simulated state name
    uint32_t x = 0;   // S' code (R/L/E/B only)
  };
  struct SymbolInfo {
    std::string gamma;  // simulated symbol name
    uint32_t sigma = 0;
    uint32_t a_mask = 0;
    uint32_t b_mask = 0;
  };

  std::vector<StateInfo> state_info;
  std::vector<SymbolInfo> symbol_info;

  static CompiledView parse(MachineSpec const& spec, GeneratorAlphabet const& alph) {
    CompiledView view;
    for (auto const& name : spec.states()) {
      auto parts = detail::split(name, ':');
      if (parts.size() < 2 || parts[0].size() != 1) throw Error("unparsable state: " + name);
      StateInfo info;
      info.kind = static_cast<CompiledKind>(parts[0][0]);
      info.q = parts[1];
      if (info.kind != CompiledKind::C) {
        if (parts.size() != 3) throw Error("unparsable state: " + name);
        info.x = sprime::parse_token(parts[2], alph);
      }
      view.state_info.push_back(std::move(info));
    }
    for (auto const& name : spec.symbols()) {
      auto parts = detail::split(name, ';');
      if (parts.size() != 4) throw Error("unparsable symbol: " + name);
      view.symbol_info.push_back({parts[0], sprime::parse_token(parts[1], alph),
                                  detail::parse_mask(parts[2], alph),
                                  detail::parse_mask(parts[3], alph)});
    }
    return view;
  }
};

/// Drives the compiled machine's own rightward rows to lay the input on the
/// first cells of the on-line tree in well order, then follows sigma pointers
/// back to the root and arms the start state. Input symbols are single-char
/// names of the simulated machine's input alphabet.
inline Configuration transcribe_input(MachineSpec const& compiled, TapeGraph const& graph,
                                      std::string const& input,
                                      uint64_t nav_fuel = 1000000) {
  CompiledView view = CompiledView::parse(compiled, graph.alphabet());
  Configuration cfg = initial_configuration(compiled, graph);
  std::string const q0 = view.state_info[compiled.start()].q;
  uint32_t const rq0 = compiled.state_id(
      compiled_state_name(CompiledKind::R, q0, sprime::kG0, graph.alphabet()));

  for (char c : input) {
    cfg.state = rq0;
    uint64_t guard = 0;
    while (view.state_info[cfg.state].kind != CompiledKind::C) {
      if (++guard > nav_fuel) throw Error("transcription navigation did not terminate");
      cfg = step(compiled, graph, cfg);
    }
    auto const& sym = view.symbol_info[cfg.read(compiled)];
    uint32_t rewritten = compiled.symbol_id(compiled_symbol_name(
        std::string(1, c), sym.sigma, sym.a_mask, sym.b_mask, graph.alphabet()));
    if (!compiled.is_input_symbol(rewritten)) {
      throw Error(std::string("not an input symbol: ") + c);
    }
    cfg.write(compiled, cfg.head, rewritten);
  }

  // Follow sigma pointers home.
  uint64_t guard = 0;
  while (true) {
    if (++guard > nav_fuel) throw Error("transcription return walk did not terminate");
    uint32_t sigma = view.symbol_info[cfg.read(compiled)].sigma;
    if (sigma == sprime::kG0) break;
    cfg.head = graph.apply(cfg.head, sprime::gen_of(sigma));
  }
  cfg.state = compiled.start();
  cfg.steps = 0;
  return cfg;
}

struct BisimReport {
  bool equivalent = false;
  uint64_t states_compared = 0;
  bool direct_halted = false;
  bool compiled_halted = false;
  bool out_of_fuel = false;
  std::string mismatch;  // empty when equivalent
};

/// Runs the machine directly and its compilation over the graph, projects the
/// compiled trace to its C-state visits, and checks that visit i sees the
/// same simulated state and read symbol as the direct run's step i.
inline BisimReport bisimulate(StandardTM const& m, TapeGraph const& graph,
                              std::string const& input, uint64_t fuel) {
  BisimReport report;
  StandardRunResult direct = standard_run(m, standard_initial(m, input), fuel);
  report.direct_halted = direct.halted;

  MachineSpec compiled = compile(m, graph);
  CompiledView view = CompiledView::parse(compiled, graph.alphabet());
  Configuration cfg = transcribe_input(compiled, graph, input);

  std::vector<std::pair<std::string, std::string>> visits;  // (state, read gamma)
  for (uint64_t i = 0; i <= fuel; ++i) {
    auto const& st = view.state_info[cfg.state];
    if (st.kind == CompiledKind::C) {
      visits.emplace_back(st.q, view.symbol_info[cfg.read(compiled)].gamma);
    }
    if (compiled.is_terminal(cfg.state)) {
      report.compiled_halted = true;
      break;
    }
    if (i == fuel) {
      report.out_of_fuel = true;
      break;
    }
    cfg = step(compiled, graph, cfg);
  }

  uint64_t const both = std::min<uint64_t>(visits.size(), direct.trace.size());
  report.states_compared = both;
  for (uint64_t i = 0; i < both; ++i) {
    std::string const& dq = m.states()[direct.trace[i].state];
    std::string const& dr = m.symbols()[direct.trace[i].read];
    if (visits[i].first != dq || visits[i].second != dr) {
      report.mismatch = "step " + std::to_string(i) + ": compiled (" + visits[i].first + ", " +
                        visits[i].second + ") vs direct (" + dq + ", " + dr + ")";
      return report;
    }
  }
  if (report.compiled_halted && report.direct_halted && visits.size() != direct.trace.size()) {
    report.mismatch = "halted after different step counts";
    return report;
  }
  if (report.compiled_halted && !report.direct_halted && direct.trace.size() > visits.size()) {
    report.mismatch = "compiled machine halted early";
    return report;
  }
  report.equivalent = true;
  return report;
}

/// Words at which the compiled machine first created a tree node (an E-state
/// reading a blank-annotated cell), in creation order.
inline std::vector<GroupWord> visitation_order(MachineSpec const& compiled, TapeGraph const& graph,
                                               uint64_t fuel) {
  CompiledView view = CompiledView::parse(compiled, graph.alphabet());
  Configuration cfg = initial_configuration(compiled, graph);
  std::unordered_map<CanonicalForm, GroupWord, CanonicalFormHash> word_of;
  word_of.emplace(cfg.head, GroupWord{});

  std::vector<GroupWord> created;
  for (uint64_t i = 0; i < fuel; ++i) {
    if (compiled.is_terminal(cfg.state)) break;
    uint32_t read = cfg.read(compiled);
    MachineAction const& act = compiled.action(cfg.state, read);
    CanonicalForm prev = cfg.head;
    cfg = step(compiled, graph, cfg);
    if (!act.move.is_stay() && !word_of.contains(cfg.head)) {
      GroupWord w = word_of.at(prev);
      w.push_back(act.move.gen());
      word_of.emplace(cfg.head, std::move(w));
    }
    auto const& st = view.state_info[cfg.state];
    if (st.kind == CompiledKind::E) {
      auto const& sym = view.symbol_info[cfg.read(compiled)];
      if (sym.a_mask == 0 && sym.b_mask == 0) created.push_back(word_of.at(cfg.head));
    }
  }
  return created;
}

}  // namespace tapegraph
