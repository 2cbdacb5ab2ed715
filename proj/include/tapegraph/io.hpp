#pragma once

// File formats: groups, machines, polynomials and bases as UTF-8 JSON,
// run traces as TSV. Loaders validate on the way in; serializers round-trip
// through the corresponding loader.

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tapegraph/algebra.hpp"
#include "tapegraph/group.hpp"
#include "tapegraph/machine.hpp"
#include "tapegraph/standard_tm.hpp"

namespace tapegraph::io {

using nlohmann::json;

class ParseError : public Error {
 public:
  explicit ParseError(std::string const& what) : Error(what) {}
};

inline json load_json_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (json::exception const& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(std::string const& path, json const& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// groups

inline GroupDescription group_from_json(json const& j) {
  GroupDescription desc;
  try {
    desc.kind = j.at("kind").get<std::string>();
    desc.generators = j.at("generators").get<std::vector<std::string>>();
    for (auto const& [k, v] : j.at("inverses").items()) {
      desc.inverses[k] = v.get<std::string>();
    }
    if (j.contains("relators")) {
      desc.relators = j.at("relators").get<std::vector<std::vector<std::string>>>();
    }
    if (j.contains("budget")) desc.budget = j.at("budget").get<uint64_t>();
    if (j.contains("table")) {
      desc.table = j.at("table").get<std::vector<std::vector<uint32_t>>>();
    }
    if (j.contains("generator_elements")) {
      desc.generator_elements = j.at("generator_elements").get<std::vector<uint32_t>>();
    }
    if (j.contains("identity_element")) {
      desc.identity_element = j.at("identity_element").get<uint32_t>();
    }
  } catch (json::exception const& e) {
    throw ParseError(std::string("group description: ") + e.what());
  }
  return desc;
}

inline json group_to_json(GroupDescription const& desc) {
  json j;
  j["kind"] = desc.kind;
  j["generators"] = desc.generators;
  json inv = json::object();
  for (auto const& [k, v] : desc.inverses) inv[k] = v;
  j["inverses"] = inv;
  if (!desc.relators.empty()) j["relators"] = desc.relators;
  if (desc.kind == "finitely_presented") j["budget"] = desc.budget;
  if (desc.kind == "finite_table") {
    j["table"] = desc.table;
    j["generator_elements"] = desc.generator_elements;
    j["identity_element"] = desc.identity_element;
  }
  return j;
}

inline TapeGraph load_group(std::string const& path) {
  return TapeGraph::from_description(group_from_json(load_json_file(path)));
}

// ---------------------------------------------------------------------------
// machines
//
// {"kind": "standard"|"graph", "states": [...], "alphabet": [...],
//  "blank": "_", "input": [...], "start": "q0", "terminals": [...],
//  "rules": [[state, read, state', write, move], ...]}
// Moves are "L"/"R" for standard machines, generator names or "STAY" for
// machines over a graph.

inline StandardTM standard_tm_from_json(json const& j) {
  try {
    if (j.value("kind", "standard") != "standard") {
      throw ParseError("expected a standard machine");
    }
    StandardTM tm(j.at("states").get<std::vector<std::string>>(),
                  j.at("alphabet").get<std::vector<std::string>>(),
                  j.at("blank").get<std::string>(),
                  j.at("input").get<std::vector<std::string>>(),
                  j.at("start").get<std::string>(),
                  j.at("terminals").get<std::vector<std::string>>());
    for (auto const& rule : j.at("rules")) {
      if (!rule.is_array() || rule.size() != 5) throw ParseError("rule must have 5 entries");
      std::string move = rule.at(4).get<std::string>();
      if (move != "L" && move != "R") throw ParseError("standard moves are L or R");
      tm.set_rule(rule.at(0).get<std::string>(), rule.at(1).get<std::string>(),
                  rule.at(2).get<std::string>(), rule.at(3).get<std::string>(),
                  move == "L" ? Direction::Left : Direction::Right);
    }
    tm.validate();
    return tm;
  } catch (json::exception const& e) {
    throw ParseError(std::string("machine description: ") + e.what());
  }
}

inline MachineSpec machine_spec_from_json(json const& j, GeneratorAlphabet const& alph) {
  try {
    if (j.value("kind", "graph") != "graph") {
      throw ParseError("expected a machine over a graph");
    }
    MachineSpec spec(j.at("states").get<std::vector<std::string>>(),
                     j.at("alphabet").get<std::vector<std::string>>(),
                     j.at("blank").get<std::string>(),
                     j.at("input").get<std::vector<std::string>>(),
                     j.at("start").get<std::string>(),
                     j.at("terminals").get<std::vector<std::string>>());
    for (auto const& rule : j.at("rules")) {
      if (!rule.is_array() || rule.size() != 5) throw ParseError("rule must have 5 entries");
      std::string move = rule.at(4).get<std::string>();
      spec.set_rule(rule.at(0).get<std::string>(), rule.at(1).get<std::string>(),
                    rule.at(2).get<std::string>(), rule.at(3).get<std::string>(),
                    move == "STAY" ? Move::stay() : Move::generator(alph.index_of(move)));
    }
    spec.validate(alph);
    return spec;
  } catch (json::exception const& e) {
    throw ParseError(std::string("machine description: ") + e.what());
  }
}

inline json standard_tm_to_json(StandardTM const& tm) {
  json j;
  j["kind"] = "standard";
  j["states"] = tm.states();
  j["alphabet"] = tm.symbols();
  j["blank"] = tm.symbols()[tm.blank()];
  j["input"] = tm.input_names();
  j["start"] = tm.states()[tm.start()];
  j["terminals"] = tm.terminal_names();
  json rules = json::array();
  for (uint32_t q = 0; q < tm.states().size(); ++q) {
    if (tm.is_terminal(q)) continue;
    for (uint32_t s = 0; s < tm.symbols().size(); ++s) {
      StandardAction const& act = tm.action(q, s);
      rules.push_back({tm.states()[q], tm.symbols()[s], tm.states()[act.next_state],
                       tm.symbols()[act.write], act.dir == Direction::Left ? "L" : "R"});
    }
  }
  j["rules"] = rules;
  return j;
}

inline json machine_spec_to_json(MachineSpec const& spec, GeneratorAlphabet const& alph) {
  json j;
  j["kind"] = "graph";
  j["states"] = spec.states();
  j["alphabet"] = spec.symbols();
  j["blank"] = spec.symbols()[spec.blank()];
  j["input"] = spec.input_names();
  j["start"] = spec.states()[spec.start()];
  j["terminals"] = spec.terminal_names();
  json rules = json::array();
  for (uint32_t q = 0; q < spec.states().size(); ++q) {
    if (spec.is_terminal(q)) continue;
    for (uint32_t s = 0; s < spec.symbols().size(); ++s) {
      MachineAction const& act = spec.action(q, s);
      rules.push_back({spec.states()[q], spec.symbols()[s], spec.states()[act.next_state],
                       spec.symbols()[act.write],
                       act.move.is_stay() ? "STAY" : alph.names[act.move.gen()]});
    }
  }
  j["rules"] = rules;
  return j;
}

inline void write_trace_tsv(std::ostream& out, RunTrace const& trace) {
  out << "step\tstate\thead\tread\twrite\tmove\n";
  for (auto const& e : trace) {
    out << e.step << '\t' << e.state << '\t' << e.head_word << '\t' << e.read << '\t' << e.write
        << '\t' << e.move << '\n';
  }
}

inline json trace_to_json(RunTrace const& trace) {
  json arr = json::array();
  for (auto const& e : trace) {
    arr.push_back({{"step", e.step},
                   {"state", e.state},
                   {"head", e.head_word},
                   {"read", e.read},
                   {"write", e.write},
                   {"move", e.move}});
  }
  return arr;
}

// ---------------------------------------------------------------------------
// polynomials: sorted lists of monomial strings like "1", "x1", "x1^2*x2"

inline std::string render_monomial(algebra::Monomial const& m) {
  if (m.empty()) return "1";
  std::string out;
  size_t i = 0;
  while (i < m.size()) {
    size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!out.empty()) out += '*';
    out += "x" + std::to_string(m[i] + 1);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

inline algebra::Monomial parse_monomial(std::string const& text, size_t d) {
  algebra::Monomial m;
  if (text == "1") return m;
  std::stringstream ss(text);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    if (factor.empty() || factor[0] != 'x') throw ParseError("bad monomial factor: " + factor);
    size_t caret = factor.find('^');
    std::string idx_text = factor.substr(1, caret == std::string::npos ? std::string::npos
                                                                       : caret - 1);
    size_t power = 1;
    if (caret != std::string::npos) power = std::stoull(factor.substr(caret + 1));
    size_t idx = std::stoull(idx_text);
    if (idx < 1 || idx > d) throw ParseError("indeterminate out of range: " + factor);
    m.insert(m.end(), power, static_cast<uint8_t>(idx - 1));
  }
  return m;
}

inline json poly_to_json(algebra::TruncatedPoly const& p) {
  json j;
  j["d"] = p.d;
  j["trunc"] = p.trunc;
  json mons = json::array();
  for (auto const& m : p.monomials) mons.push_back(render_monomial(m));
  j["monomials"] = mons;
  return j;
}

inline algebra::TruncatedPoly poly_from_json(json const& j) {
  try {
    algebra::TruncatedPoly p;
    p.d = j.at("d").get<size_t>();
    p.trunc = j.at("trunc").get<size_t>();
    for (auto const& text : j.at("monomials")) {
      algebra::Monomial m = parse_monomial(text.get<std::string>(), p.d);
      if (m.size() > p.trunc) throw ParseError("monomial exceeds truncation: " + text.dump());
      p.monomials.insert(std::move(m));
    }
    return p;
  } catch (json::exception const& e) {
    throw ParseError(std::string("polynomial: ") + e.what());
  }
}

inline json basis_to_json(algebra::HomogeneousBasis const& b) {
  json j;
  j["d"] = b.d;
  j["trunc"] = b.trunc;
  json polys = json::array();
  for (auto const& p : b.polys) {
    json mons = json::array();
    for (auto const& m : p.monomials) mons.push_back(render_monomial(m));
    polys.push_back(mons);
  }
  j["polys"] = polys;
  return j;
}

inline algebra::HomogeneousBasis basis_from_json(json const& j) {
  try {
    algebra::HomogeneousBasis b;
    b.d = j.at("d").get<size_t>();
    b.trunc = j.at("trunc").get<size_t>();
    for (auto const& mons : j.at("polys")) {
      algebra::TruncatedPoly p{b.d, b.trunc, {}};
      for (auto const& text : mons) {
        p.monomials.insert(parse_monomial(text.get<std::string>(), b.d));
      }
      b.polys.push_back(std::move(p));
    }
    b.validate();
    return b;
  } catch (json::exception const& e) {
    throw ParseError(std::string("basis: ") + e.what());
  }
}

}  // namespace tapegraph::io
