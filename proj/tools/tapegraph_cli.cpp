// tapegraph: Turing machines on Cayley-graph tapes.
//
// One binary, one subcommand per library operation: validate groups, run and
// compile machines, check bisimulations, solve word problems by pointer
// walks, enumerate tree orders, search for even subwords, do truncated F2
// algebra, and build verified escapes.
//
// Exit codes: 0 success / verification passed, 1 verification failed,
// 2 usage or parse errors.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tapegraph/algebra.hpp"
#include "tapegraph/compiler.hpp"
#include "tapegraph/escape.hpp"
#include "tapegraph/group.hpp"
#include "tapegraph/io.hpp"
#include "tapegraph/machine.hpp"
#include "tapegraph/standard_tm.hpp"
#include "tapegraph/tree_order.hpp"
#include "tapegraph/words.hpp"

namespace tg = tapegraph;
namespace io = tapegraph::io;

namespace {

struct RunConfig {
  std::string format = "tsv";
  uint64_t seed = 0;  // reserved for randomized subcommands
  bool quiet = false;
};

void info(RunConfig const& cfg, std::string const& line) {
  if (!cfg.quiet) std::cerr << line << "\n";
}

// "w=s" pairs for initial tape contents, w a word over the generators
std::pair<std::string, std::string> split_cell(std::string const& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw tg::Error("expected WORD=SYMBOL, got " + text);
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::vector<uint32_t> parse_construction_word(std::string const& text, size_t d) {
  // tokens s<i> for (1+x_i), S<i> for (1+x_i)^15
  std::vector<uint32_t> w;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    if (tok.size() < 2 || (tok[0] != 's' && tok[0] != 'S')) {
      throw tg::Error("expected s<i> or S<i>, got " + tok);
    }
    size_t i = std::stoull(tok.substr(1));
    if (i < 1 || i > d) throw tg::Error("indeterminate out of range in " + tok);
    w.push_back(static_cast<uint32_t>(2 * (i - 1) + (tok[0] == 'S' ? 1 : 0)));
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      tok += c;
    }
  }
  flush();
  return w;
}

std::map<size_t, tg::BigInt> load_degree_counts(std::string const& path) {
  auto j = io::load_json_file(path);
  std::map<size_t, tg::BigInt> r;
  for (auto const& [k, v] : j.items()) {
    r[std::stoull(k)] = tg::BigInt(v.get<long long>());
  }
  return r;
}

int cmd_validate(RunConfig const& cfg, std::string const& group_path) {
  tg::GroupDescription desc = io::group_from_json(io::load_json_file(group_path));
  try {
    tg::ValidationReport report = tg::validate_tape_graph(desc);
    for (auto const& item : report.items) {
      std::cout << item.restriction << "\t" << item.status << "\t" << item.note << "\n";
    }
    info(cfg, "valid tape graph");
    return 0;
  } catch (tg::InvalidAlphabet const& e) {
    std::cout << "inverse-closure\tfailed\t" << e.what() << "\n";
    return 1;
  } catch (tg::FiniteGroupError const& e) {
    std::cout << "infinite\tfailed\t" << e.what() << "\n";
    return 1;
  }
}

int cmd_run(RunConfig const& cfg, std::string const& machine_path, std::string const& group_path,
            uint64_t fuel, std::vector<std::string> const& cells, std::string const& head) {
  tg::TapeGraph graph = io::load_group(group_path);
  tg::MachineSpec spec =
      io::machine_spec_from_json(io::load_json_file(machine_path), graph.alphabet());
  tg::Configuration start = tg::initial_configuration(spec, graph);
  for (auto const& cell : cells) {
    auto [word_text, symbol] = split_cell(cell);
    tg::GroupWord w = tg::parse_word(graph.alphabet(), word_text);
    start.write(spec, graph.canonicalize(w), spec.symbol_id(symbol));
  }
  if (!head.empty()) start.head = graph.canonicalize(tg::parse_word(graph.alphabet(), head));

  auto [end, trace, halt] = tg::run(spec, graph, start, fuel);
  if (cfg.format == "json") {
    std::cout << io::trace_to_json(trace).dump(2) << "\n";
  } else {
    io::write_trace_tsv(std::cout, trace);
  }
  info(cfg, halt.is_terminal() ? "halted in terminal state " + halt.state
                               : "out of fuel after " + std::to_string(end.steps) + " steps");
  return 0;
}

int cmd_compile(RunConfig const& cfg, std::string const& machine_path,
                std::string const& group_path, std::string const& out_path) {
  tg::TapeGraph graph = io::load_group(group_path);
  tg::StandardTM m = io::standard_tm_from_json(io::load_json_file(machine_path));
  tg::MachineSpec compiled = tg::compile(m, graph);
  io::save_json_file(out_path, io::machine_spec_to_json(compiled, graph.alphabet()));
  info(cfg, "compiled " + std::to_string(compiled.states().size()) + " states over " +
                std::to_string(compiled.symbols().size()) + " tape symbols");
  return 0;
}

int cmd_bisim(RunConfig const& cfg, std::string const& machine_path,
              std::string const& group_path, std::string const& input, uint64_t fuel) {
  tg::TapeGraph graph = io::load_group(group_path);
  tg::StandardTM m = io::standard_tm_from_json(io::load_json_file(machine_path));
  tg::BisimReport report = tg::bisimulate(m, graph, input, fuel);
  std::cout << "states-compared\t" << report.states_compared << "\n";
  std::cout << "direct-halted\t" << (report.direct_halted ? "yes" : "no") << "\n";
  std::cout << "compiled-halted\t" << (report.compiled_halted ? "yes" : "no") << "\n";
  std::cout << "equivalent\t" << (report.equivalent ? "yes" : "no") << "\n";
  if (!report.mismatch.empty()) std::cout << "mismatch\t" << report.mismatch << "\n";
  return report.equivalent ? 0 : 1;
}

int cmd_wordproblem(RunConfig const& cfg, std::string const& group_path, std::string const& left,
                    std::string const& right) {
  tg::TapeGraph graph = io::load_group(group_path);
  tg::GroupWord u = tg::parse_word(graph.alphabet(), left);
  tg::GroupWord v = tg::parse_word(graph.alphabet(), right);
  bool walk = tg::word_problem_walk(graph, u, v);
  tg::WordVerdict oracle = graph.words_equal(u, v);
  std::cout << "walk\t" << (walk ? "equal" : "not-equal") << "\n";
  std::cout << "oracle\t" << tg::to_string(oracle) << "\n";
  info(cfg, walk ? "words name the same element" : "words name distinct elements");
  return walk ? 0 : 1;
}

int cmd_treeorder(RunConfig const& cfg, std::string const& group_path, size_t depth,
                  bool minimal_path, std::optional<size_t> tprime) {
  tg::TapeGraph graph = io::load_group(group_path);
  if (minimal_path) {
    std::cout << tg::render_word(graph.alphabet(), tg::minimal_path_prefix(graph, depth)) << "\n";
    return 0;
  }
  size_t k = tprime.value_or(8);
  for (auto const& w : tg::tprime_prefix(graph, depth, k)) {
    std::cout << tg::render_word(graph.alphabet(), w) << "\n";
  }
  info(cfg, "depth " + std::to_string(depth));
  return 0;
}

int cmd_evensubword(RunConfig const& cfg, std::string const& word, size_t depth, bool pirillo) {
  namespace w = tg::words;
  if (pirillo) {
    auto split = w::pirillo_pair_search(word, depth);
    if (!split.has_value()) {
      std::cout << "none\n";
      return 0;
    }
    std::cout << "w1\t" << split->w1 << "\n";
    std::cout << "w2\t" << split->w2 << "\n";
    std::cout << "interval\t" << split->first << "\t" << split->last << "\n";
    return 0;
  }
  auto iv = w::even_subword_search(word, depth);
  if (!iv.has_value()) {
    std::cout << "none\n";
    return 0;
  }
  std::string sub = word.substr(iv->first, iv->last - iv->first + 1);
  std::cout << "interval\t" << iv->first << "\t" << iv->last << "\n";
  std::cout << "subword\t" << sub << "\n";
  // verification report: every pattern count to the requested depth, with parity
  w::PatternTable table(w::alphabet_of(word), depth);
  bool all_even = true;
  for (auto const& p : table.patterns) {
    tg::BigInt count = w::subsequence_count(sub, p);
    bool even = count.div_floor_small(2) * tg::BigInt(2) == count;
    all_even = all_even && even;
    std::cout << "count\t" << p << "\t" << count.to_string() << "\t"
              << (even ? "even" : "odd") << "\n";
  }
  info(cfg, all_even ? "verified: all pattern counts even" : "verification failed");
  return all_even ? 0 : 1;
}

int cmd_algebra_binomial(RunConfig const& cfg, size_t d, size_t degree) {
  bool ok = true;
  for (size_t i = 0; i < d; ++i) {
    bool one = tg::algebra::binomial_inverse_check(i, d, degree);
    std::cout << "x" << (i + 1) << "\t" << (one ? "inverse-ok" : "inverse-broken") << "\n";
    ok = ok && one;
  }
  info(cfg, "(1+x_i)(1+x_i)^15 = 1 + x_i^16 at truncation " + std::to_string(degree));
  return ok ? 0 : 1;
}

int cmd_algebra_gs(RunConfig const&, size_t d, std::string const& r_path, size_t terms) {
  auto r = load_degree_counts(r_path);
  auto coeffs = tg::algebra::gs_series_coefficients(d, r, terms);
  bool nonneg = true;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    std::cout << k << "\t" << coeffs[k].to_string() << "\n";
    nonneg = nonneg && !coeffs[k].is_negative();
  }
  std::cout << "all-non-negative\t" << (nonneg ? "yes" : "no") << "\n";
  return 0;
}

int cmd_algebra_relator(RunConfig const& cfg, std::string const& word, size_t d, size_t r_lo,
                        size_t degree) {
  tg::algebra::ConstructionGenerators gens{d};
  auto w = parse_construction_word(word, d);
  try {
    auto comps = tg::algebra::relator_from_even_subword(w, gens, r_lo, degree);
    for (auto const& c : comps) {
      std::cout << c.degree();
      for (auto const& m : c.monomials) std::cout << "\t" << io::render_monomial(m);
      std::cout << "\n";
    }
    info(cfg, std::to_string(comps.size()) + " homogeneous components in (" +
                  std::to_string(r_lo) + ", " + std::to_string(degree) + "]");
    return 0;
  } catch (tg::algebra::LowDegreeResidue const& e) {
    std::cout << "low-degree-residue\t" << e.what() << "\n";
    return 1;
  }
}

int cmd_algebra_member(RunConfig const& cfg, std::string const& poly_path,
                       std::string const& basis_path, std::optional<size_t> degree) {
  auto poly = io::poly_from_json(io::load_json_file(poly_path));
  auto basis = io::basis_from_json(io::load_json_file(basis_path));
  if (degree.has_value() && (poly.trunc != *degree || basis.trunc != *degree)) {
    throw tg::Error("--degree " + std::to_string(*degree) +
                    " does not match the files' truncation degrees");
  }
  bool member = tg::algebra::ideal_membership(poly, basis);
  std::cout << (member ? "member" : "not-member") << "\n";
  info(cfg, "tested degree-wise against the homogeneous span");
  return 0;
}

int cmd_escape(RunConfig const& cfg, std::string const& group_path, std::string const& element,
               uint64_t m_max, uint64_t verify_steps, uint64_t lemma_steps) {
  tg::TapeGraph graph = io::load_group(group_path);
  tg::GroupWord a = tg::parse_word(graph.alphabet(), element);
  tg::InfiniteOrderWitness witness = tg::make_infinite_order_witness(graph, a);
  tg::EscapeSchedule sched = tg::compute_schedule(graph, witness, m_max);

  std::cout << "escape-word\t" << tg::render_word(graph.alphabet(), sched.escape_word) << "\n";
  std::cout << "period\t" << sched.period.first << "\t" << sched.period.second << "\n";
  for (uint32_t r = 0; r < witness.word.size(); ++r) {
    std::cout << "alpha(" << r << ")\t";
    if (sched.alpha_empty(r)) {
      std::cout << "{}";
    } else {
      for (auto const& [M, s] : sched.alpha.at(r)) std::cout << "(M=" << M << ",s=" << s << ") ";
    }
    std::cout << "\tbeta=" << sched.beta[r] << "\tgamma=" << sched.gamma[r] << "\n";
  }

  bool escape_ok = tg::verify_escape(graph, sched.escape_word, verify_steps);
  bool lemma_ok = tg::verify_prefix_lemma(graph, sched, witness, lemma_steps);
  std::cout << "verify-escape\t" << (escape_ok ? "pass" : "fail") << "\t" << verify_steps
            << " steps\n";
  std::cout << "verify-prefix-lemma\t" << (lemma_ok ? "pass" : "fail") << "\t" << lemma_steps
            << " terms\n";
  info(cfg, escape_ok && lemma_ok ? "escape verified" : "escape verification failed");
  return escape_ok && lemma_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turing machines on Cayley-graph tapes"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for randomized subcommands");
  app.add_option("--format", cfg.format, "trace output format (tsv|json)")
      ->check(CLI::IsMember({"tsv", "json"}));
  app.add_flag("--quiet", cfg.quiet, "suppress informational messages");

  std::string group_path, machine_path, out_path, input, word, left, right, element;
  std::string poly_path, basis_path, r_path;
  uint64_t fuel = 10000, m_max = 64, verify_steps = 2000, lemma_steps = 200, seed_terms = 20;
  size_t depth = 6, d = 2, degree = 16, r_lo = 1;
  std::vector<std::string> cells;
  std::string head_word;
  bool minimal_path = false, pirillo = false;
  std::optional<size_t> tprime;

  auto* validate = app.add_subcommand("validate", "check the tape restrictions for a group");
  validate->add_option("--group", group_path, "group description file")->required();

  auto* run_cmd = app.add_subcommand("run", "run a machine over a tape graph");
  run_cmd->add_option("--machine", machine_path, "machine over the graph (JSON)")->required();
  run_cmd->add_option("--group", group_path, "group description file")->required();
  run_cmd->add_option("--fuel", fuel, "maximum steps");
  run_cmd->add_option("--cell", cells, "initial tape cell WORD=SYMBOL (repeatable)");
  run_cmd->add_option("--head", head_word, "initial head position as a word");

  auto* compile_cmd = app.add_subcommand("compile", "compile a standard TM onto a tape graph");
  compile_cmd->add_option("--machine", machine_path, "standard machine (JSON)")->required();
  compile_cmd->add_option("--group", group_path, "group description file")->required();
  compile_cmd->add_option("--out", out_path, "output machine file")->required();

  auto* bisim_cmd = app.add_subcommand("bisim", "compare a machine with its compilation");
  bisim_cmd->add_option("--machine", machine_path, "standard machine (JSON)")->required();
  bisim_cmd->add_option("--group", group_path, "group description file")->required();
  bisim_cmd->add_option("--input", input, "input string");
  bisim_cmd->add_option("--fuel", fuel, "compiled-step budget");

  auto* wp = app.add_subcommand("wordproblem", "pointer-trail word problem walk");
  wp->add_option("--group", group_path, "group description file")->required();
  wp->add_option("--left", left, "first word")->required();
  wp->add_option("--right", right, "second word")->required();

  auto* to = app.add_subcommand("treeorder", "well-ordered subtree prefixes");
  to->add_option("--group", group_path, "group description file")->required();
  to->add_option("--depth", depth, "tree depth");
  to->add_flag("--minimal-path", minimal_path, "print the minimal infinite path prefix");
  to->add_option("--tprime", tprime, "print the first K well-ordered nodes");

  auto* ev = app.add_subcommand("evensubword", "search for an all-even subword");
  ev->add_option("--word", word, "the word to scan")->required();
  ev->add_option("--depth", depth, "pattern depth n")->required();
  ev->add_flag("--pirillo", pirillo, "search for a w1 w2 factorization instead");

  auto* alg = app.add_subcommand("algebra", "truncated F2 free-algebra operations");
  alg->require_subcommand(1);
  auto* binom = alg->add_subcommand("binomial", "check (1+x_i)(1+x_i)^15 = 1");
  binom->add_option("--d", d, "number of indeterminates");
  binom->add_option("--degree", degree, "truncation degree");
  auto* gs = alg->add_subcommand("gs-series", "Golod-Shafarevich series coefficients");
  gs->add_option("--d", d, "number of indeterminates");
  gs->add_option("--r", r_path, "JSON file of degree -> relator count")->required();
  gs->add_option("--terms", seed_terms, "number of coefficients");
  auto* rel = alg->add_subcommand("relator", "homogeneous components of p - 1");
  rel->add_option("--word", word, "construction word, tokens s<i> and S<i>")->required();
  rel->add_option("--d", d, "number of indeterminates");
  rel->add_option("--rlo", r_lo, "even depth r_lo")->required();
  rel->add_option("--degree", degree, "truncation degree");
  auto* mem = alg->add_subcommand("member", "homogeneous ideal membership");
  mem->add_option("--poly", poly_path, "polynomial file")->required();
  mem->add_option("--basis", basis_path, "basis file")->required();
  std::optional<size_t> member_degree;
  mem->add_option("--degree", member_degree, "expected truncation degree of both files");

  auto* esc = app.add_subcommand("escape", "build and verify a periodic escape");
  esc->add_option("--group", group_path, "group description file")->required();
  esc->add_option("--element", element, "infinite-order element as a word")->required();
  esc->add_option("--mmax", m_max, "exponent search bound");
  esc->add_option("--verify", verify_steps, "prefix products to test");
  esc->add_option("--prefix-lemma", lemma_steps, "prefix lemma terms to test");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(cfg, group_path);
    if (app.got_subcommand(run_cmd)) {
      return cmd_run(cfg, machine_path, group_path, fuel, cells, head_word);
    }
    if (app.got_subcommand(compile_cmd)) {
      return cmd_compile(cfg, machine_path, group_path, out_path);
    }
    if (app.got_subcommand(bisim_cmd)) {
      return cmd_bisim(cfg, machine_path, group_path, input, fuel);
    }
    if (app.got_subcommand(wp)) return cmd_wordproblem(cfg, group_path, left, right);
    if (app.got_subcommand(to)) return cmd_treeorder(cfg, group_path, depth, minimal_path, tprime);
    if (app.got_subcommand(ev)) return cmd_evensubword(cfg, word, depth, pirillo);
    if (app.got_subcommand(alg)) {
      if (alg->got_subcommand(binom)) return cmd_algebra_binomial(cfg, d, degree);
      if (alg->got_subcommand(gs)) return cmd_algebra_gs(cfg, d, r_path, seed_terms);
      if (alg->got_subcommand(rel)) return cmd_algebra_relator(cfg, word, d, r_lo, degree);
      if (alg->got_subcommand(mem)) {
        return cmd_algebra_member(cfg, poly_path, basis_path, member_degree);
      }
    }
    if (app.got_subcommand(esc)) {
      return cmd_escape(cfg, group_path, element, m_max, verify_steps, lemma_steps);
    }
  } catch (io::ParseError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (tg::Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
