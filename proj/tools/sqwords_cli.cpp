// sqwords: distinct squares, Lyndon roots and Rauzy graphs from the command line.
//
// Exit codes: 0 success, 1 a check failed, 2 invalid input or usage,
// 3 I/O failure or corrupt checkpoint.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sqwords/sqwords.hpp"

namespace {

using namespace sqwords;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Word parse_word(const std::string& text, bool hex) {
  if (hex) {
    try {
      return Word::from_hex(text);
    } catch (const std::invalid_argument& e) {
      throw usage_error(e.what());
    }
  }
  for (unsigned char c : text) {
    if (c < 0x21 || c > 0x7e) {
      throw usage_error("word contains a non-printable byte; use --hex for arbitrary alphabets");
    }
  }
  return Word::from_bytes(text);
}

std::string join(const std::vector<std::size_t>& xs, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
  return out;
}

std::string show(const Word& w) { return w.empty() ? std::string("ε") : display(w); }

// squares ------------------------------------------------------------------

int cmd_squares(const Word& w, const std::string& format) {
  const SquareInventory inv = squares_by_root(w);
  if (format == "json") {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& [key, rs] : inv.by_root) {
      const RootStats st = root_stats(rs);
      nlohmann::json squares = nlohmann::json::array();
      for (const auto& sq : rs.squares) {
        squares.push_back({{"square", display(sq.square)},
                           {"rotation", sq.index},
                           {"exponent", sq.exponent},
                           {"occurrences", occurrences(w, sq.square)}});
      }
      roots.push_back({{"root", display(key)}, {"count", st.square_count}, {"r", st.r}, {"s", st.s},
                       {"k", st.k_list}, {"g", st.g}, {"M", st.M}, {"squares", squares}});
    }
    std::cout << nlohmann::json{{"word", display(w)}, {"n", w.size()}, {"total", inv.total},
                                {"max_half_length", inv.max_half_length}, {"roots", roots}}
                     .dump(2)
              << '\n';
    return exit_ok;
  }
  std::cout << "word " << show(w) << " n=" << w.size() << '\n';
  std::cout << "total " << inv.total << '\n';
  for (const auto& [key, rs] : inv.by_root) {
    const RootStats st = root_stats(rs);
    std::cout << "root " << display(key) << " (" << st.square_count << ") r=" << st.r << " s=" << st.s << " k=("
              << join(st.k_list) << ") g=" << st.g << " M=" << st.M << '\n';
    for (const auto& sq : rs.squares) {
      std::cout << "  " << display(sq.square) << " @ " << join(occurrences(w, sq.square)) << '\n';
    }
  }
  return exit_ok;
}

// lyndon -------------------------------------------------------------------

int cmd_lyndon(const Word& w, std::optional<std::size_t> conj, const std::string& format) {
  if (conj) {
    if (w.empty()) throw usage_error("lyndon --conj needs a nonempty word");
    const auto [x, k] = primitive_root(w);
    const RotationOf rot = lyndon_rotation(x);
    const auto members = conj_power_set(rot.root, *conj);
    if (format == "json") {
      nlohmann::json list = nlohmann::json::array();
      for (const Word& v : members) list.push_back(display(v));
      std::cout << nlohmann::json{{"root", display(rot.root.word())}, {"m", *conj}, {"members", list}}.dump(2)
                << '\n';
    } else {
      std::cout << "[" << display(rot.root.word()) << "]_" << *conj << " = {";
      for (std::size_t i = 0; i < members.size(); ++i) std::cout << (i ? ", " : "") << show(members[i]);
      std::cout << "}\n";
    }
    return exit_ok;
  }
  const FactorIndex factors(w);
  const SquareInventory inv = squares_by_root(w);
  nlohmann::json roots = nlohmann::json::array();
  for (const LyndonRoot& z : lyndon_factors(w)) {
    const auto cs = cs_set(factors, z);
    const std::size_t sq = inv.count(z.word());
    if (format == "json") {
      roots.push_back({{"root", display(z.word())}, {"cs", cs.size()}, {"sq", sq}});
    } else {
      std::cout << display(z.word()) << "\t|CS|=" << cs.size() << "\t|SQ|=" << sq;
      if (!cs.empty()) std::cout << "\tm=" << cs.front().m << ".." << cs.back().m;
      std::cout << '\n';
    }
  }
  if (format == "json") std::cout << nlohmann::json{{"word", display(w)}, {"lyndon_factors", roots}}.dump(2) << '\n';
  return exit_ok;
}

// rauzy --------------------------------------------------------------------

nlohmann::json layer_json(const RauzyGraph& g, const std::unordered_set<Word>& dashed) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Word& v : g.vertices) vertices.push_back(display(v));
  nlohmann::json arcs = nlohmann::json::array();
  for (const Word& a : g.arcs) {
    nlohmann::json arc{{"arc", display(a)}, {"from", display(g.initial(a))}, {"to", display(g.terminal(a))}};
    if (dashed.contains(a)) arc["dashed"] = true;
    arcs.push_back(arc);
  }
  return {{"order", g.order}, {"vertices", vertices}, {"arcs", arcs}, {"cyclomatic", cyclomatic_number(g)}};
}

int cmd_rauzy(const Word& w, std::optional<std::size_t> order, bool dot, bool mark_cs) {
  if (order && *order > w.size()) {
    throw usage_error("order " + std::to_string(*order) + " out of range [0.." + std::to_string(w.size()) + "]");
  }
  std::unordered_set<Word> dashed;
  if (mark_cs) dashed = cs_smallest_arcs(all_cs(w));
  const DotWriter writer(dashed);
  if (order) {
    const RauzyGraph g = build_rauzy(w, *order);
    if (dot) {
      writer.write(std::cout, g);
    } else {
      std::cout << nlohmann::json{{"word", display(w)}, {"layer", layer_json(g, dashed)}}.dump(2) << '\n';
    }
    return exit_ok;
  }
  const RauzyUnion u = build_union(w);
  if (dot) {
    writer.write(std::cout, u);
    return exit_ok;
  }
  nlohmann::json layers = nlohmann::json::array();
  for (const RauzyGraph& g : u.layers) layers.push_back(layer_json(g, dashed));
  std::cout << nlohmann::json{{"word", display(w)},
                              {"n_v", u.counts.vertices},
                              {"n_a", u.counts.arcs},
                              {"n_c", u.counts.components},
                              {"cyclomatic", u.cyclomatic()},
                              {"layers", layers}}
                   .dump(2)
            << '\n';
  return exit_ok;
}

// verify -------------------------------------------------------------------

int cmd_verify(const std::vector<Word>& words, bool single, const std::string& out_path) {
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw io_error("cannot open " + out_path);
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  bool all = true;
  for (const Word& w : words) {
    const VerificationReport report = verify_all(w);
    all = all && report.pass;
    out << (single ? to_json(report).dump(2) : to_json(report).dump()) << '\n';
    if (!report.pass) {
      std::cerr << "check failed on " << show(w) << ":";
      for (const CheckRecord* c : report.failures()) std::cerr << ' ' << c->name;
      std::cerr << '\n';
    }
  }
  out.flush();
  if (!out) throw io_error("write failed");
  return all ? exit_ok : exit_check_failed;
}

std::vector<Word> read_corpus(const std::string& path, bool hex) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read " + path);
  std::vector<Word> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    words.push_back(parse_word(line, hex));
  }
  if (in.bad()) throw io_error("read failed on " + path);
  return words;
}

// census -------------------------------------------------------------------

int cmd_census(std::size_t n_min, std::size_t n_max, std::size_t sigma, const CensusOptions& options, bool density,
               bool judge) {
  if (n_min == 0 || n_min > n_max) throw usage_error("need 1 <= --n-min <= --n-max");
  const std::size_t cap = options.cap.value_or(census_cap());
  if (n_max > cap) {
    throw usage_error("--n-max " + std::to_string(n_max) + " exceeds cap " + std::to_string(cap) +
                      " (set SQUARE_CENSUS_CAP to raise it)");
  }
  Census census(sigma, options);
  std::cout << (density ? "n\tsigma\tmax_sq\tdensity" : census_tsv_header) << '\n';
  bool all = true;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    const CensusRow row = census.run(n);
    all = all && row.conjecture_pass;
    if (density) {
      std::cout << n << '\t' << sigma << '\t' << row.max_sq << '\t' << to_string(rational(row.max_sq, n)) << '\n';
    } else {
      std::cout << to_tsv(row) << '\n';
    }
    std::cout.flush();
  }
  return judge && !all ? exit_check_failed : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distinct squares, Lyndon roots and Rauzy graphs of finite words"};
  app.require_subcommand(1);

  bool hex = false;
  std::string format = "text";
  std::string word_text;

  auto add_word = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("word", word_text, "input word (ASCII letters; see --hex)");
    if (required) opt->required();
    sub->add_flag("--hex", hex, "read the word as hex byte pairs");
    return opt;
  };

  auto* squares = app.add_subcommand("squares", "list distinct squares grouped by Lyndon root");
  add_word(squares, true);
  squares->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* lyndon = app.add_subcommand("lyndon", "Lyndon factors with their circuit families, or [z]_m");
  add_word(lyndon, true);
  std::optional<std::size_t> conj;
  lyndon->add_option("--conj", conj, "print [z]_m for the Lyndon root z of the word");
  lyndon->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* rauzy = app.add_subcommand("rauzy", "Rauzy graph of one order or of all orders");
  add_word(rauzy, true);
  std::optional<std::size_t> order;
  bool all_orders = false, dot = false, mark_cs = false;
  auto* order_opt = rauzy->add_option("--order", order, "single order");
  auto* all_opt = rauzy->add_flag("--all", all_orders, "union over all orders");
  order_opt->excludes(all_opt);
  rauzy->add_flag("--dot", dot, "Graphviz output instead of JSON");
  rauzy->add_flag("--mark-cs", mark_cs, "dash the smallest arc of every CS circuit");
  rauzy->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot", "text"}));

  auto* verify = app.add_subcommand("verify", "check every bound on a word or on a corpus file");
  auto* verify_word = add_word(verify, false);
  std::string corpus, out_path;
  verify->add_option("--file", corpus, "one word per line")->excludes(verify_word);
  verify->add_option("--out", out_path, "write the JSON report here");

  std::size_t n_min = 1, n_max = 0, sigma = 2, jobs = 1;
  std::string checkpoint;
  bool density = false;
  unsigned verify_sample = 0;
  auto census_options = [&](CLI::App* sub) {
    sub->add_option("--n-max", n_max, "largest word length")->required();
    sub->add_option("--n-min", n_min, "smallest word length");
    sub->add_option("--jobs", jobs, "worker threads");
    sub->add_option("--checkpoint", checkpoint, "resumable checkpoint file");
    sub->add_option("--verify-sample", verify_sample, "run verify on one word in 2^K per partition");
  };
  auto* census = app.add_subcommand("census", "exhaustive maximum of distinct squares");
  census_options(census);
  census->add_option("--sigma", sigma, "alphabet size");
  census->add_flag("--density", density, "print max_sq/n instead of the standard columns");
  auto* conjecture = app.add_subcommand("conjecture", "binary census judged against the conjectured bound");
  census_options(conjecture);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (squares->parsed()) return cmd_squares(parse_word(word_text, hex), format);
    if (lyndon->parsed()) return cmd_lyndon(parse_word(word_text, hex), conj, format);
    if (rauzy->parsed()) {
      if (!order && !all_orders) throw usage_error("rauzy needs --order L or --all");
      return cmd_rauzy(parse_word(word_text, hex), order, dot || format == "dot", mark_cs);
    }
    if (verify->parsed()) {
      if (!corpus.empty()) return cmd_verify(read_corpus(corpus, hex), false, out_path);
      return cmd_verify({parse_word(word_text, hex)}, true, out_path);
    }
    CensusOptions options;
    options.jobs = jobs;
    options.verify_sample_log2 = verify_sample;
    if (!checkpoint.empty()) options.checkpoint = checkpoint;
    if (census->parsed()) return cmd_census(n_min, n_max, sigma, options, density, false);
    if (conjecture->parsed()) return cmd_census(n_min, n_max, 2, options, false, true);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const sqwords::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const checkpoint_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_check_failed;
  }
  return exit_usage;
}
