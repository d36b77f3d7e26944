// clarith: command-line front end.
//
// Exit codes: 0 success / TopWins / Conforming, 1 input or check errors,
// 2 BotWins / Violating / losses, 3 Unknown, 64 usage errors.

#include "clarith/classify.hpp"
#include "clarith/derivation.hpp"
#include "clarith/nnf.hpp"
#include "clarith/raw_game.hpp"
#include "clarith/service.hpp"
#include "clarith/syntax.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace clarith;
namespace fs = std::filesystem;

namespace {

constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string formula_text(const std::string& text, const std::string& file) {
  if (!file.empty()) return read_file(file);
  if (text.empty()) throw UsageError("give a formula or --file");
  return text;
}

Valuation parse_valuation(const std::vector<std::string>& items) {
  Valuation v;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects name=value, got " + item);
    v[item.substr(0, eq)] = parse_natural(item.substr(eq + 1));
  }
  return v;
}

std::pair<Natural, Natural> parse_range(const std::string& spec) {
  auto dots = spec.find("..");
  if (dots == std::string::npos) throw UsageError("range must be a..b, got " + spec);
  Natural a, b;
  try {
    a = parse_natural(spec.substr(0, dots));
    b = parse_natural(spec.substr(dots + 2));
  } catch (const std::invalid_argument&) {
    throw UsageError("range must be a..b, got " + spec);
  }
  if (a > b) throw UsageError("empty range " + spec);
  return {a, b};
}

int verdict_code(const Verdict& v) { return v.top_wins_p() ? 0 : v.bot_wins_p() ? 2 : 3; }

std::unique_ptr<Environment> make_env(const std::string& spec, std::uint64_t bound) {
  if (spec == "silent") return silent_env();
  if (spec == "interactive") return interactive_env(std::cin, std::cerr);
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t seed;
    try {
      seed = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw UsageError("random environment needs a decimal seed: " + spec);
    }
    return random_env(seed, bound);
  }
  if (spec.rfind("script:", 0) == 0) return scripted_env(parse_run(read_file(spec.substr(7))));
  if (spec.rfind("moves:", 0) == 0) {
    std::string moves = spec.substr(6);
    for (auto& c : moves)
      if (c == ';' || c == ',') c = '\n';
    return scripted_env(parse_run(moves));
  }
  throw UsageError("unknown environment " + spec + " (silent, interactive, random:SEED, script:FILE, moves:M;M)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clarith: clarithmetic formulas as games, strategies and their extraction"};
  app.require_subcommand(1);
  std::string corpus_dir = "corpus";
  app.add_option("--corpus", corpus_dir, "Directory with the corpus (formulas, derivations)");

  // parse
  auto* parse = app.add_subcommand("parse", "Parse a formula and print its canonical form");
  std::string parse_text, parse_file;
  bool parse_nnf = false;
  parse->add_option("formula", parse_text, "Formula text");
  parse->add_option("--file", parse_file, "Read the formula from a file");
  parse->add_flag("--nnf", parse_nnf, "Print the negation normal form");

  // classify
  auto* classify = app.add_subcommand("classify", "Check the bounded-formula discipline");
  std::string cls_text, cls_file, cls_discipline = "poly", cls_grammar, cls_role = "time";
  classify->add_option("formula", cls_text, "Formula text");
  classify->add_option("--file", cls_file, "Read the formula from a file");
  classify->add_option("--discipline", cls_discipline, "poly, exp or cla11")
      ->check(CLI::IsMember({"poly", "exp", "cla11"}));
  classify->add_option("--grammar", cls_grammar, "CLA11 grammar file (default: the poly/polylog/linear instance)");
  classify->add_option("--role", cls_role, "CLA11 grammar used for guards: time, space or amplitude")
      ->check(CLI::IsMember({"time", "space", "amplitude"}));

  // play
  auto* play = app.add_subcommand("play", "Play a formula with a strategy against an environment");
  std::string play_text, play_file, play_strategy, play_env = "silent";
  std::vector<std::string> play_set;
  Limits play_limits;
  std::uint64_t play_bound = 1u << 16;
  play->add_option("formula", play_text, "Formula text (default: the strategy's theorem)");
  play->add_option("--file", play_file, "Read the formula from a file");
  play->add_option("--strategy", play_strategy, "Builtin name, corpus derivation id, or derivation/bundle file")
      ->required();
  play->add_option("--env", play_env, "silent, interactive, random:SEED, script:FILE or moves:M;M");
  play->add_option("--set", play_set, "Value a free variable (name=value)");
  play->add_option("--max-steps", play_limits.max_steps, "Polling step limit");
  play->add_option("--budget", play_limits.budget, "Search budget for blind quantifiers");
  play->add_option("--bound", play_bound, "Largest number the random environment picks");

  // extract
  auto* ext = app.add_subcommand("extract", "Check a derivation and write a strategy bundle");
  std::string ext_in, ext_out;
  ext->add_option("derivation", ext_in, "Derivation file")->required();
  ext->add_option("-o,--output", ext_out, "Bundle path")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Play a bundle against many environments");
  std::string ver_bundle, ver_range;
  std::uint64_t ver_seeds = 0, ver_bound = 1u << 12;
  Limits ver_limits;
  verify->add_option("bundle", ver_bundle, "Bundle, derivation file or corpus derivation id")->required();
  auto* ver_range_opt = verify->add_option("--range", ver_range, "Inputs a..b, each answered at every choice");
  auto* ver_seeds_opt = verify->add_option("--seeds", ver_seeds, "Number of seeded random environments");
  verify->add_option("--bound", ver_bound, "Largest number the random environments pick");
  verify->add_option("--max-steps", ver_limits.max_steps, "Polling step limit per play");
  verify->add_option("--budget", ver_limits.budget, "Search budget for blind quantifiers");

  // bench
  auto* bench = app.add_subcommand("bench", "Complexity table and growth fit");
  std::string bench_bundle, bench_inputs = "bits:1..16";
  bench->add_option("bundle", bench_bundle, "Bundle, derivation file or corpus derivation id")->required();
  bench->add_option("--inputs", bench_inputs, "a..b (values) or bits:a..b (values 2^k - 1)");

  // serve
  auto* srv = app.add_subcommand("serve", "Serve live sessions over HTTP");
  int srv_port = 8080;
  std::string srv_host = "127.0.0.1";
  srv->add_option("--port", srv_port, "Port");
  srv->add_option("--host", srv_host, "Address to listen on");

  // tree
  auto* tree = app.add_subcommand("tree", "Winner of a run on an explicit game tree");
  std::string tree_file;
  std::vector<std::string> tree_run;
  bool tree_negate = false;
  tree->add_option("game", tree_file, "Game tree file (figure1 for the built-in example)")->required();
  tree->add_option("moves", tree_run, "Run, e.g. Ta Bg");
  tree->add_flag("--negate", tree_negate, "Play the negated game");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto strategy_for = [&](const std::string& name, const std::optional<Formula>& target) {
    return resolve_strategy(name, corpus_dir, target);
  };
  auto bundle_strategy = [&](const std::string& name) -> std::pair<Formula, Strategy> {
    std::string path = name;
    if (!fs::exists(path)) path = (fs::path(corpus_dir) / (name + ".json")).string();
    Bundle b = load_bundle(read_file(path));
    return {b.derivation.theorem(), extract(b.derivation)};
  };

  try {
    if (*parse) {
      Formula f = parse_formula(formula_text(parse_text, parse_file));
      std::cout << print_formula(parse_nnf ? to_nnf(f) : f) << "\n";
      return 0;
    }

    if (*classify) {
      Formula f = parse_formula(formula_text(cls_text, cls_file));
      BoundDiscipline d = BoundDiscipline::polynomial();
      if (cls_discipline == "exp") d = BoundDiscipline::exponential();
      if (cls_discipline == "cla11") {
        auto role = cls_role == "space"       ? BoundDiscipline::Role::Space
                    : cls_role == "amplitude" ? BoundDiscipline::Role::Amplitude
                                              : BoundDiscipline::Role::Time;
        if (cls_grammar.empty()) {
          d = cla11_poly_polylog_linear(role);
        } else {
          nlohmann::json g;
          try {
            g = nlohmann::json::parse(read_file(cls_grammar));
            auto grammar = [&](const char* key) {
              const auto& e = g.at(key);
              return TermGrammar{OpSet::parse(e.at("ops").get<std::string>()), e.at("depth").get<unsigned>()};
            };
            d = BoundDiscipline::cla11(grammar("T"), grammar("S"), grammar("A"), role);
          } catch (const std::exception& e) {
            std::cerr << "bad grammar file " << cls_grammar << ": " << e.what() << "\n";
            return 1;
          }
        }
      }
      ClassificationReport r = classify_bounded(f, d);
      std::cout << format_report(r);
      return r.conforming() ? 0 : 2;
    }

    if (*play) {
      std::optional<Formula> f;
      if (!play_text.empty() || !play_file.empty()) f = parse_formula(formula_text(play_text, play_file));
      Strategy s = strategy_for(play_strategy, f);
      if (!f) f = s.instance();
      Valuation v = parse_valuation(play_set);
      auto env = make_env(play_env, play_bound);
      Transcript t;
      try {
        t = run_session(*f, v, s, *env, play_limits);
      } catch (const StrategyMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
      }
      std::cout << format_transcript(t);
      return verdict_code(t.verdict);
    }

    if (*ext) {
      Derivation d = load_derivation(read_file(ext_in));
      CheckReport r = check_derivation(d);
      std::cout << format_check(r);
      if (!r.ok()) {
        std::cerr << "check failed at:";
        for (const auto& id : r.failing_nodes()) std::cerr << " " << id;
        std::cerr << "\n";
        return 1;
      }
      extract(d);
      std::ofstream out(ext_out);
      if (!out) throw std::runtime_error("cannot write " + ext_out);
      out << save_bundle(d, r);
      std::cout << "bundle: " << ext_out << "\n";
      return 0;
    }

    if (*verify) {
      VerifyPlan plan;
      plan.payload_bound = ver_bound;
      plan.limits = ver_limits;
      if (ver_range_opt->count()) plan.range = parse_range(ver_range);
      if (ver_seeds_opt->count()) {
        if (ver_seeds == 0) throw UsageError("--seeds must be positive");
        plan.seeds = ver_seeds;
      }
      if (!plan.range && !plan.seeds) throw UsageError("verify needs --range or --seeds");
      auto [f, s] = bundle_strategy(ver_bundle);
      VerifyReport r = verify_strategy(f, s, plan);
      std::cout << "theorem: " << print_formula(f) << "\n" << format_verify(r);
      return r.losses == 0 ? 0 : 2;
    }

    if (*bench) {
      auto [f, s] = bundle_strategy(bench_bundle);
      std::vector<Natural> inputs;
      bool by_bits = bench_inputs.rfind("bits:", 0) == 0;
      auto [a, b] = parse_range(by_bits ? bench_inputs.substr(5) : bench_inputs);
      for (Natural k = a; k <= b; ++k) {
        if (by_bits) {
          if (k == 0 || k > 4096) throw UsageError("bit lengths must be within 1..4096");
          inputs.push_back((Natural(1) << static_cast<unsigned>(k)) - 1);
        } else {
          inputs.push_back(k);
        }
      }
      std::cout << "theorem: " << print_formula(f) << "\n";
      std::cout << "input\tbits\ttime\tspace\tmax_out_bits\tcompositions\n";
      std::vector<Sample> samples;
      int code = 0;
      for (const auto& n : inputs) {
        auto env = value_env(n);
        Transcript t = run_session(f, {}, s, *env);
        if (!t.verdict.top_wins_p()) code = 2;
        std::uint64_t bits = bit_length(n);
        std::cout << to_decimal(n) << "\t" << bits << "\t" << t.report.time_steps << "\t" << t.report.space_peak
                  << "\t" << t.report.max_top_bits() << "\t" << t.report.compositions << "\n";
        Sample sample{bits, t.report.time_steps, t.report.space_peak, t.report.max_top_bits()};
        if (!samples.empty() && samples.back().input_bits == bits) samples.back() = sample;
        else samples.push_back(sample);
      }
      if (samples.size() >= 8) {
        for (const auto& g : fit_complexity(samples)) std::cout << "fit " << format_fit(g) << "\n";
      } else {
        std::cout << "fit: needs inputs of at least 8 distinct bit lengths\n";
      }
      return code;
    }

    if (*srv) {
      SessionService service(corpus_dir);
      std::cerr << "listening on http://" << srv_host << ":" << srv_port << "\n";
      serve(service, srv_host, srv_port);
      return 0;
    }

    if (*tree) {
      RawGame g = tree_file == "figure1" ? figure1() : parse_raw_game(read_file(tree_file));
      if (tree_negate) g = negate(g);
      RawRun r;
      for (const auto& m : tree_run) r.push_back(parse_raw_move(m));
      std::cout << "winner: " << player_char(tree_winner(g, r)) << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
