// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if
// any fails.

#include "clarith/classify.hpp"
#include "clarith/derivation.hpp"
#include "clarith/nnf.hpp"
#include "clarith/raw_game.hpp"
#include "clarith/service.hpp"
#include "clarith/syntax.hpp"
#include "cli_runner.hpp"
#include "oracles.hpp"

#include <unistd.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace clarith;
namespace fs = std::filesystem;

namespace {

// A failed expectation; the message goes on the FAIL line.
struct Failure {
  std::string message;
};

void expect(bool ok, const std::string& message) {
  if (!ok) throw Failure{message};
}

std::string slurp_path(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CLARITH_CORPUS) + "/" + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Derivation corpus_derivation(const std::string& name) { return load_derivation(slurp(name + ".json")); }

Formula corpus_formula(const std::string& id) {
  for (const auto& e : load_corpus(CLARITH_CORPUS))
    if (e.id == id) return parse_formula(e.formula);
  throw Failure{"no corpus formula " + id};
}

Transcript play_value(const Formula& f, const Strategy& s, const Natural& n) {
  auto env = value_env(n);
  return run_session(f, {}, s, *env);
}

void figure1_fidelity() {
  RawGame g = figure1();
  auto run = [](std::initializer_list<const char*> moves) {
    RawRun r;
    for (const char* m : moves) r.push_back(parse_raw_move(m));
    return r;
  };
  expect(tree_winner(g, run({"Ta", "Bg"})) == Player::Bot, "<Ta, Bg> is not won by Bot");
  expect(tree_winner(g, {}) == Player::Bot, "the empty run is not won by Bot");
  expect(tree_winner(g, run({"Ta"})) == Player::Top, "<Ta> is not won by Top");
  RawGame file = parse_raw_game(slurp("figure1.game"));
  expect(print_raw_game(file) == print_raw_game(g), "corpus figure1.game differs from the built-in tree");
}

void successor_axiom() {
  Formula f = parse_formula("!x ?y (y = x')");
  Derivation d = corpus_derivation("successor");
  for (const Strategy& s : {builtin("successor"), extract(d)}) {
    for (std::uint64_t x = 0; x <= (1u << 16); ++x) {
      Transcript t = play_value(f, s, x);
      expect(t.verdict.top_wins_p(), s.name() + " loses at " + std::to_string(x));
      expect(t.run.size() == 2 && t.run[1].payload == Payload(Natural(x + 1)),
             s.name() + " answers wrongly at " + std::to_string(x));
      for (const auto& [in_bits, out_bits] : t.report.amplitude)
        expect(out_bits <= in_bits + 1, "amplitude exceeds |x| + 1 at " + std::to_string(x));
      expect(t.report.amplitude.size() == 1, "missing amplitude sample at " + std::to_string(x));
    }
  }
}

void copycat_safety() {
  auto family = oracle::formula_family();
  expect(family.size() > 1000, "enumeration family too small");
  for (const auto& a : family) {
    Strategy s = copycat(a);
    Formula f = Formula::implies(a, a);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto env = random_env(seed, 3);
      Transcript t = run_session(f, {}, s, *env);
      expect(!t.verdict.bot_wins_p(), "copycat loses on " + print_formula(a) + " seed " + std::to_string(seed));
    }
  }
}

void composition_soundness() {
  Formula a = corpus_formula("doubling");
  Formula b = corpus_formula("quadrupling");
  Strategy sigma = resolve_strategy("doubling", CLARITH_CORPUS, a);
  Derivation reduction = corpus_derivation("doubling-to-quadrupling");
  Strategy tau = extract(reduction);
  Formula ab = reduction.theorem();
  expect(alpha_equivalent(ab, Formula::implies(a, b)), "reduction is not doubling -> quadrupling");
  Strategy composed = extract(corpus_derivation("quadrupling"));

  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = rng() % ((1u << 12) + 1);
    Transcript ts = play_value(a, sigma, x);
    expect(ts.verdict.top_wins_p(), "doubling loses at " + std::to_string(x));
    Transcript tc = play_value(b, composed, x);
    expect(tc.verdict.top_wins_p(), "composition loses at " + std::to_string(x));
    expect(tc.run.back().payload == Payload(Natural(4 * x)), "composition answers wrongly at " + std::to_string(x));
    expect(tc.report.compositions == 1, "composition count is not 1");
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto e1 = random_env(seed, 1u << 12);
    expect(run_session(a, {}, sigma, *e1).verdict.top_wins_p(), "doubling loses at seed " + std::to_string(seed));
    auto e2 = random_env(seed, 1u << 12);
    expect(run_session(ab, {}, tau, *e2).verdict.top_wins_p(), "reduction loses at seed " + std::to_string(seed));
    auto e3 = random_env(seed, 1u << 12);
    expect(run_session(b, {}, composed, *e3).verdict.top_wins_p(), "composition loses at seed " + std::to_string(seed));
  }
}

void induction_extraction() {
  Derivation bin = corpus_derivation("doubling-binary");
  expect(check_derivation(bin).ok(), "binary derivation does not check");
  Strategy sb = extract(bin);
  for (std::uint64_t x = 0; x <= (1u << 12); ++x) {
    Transcript t = play_value(bin.theorem(), sb, x);
    expect(t.verdict.top_wins_p(), "binary extraction loses at " + std::to_string(x));
    expect(t.report.compositions == bit_width(x),
           "binary extraction at " + std::to_string(x) + " used " + std::to_string(t.report.compositions) +
               " compositions");
  }
  Derivation un = corpus_derivation("doubling-unary");
  expect(check_derivation(un).ok(), "unary derivation does not check");
  Strategy su = extract(un);
  for (std::uint64_t x = 0; x <= 256; ++x) {
    Transcript t = play_value(un.theorem(), su, x);
    expect(t.verdict.top_wins_p(), "unary extraction loses at " + std::to_string(x));
    expect(t.report.compositions == x, "unary extraction at " + std::to_string(x) + " used " +
                                           std::to_string(t.report.compositions) + " compositions");
  }
}

void primality_example() {
  const std::uint64_t n = 10000;
  auto prime = oracle::sieve(n);
  Formula f = corpus_formula("primality");
  Strategy s = builtin("primality");
  for (std::uint64_t x = 2; x <= n; ++x) {
    Transcript t = play_value(f, s, x);
    expect(t.run.size() == 2, "no choice at " + std::to_string(x));
    Side side = std::get<Side>(t.run[1].payload);
    expect((side == Side::Right) == prime[x], "wrong side at " + std::to_string(x));
    expect(t.verdict.top_wins_p(), "not won at " + std::to_string(x));
    if (!prime[x]) {
      expect(t.notes.size() == 1, "no witnesses at " + std::to_string(x));
      unsigned long long y = 0, z = 0;
      expect(std::sscanf(t.notes[0].c_str(), "witness y = %llu, z = %llu", &y, &z) == 2, "unreadable witness");
      expect(y > 1 && z > 1 && y * z == x, "witnesses do not multiply to " + std::to_string(x));
    }
  }
}

// Random guarded formulas whose bounds mix bare and barred variables.
Formula random_guarded(std::mt19937_64& rng, std::vector<std::string> vars, int depth, unsigned& counter) {
  auto pick = [&](unsigned k) { return static_cast<unsigned>(rng() % k); };
  std::function<Term(int)> bound = [&](int d) -> Term {
    if (d == 0 || pick(3) == 0) {
      if (pick(5) == 0) return Term::zero();
      Term v = Term::var(vars[pick(vars.size())]);
      unsigned bars = pick(6);
      return bars == 0 ? v : Term::len(v, bars == 1 ? 2 : 1);
    }
    switch (pick(3)) {
      case 0: return Term::succ(bound(d - 1));
      case 1: return Term::plus(bound(d - 1), bound(d - 1));
      default: return Term::times(bound(d - 1), bound(d - 1));
    }
  };
  auto atom = [&] { return Formula::eq(Term::var(vars[pick(vars.size())]), Term::numeral(pick(4))); };
  if (depth == 0 || pick(4) == 0) return atom();
  switch (pick(4)) {
    case 0: return Formula::conj(random_guarded(rng, vars, depth - 1, counter), atom());
    case 1: return Formula::ch_or(atom(), random_guarded(rng, vars, depth - 1, counter));
    default: {
      std::string z = "z" + std::to_string(counter++);
      Formula guard = Formula::leq(Term::len(Term::var(z)), bound(2));
      vars.push_back(z);
      Formula body = random_guarded(rng, vars, depth - 1, counter);
      return pick(2) ? Formula::ch_exists(z, Formula::conj(guard, body))
                     : Formula::ch_all(z, Formula::implies(guard, body));
    }
  }
}

void classifier_ground_truth() {
  auto poly = BoundDiscipline::polynomial();
  auto exp = BoundDiscipline::exponential();
  expect(!classify_bounded(parse_formula("!x ?y (y = x')"), poly).conforming(), "successor axiom conforms");
  expect(classify_bounded(corpus_formula("guarded-doubling").body(), poly).conforming(),
         "guarded doubling body violates");
  Derivation bin = corpus_derivation("doubling-binary");
  for (const auto& node : bin.nodes) {
    const Formula& c = node.conclusion;
    if (c.kind() == Formula::Kind::Implies) {
      expect(classify_bounded(c.lhs(), poly).conforming(), "guarded premise violates: " + print_formula(c.lhs()));
      expect(classify_bounded(c.rhs(), poly).conforming(), "guarded premise violates: " + print_formula(c.rhs()));
    }
  }
  expect(classify_bounded(parse_formula("!z (|z| <= |x| * |x| -> ?w (|w| <= |z| /\\ w = z))"), poly).conforming(),
         "nested guard violates");
  Formula bare = parse_formula("!z (|z| <= x * x -> z = z)");
  expect(!classify_bounded(bare, poly).conforming(), "bare bound conforms under poly");
  expect(classify_bounded(bare, exp).conforming(), "bare bound violates under exp");

  auto d = cla11_poly_polylog_linear();
  expect(check_bound_term(parse_term("|x| * |y| + 0'"), d.time()), "T rejects |x| * |y| + 0'");
  expect(check_bound_term(parse_term("|x| + |y|"), d.amplitude()), "A rejects |x| + |y|");
  expect(!check_bound_term(parse_term("|x| * |y|"), d.amplitude()), "A accepts |x| * |y|");
  expect(!check_bound_term(parse_term("x"), d.time()), "T accepts bare x");

  std::mt19937_64 rng(2024);
  unsigned counter = 0, conforming = 0;
  for (int i = 0; i < 500; ++i) {
    Formula f = random_guarded(rng, {"x"}, 4, counter);
    bool p = classify_bounded(f, poly).conforming();
    if (p) expect(classify_bounded(f, exp).conforming(), "poly but not exp: " + print_formula(f));
    conforming += p;
  }
  expect(conforming >= 50, "too few polynomially bounded samples: " + std::to_string(conforming));
}

void nnf_preservation() {
  std::size_t runs = 0;
  for (const auto& f : oracle::formula_family()) {
    Formula n = to_nnf(f);
    for (const auto& r : oracle::canonical_runs(f)) {
      Verdict a = evaluate_run(f, r).verdict;
      Verdict b = evaluate_run(n, r).verdict;
      oracle::Outcome o = oracle::play_directly(f, r);
      expect(a == b && b == Verdict::win_for(o.winner),
             "verdicts differ on " + print_formula(f) + " for run " + format_run(r));
      ++runs;
    }
  }
  expect(runs > 10000, "too few runs");
}

void cli_determinism() {
  fs::path dir = fs::temp_directory_path() / ("clarith-acceptance-" + std::to_string(getpid()));
  fs::create_directories(dir);
  for (const auto& c : cli::corpus_commands(dir)) {
    cli::Result a = cli::run(c);
    std::string bundle_a;
    if (c[0] == "extract") bundle_a = slurp_path(c[3]);
    cli::Result b = cli::run(c);
    std::string joined;
    for (const auto& s : c) joined += s + " ";
    expect(a.code >= 0 && a.code != 64, "command failed to run: " + joined);
    expect(a.out == b.out && a.code == b.code, "output differs for: " + joined);
    if (c[0] == "extract") expect(bundle_a == slurp_path(c[3]), "bundle differs for: " + joined);
  }
  fs::remove_all(dir);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<void()> check;
  };
  const std::vector<Criterion> criteria = {
      {"example game tree winners", 1, figure1_fidelity},
      {"successor axiom over [0, 2^16] with amplitude bound", 60, successor_axiom},
      {"copycat never loses on the enumeration family", 60, copycat_safety},
      {"composition soundness on the quadrupling triple", 30, composition_soundness},
      {"induction extraction (binary [0, 2^12], unary [0, 256])", 120, induction_extraction},
      {"primality against a sieve on [2, 10^4]", 60, primality_example},
      {"classifier ground truth", 30, classifier_ground_truth},
      {"negation normal form preservation", 120, nnf_preservation},
      {"CLI determinism over the corpus", 600, cli_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.check();
    } catch (const Failure& f) {
      error = f.message;
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && seconds > c.limit_seconds)
      error = "took longer than " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
    std::ostringstream line;
    line << (error.empty() ? "PASS " : "FAIL ") << c.name << " (" << std::fixed << std::setprecision(2) << seconds
         << " s)";
    if (!error.empty()) line << ": " << error;
    std::cout << line.str() << std::endl;
    failed += !error.empty();
  }
  std::cout << (failed ? std::to_string(failed) + " of " : "all ") << criteria.size() << " criteria "
            << (failed ? "failed" : "passed") << "\n";
  return failed ? 1 : 0;
}
