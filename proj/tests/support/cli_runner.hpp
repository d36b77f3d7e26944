#pragma once

#include "clarith/service.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace cli {

struct Result {
  int code = -1;
  std::string out;
};

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Runs the command-line tool with the corpus directory; stdout only.
inline Result run(const std::vector<std::string>& args) {
  std::string cmd = quote(CLARITH_CLI) + " --corpus " + quote(CLARITH_CORPUS);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null </dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

/// One invocation of every command over the corpus, with fixed seeds.
/// Bundles are written under `scratch`.
inline std::vector<std::vector<std::string>> corpus_commands(const std::filesystem::path& scratch) {
  std::vector<std::vector<std::string>> out;
  for (const auto& e : clarith::load_corpus(CLARITH_CORPUS)) {
    out.push_back({"parse", e.formula});
    out.push_back({"parse", "--nnf", e.formula});
    for (const char* d : {"poly", "exp", "cla11"}) out.push_back({"classify", "--discipline", d, e.formula});
    for (const char* env : {"silent", "random:1", "random:2", "random:3"})
      out.push_back({"play", e.formula, "--strategy", e.strategy, "--env", env, "--bound", "300"});
    out.push_back({"play", e.formula, "--strategy", e.strategy, "--env", "moves:B - 91"});
  }
  out.push_back({"classify", "--discipline", "cla11", "--grammar", std::string(CLARITH_CORPUS) + "/cla11-poly-polylog-linear.json",
                 "--role", "amplitude", "?y (|y| <= |x| + |x| /\\ y = x)"});
  for (const char* d : {"successor", "doubling", "quadrupling", "doubling-to-quadrupling", "doubling-binary",
                        "doubling-unary", "successor-sabotaged"}) {
    std::string bundle = (scratch / (std::string(d) + ".bundle.json")).string();
    out.push_back({"extract", std::string(CLARITH_CORPUS) + "/" + d + ".json", "-o", bundle});
    out.push_back({"verify", bundle, "--range", "0..40"});
    out.push_back({"verify", bundle, "--seeds", "10", "--bound", "500"});
    out.push_back({"bench", bundle, "--inputs", "bits:1..10"});
  }
  out.push_back({"tree", "figure1", "Ta", "Bg"});
  out.push_back({"tree", "figure1", "--negate", "Ba", "Tg"});
  out.push_back({"tree", std::string(CLARITH_CORPUS) + "/figure1.game", "Bg", "Ta"});
  return out;
}

}  // namespace cli
