#pragma once

#include "clarith/session.hpp"

#include <json.hpp>

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace clarith {

struct CorpusEntry {
  std::string id;
  std::string formula;
  std::string description;
  /// Builtin name or the id of a derivation in the corpus directory.
  std::string strategy;
};

/// Reads `formulas.json` from dir: a list of {id, formula, description, strategy}.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

/// Builtin name, or the stem of a derivation/bundle file in corpus_dir, or
/// a path to such a file. Derivations are checked and extracted.
Strategy resolve_strategy(const std::string& name, const std::string& corpus_dir,
                          const std::optional<Formula>& target);

/// JSON rendering of a residual game: nodes carry their operator, printed
/// text, and for accessible choices the address and owner; the contents
/// of unresolved choices are collapsed.
nlohmann::json render_position(const Position& p);

/// The live-session protocol, independent of the transport.
class SessionService {
 public:
  struct Response {
    int status = 200;
    nlohmann::json body;
  };

  explicit SessionService(std::string corpus_dir, std::chrono::seconds idle_timeout = std::chrono::minutes(30),
                          Limits limits = {});

  /// {formula_id | formula_text, strategy_id}
  Response create(const nlohmann::json& request);
  Response get(const std::string& id);
  /// {address, payload}
  Response move(const std::string& id, const nlohmann::json& request);
  Response corpus() const;

  /// Drops sessions idle for longer than the timeout; returns how many.
  std::size_t evict_idle(std::chrono::steady_clock::time_point now = std::chrono::steady_clock::now());
  std::size_t size() const;

 private:
  struct Live {
    std::mutex mutex;
    std::unique_ptr<Session> session;
    std::chrono::steady_clock::time_point last_used;
  };

  std::shared_ptr<Live> find(const std::string& id);
  nlohmann::json describe(const Session& s) const;

  std::string corpus_dir_;
  std::vector<CorpusEntry> corpus_;
  std::chrono::seconds idle_timeout_;
  Limits limits_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Live>> sessions_;
  std::uint64_t next_id_ = 1;
};

/// The protocol over HTTP: POST /sessions, GET /sessions/{id},
/// POST /sessions/{id}/moves, GET /corpus.
class HttpFrontend {
 public:
  explicit HttpFrontend(SessionService& service);
  ~HttpFrontend();

  /// Port 0 picks a free port. Returns the bound port; throws
  /// std::runtime_error if it cannot be bound.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called from another thread.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Serves until the process is stopped.
void serve(SessionService& service, const std::string& host, int port);

}  // namespace clarith
