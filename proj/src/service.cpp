#include "clarith/service.hpp"

#include "clarith/derivation.hpp"
#include "clarith/syntax.hpp"

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace clarith {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* op_name(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Eq:
    case Formula::Kind::Leq: return "atom";
    case Formula::Kind::Not: return "not";
    case Formula::Kind::And: return "and";
    case Formula::Kind::Or: return "or";
    case Formula::Kind::Implies: return "implies";
    case Formula::Kind::BlindAll: return "all";
    case Formula::Kind::BlindExists: return "exists";
    case Formula::Kind::ChAnd: return "chand";
    case Formula::Kind::ChOr: return "chor";
    case Formula::Kind::ChAll: return "chall";
    case Formula::Kind::ChExists: return "chexists";
  }
  return "?";
}

json render(const Formula& f, Address& at) {
  json node = {{"op", op_name(f.kind())}, {"text", print_formula(f)}};
  if (f.is_choice()) {
    node["address"] = format_address(at);
    bool bot = f.kind() == Formula::Kind::ChAnd || f.kind() == Formula::Kind::ChAll;
    node["owner"] = bot ? "B" : "T";
    node["payload"] = f.kind() == Formula::Kind::ChAnd || f.kind() == Formula::Kind::ChOr ? "side" : "number";
    node["collapsed"] = true;
    return node;
  }
  json children = json::array();
  if (f.kind() == Formula::Kind::And || f.kind() == Formula::Kind::Or) {
    at.push_back(Side::Left);
    children.push_back(render(f.lhs(), at));
    at.back() = Side::Right;
    children.push_back(render(f.rhs(), at));
    at.pop_back();
  } else if (f.kind() == Formula::Kind::BlindAll || f.kind() == Formula::Kind::BlindExists) {
    node["var"] = f.var();
    children.push_back(render(f.body(), at));
  }
  node["children"] = children;
  return node;
}

json move_json(const Move& m) {
  return {{"by", std::string(1, player_char(m.by))},
          {"address", format_address(m.address)},
          {"payload", format_payload(m.payload)},
          {"bits", payload_bits(m.payload)},
          {"text", format_move(m)}};
}

json legal_env_moves(const Position& p) {
  json out = json::array();
  for (const auto& s : legal_moves(p, Player::Bot))
    out.push_back({{"address", format_address(s.address)},
                   {"payload", s.target == LegalMove::Target::Binary ? "side" : "number"}});
  return out;
}

json verdict_json(const Verdict& v) {
  json out = {{"kind", v.top_wins_p() ? "TopWins" : v.bot_wins_p() ? "BotWins" : "Unknown"},
              {"text", to_string(v)}};
  if (v.unknown_p()) out["reason"] = v.reason();
  return out;
}

json report_json(const ComplexityReport& r) {
  json amp = json::array();
  for (const auto& [in, out] : r.amplitude) amp.push_back({in, out});
  return {{"time", r.time_steps},
          {"space", r.space_peak},
          {"compositions", r.compositions},
          {"amplitude", amp}};
}

SessionService::Response error(int status, const std::string& message) { return {status, {{"error", message}}}; }

// Plays rounds without environment moves while the environment has none.
std::vector<Move> settle(Session& s) {
  std::vector<Move> replies;
  while (!s.finished() && legal_moves(s.position(), Player::Bot).empty()) {
    auto r = s.round(std::nullopt);
    replies.insert(replies.end(), r.machine_moves.begin(), r.machine_moves.end());
  }
  return replies;
}

}  // namespace

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  json doc = json::parse(read_file(fs::path(dir) / "formulas.json"));
  std::vector<CorpusEntry> out;
  for (const auto& e : doc)
    out.push_back({e.at("id").get<std::string>(), e.at("formula").get<std::string>(),
                   e.value("description", std::string()), e.value("strategy", std::string("pass"))});
  return out;
}

Strategy resolve_strategy(const std::string& name, const std::string& corpus_dir, const std::optional<Formula>& target) {
  fs::path file = name;
  if (!fs::exists(file) && !corpus_dir.empty()) file = fs::path(corpus_dir) / (name + ".json");
  if (name.find('/') == std::string::npos && !fs::exists(file)) return builtin(name, target);
  if (!fs::exists(file)) throw UnknownStrategy("no strategy file " + name);
  Bundle b = load_bundle(read_file(file));
  return extract(b.derivation);
}

json render_position(const Position& p) {
  Address at;
  return {{"text", print_formula(p.current())}, {"tree", render(p.current(), at)}};
}

SessionService::SessionService(std::string corpus_dir, std::chrono::seconds idle_timeout, Limits limits)
    : corpus_dir_(std::move(corpus_dir)), idle_timeout_(idle_timeout), limits_(limits) {
  if (!corpus_dir_.empty()) corpus_ = load_corpus(corpus_dir_);
}

json SessionService::describe(const Session& s) const {
  Transcript t = s.transcript();
  json run = json::array();
  for (const auto& m : t.run) run.push_back(move_json(m));
  json out = {{"formula", print_formula(s.formula())},
              {"strategy", s.strategy().name()},
              {"position", render_position(s.position())},
              {"legal_env_moves", s.finished() ? json::array() : legal_env_moves(s.position())},
              {"status", s.finished() ? "Finished" : "Ongoing"},
              {"verdict", verdict_json(t.verdict)},
              {"transcript", run},
              {"transcript_text", format_transcript(t)},
              {"notes", t.notes},
              {"complexity", report_json(t.report)}};
  return out;
}

SessionService::Response SessionService::create(const json& request) {
  if (!request.is_object()) return error(400, "request body must be an object");
  std::string text, strategy_id;
  if (request.contains("formula_id")) {
    if (!request["formula_id"].is_string()) return error(400, "formula_id must be a string");
    std::string id = request["formula_id"].get<std::string>();
    auto it = std::find_if(corpus_.begin(), corpus_.end(), [&](const CorpusEntry& e) { return e.id == id; });
    if (it == corpus_.end()) return error(404, "unknown corpus formula " + id);
    text = it->formula;
    strategy_id = it->strategy;
  } else if (request.contains("formula_text") && request["formula_text"].is_string()) {
    text = request["formula_text"].get<std::string>();
  } else {
    return error(400, "formula_id or formula_text is required");
  }
  if (request.contains("strategy_id")) {
    if (!request["strategy_id"].is_string()) return error(400, "strategy_id must be a string");
    strategy_id = request["strategy_id"].get<std::string>();
  }
  if (strategy_id.empty()) return error(400, "strategy_id is required");

  auto live = std::make_shared<Live>();
  try {
    Formula f = parse_formula(text);
    if (!free_vars(f).empty()) return error(422, "formula has free variables");
    Strategy s = resolve_strategy(strategy_id, corpus_dir_, f);
    live->session = std::make_unique<Session>(f, Valuation{}, s, limits_);
  } catch (const std::exception& e) {
    return error(422, e.what());
  }
  std::vector<Move> replies = settle(*live->session);
  live->last_used = std::chrono::steady_clock::now();
  std::string id;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    id = "s" + std::to_string(next_id_++);
    sessions_[id] = live;
  }
  json body = describe(*live->session);
  body["session_id"] = id;
  body["machine_replies"] = json::array();
  for (const auto& m : replies) body["machine_replies"].push_back(move_json(m));
  return {201, body};
}

std::shared_ptr<SessionService::Live> SessionService::find(const std::string& id) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

SessionService::Response SessionService::get(const std::string& id) {
  auto live = find(id);
  if (!live) return error(404, "unknown session " + id);
  std::lock_guard<std::mutex> lock(live->mutex);
  live->last_used = std::chrono::steady_clock::now();
  json body = describe(*live->session);
  body["session_id"] = id;
  return {200, body};
}

SessionService::Response SessionService::move(const std::string& id, const json& request) {
  auto live = find(id);
  if (!live) return error(404, "unknown session " + id);
  std::lock_guard<std::mutex> lock(live->mutex);
  live->last_used = std::chrono::steady_clock::now();
  Session& s = *live->session;
  if (!request.is_object() || !request.contains("address") || !request.contains("payload"))
    return error(400, "address and payload are required");
  Move m{Player::Bot, {}, Side::Left};
  try {
    m.address = parse_address(request["address"].get<std::string>());
    const json& payload = request["payload"];
    m.payload = payload.is_string() ? parse_payload(payload.get<std::string>())
                                    : Payload(Natural(payload.get<std::uint64_t>()));
  } catch (const std::exception& e) {
    return error(400, e.what());
  }
  if (s.finished()) return error(409, "session is finished");
  if (auto illegal = s.check(m)) {
    json body = {{"error", illegal->what()}, {"reason", to_string(illegal->reason())}};
    return {422, body};
  }
  auto r = s.round(m);
  std::vector<Move> replies = r.machine_moves;
  for (const auto& more : settle(s)) replies.push_back(more);
  json body = describe(s);
  body["session_id"] = id;
  body["machine_replies"] = json::array();
  for (const auto& reply : replies) body["machine_replies"].push_back(move_json(reply));
  return {200, body};
}

SessionService::Response SessionService::corpus() const {
  json out = json::array();
  for (const auto& e : corpus_)
    out.push_back({{"id", e.id}, {"formula", e.formula}, {"description", e.description}, {"strategy", e.strategy}});
  return {200, out};
}

std::size_t SessionService::evict_idle(std::chrono::steady_clock::time_point now) {
  std::lock_guard<std::mutex> lock(mutex_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    bool idle;
    {
      std::lock_guard<std::mutex> session_lock(it->second->mutex);
      idle = now - it->second->last_used > idle_timeout_;
    }
    if (idle) {
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t SessionService::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return sessions_.size();
}

struct HttpFrontend::Impl {
  explicit Impl(SessionService& s) : service(s) {}
  SessionService& service;
  httplib::Server server;
};

HttpFrontend::HttpFrontend(SessionService& service) : impl_(std::make_unique<Impl>(service)) {
  httplib::Server& server = impl_->server;
  SessionService& svc = service;
  auto reply = [](httplib::Response& res, const SessionService::Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
    res.set_header("Access-Control-Allow-Origin", "*");
  };
  auto body_of = [](const httplib::Request& req, httplib::Response& res, json& out) {
    try {
      out = req.body.empty() ? json::object() : json::parse(req.body);
      return true;
    } catch (const json::parse_error& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
      return false;
    }
  };
  server.Post("/sessions", [&svc, reply, body_of](const httplib::Request& req, httplib::Response& res) {
    svc.evict_idle();
    json body;
    if (body_of(req, res, body)) reply(res, svc.create(body));
  });
  server.Get(R"(/sessions/([A-Za-z0-9]+))", [&svc, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc.get(req.matches[1]));
  });
  server.Post(R"(/sessions/([A-Za-z0-9]+)/moves)",
              [&svc, reply, body_of](const httplib::Request& req, httplib::Response& res) {
                json body;
                if (body_of(req, res, body)) reply(res, svc.move(req.matches[1], body));
              });
  server.Get("/corpus", [&svc, reply](const httplib::Request&, httplib::Response& res) { reply(res, svc.corpus()); });
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) res.set_content(json{{"error", "not found"}}.dump(), "application/json");
  });
}

HttpFrontend::~HttpFrontend() = default;

int HttpFrontend::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void HttpFrontend::run() { impl_->server.listen_after_bind(); }

void HttpFrontend::stop() { impl_->server.stop(); }

void serve(SessionService& service, const std::string& host, int port) {
  HttpFrontend http(service);
  http.bind(host, port);
  http.run();
}

}  // namespace clarith
