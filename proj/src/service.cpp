#include "alphatag/service.hpp"

#include <stdexcept>
#include <vector>

#include "httplib.h"

namespace alphatag {

namespace {

ApiResponse error(int status, const std::string& code, const std::string& message) {
  Json body;
  body["error"] = code;
  body["message"] = message;
  return {status, std::move(body)};
}

// Accepts 10, "10", 3.5 or "7/2".
std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

Natural natural_field(const Json& body, const char* name) {
  if (!body.contains(name)) throw std::invalid_argument(std::string("missing field '") + name + "'");
  const Json& j = body.at(name);
  if (!j.is_string() && !j.is_number_unsigned() && !j.is_number_integer())
    throw std::invalid_argument(std::string("field '") + name + "' must be a nonnegative integer");
  return Natural::parse(scalar_text(j));
}

Json range_json(const GameState& st) {
  if (st.is_terminal()) return nullptr;
  Json r;
  r["min"] = "1";
  r["max"] = st.legal_max().str();
  return r;
}

}  // namespace

GameService::GameService(Options options) : options_(std::move(options)) {}

std::size_t GameService::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

void GameService::evict_idle() {
  const auto now = options_.now();
  std::lock_guard lock(mu_);
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_used > options_.idle_timeout)
      it = sessions_.erase(it);
    else
      ++it;
  }
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  it->second->last_used = options_.now();
  return it->second;
}

ApiResponse GameService::handle(const std::string& method, const std::string& path,
                                const std::map<std::string, std::string>& query, const std::string& body) {
  evict_idle();
  try {
    if (method == "GET" && path == "/api/sequence") return get_sequence(query);
    if (method == "GET" && path == "/api/game/hint") return hint(query);
    if (method == "POST" && (path == "/api/game/new" || path == "/api/game/move")) {
      Json parsed;
      try {
        parsed = Json::parse(body.empty() ? "{}" : body);
      } catch (const Json::parse_error& e) {
        return error(400, "bad_request", std::string("body is not JSON: ") + e.what());
      }
      if (!parsed.is_object()) return error(400, "bad_request", "body must be a JSON object");
      return path == "/api/game/new" ? new_game(parsed) : move(parsed);
    }
    return error(404, "not_found", method + " " + path + " is not a known route");
  } catch (const std::invalid_argument& e) {
    return error(400, "bad_request", e.what());
  } catch (const std::out_of_range& e) {
    return error(400, "bad_request", e.what());
  } catch (const Json::exception& e) {
    return error(400, "bad_request", e.what());
  }
}

ApiResponse GameService::get_sequence(const std::map<std::string, std::string>& query) {
  auto a = query.find("alpha");
  auto c = query.find("count");
  if (a == query.end() || c == query.end()) return error(400, "bad_request", "alpha and count are required");
  Rational alpha = parse_rational(a->second);
  auto count = Natural::parse(c->second).to_u64();
  if (!count || *count > options_.max_sequence_count)
    return error(400, "bad_request", "count must be at most " + std::to_string(options_.max_sequence_count));
  return {200, sequence_document(generate(alpha, static_cast<std::size_t>(*count)))};
}

Json GameService::state_json(Session& s) {
  Json st;
  st["alpha"] = s.state.alpha.pq();
  st["pile"] = s.state.pile.str();
  st["cap"] = s.state.cap.str();
  st["legal_range"] = range_json(s.state);
  st["to_move"] = s.finished ? Json(nullptr) : Json("human");
  return st;
}

ApiResponse GameService::new_game(const Json& body) {
  if (!body.contains("alpha")) return error(400, "bad_request", "missing field 'alpha'");
  Rational alpha = parse_rational(scalar_text(body.at("alpha")));
  if (alpha < Rational(1)) return error(400, "bad_request", "alpha must be >= 1");
  Natural pile = natural_field(body, "pile");
  if (Natural(options_.max_pile) < pile)
    return error(400, "bad_request", "pile must be at most " + std::to_string(options_.max_pile));

  auto session = std::make_shared<Session>(alpha, options_.oracle_limit);
  session->state = initial_state(alpha, pile);
  session->last_used = options_.now();
  if (session->state.is_terminal()) {
    session->finished = true;
    session->winner = "engine";
  }
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = "g" + std::to_string(next_id_++);
    sessions_[id] = session;
  }

  std::lock_guard lock(session->mu);
  Json out;
  out["session_id"] = id;
  out["state"] = state_json(*session);
  out["outcome_class"] = to_string(session->solver.classify(session->state));
  out["finished"] = session->finished;
  out["winner"] = session->finished ? Json(session->winner) : Json(nullptr);
  return {200, std::move(out)};
}

ApiResponse GameService::move(const Json& body) {
  if (!body.contains("session_id") || !body.at("session_id").is_string())
    return error(400, "bad_request", "missing field 'session_id'");
  const auto id = body.at("session_id").get<std::string>();
  auto session = find(id);
  if (!session) return error(404, "unknown_session", "no session '" + id + "'");

  std::lock_guard lock(session->mu);
  if (session->finished) return error(409, "game_finished", "the game is over; winner: " + session->winner);
  Natural take = natural_field(body, "take");
  GameState& st = session->state;
  if (!st.is_legal(take)) {
    auto r = error(400, "illegal_move", "take must be between 1 and " + st.legal_max().str());
    r.body["legal_range"] = range_json(st);
    return r;
  }

  st = apply_move(st, take);
  Json reply = nullptr;
  bool theory_derived = false;
  if (st.is_terminal()) {
    session->finished = true;
    session->winner = "human";
  } else {
    MoveAdvice a = session->solver.best_move(st);
    reply = a.take.str();
    theory_derived = a.theory_derived;
    st = apply_move(st, a.take);
    if (st.is_terminal()) {
      session->finished = true;
      session->winner = "engine";
    }
  }

  Json out;
  out["state"] = state_json(*session);
  out["engine_reply_move"] = std::move(reply);
  out["engine_move_theory_derived"] = theory_derived;
  out["outcome_class"] = to_string(session->solver.classify(st));
  out["finished"] = session->finished;
  out["winner"] = session->finished ? Json(session->winner) : Json(nullptr);
  return {200, std::move(out)};
}

ApiResponse GameService::hint(const std::map<std::string, std::string>& query) {
  auto q = query.find("session_id");
  if (q == query.end()) return error(400, "bad_request", "session_id is required");
  auto session = find(q->second);
  if (!session) return error(404, "unknown_session", "no session '" + q->second + "'");

  std::lock_guard lock(session->mu);
  if (session->finished) return error(409, "game_finished", "the game is over; winner: " + session->winner);
  const GameState& st = session->state;
  MoveAdvice a = session->solver.best_move(st);
  auto& seq = session->solver.sequence();
  Zeckendorf z = zeckendorf(seq, st.pile);

  Json out;
  out["move"] = a.take.str();
  out["zeckendorf_parts"] = naturals_json(z.parts(seq));
  out["winning"] = a.winning;
  out["theory_derived"] = a.theory_derived;
  if (a.winning) {
    out["explanation"] = "Take " + a.take.str() + ": the opponent is left with " + (st.pile - a.take).str() +
                         " stones and a cap of " + floor_scale(st.alpha, a.take).str() +
                         ", a losing position for them.";
  } else {
    out["explanation"] = "Losing position: the smallest part " + seq[z.part_indices.front()].str() +
                         " exceeds your cap of " + st.cap.str() +
                         ", so every move loses against best play. Taking 1 keeps the opponent's cap smallest.";
  }
  return {200, std::move(out)};
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(GameService& service) : impl_(std::make_unique<Impl>()) {
  auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    ApiResponse r = service.handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  auto& server = impl_->server;
  server.Get(R"(/api/.*)", dispatch);
  server.Post(R"(/api/.*)", dispatch);
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

bool run_http_server(GameService& service, const std::string& host, int port) {
  HttpServer server(service);
  if (server.bind(host, port) < 0) return false;
  return server.listen();
}

}  // namespace alphatag
