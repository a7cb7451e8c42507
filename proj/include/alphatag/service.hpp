#pragma once

// Local JSON API for playing against the engine.
//
//   GET  /api/sequence?alpha=p/q&count=N      sequence document
//   POST /api/game/new   {alpha, pile}        {session_id, state, outcome_class, finished, winner}
//   POST /api/game/move  {session_id, take}   {state, engine_reply_move, outcome_class, finished, winner}
//   GET  /api/game/hint?session_id=ID         {move, zeckendorf_parts, explanation, winning}
//
// The human always moves first from the starting position. Errors come back
// as {"error": code, "message": ...}: 400 bad request / illegal move (with
// "legal_range"), 404 unknown session or route, 409 finished game.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "alphatag/document.hpp"
#include "alphatag/game.hpp"

namespace alphatag {

struct ApiResponse {
  int status = 200;
  Json body;
};

class GameService {
 public:
  using Clock = std::chrono::steady_clock;

  struct Options {
    std::chrono::seconds idle_timeout{30 * 60};
    std::size_t oracle_limit = kDefaultOracleLimit;
    /// Largest pile a new game may start with (and largest sequence count).
    std::uint64_t max_pile = 1'000'000'000'000ULL;
    std::size_t max_sequence_count = 100'000;
    std::function<Clock::time_point()> now = [] { return Clock::now(); };
  };

  GameService() : GameService(Options{}) {}
  explicit GameService(Options options);

  /// Dispatches one request. `query` holds decoded query parameters; `body`
  /// is the raw request body (JSON for POST routes). Safe to call concurrently.
  ApiResponse handle(const std::string& method, const std::string& path,
                     const std::map<std::string, std::string>& query, const std::string& body);

  std::size_t session_count() const;

 private:
  struct Session {
    std::mutex mu;
    Solver solver;
    GameState state;
    bool finished = false;
    std::string winner;
    Clock::time_point last_used;
    Session(Rational alpha, std::size_t limit) : solver(std::move(alpha), limit) {}
  };

  ApiResponse get_sequence(const std::map<std::string, std::string>& query);
  ApiResponse new_game(const Json& body);
  ApiResponse move(const Json& body);
  ApiResponse hint(const std::map<std::string, std::string>& query);

  std::shared_ptr<Session> find(const std::string& id);
  void evict_idle();
  Json state_json(Session& s);

  Options options_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

/// HTTP front end for a GameService. Adds a permissive CORS header so a
/// browser UI on another local port can call it.
class HttpServer {
 public:
  explicit HttpServer(GameService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port (port 0 picks a free port). Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires a successful bind().
  bool listen();
  /// Safe to call from another thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// bind + listen. Returns false if the socket could not be bound.
bool run_http_server(GameService& service, const std::string& host, int port);

}  // namespace alphatag
