#pragma once

// alpha-TAG positions, exact classification and move selection.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alphatag/numerics.hpp"
#include "alphatag/sequence.hpp"

namespace alphatag {

/// Pile size plus the most stones the player to move may take.
struct GameState {
  Natural pile;
  Natural cap;
  Rational alpha = Rational(1);

  /// min(cap, pile); zero means the player to move has lost.
  const Natural& legal_max() const { return cap < pile ? cap : pile; }
  bool is_terminal() const { return legal_max().is_zero(); }
  bool is_legal(const Natural& take) const { return !take.is_zero() && !(legal_max() < take); }

  friend bool operator==(const GameState&, const GameState&) = default;
};

enum class Outcome { N, P };

inline const char* to_string(Outcome o) { return o == Outcome::N ? "N" : "P"; }

/// (n, n - 1) for n >= 1 and (0, 0) for n = 0.
GameState initial_state(const Rational& alpha, const Natural& n);

class IllegalMove : public std::invalid_argument {
 public:
  IllegalMove(const GameState& state, const Natural& take);
  const GameState& state() const { return state_; }

 private:
  GameState state_;
};

/// (pile - take, floor(alpha * take)). Throws IllegalMove.
GameState apply_move(const GameState& state, const Natural& take);

inline constexpr std::size_t kDefaultOracleLimit = 2000;

/// Advice for the player to move.
struct MoveAdvice {
  /// Stones to take. For a losing state this is the stalling move 1
  /// (or 0 when no move exists at all).
  Natural take;
  /// False means a resign hint: every move loses against best play.
  bool winning = false;
  /// Chosen by the representation rule above the oracle limit, without
  /// confirmation by exhaustive search.
  bool theory_derived = false;
};

/// One alpha, one memo table. Not safe for concurrent use; give each
/// thread or session its own Solver.
class Solver {
 public:
  explicit Solver(Rational alpha, std::size_t oracle_limit = kDefaultOracleLimit);

  const Rational& alpha() const { return alpha_; }
  std::size_t oracle_limit() const { return limit_; }
  PSequence& sequence() { return seq_; }

  /// True when `pile` is small enough for exhaustive classification.
  bool is_exact(const Natural& pile) const;

  /// Exact for piles within the oracle limit; above it, (n, c) is N iff the
  /// smallest part of n's representation is <= c.
  Outcome classify(const GameState& state);

  /// The exhaustive answer only. Throws std::out_of_range above the limit.
  Outcome classify_exact(std::size_t pile, std::size_t cap);

  /// Piles n <= max_n whose starting position is lost for the first player.
  /// Throws std::out_of_range above the oracle limit.
  std::vector<Natural> losing_piles(std::size_t max_n);

  /// Smallest part of pile's greedy representation.
  Natural smallest_part(const Natural& pile);

  /// Requires pile >= 1 (throws std::invalid_argument otherwise).
  MoveAdvice best_move(const GameState& state);

 private:
  void grow_to(std::size_t pile);
  std::size_t cap_after(std::size_t take) const;

  Rational alpha_;
  std::size_t limit_;
  PSequence seq_;
  // wins_[p][c]: player to move wins from (p, c), c <= p.
  std::vector<std::vector<std::uint8_t>> wins_;
  std::vector<std::size_t> cap_after_;
};

Outcome classify(const GameState& state);
std::vector<Natural> losing_piles_by_oracle(const Rational& alpha, std::size_t max_n,
                                            std::size_t oracle_limit = kDefaultOracleLimit);
MoveAdvice best_move(const GameState& state);

enum class Player { first, second };

inline const char* to_string(Player p) { return p == Player::first ? "first" : "second"; }
inline Player other(Player p) { return p == Player::first ? Player::second : Player::first; }

struct Move {
  Natural take;
  bool theory_derived = false;
};

using MoveSource = std::function<Move(const GameState&)>;

struct Ply {
  Player actor = Player::first;
  GameState before;
  Move move;
};

struct Transcript {
  Rational alpha;
  Natural start;
  std::vector<Ply> plies;
  Player winner = Player::second;
};

/// Raised when a move source returns an illegal move; carries the game so far.
class PlayoutError : public std::runtime_error {
 public:
  PlayoutError(const std::string& what, Transcript transcript)
      : std::runtime_error(what), transcript_(std::move(transcript)) {}
  const Transcript& transcript() const { return transcript_; }

 private:
  Transcript transcript_;
};

/// Alternates `first` and `second` from initial_state(alpha, n) until the
/// player to move has no move; that player loses.
Transcript playout(const Rational& alpha, const Natural& n, const MoveSource& first, const MoveSource& second);

/// Move source backed by solver.best_move. The solver must outlive the source.
MoveSource engine_source(Solver& solver);

}  // namespace alphatag
