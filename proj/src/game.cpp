#include "alphatag/game.hpp"

#include <algorithm>

namespace alphatag {

GameState initial_state(const Rational& alpha, const Natural& n) {
  if (n.is_zero()) return {Natural(0), Natural(0), alpha};
  return {n, n - Natural(1), alpha};
}

IllegalMove::IllegalMove(const GameState& state, const Natural& take)
    : std::invalid_argument("illegal move " + take.str() + ": legal range is 1.." + state.legal_max().str()),
      state_(state) {}

GameState apply_move(const GameState& state, const Natural& take) {
  if (!state.is_legal(take)) throw IllegalMove(state, take);
  return {state.pile - take, floor_scale(state.alpha, take), state.alpha};
}

Solver::Solver(Rational alpha, std::size_t oracle_limit)
    : alpha_(std::move(alpha)), limit_(oracle_limit), seq_(alpha_) {
  cap_after_.resize(limit_ + 1);
  const Natural clamp(limit_ + 1);
  for (std::size_t m = 1; m <= limit_; ++m) {
    Natural c = floor_scale(alpha_, Natural(m));
    cap_after_[m] = static_cast<std::size_t>(*std::min(c, clamp).to_u64());
  }
  wins_.push_back({0});
}

bool Solver::is_exact(const Natural& pile) const { return !(Natural(limit_) < pile); }

std::size_t Solver::cap_after(std::size_t take) const { return cap_after_[take]; }

void Solver::grow_to(std::size_t pile) {
  // wins(p, c) = wins(p, c - 1) or the position after taking c is lost.
  while (wins_.size() <= pile) {
    const std::size_t p = wins_.size();
    std::vector<std::uint8_t> row(p + 1, 0);
    for (std::size_t c = 1; c <= p; ++c) {
      const std::size_t rest = p - c;
      row[c] = row[c - 1] || !wins_[rest][std::min(cap_after(c), rest)];
    }
    wins_.push_back(std::move(row));
  }
}

Outcome Solver::classify_exact(std::size_t pile, std::size_t cap) {
  if (pile > limit_)
    throw std::out_of_range("pile " + std::to_string(pile) + " exceeds the oracle limit " + std::to_string(limit_) +
                            "; use sequence generation for larger piles");
  grow_to(pile);
  return wins_[pile][std::min(cap, pile)] ? Outcome::N : Outcome::P;
}

Natural Solver::smallest_part(const Natural& pile) {
  auto z = zeckendorf(seq_, pile);
  return seq_[z.part_indices.front()];
}

Outcome Solver::classify(const GameState& state) {
  if (state.is_terminal()) return Outcome::P;
  if (is_exact(state.pile)) {
    auto pile = static_cast<std::size_t>(*state.pile.to_u64());
    return classify_exact(pile, static_cast<std::size_t>(*state.legal_max().to_u64()));
  }
  return smallest_part(state.pile) <= state.cap ? Outcome::N : Outcome::P;
}

std::vector<Natural> Solver::losing_piles(std::size_t max_n) {
  if (max_n > limit_)
    throw std::out_of_range("max_n " + std::to_string(max_n) + " exceeds the oracle limit " + std::to_string(limit_) +
                            "; generate the sequence instead");
  std::vector<Natural> out;
  for (std::size_t n = 0; n <= max_n; ++n) {
    if (classify_exact(n, n == 0 ? 0 : n - 1) == Outcome::P) out.emplace_back(n);
  }
  return out;
}

MoveAdvice Solver::best_move(const GameState& state) {
  if (state.pile.is_zero()) throw std::invalid_argument("best_move: empty pile");
  const bool exact = is_exact(state.pile);
  if (state.is_terminal()) return {Natural(0), false, !exact};

  if (!exact) {
    Natural z = smallest_part(state.pile);
    if (z <= state.cap) return {z, true, true};
    return {Natural(1), false, true};
  }

  if (classify(state) == Outcome::P) return {Natural(1), false, false};
  Natural z = smallest_part(state.pile);
  if (state.is_legal(z) && classify(apply_move(state, z)) == Outcome::P) return {z, true, false};

  const auto top = *state.legal_max().to_u64();
  for (std::uint64_t m = 1; m <= top; ++m) {
    Natural take(m);
    if (classify(apply_move(state, take)) == Outcome::P) return {take, true, false};
  }
  throw std::logic_error("best_move: N position without a winning move");
}

Outcome classify(const GameState& state) { return Solver(state.alpha).classify(state); }

std::vector<Natural> losing_piles_by_oracle(const Rational& alpha, std::size_t max_n, std::size_t oracle_limit) {
  if (max_n > oracle_limit)
    throw std::out_of_range("max_n " + std::to_string(max_n) + " exceeds the oracle limit " +
                            std::to_string(oracle_limit) + "; generate the sequence instead");
  return Solver(alpha, std::max(max_n, std::size_t{1})).losing_piles(max_n);
}

MoveAdvice best_move(const GameState& state) { return Solver(state.alpha).best_move(state); }

Transcript playout(const Rational& alpha, const Natural& n, const MoveSource& first, const MoveSource& second) {
  Transcript t{alpha, n, {}, Player::second};
  GameState state = initial_state(alpha, n);
  Player turn = Player::first;
  while (!state.is_terminal()) {
    Move mv = (turn == Player::first ? first : second)(state);
    if (!state.is_legal(mv.take)) {
      throw PlayoutError(std::string(to_string(turn)) + " player chose illegal move " + mv.take.str() +
                             " (legal 1.." + state.legal_max().str() + ") at pile " + state.pile.str(),
                         std::move(t));
    }
    t.plies.push_back({turn, state, mv});
    state = apply_move(state, mv.take);
    turn = other(turn);
  }
  t.winner = other(turn);
  return t;
}

MoveSource engine_source(Solver& solver) {
  return [&solver](const GameState& s) {
    MoveAdvice a = solver.best_move(s);
    return Move{a.take, a.theory_derived};
  };
}

}  // namespace alphatag
