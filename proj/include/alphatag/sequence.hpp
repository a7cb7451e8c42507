#pragma once

// Losing pile sizes T(alpha) = (P_0, P_1, ...) and the structure built on
// them: windows, greedy representations, indices of recurrence and the
// eventual recurrence P_n = P_{n-1} + P_{n-k}.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "alphatag/numerics.hpp"

namespace alphatag {

/// How far a sequence was generated: the first `count` terms, or every term <= `bound`.
struct Horizon {
  enum class Kind { term_count, value_bound };
  Kind kind = Kind::term_count;
  Natural bound;

  static Horizon terms(std::size_t count) { return {Kind::term_count, Natural(count)}; }
  static Horizon up_to(Natural value) { return {Kind::value_bound, std::move(value)}; }
};

/// P_0 = 0, P_1 = 1, P_{m+1} = P_m + P_j with j the unique index such that
/// alpha * P_j >= P_m > alpha * P_{j-1}.
///
/// The stored prefix is append-only: operations that need terms past the
/// current end extend it in place, existing terms never change.
class PSequence {
 public:
  /// Throws std::invalid_argument when alpha < 1.
  explicit PSequence(Rational alpha);

  const Rational& alpha() const { return alpha_; }
  std::span<const Natural> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const Natural& operator[](std::size_t i) const { return terms_[i]; }
  const Natural& back() const { return terms_.back(); }
  const Horizon& generated_by() const { return horizon_; }
  /// The terms inside generated_by(), ignoring anything appended since.
  std::span<const Natural> within_horizon() const;

  /// For m >= 2: the index j with P_m = P_{m-1} + P_j.
  std::size_t addend_index(std::size_t m) const { return addend_[m]; }

  /// Extends to at least `count` terms. Extending may reallocate, so the
  /// mutating lookups below take their argument by value.
  void extend_to_count(std::size_t count);
  /// Extends until the last term is strictly greater than `value`.
  void extend_past(Natural value);
  /// Extends until the last term is strictly greater than alpha * value.
  void extend_past_scaled(Natural value);

  /// Largest index whose term is <= value (index 0 when value is 0).
  /// The prefix must already extend past value.
  std::size_t index_at_most(const Natural& value) const;
  /// Largest index i >= 0 with P_i <= alpha * value. Extends as needed.
  std::size_t index_at_most_scaled(Natural value);
  /// Index of a term equal to value, if any.
  std::optional<std::size_t> index_of(Natural value);

 private:
  void push_next();

  Rational alpha_;
  std::vector<Natural> terms_;
  std::vector<std::size_t> addend_;
  std::size_t window_ptr_ = 1;
  Horizon horizon_ = Horizon::terms(2);

  friend PSequence generate(const Rational& alpha, const Horizon& horizon);
};

/// First `count` terms. The stored prefix always holds P_0 and P_1; within_horizon() trims.
PSequence generate(const Rational& alpha, std::size_t count);
/// Term-count or value-bound horizon. Throws std::invalid_argument when alpha < 1.
PSequence generate(const Rational& alpha, const Horizon& horizon);

/// W(P_i): indices j with alpha * P_{i-1} < P_j <= alpha * P_i.
struct Window {
  std::size_t owner_index = 0;
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive

  std::size_t size() const { return last + 1 - first; }
  std::vector<std::size_t> member_indices() const;
};

/// Throws std::invalid_argument for i = 0.
Window window(PSequence& seq, std::size_t i);

struct Zeckendorf {
  Natural n;
  /// Strictly increasing indices into the sequence; P_0 never appears.
  std::vector<std::size_t> part_indices;

  std::vector<Natural> parts(const PSequence& seq) const;
};

/// Greedy representation (largest term first). Throws std::invalid_argument for n = 0.
Zeckendorf zeckendorf(PSequence& seq, Natural n);

/// S_i = max{ j : P_i + P_{i+j-1} = P_{i+j} } for i = 1..count.
struct IndexSequence {
  std::vector<std::size_t> values;
};

IndexSequence s_sequence(PSequence& seq, std::size_t count);

/// P_n = P_{n-1} + P_{n-degree} for every n >= holds_from (degree 1 is doubling).
struct RecurrenceInfo {
  std::size_t degree = 0;
  std::size_t holds_from = 0;
  /// The relation held for degree + 2 consecutive indices, which forces it forever.
  bool certified = false;
  /// Last index examined.
  std::size_t checked_to = 0;

  /// First index at which degree + 2 consecutive relations were observed.
  std::size_t certified_at() const { return holds_from + degree + 1; }
};

inline constexpr std::size_t kDefaultRecurrenceTermLimit = 1u << 20;

/// Extends `seq` (up to max_terms) until the recurrence is certified.
/// Returns certified = false rather than guessing if the limit is hit first.
RecurrenceInfo detect_recurrence(PSequence& seq, std::size_t max_terms = kDefaultRecurrenceTermLimit);

/// Terms before the eventual recurrence takes over (P_0 .. P_{holds_from - 1}).
std::vector<Natural> recurrence_prefix(const PSequence& seq, const RecurrenceInfo& info);

/// Floating-point bracket [lower, upper] for the recurrence degree, rounded outward.
/// Advisory only.
std::pair<int, int> degree_bounds(const Rational& alpha);

}  // namespace alphatag
