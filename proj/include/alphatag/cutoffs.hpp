#pragma once

// Cutoffs: the left endpoints of the parameter intervals on which T(alpha)
// does not change.
//
// For a fixed alpha, let P^_k be the smallest term above max W(P_k). Raising
// alpha to Q_k = P^_k / P_k moves P^_k into the window of P_k and changes the
// sequence, and nothing smaller does. The next cutoff after alpha is therefore
// min_k Q_k. Every Q_k lies in (alpha, alpha + 1] and the Q_k converge to
// r^k, where r is the dominant root of x^k - x^(k-1) - 1 for the eventual
// recurrence degree k. Note the limit is r^k, not r.

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alphatag/numerics.hpp"
#include "alphatag/sequence.hpp"

namespace alphatag {

struct RatioPoint {
  std::size_t index = 0;      // k
  std::size_t hat_index = 0;  // index of P^_k
  Natural p_hat;
  Natural p;
  Rational q;
};

/// Q_k for a single k >= 1. Extends seq as needed.
RatioPoint ratio_at(PSequence& seq, std::size_t k);
/// Q_1..Q_count.
std::vector<RatioPoint> q_sequence(const Rational& alpha, std::size_t count);

struct NextCutoffOptions {
  /// Terms scanned past certification before the first stability check:
  /// max(min_tail, tail_per_degree * k).
  std::size_t min_tail = 64;
  std::size_t tail_per_degree = 8;
  /// Give up (CutoffError) when the tail would exceed this many terms.
  std::size_t max_tail = std::size_t{1} << 22;
  /// The probe below the cutoff is cutoff - 1 / (probe_scale * den).
  unsigned long probe_scale = 1'000'000;
};

/// next_cutoff with its evidence.
struct NextCutoff {
  Rational value;
  Rational alpha;
  RecurrenceInfo recurrence;
  std::vector<Natural> prefix;
  /// Earliest k with Q_k = value.
  std::size_t argmin_index = 0;
  /// First index at which T(value) differs from T(alpha).
  std::size_t divergence_index = 0;
  /// Q_1..Q_horizon were scanned.
  std::size_t horizon = 0;
};

/// Raised when the computed minimum fails verification or does not settle.
class CutoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The smallest beta > alpha with T(beta) != T(alpha).
NextCutoff next_cutoff_detail(const Rational& alpha, const NextCutoffOptions& options = {});
Rational next_cutoff(const Rational& alpha, const NextCutoffOptions& options = {});

/// Cached next_cutoff results keyed by the left endpoint. Thread-safe.
/// Only confirmed cutoffs are stored.
class CutoffCache {
 public:
  struct Record {
    Rational cutoff;
    std::size_t degree = 0;
    std::vector<Natural> prefix;
    Rational next;
  };

  std::optional<Record> find(const Rational& cutoff) const;
  void put(Record record);
  std::vector<Record> records() const;
  std::size_t size() const;

  /// {"format": "alphatag-cutoff-cache", "version": 1, "records": [...]} sorted by cutoff.
  std::string to_json() const;
  /// Adds every record from to_json() output. Throws std::invalid_argument on malformed input.
  void load_json(const std::string& text);

 private:
  mutable std::mutex mu_;
  std::map<Rational, Record> records_;
};

/// [lower, upper) with lower <= alpha < upper, both cutoffs.
struct StableInterval {
  Rational lower;
  Rational upper;
  std::size_t degree = 0;
  std::vector<Natural> prefix;
};

StableInterval stable_interval(const Rational& alpha, CutoffCache* cache = nullptr);

/// The largest cutoff strictly below x, and whether x itself is a cutoff.
struct CutoffNeighbourhood {
  Rational below;
  bool is_cutoff = false;
};

/// Walks forward from the largest integer below x. Requires x > 1.
CutoffNeighbourhood cutoff_neighbourhood(const Rational& x, CutoffCache* cache = nullptr);

struct CutoffCensus {
  Rational from;
  Rational bound;
  std::vector<Rational> cutoffs;
  /// Cutoffs in [from, bound]; gamma(bound) when from = 1.
  std::size_t gamma = 0;
};

struct EnumerateOptions {
  CutoffCache* cache = nullptr;
  /// Worker threads; 0 picks hardware_concurrency.
  unsigned jobs = 0;
  NextCutoffOptions cutoff;
};

/// All cutoffs c with from <= c <= to. Requires 1 <= from < to.
/// Sub-ranges between consecutive integers are walked independently.
CutoffCensus enumerate_cutoffs(const Rational& from, const Rational& to, const EnumerateOptions& options = {});

/// Number of cutoffs <= bound in a sorted list.
std::size_t gamma_at(const std::vector<Rational>& sorted_cutoffs, const Rational& bound);

struct IntegerCutoffReport {
  bool passed = true;
  std::vector<long> confirmed;
  std::vector<long> missing;
};

/// Every integer in [2, max_n] must appear in enumerate_cutoffs(1, max_n).
IntegerCutoffReport verify_integer_cutoffs(long max_n, const EnumerateOptions& options = {});

struct FractionalCutoffCase {
  long x = 0;
  Rational candidate;  // x + 1/n
  bool is_cutoff = false;
  Rational below;  // largest cutoff < candidate
  Natural window_max;
  Natural expected_window_max;  // n*x - n + 1
  bool ok = false;
};

struct FractionalCutoffReport {
  long n = 0;
  bool passed = true;
  std::vector<FractionalCutoffCase> cases;
};

/// For x = n!, 2 n!, ..., x_multiples * n!: x + 1/n is a cutoff and, with
/// alpha the largest cutoff below it, max W_alpha(n) = n x - n + 1.
FractionalCutoffReport verify_fractional_cutoffs(long n, long x_multiples, CutoffCache* cache = nullptr);
FractionalCutoffCase check_fractional_cutoff(long n, long x, CutoffCache* cache = nullptr);

struct HalfIntegerEntry {
  Rational value;
  bool is_cutoff = false;
};

/// Classifies 5/2, 7/2, ..., up to limit.
std::vector<HalfIntegerEntry> half_integer_survey(const Rational& limit, CutoffCache* cache = nullptr);

struct OscillationReport {
  Rational alpha;
  std::size_t degree = 0;
  RootDiagnostics root;
  /// Q indices examined: [start, start + count).
  std::size_t start = 0;
  std::vector<int> signs;  // sign of Q_n - r^k
  std::size_t sign_changes = 0;
  Rational min_q;
  bool min_below_limit = false;
  bool min_above_alpha = false;
};

/// Sign pattern of Q_n - r^k over `count` indices after the recurrence is certified.
/// Throws CutoffError when the recurrence cannot be certified.
OscillationReport oscillation_diagnostic(const Rational& alpha, std::size_t count);

}  // namespace alphatag
