#pragma once

// Machine-readable output. Every document is
//   {"kind": ..., "meta": {"alpha": "p/q", "horizon": ..., "version": ...}, "payload": {...}}
// with a fixed key order. Rationals are "p/q" strings and sequence terms are
// decimal strings, so nothing passes through a float.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "alphatag/cutoffs.hpp"
#include "alphatag/game.hpp"
#include "alphatag/numerics.hpp"
#include "alphatag/sequence.hpp"

namespace alphatag {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = ALPHATAG_VERSION;

enum class DocumentKind { sequence, windows, zeckendorf, classify, cutoffs, gamma, s_sequence, diagnostics };

const char* to_string(DocumentKind kind);
DocumentKind parse_document_kind(const std::string& text);

/// "count:9" or "max:300".
std::string horizon_string(const Horizon& h);
Horizon parse_horizon(const std::string& text);

Json make_document(DocumentKind kind, const std::string& alpha_pq, const std::string& horizon, Json payload);

Json naturals_json(std::span<const Natural> values);

Json sequence_document(const PSequence& seq);
/// Windows of the terms with indices first..last.
Json windows_document(PSequence& seq, std::size_t first, std::size_t last);
Json zeckendorf_document(PSequence& seq, const Natural& n);
Json classify_document(Solver& solver, const GameState& state);
Json s_sequence_document(PSequence& seq, std::size_t count);
Json cutoffs_document(const CutoffCensus& census);
/// Recurrence, degree bounds, root diagnostics, stable interval and the
/// oscillation pattern over `count` post-certification indices.
Json diagnostics_document(const Rational& alpha, std::size_t count);

struct GammaRow {
  Rational n;
  std::size_t gamma = 0;
};

/// gamma(n) for n = start, start + step, ..., <= upto.
std::vector<GammaRow> gamma_rows(const std::vector<Rational>& sorted_cutoffs, const Rational& start,
                                 const Rational& upto, const Rational& step);
/// "n,gamma,gamma_over_n2" rows; n printed as a decimal when it terminates, else p/q.
std::string gamma_csv(const std::vector<GammaRow>& rows);
Json gamma_document(const std::vector<GammaRow>& rows);

/// Spread of gamma(n)/n^2 over the rows with lo <= n <= hi.
struct RatioSpread {
  std::size_t rows = 0;
  double min = 0;
  double max = 0;
  /// (max - min) / max.
  double relative = 0;
};
std::optional<RatioSpread> gamma_ratio_spread(const std::vector<GammaRow>& rows, const Rational& lo, const Rational& hi);

/// Locale-independent decimal rendering ("2.5", "10"); p/q when not terminating.
std::string decimal_string(const Rational& q);

/// Rebuilds a document from its own meta/payload inputs. Used to check that
/// every emitted document round-trips exactly.
Json recompute_document(const Json& doc);

}  // namespace alphatag
