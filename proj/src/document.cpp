#include "alphatag/document.hpp"

#include <array>
#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace alphatag {

namespace {

constexpr std::array<std::pair<DocumentKind, const char*>, 8> kKinds{{
    {DocumentKind::sequence, "sequence"},
    {DocumentKind::windows, "windows"},
    {DocumentKind::zeckendorf, "zeckendorf"},
    {DocumentKind::classify, "classify"},
    {DocumentKind::cutoffs, "cutoffs"},
    {DocumentKind::gamma, "gamma"},
    {DocumentKind::s_sequence, "s-sequence"},
    {DocumentKind::diagnostics, "diagnostics"},
}};

std::string fixed6(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 6);
  return std::string(buf.data(), res.ptr);
}

Json advice_json(const MoveAdvice& a) {
  Json j;
  j["take"] = a.take.str();
  j["winning"] = a.winning;
  j["theory_derived"] = a.theory_derived;
  return j;
}

std::size_t parse_index(const Json& j) { return j.get<std::size_t>(); }

}  // namespace

const char* to_string(DocumentKind kind) {
  for (auto [k, name] : kKinds)
    if (k == kind) return name;
  return "unknown";
}

DocumentKind parse_document_kind(const std::string& text) {
  for (auto [k, name] : kKinds)
    if (text == name) return k;
  throw std::invalid_argument("unknown document kind '" + text + "'");
}

std::string horizon_string(const Horizon& h) {
  return (h.kind == Horizon::Kind::term_count ? "count:" : "max:") + h.bound.str();
}

Horizon parse_horizon(const std::string& text) {
  if (text.rfind("count:", 0) == 0) return {Horizon::Kind::term_count, Natural::parse(text.substr(6))};
  if (text.rfind("max:", 0) == 0) return Horizon::up_to(Natural::parse(text.substr(4)));
  throw std::invalid_argument("bad horizon '" + text + "'");
}

Json make_document(DocumentKind kind, const std::string& alpha_pq, const std::string& horizon, Json payload) {
  Json doc;
  doc["kind"] = to_string(kind);
  Json meta;
  meta["alpha"] = alpha_pq.empty() ? Json(nullptr) : Json(alpha_pq);
  meta["horizon"] = horizon;
  meta["version"] = kToolVersion;
  doc["meta"] = std::move(meta);
  doc["payload"] = std::move(payload);
  return doc;
}

Json naturals_json(std::span<const Natural> values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

Json sequence_document(const PSequence& seq) {
  auto terms = seq.within_horizon();
  Json payload;
  payload["count"] = terms.size();
  payload["terms"] = naturals_json(terms);
  return make_document(DocumentKind::sequence, seq.alpha().pq(), horizon_string(seq.generated_by()),
                       std::move(payload));
}

Json windows_document(PSequence& seq, std::size_t first, std::size_t last) {
  if (first == 0 || last < first) throw std::invalid_argument("windows: need 1 <= first <= last");
  Json list = Json::array();
  for (std::size_t i = first; i <= last; ++i) {
    Window w = window(seq, i);
    Json entry;
    entry["owner_index"] = i;
    entry["owner"] = seq[i].str();
    entry["first_index"] = w.first;
    entry["last_index"] = w.last;
    Json members = Json::array();
    for (std::size_t j = w.first; j <= w.last; ++j) members.push_back(seq[j].str());
    entry["members"] = std::move(members);
    list.push_back(std::move(entry));
  }
  Json payload;
  payload["windows"] = std::move(list);
  return make_document(DocumentKind::windows, seq.alpha().pq(),
                       "index:" + std::to_string(first) + ".." + std::to_string(last), std::move(payload));
}

Json zeckendorf_document(PSequence& seq, const Natural& n) {
  Zeckendorf z = zeckendorf(seq, n);
  Json payload;
  payload["n"] = n.str();
  payload["part_indices"] = z.part_indices;
  payload["parts"] = naturals_json(z.parts(seq));
  return make_document(DocumentKind::zeckendorf, seq.alpha().pq(), "n:" + n.str(), std::move(payload));
}

Json classify_document(Solver& solver, const GameState& state) {
  Json payload;
  payload["pile"] = state.pile.str();
  payload["cap"] = state.cap.str();
  payload["outcome"] = to_string(solver.classify(state));
  payload["exact"] = solver.is_exact(state.pile);
  payload["best_move"] = state.pile.is_zero() ? Json(nullptr) : advice_json(solver.best_move(state));
  return make_document(DocumentKind::classify, solver.alpha().pq(), "pile:" + state.pile.str(), std::move(payload));
}

Json s_sequence_document(PSequence& seq, std::size_t count) {
  Json payload;
  payload["values"] = s_sequence(seq, count).values;
  return make_document(DocumentKind::s_sequence, seq.alpha().pq(), "count:" + std::to_string(count),
                       std::move(payload));
}

Json cutoffs_document(const CutoffCensus& census) {
  Json payload;
  payload["from"] = census.from.pq();
  payload["to"] = census.bound.pq();
  payload["gamma"] = census.gamma;
  Json list = Json::array();
  for (const auto& c : census.cutoffs) list.push_back(c.pq());
  payload["cutoffs"] = std::move(list);
  return make_document(DocumentKind::cutoffs, "", "range:" + census.from.pq() + ".." + census.bound.pq(),
                       std::move(payload));
}

Json diagnostics_document(const Rational& alpha, std::size_t count) {
  PSequence seq(alpha);
  RecurrenceInfo rec = detect_recurrence(seq);
  Json payload;
  Json r;
  r["degree"] = rec.degree;
  r["holds_from"] = rec.holds_from;
  r["certified"] = rec.certified;
  r["prefix"] = naturals_json(recurrence_prefix(seq, rec));
  payload["recurrence"] = std::move(r);
  auto [lo, hi] = degree_bounds(alpha);
  payload["degree_bounds"] = {lo, hi};
  if (rec.certified) {
    OscillationReport osc = oscillation_diagnostic(alpha, count);
    Json root;
    root["dominant_root"] = osc.root.dominant_root;
    root["q_limit"] = osc.root.q_limit;
    root["residual"] = osc.root.residual;
    payload["root"] = std::move(root);
    StableInterval si = stable_interval(alpha);
    Json interval;
    interval["lower"] = si.lower.pq();
    interval["upper"] = si.upper.pq();
    payload["stable_interval"] = std::move(interval);
    Json o;
    o["start"] = osc.start;
    o["count"] = count;
    o["sign_changes"] = osc.sign_changes;
    o["min_q"] = osc.min_q.pq();
    o["min_below_limit"] = osc.min_below_limit;
    o["min_above_alpha"] = osc.min_above_alpha;
    std::string signs;
    for (int s : osc.signs) signs += s > 0 ? '+' : (s < 0 ? '-' : '0');
    o["signs"] = signs;
    payload["oscillation"] = std::move(o);
  }
  return make_document(DocumentKind::diagnostics, alpha.pq(), "count:" + std::to_string(count), std::move(payload));
}

std::vector<GammaRow> gamma_rows(const std::vector<Rational>& sorted_cutoffs, const Rational& start,
                                 const Rational& upto, const Rational& step) {
  if (!(Rational(0) < step)) throw std::invalid_argument("gamma: step must be positive");
  std::vector<GammaRow> rows;
  for (Rational n = start; !(upto < n); n = n + step) rows.push_back({n, gamma_at(sorted_cutoffs, n)});
  return rows;
}

std::string decimal_string(const Rational& q) {
  if (q.is_integer()) return q.num().get_str();
  // Terminating iff the denominator is 2^a 5^b.
  mpz_class d = q.den();
  unsigned twos = 0;
  unsigned fives = 0;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) {
    d /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return q.pq();
  const unsigned digits = std::max(twos, fives);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  mpz_class scaled = q.num() * scale / q.den();
  const bool negative = sgn(scaled) < 0;
  std::string s = mpz_class(abs(scaled)).get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return negative ? "-" + s : s;
}

std::string gamma_csv(const std::vector<GammaRow>& rows) {
  std::string out = "n,gamma,gamma_over_n2\n";
  for (const auto& r : rows) {
    double n = r.n.to_double();
    out += decimal_string(r.n) + "," + std::to_string(r.gamma) + "," + fixed6(static_cast<double>(r.gamma) / (n * n)) +
           "\n";
  }
  return out;
}

Json gamma_document(const std::vector<GammaRow>& rows) {
  Json list = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["n"] = r.n.pq();
    row["gamma"] = r.gamma;
    list.push_back(std::move(row));
  }
  Json payload;
  payload["rows"] = std::move(list);
  std::string horizon = rows.empty() ? "" : "range:" + rows.front().n.pq() + ".." + rows.back().n.pq();
  return make_document(DocumentKind::gamma, "", horizon, std::move(payload));
}

std::optional<RatioSpread> gamma_ratio_spread(const std::vector<GammaRow>& rows, const Rational& lo,
                                              const Rational& hi) {
  std::optional<RatioSpread> out;
  for (const auto& r : rows) {
    if (r.n < lo || hi < r.n) continue;
    const double n = r.n.to_double();
    const double v = static_cast<double>(r.gamma) / (n * n);
    if (!out) {
      out = RatioSpread{0, v, v, 0};
    }
    out->rows++;
    out->min = std::min(out->min, v);
    out->max = std::max(out->max, v);
  }
  if (out && out->max > 0) out->relative = (out->max - out->min) / out->max;
  return out;
}

Json recompute_document(const Json& doc) {
  const auto kind = parse_document_kind(doc.at("kind").get<std::string>());
  const auto& meta = doc.at("meta");
  const auto& payload = doc.at("payload");
  auto alpha = [&] { return parse_rational(meta.at("alpha").get<std::string>()); };

  switch (kind) {
    case DocumentKind::sequence:
      return sequence_document(generate(alpha(), parse_horizon(meta.at("horizon").get<std::string>())));
    case DocumentKind::windows: {
      PSequence seq(alpha());
      const auto& list = payload.at("windows");
      if (list.empty()) throw std::invalid_argument("windows document without windows");
      return windows_document(seq, parse_index(list.front().at("owner_index")),
                              parse_index(list.back().at("owner_index")));
    }
    case DocumentKind::zeckendorf: {
      PSequence seq(alpha());
      return zeckendorf_document(seq, Natural::parse(payload.at("n").get<std::string>()));
    }
    case DocumentKind::classify: {
      Solver solver(alpha());
      GameState st{Natural::parse(payload.at("pile").get<std::string>()),
                   Natural::parse(payload.at("cap").get<std::string>()), solver.alpha()};
      return classify_document(solver, st);
    }
    case DocumentKind::s_sequence: {
      PSequence seq(alpha());
      return s_sequence_document(seq, payload.at("values").size());
    }
    case DocumentKind::cutoffs:
      return cutoffs_document(enumerate_cutoffs(parse_rational(payload.at("from").get<std::string>()),
                                                parse_rational(payload.at("to").get<std::string>())));
    case DocumentKind::gamma: {
      const auto& rows = payload.at("rows");
      if (rows.empty()) return gamma_document({});
      Rational start = parse_rational(rows.front().at("n").get<std::string>());
      Rational last = parse_rational(rows.back().at("n").get<std::string>());
      Rational step = rows.size() > 1 ? parse_rational(rows[1].at("n").get<std::string>()) - start : Rational(1);
      auto census = enumerate_cutoffs(Rational(1), std::max(last, Rational(2)));
      return gamma_document(gamma_rows(census.cutoffs, start, last, step));
    }
    case DocumentKind::diagnostics:
      return diagnostics_document(alpha(), payload.at("oscillation").at("count").get<std::size_t>());
  }
  throw std::logic_error("unreachable");
}

}  // namespace alphatag
