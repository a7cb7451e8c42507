#include "alphatag/cutoffs.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "json.hpp"

namespace alphatag {

namespace {

using std::strong_ordering;

// Index of the smallest term strictly above alpha * P_k.
std::size_t hat_index_of(PSequence& seq, std::size_t k) { return seq.index_at_most_scaled(seq[k]) + 1; }

CutoffCache::Record step(const Rational& c, CutoffCache* cache, const NextCutoffOptions& options) {
  if (cache) {
    if (auto hit = cache->find(c)) return *hit;
  }
  NextCutoff nc = next_cutoff_detail(c, options);
  CutoffCache::Record rec{c, nc.recurrence.degree, std::move(nc.prefix), nc.value};
  if (cache) cache->put(rec);
  return rec;
}

Rational integer_floor(const Rational& x) { return Rational(Natural(mpz_class(x.floor()))); }

}  // namespace

RatioPoint ratio_at(PSequence& seq, std::size_t k) {
  if (k == 0) throw std::invalid_argument("ratio_at: Q_0 is undefined");
  Window w = window(seq, k);
  RatioPoint r;
  r.index = k;
  r.hat_index = w.last + 1;
  r.p_hat = seq[r.hat_index];
  r.p = seq[k];
  r.q = rational_from_parts(r.p_hat.mpz(), r.p.mpz());
  return r;
}

std::vector<RatioPoint> q_sequence(const Rational& alpha, std::size_t count) {
  PSequence seq(alpha);
  std::vector<RatioPoint> out;
  out.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) out.push_back(ratio_at(seq, k));
  return out;
}

NextCutoff next_cutoff_detail(const Rational& alpha, const NextCutoffOptions& options) {
  PSequence seq(alpha);
  RecurrenceInfo rec = detect_recurrence(seq);
  if (!rec.certified)
    throw CutoffError("next_cutoff(" + alpha.str() + "): recurrence not certified within " +
                      std::to_string(rec.checked_to) + " terms");

  // Running minimum of Q_k = P_hat / P_k, held as the pair (hat, k).
  std::size_t k = 1;
  std::size_t hat = 1;
  std::size_t best_k = 0;
  std::size_t best_hat = 0;
  auto scan_to = [&](std::size_t last) {
    for (; k <= last; ++k) {
      // hat(k) is nondecreasing in k.
      seq.extend_past_scaled(seq[k]);
      while (cmp_scaled(alpha, seq[k], seq[hat]) != strong_ordering::less) ++hat;
      if (best_k == 0 || seq[hat] * seq[best_k] < seq[best_hat] * seq[k]) {
        best_k = k;
        best_hat = hat;
      }
    }
  };

  const std::size_t base = rec.certified_at();
  std::size_t tail = std::max(options.min_tail, options.tail_per_degree * rec.degree);
  std::vector<std::pair<std::size_t, std::size_t>> checkpoints;
  for (;;) {
    scan_to(base + tail);
    checkpoints.emplace_back(best_k, best_hat);
    const auto n = checkpoints.size();
    if (n >= 3 && checkpoints[n - 1] == checkpoints[n - 2] && checkpoints[n - 2] == checkpoints[n - 3]) break;
    if (tail > options.max_tail)
      throw CutoffError("next_cutoff(" + alpha.str() + "): minimum did not settle within " + std::to_string(tail) +
                        " terms");
    tail *= 2;
  }
  const std::size_t horizon = k - 1;

  NextCutoff out;
  out.alpha = alpha;
  out.recurrence = rec;
  out.prefix = recurrence_prefix(seq, rec);
  out.argmin_index = best_k;
  out.horizon = horizon;
  out.value = rational_from_parts(seq[best_hat].mpz(), seq[best_k].mpz());
  if (!(alpha < out.value))
    throw CutoffError("next_cutoff(" + alpha.str() + "): minimum " + out.value.str() + " is not above alpha");

  // At beta = min Q the term P_hat joins W(P_k), so P_{hat+1} is the first change.
  const std::size_t expected_divergence = best_hat + 1;
  seq.extend_to_count(expected_divergence + 1);
  PSequence at_cutoff = generate(out.value, expected_divergence + 1);
  std::size_t diverge = 0;
  while (diverge <= expected_divergence && at_cutoff[diverge] == seq[diverge]) ++diverge;
  if (diverge != expected_divergence)
    throw CutoffError("next_cutoff(" + alpha.str() + "): T(" + out.value.str() + ") diverges at index " +
                      std::to_string(diverge) + ", expected " + std::to_string(expected_divergence));
  out.divergence_index = diverge;

  // Just below the cutoff nothing may change anywhere in the scanned prefix.
  mpz_class probe_den = out.value.den() * options.probe_scale;
  Rational probe = std::max(alpha, out.value - rational_from_parts(mpz_class(1), probe_den));
  PSequence below = generate(probe, seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (below[i] != seq[i])
      throw CutoffError("next_cutoff(" + alpha.str() + "): probe " + probe.str() + " diverges at index " +
                        std::to_string(i) + " below the candidate " + out.value.str());
  }
  return out;
}

Rational next_cutoff(const Rational& alpha, const NextCutoffOptions& options) {
  return next_cutoff_detail(alpha, options).value;
}

std::optional<CutoffCache::Record> CutoffCache::find(const Rational& cutoff) const {
  std::lock_guard lock(mu_);
  auto it = records_.find(cutoff);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void CutoffCache::put(Record record) {
  std::lock_guard lock(mu_);
  Rational key = record.cutoff;
  records_.insert_or_assign(std::move(key), std::move(record));
}

std::vector<CutoffCache::Record> CutoffCache::records() const {
  std::lock_guard lock(mu_);
  std::vector<Record> out;
  out.reserve(records_.size());
  for (const auto& [_, r] : records_) out.push_back(r);
  return out;
}

std::size_t CutoffCache::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

std::string CutoffCache::to_json() const {
  nlohmann::ordered_json doc;
  doc["format"] = "alphatag-cutoff-cache";
  doc["version"] = 1;
  auto& arr = doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records()) {
    nlohmann::ordered_json rec;
    rec["cutoff"] = r.cutoff.pq();
    rec["degree"] = r.degree;
    auto& prefix = rec["prefix"] = nlohmann::ordered_json::array();
    for (const auto& t : r.prefix) prefix.push_back(t.str());
    rec["next"] = r.next.pq();
    arr.push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

void CutoffCache::load_json(const std::string& text) {
  try {
    auto doc = nlohmann::json::parse(text);
    if (doc.at("format").get<std::string>() != "alphatag-cutoff-cache" || doc.at("version").get<int>() != 1)
      throw std::invalid_argument("unsupported cache format");
    for (const auto& rec : doc.at("records")) {
      Record r;
      r.cutoff = parse_rational(rec.at("cutoff").get<std::string>());
      r.degree = rec.at("degree").get<std::size_t>();
      for (const auto& t : rec.at("prefix")) r.prefix.push_back(Natural::parse(t.get<std::string>()));
      r.next = parse_rational(rec.at("next").get<std::string>());
      if (!(r.cutoff < r.next)) throw std::invalid_argument("cache record with next <= cutoff");
      put(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed cutoff cache: ") + e.what());
  }
}

StableInterval stable_interval(const Rational& alpha, CutoffCache* cache) {
  if (alpha < Rational(1)) throw std::invalid_argument("stable_interval: alpha must be >= 1");
  // Every integer n >= 2 is a cutoff: T(beta) runs 0, 1, ..., floor(beta) + 1
  // before its first jump of 2, so T(beta) != T(n) for all beta < n. The walk
  // may therefore start at floor(alpha).
  Rational c = std::max(Rational(1), integer_floor(alpha));
  for (;;) {
    auto rec = step(c, cache, {});
    if (alpha < rec.next) return {c, rec.next, rec.degree, std::move(rec.prefix)};
    c = rec.next;
  }
}

CutoffNeighbourhood cutoff_neighbourhood(const Rational& x, CutoffCache* cache) {
  if (!(Rational(1) < x)) throw std::invalid_argument("cutoff_neighbourhood: x must be > 1");
  Rational c = integer_floor(x);
  if (c == x) c = c - Rational(1);
  for (;;) {
    Rational nxt = step(c, cache, {}).next;
    if (!(nxt < x)) return {c, nxt == x};
    c = nxt;
  }
}

std::size_t gamma_at(const std::vector<Rational>& sorted_cutoffs, const Rational& bound) {
  return static_cast<std::size_t>(std::upper_bound(sorted_cutoffs.begin(), sorted_cutoffs.end(), bound) -
                                  sorted_cutoffs.begin());
}

CutoffCensus enumerate_cutoffs(const Rational& from, const Rational& to, const EnumerateOptions& options) {
  if (from < Rational(1) || !(from < to))
    throw std::invalid_argument("enumerate_cutoffs: need 1 <= from < to, got [" + from.str() + ", " + to.str() + "]");

  const Rational start = stable_interval(from, options.cache).lower;

  // Segment s walks from anchors[s] and collects the cutoffs in (anchors[s], anchors[s+1]].
  // next_cutoff(a) is the first cutoff above a whether or not a is one itself,
  // so integers are only reported when a walk actually lands on them.
  std::vector<Rational> anchors{start};
  for (Rational i = integer_floor(start) + Rational(1); i < to; i = i + Rational(1)) anchors.push_back(i);
  anchors.push_back(to);
  const std::size_t segments = anchors.size() - 1;

  std::vector<std::vector<Rational>> found(segments);
  std::vector<std::exception_ptr> errors(segments);
  std::atomic<std::size_t> next_segment{0};
  auto worker = [&] {
    for (std::size_t s; (s = next_segment.fetch_add(1)) < segments;) {
      try {
        Rational c = anchors[s];
        for (;;) {
          Rational nxt = step(c, options.cache, options.cutoff).next;
          if (anchors[s + 1] < nxt) break;
          found[s].push_back(nxt);
          if (nxt == anchors[s + 1]) break;
          c = nxt;
        }
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };

  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, segments));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  CutoffCensus census;
  census.from = from;
  census.bound = to;
  if (start == from) census.cutoffs.push_back(start);
  for (auto& seg : found) census.cutoffs.insert(census.cutoffs.end(), seg.begin(), seg.end());
  census.gamma = census.cutoffs.size();
  return census;
}

IntegerCutoffReport verify_integer_cutoffs(long max_n, const EnumerateOptions& options) {
  if (max_n < 2) throw std::invalid_argument("verify_integer_cutoffs: max_n must be >= 2");
  auto census = enumerate_cutoffs(Rational(1), Rational(max_n), options);
  IntegerCutoffReport report;
  for (long n = 2; n <= max_n; ++n) {
    bool present = std::binary_search(census.cutoffs.begin(), census.cutoffs.end(), Rational(n));
    (present ? report.confirmed : report.missing).push_back(n);
  }
  report.passed = report.missing.empty();
  return report;
}

FractionalCutoffCase check_fractional_cutoff(long n, long x, CutoffCache* cache) {
  if (n < 1 || x < 1) throw std::invalid_argument("check_fractional_cutoff: need n >= 1 and x >= 1");
  FractionalCutoffCase c;
  c.x = x;
  c.candidate = Rational(x) + rational_from_parts(1, n);
  auto hood = cutoff_neighbourhood(c.candidate, cache);
  c.is_cutoff = hood.is_cutoff;
  c.below = hood.below;
  c.expected_window_max = Natural(static_cast<unsigned long>(n * x - n + 1));

  PSequence seq(c.below);
  if (auto idx = seq.index_of(Natural(static_cast<unsigned long>(n)))) {
    Window w = window(seq, *idx);
    c.window_max = seq[w.last];
    c.ok = c.is_cutoff && c.window_max == c.expected_window_max;
  }
  return c;
}

FractionalCutoffReport verify_fractional_cutoffs(long n, long x_multiples, CutoffCache* cache) {
  if (n < 1 || x_multiples < 1) throw std::invalid_argument("verify_fractional_cutoffs: need n >= 1, x_multiples >= 1");
  long factorial = 1;
  for (long i = 2; i <= n; ++i) factorial *= i;
  FractionalCutoffReport report;
  report.n = n;
  CutoffCache local;
  if (!cache) cache = &local;
  for (long m = 1; m <= x_multiples; ++m) {
    report.cases.push_back(check_fractional_cutoff(n, m * factorial, cache));
    report.passed = report.passed && report.cases.back().ok;
  }
  return report;
}

std::vector<HalfIntegerEntry> half_integer_survey(const Rational& limit, CutoffCache* cache) {
  CutoffCache local;
  if (!cache) cache = &local;
  std::vector<HalfIntegerEntry> out;
  for (Rational h = rational_from_parts(5, 2); !(limit < h); h = h + Rational(1))
    out.push_back({h, cutoff_neighbourhood(h, cache).is_cutoff});
  return out;
}

OscillationReport oscillation_diagnostic(const Rational& alpha, std::size_t count) {
  PSequence seq(alpha);
  RecurrenceInfo rec = detect_recurrence(seq);
  if (!rec.certified) throw CutoffError("oscillation_diagnostic(" + alpha.str() + "): recurrence not certified");

  OscillationReport report;
  report.alpha = alpha;
  report.degree = rec.degree;
  report.root = dominant_root(static_cast<int>(rec.degree));
  report.start = rec.certified_at();
  const unsigned long bits = 512;
  const mpf_class limit = dominant_limit_high_precision(static_cast<int>(rec.degree), bits);

  std::size_t best_k = 0;
  std::size_t best_hat = 0;
  const std::size_t end = report.start + count;
  int last_sign = 0;
  for (std::size_t k = 1; k < end; ++k) {
    std::size_t hat = hat_index_of(seq, k);
    if (best_k == 0 || seq[hat] * seq[best_k] < seq[best_hat] * seq[k]) {
      best_k = k;
      best_hat = hat;
    }
    if (k < report.start) continue;
    mpf_class q(seq[hat].mpz(), bits);
    q /= mpf_class(seq[k].mpz(), bits);
    int s = sgn(mpf_class(q - limit, bits));
    if (s != 0) {
      if (last_sign != 0 && s != last_sign) ++report.sign_changes;
      last_sign = s;
    }
    report.signs.push_back(s);
  }
  report.min_q = rational_from_parts(seq[best_hat].mpz(), seq[best_k].mpz());
  mpf_class min_f(report.min_q.num(), bits);
  min_f /= mpf_class(report.min_q.den(), bits);
  report.min_below_limit = min_f < limit;
  report.min_above_alpha = alpha < report.min_q;
  return report;
}

}  // namespace alphatag
