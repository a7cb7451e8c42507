#include "alphatag/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alphatag {

PSequence::PSequence(Rational alpha) : alpha_(std::move(alpha)) {
  if (alpha_ < Rational(1)) throw std::invalid_argument("alpha must be >= 1, got " + alpha_.str());
  terms_ = {Natural(0), Natural(1)};
  addend_ = {0, 0};
}

std::span<const Natural> PSequence::within_horizon() const {
  std::span<const Natural> all(terms_);
  if (horizon_.kind == Horizon::Kind::term_count) {
    auto n = horizon_.bound.to_u64().value_or(terms_.size());
    return all.first(std::min<std::size_t>(n, terms_.size()));
  }
  auto end = std::upper_bound(terms_.begin(), terms_.end(), horizon_.bound);
  return all.first(static_cast<std::size_t>(end - terms_.begin()));
}

void PSequence::push_next() {
  const Natural& last = terms_.back();
  std::size_t j = window_ptr_;
  // The addend index never moves backwards because the terms increase.
  while (cmp_scaled(alpha_, terms_[j], last) == std::strong_ordering::less) ++j;
  if (cmp_scaled(alpha_, terms_[j - 1], last) != std::strong_ordering::less)
    throw std::logic_error("generation: addend index is not unique");
  window_ptr_ = j;
  terms_.push_back(last + terms_[j]);
  addend_.push_back(j);
}

void PSequence::extend_to_count(std::size_t count) {
  if (count > terms_.size()) {
    terms_.reserve(count);
    addend_.reserve(count);
  }
  while (terms_.size() < count) push_next();
}

void PSequence::extend_past(Natural value) {
  while (!(value < terms_.back())) push_next();
}

void PSequence::extend_past_scaled(Natural value) {
  while (cmp_scaled(alpha_, value, terms_.back()) != std::strong_ordering::less) push_next();
}

std::size_t PSequence::index_at_most(const Natural& value) const {
  auto it = std::upper_bound(terms_.begin(), terms_.end(), value);
  return static_cast<std::size_t>(it - terms_.begin()) - 1;
}

std::size_t PSequence::index_at_most_scaled(Natural value) {
  extend_past_scaled(value);
  auto it = std::partition_point(terms_.begin(), terms_.end(), [&](const Natural& t) {
    return cmp_scaled(alpha_, value, t) != std::strong_ordering::less;
  });
  return static_cast<std::size_t>(it - terms_.begin()) - 1;
}

std::optional<std::size_t> PSequence::index_of(Natural value) {
  extend_past(value);
  std::size_t i = index_at_most(value);
  if (terms_[i] == value) return i;
  return std::nullopt;
}

PSequence generate(const Rational& alpha, std::size_t count) { return generate(alpha, Horizon::terms(count)); }

PSequence generate(const Rational& alpha, const Horizon& horizon) {
  PSequence seq(alpha);
  if (horizon.kind == Horizon::Kind::term_count) {
    auto n = horizon.bound.to_u64();
    if (!n) throw std::invalid_argument("term count too large");
    seq.extend_to_count(static_cast<std::size_t>(*n));
  } else {
    while (!(horizon.bound < seq.back())) seq.push_next();
  }
  seq.horizon_ = horizon;
  return seq;
}

std::vector<std::size_t> Window::member_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t j = first; j <= last; ++j) out.push_back(j);
  return out;
}

Window window(PSequence& seq, std::size_t i) {
  if (i == 0) throw std::invalid_argument("window: the term P_0 = 0 has no window");
  seq.extend_to_count(i + 1);
  Window w;
  w.owner_index = i;
  w.first = seq.index_at_most_scaled(seq[i - 1]) + 1;
  w.last = seq.index_at_most_scaled(seq[i]);
  if (w.last < w.first) throw std::logic_error("window: empty window at index " + std::to_string(i));
  return w;
}

std::vector<Natural> Zeckendorf::parts(const PSequence& seq) const {
  std::vector<Natural> out;
  out.reserve(part_indices.size());
  for (auto i : part_indices) out.push_back(seq[i]);
  return out;
}

Zeckendorf zeckendorf(PSequence& seq, Natural n) {
  if (n.is_zero()) throw std::invalid_argument("zeckendorf: n must be >= 1");
  seq.extend_past(n);
  Zeckendorf z{n, {}};
  Natural rest = n;
  while (!rest.is_zero()) {
    std::size_t i = seq.index_at_most(rest);
    z.part_indices.push_back(i);
    rest = rest - seq[i];
  }
  std::reverse(z.part_indices.begin(), z.part_indices.end());
  for (std::size_t a = 0; a + 1 < z.part_indices.size(); ++a) {
    if (cmp_scaled(seq.alpha(), seq[z.part_indices[a]], seq[z.part_indices[a + 1]]) != std::strong_ordering::less)
      throw std::logic_error("zeckendorf: greedy parts violate the gap condition for n = " + n.str());
  }
  return z;
}

IndexSequence s_sequence(PSequence& seq, std::size_t count) {
  IndexSequence out;
  out.values.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    // P_i + P_{i+j-1} = P_{i+j} exactly when P_{i+j-1} lies in W(P_i).
    out.values.push_back(window(seq, i).last - i + 1);
  }
  return out;
}

RecurrenceInfo detect_recurrence(PSequence& seq, std::size_t max_terms) {
  std::size_t run_start = 2;
  std::size_t run_lag = 0;
  for (std::size_t n = 2;; ++n) {
    if (n >= seq.size()) {
      if (seq.size() >= max_terms) return {run_lag, run_start, false, n - 1};
      seq.extend_to_count(std::min(max_terms, std::max<std::size_t>(2 * seq.size(), 32)));
    }
    std::size_t lag = n - seq.addend_index(n);
    if (lag != run_lag) {
      run_lag = lag;
      run_start = n;
    }
    if (n - run_start + 1 >= lag + 2) return {lag, run_start, true, n};
  }
}

std::vector<Natural> recurrence_prefix(const PSequence& seq, const RecurrenceInfo& info) {
  auto t = seq.terms();
  return {t.begin(), t.begin() + static_cast<std::ptrdiff_t>(std::min(info.holds_from, t.size()))};
}

std::pair<int, int> degree_bounds(const Rational& alpha) {
  if (alpha < Rational(1)) throw std::invalid_argument("degree_bounds: alpha must be >= 1");
  // The Q-ratios lie in (alpha, alpha + 1], so their limit L = r^k does too,
  // and k = log L / log(L / (L - 1)) is increasing in L.
  const double a = alpha.to_double();
  auto degree_at = [](double limit) { return std::log(limit) / -std::log1p(-1.0 / limit); };
  auto widen = [](double x) { return 1e-9 * std::max(1.0, std::abs(x)); };

  int lower = 1;
  if (alpha > Rational(1)) {
    double x = degree_at(a);
    lower = std::max(1, static_cast<int>(std::ceil(x - widen(x))));
  }
  double y = degree_at(a + 1.0);
  int upper = static_cast<int>(std::floor(y + widen(y)));
  return {lower, upper};
}

}  // namespace alphatag
