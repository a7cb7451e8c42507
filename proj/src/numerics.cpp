#include "alphatag/numerics.hpp"

#include <cmath>
#include <ostream>

namespace alphatag {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Natural::Natural(const mpz_class& v) : v_(v) {
  if (sgn(v_) < 0) throw std::domain_error("Natural: negative value " + v_.get_str());
}

Natural Natural::parse(std::string_view text) {
  text = trim(text);
  if (!all_digits(text)) throw std::invalid_argument("not a nonnegative integer: '" + std::string(text) + "'");
  return Natural(Raw{}, mpz_class(std::string(text), 10));
}

std::optional<std::uint64_t> Natural::to_u64() const {
  if (mpz_sizeinbase(v_.get_mpz_t(), 2) > 64) return std::nullopt;
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v_.get_mpz_t());
  return out;
}

Natural operator-(const Natural& a, const Natural& b) {
  if (a < b) throw std::domain_error("Natural: " + a.str() + " - " + b.str() + " is negative");
  return Natural(Natural::Raw{}, a.v_ - b.v_);
}

std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.str(); }

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::string Rational::pq() const { return num().get_str() + "/" + den().get_str(); }

mpz_class Rational::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return out;
}

Rational operator/(const Rational& a, const Rational& b) {
  if (sgn(b.q_) == 0) throw std::domain_error("Rational: division by zero");
  return Rational(mpq_class(a.q_ / b.q_));
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational rational_from_parts(const mpz_class& num, const mpz_class& den) {
  if (sgn(den) == 0) throw std::invalid_argument("rational: zero denominator");
  return Rational(mpq_class(num, den));
}

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational number: '" + original + "'"); };

  mpz_class num;
  mpz_class den(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto p = text.substr(0, slash);
    auto q = text.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) return fail();
    num = mpz_class(std::string(p), 10);
    den = mpz_class(std::string(q), 10);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return fail();
    num = mpz_class(std::string(whole) + std::string(frac), 10);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  } else {
    if (!all_digits(text)) return fail();
    num = mpz_class(std::string(text), 10);
  }
  if (negative) num = -num;
  return rational_from_parts(num, den);
}

std::strong_ordering cmp_scaled(const Rational& q, const Natural& n, const Natural& m) {
  // q*n <=> m  with q = a/b, b > 0  <=>  a*n <=> b*m
  mpz_class lhs = q.num() * n.mpz();
  mpz_class rhs = q.den() * m.mpz();
  return cmp(lhs, rhs) <=> 0;
}

Natural floor_scale(const Rational& q, const Natural& m) {
  if (sgn(q.num()) < 0) throw std::domain_error("floor_scale: negative scale " + q.str());
  mpz_class prod = q.num() * m.mpz();
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), prod.get_mpz_t(), q.den().get_mpz_t());
  return Natural(out);
}

namespace {

// chi(x) = x^k - x^(k-1) - 1 = x^(k-1) * (x - 1) - 1
double chi(double x, int k) { return std::pow(x, k - 1) * (x - 1.0) - 1.0; }

}  // namespace

RootDiagnostics dominant_root(int k, double tolerance) {
  if (k < 1) throw std::invalid_argument("dominant_root: degree must be >= 1");
  RootDiagnostics d;
  d.degree = k;
  d.tolerance = tolerance;
  if (k == 1) {
    d.dominant_root = 2.0;
    d.q_limit = 2.0;
    return d;
  }
  // chi(1) = -1 < 0 and chi(2) = 2^(k-1) - 1 > 0; chi is increasing on [1, 2].
  double lo = 1.0;
  double hi = 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (chi(mid, k) < 0.0 ? lo : hi) = mid;
  }
  double r = std::abs(chi(lo, k)) <= std::abs(chi(hi, k)) ? lo : hi;
  d.dominant_root = r;
  d.q_limit = r / (r - 1.0);  // r^k = r^(k-1) + 1 = 1/(r-1) + 1
  d.residual = std::abs(chi(r, k));
  if (d.residual > tolerance)
    throw std::runtime_error("dominant_root: residual " + std::to_string(d.residual) + " above tolerance for k=" +
                             std::to_string(k));
  return d;
}

mpf_class dominant_limit_high_precision(int k, unsigned long bits) {
  if (k < 1) throw std::invalid_argument("dominant_limit_high_precision: degree must be >= 1");
  if (k == 1) return mpf_class(2, bits);
  mpf_class lo(1, bits);
  mpf_class hi(2, bits);
  mpf_class mid(0, bits);
  mpf_class val(0, bits);
  for (unsigned long it = 0; it < bits + 8; ++it) {
    mid = (lo + hi) / 2;
    mpf_pow_ui(val.get_mpf_t(), mid.get_mpf_t(), static_cast<unsigned long>(k - 1));
    val = val * (mid - 1) - 1;
    if (sgn(val) < 0)
      lo = mid;
    else
      hi = mid;
  }
  mpf_class r = (lo + hi) / 2;
  mpf_class limit(0, bits);
  limit = r / (r - 1);
  return limit;
}

}  // namespace alphatag
