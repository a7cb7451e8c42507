#pragma once

// Exact integer/rational arithmetic for the take-away toolkit.
//
// Sequence terms grow exponentially and window tests compare alpha * n
// against m, so everything that touches a term or a cross-product is done
// with GMP integers. Floating point only appears in RootDiagnostics.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace alphatag {

/// Unbounded nonnegative integer.
class Natural {
 public:
  Natural() = default;
  Natural(unsigned long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Natural(const mpz_class& v);

  /// Parses a plain decimal string ("0", "1234..."). Throws std::invalid_argument.
  static Natural parse(std::string_view text);

  const mpz_class& mpz() const { return v_; }
  std::string str() const { return v_.get_str(); }
  bool is_zero() const { return sgn(v_) == 0; }

  /// Value as uint64 when it fits.
  std::optional<std::uint64_t> to_u64() const;

  Natural& operator+=(const Natural& o) {
    v_ += o.v_;
    return *this;
  }
  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator*(const Natural& a, const Natural& b) { return Natural(Raw{}, a.v_ * b.v_); }
  /// Throws std::domain_error when b > a.
  friend Natural operator-(const Natural& a, const Natural& b);

  friend bool operator==(const Natural& a, const Natural& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }

 private:
  struct Raw {};
  Natural(Raw, mpz_class v) : v_(std::move(v)) {}
  mpz_class v_;
};

std::ostream& operator<<(std::ostream& os, const Natural& n);

/// Exact fraction, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const Natural& n) : q_(n.mpz()) {}

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& mpq() const { return q_; }

  bool is_integer() const { return den() == 1; }
  double to_double() const { return q_.get_d(); }

  /// "7/2", or "3" for integers.
  std::string str() const;
  /// Always "p/q" ("3/1" for integers); used by every machine-readable output.
  std::string pq() const;

  /// Largest integer <= value.
  mpz_class floor() const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) <=> 0;
  }

 private:
  friend Rational rational_from_parts(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// Reduced num/den with the sign moved into the numerator.
/// Throws std::invalid_argument for a zero denominator.
Rational rational_from_parts(const mpz_class& num, const mpz_class& den);
inline Rational rational_from_parts(long num, long den) {
  return rational_from_parts(mpz_class(num), mpz_class(den));
}

/// Accepts "p/q", "p" or a finite decimal such as "3.5" (converted exactly).
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Exact ordering of q*n against m.
std::strong_ordering cmp_scaled(const Rational& q, const Natural& n, const Natural& m);

/// floor(q*m). Requires q >= 0.
Natural floor_scale(const Rational& q, const Natural& m);

/// Dominant root of x^k - x^(k-1) - 1 (k = 1 degenerates to x - 2).
struct RootDiagnostics {
  int degree = 0;
  double dominant_root = 0.0;
  /// r^k, the limit of P_{n+k}/P_n under the eventual recurrence.
  double q_limit = 0.0;
  double tolerance = 0.0;
  /// |chi(dominant_root)|
  double residual = 0.0;
};

inline constexpr double kDefaultRootTolerance = 1e-12;

/// Bisection on [1, 2]. Throws std::invalid_argument for k < 1.
RootDiagnostics dominant_root(int k, double tolerance = kDefaultRootTolerance);

/// The same root carried to `bits` of mantissa, for sign tests that need to
/// resolve Q_n - r^k far below double precision. Returns r^k.
mpf_class dominant_limit_high_precision(int k, unsigned long bits = 256);

}  // namespace alphatag
