#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bvg {

/// A real number that stays an exact rational for as long as every input and
/// every operation permits it, and degrades to float64 otherwise.
///
/// Exactness is sticky in one direction only: once a value is inexact, every
/// result computed from it is inexact, with one exception: an exact zero
/// absorbs multiplication, so `0 * x` is an exact zero even for inexact `x`.
/// Square roots of exact perfect squares stay exact.
class Real {
 public:
  Real() = default;
  Real(int v) : q_(v) {}                                   // NOLINT
  Real(long v) : q_(v) {}                                  // NOLINT
  Real(long long v) : q_(static_cast<long>(v)) {}          // NOLINT
  Real(unsigned v) : q_(v) {}                              // NOLINT
  Real(unsigned long v) : q_(v) {}                         // NOLINT
  explicit Real(mpq_class q);

  static Real ratio(long long num, long long den);
  static Real inexact(double d);
  /// Power of two with an integer exponent, exact.
  static Real pow2(int exponent);
  /// Accepts "p/q", integers, and decimal literals ("-0.125", "1e-3");
  /// the result is always exact.  Throws std::invalid_argument.
  static Real parse(std::string_view text);

  bool is_exact() const { return exact_; }
  double to_double() const;
  /// Exact value; precondition: is_exact().
  const mpq_class& rational() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  /// "p/q" or "p" when exact, shortest round-trip decimal otherwise.
  std::string to_string() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real operator-() const;

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  friend bool operator==(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

 private:
  mpq_class q_{0};
  double d_ = 0.0;
  bool exact_ = true;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
const Real& min(const Real& a, const Real& b);
const Real& max(const Real& a, const Real& b);

/// Exact equality when both sides are exact; otherwise agreement within
/// `rel` relative to max(1, |a|, |b|).
bool approx_equal(const Real& a, const Real& b, double rel = 1e-9);

/// Relative tolerance used wherever a float64 fallback is compared.
inline constexpr double kRelTol = 1e-9;

}  // namespace bvg
