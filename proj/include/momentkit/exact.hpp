#pragma once

#include "momentkit/numeric.hpp"

#include <string>
#include <vector>

namespace momentkit {

// Exact real scalar of the form sum_j r_j * sqrt(s_j) with rational r_j != 0 and
// positive rational radicands s_j pairwise inequivalent modulo rational squares.
// Terms whose radicand ratio is a perfect rational square merge exactly, which is
// what makes B*C = I, the witness round-trip and the closure identity hold with
// zero residual: every cancellation the theory predicts happens inside one term
// class. Linear independence of inequivalent square roots over Q makes the zero
// test (no terms left) sound.
//
// Division is only defined by single-term values; that covers triangular back
// substitution and recurrence extraction, where divisors are diagonal entries.
class ExactReal {
public:
  ExactReal() = default; // zero
  ExactReal(const Rational& r) { add_term(r, Rational(1)); } // NOLINT(implicit)
  ExactReal(long v) : ExactReal(Rational(v)) {}              // NOLINT(implicit)

  // r * sqrt(s); requires s >= 0.
  static ExactReal times_sqrt(const Rational& r, const Rational& s);
  static ExactReal sqrt_of(const Rational& s) { return times_sqrt(Rational(1), s); }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  // Throws NumericError unless the value is rational.
  Rational rational_value() const;

  bool single_term() const { return terms_.size() <= 1; }
  // Sign of a zero or single-term value; throws on multi-term values.
  int sign() const;

  // Exact square; rational whenever the value is a single term.
  ExactReal squared() const { return *this * *this; }

  ExactReal operator-() const;
  ExactReal& operator+=(const ExactReal& o);
  ExactReal& operator-=(const ExactReal& o);
  friend ExactReal operator+(ExactReal a, const ExactReal& b) { return a += b; }
  friend ExactReal operator-(ExactReal a, const ExactReal& b) { return a -= b; }
  friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
  ExactReal& operator*=(const ExactReal& o) { return *this = *this * o; }
  // Divisor must be nonzero and single-term.
  friend ExactReal operator/(const ExactReal& a, const ExactReal& b);
  ExactReal& operator/=(const ExactReal& o) { return *this = *this / o; }

  friend bool operator==(const ExactReal& a, const ExactReal& b) {
    return (a - b).is_zero();
  }
  friend bool operator!=(const ExactReal& a, const ExactReal& b) { return !(a == b); }

  BigFloat to_bigfloat(unsigned bits) const;
  // Exact symbolic form, e.g. "-1/2*sqrt(5)", "3", "2 + sqrt(1/3)".
  std::string str() const;

  std::size_t term_count() const { return terms_.size(); }

private:
  struct Term {
    Rational r;
    Rational s;
  };
  std::vector<Term> terms_;

  void add_term(const Rational& r, const Rational& s);
};

} // namespace momentkit
