#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace momentkit {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using BigFloat = boost::multiprecision::mpfr_float;

// Configuration / input errors (CLI exit code 2).
class SpecError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Numeric failures: nonpositive pivots, quadrature non-convergence (CLI exit code 3).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonpositivePivotError : public NumericError {
public:
  NonpositivePivotError(long index, const std::string& pivot)
      : NumericError("Hankel matrix not positive definite at order " +
                     std::to_string(index) + " (pivot " + pivot + ")"),
        index_(index), pivot_(pivot) {}
  long index() const { return index_; }
  const std::string& pivot() const { return pivot_; }

private:
  long index_;
  std::string pivot_;
};

// Decimal digits that guarantee at least `bits` of mantissa in the mpfr backend.
unsigned digits10_for_bits(unsigned bits);

// Scoped default precision for BigFloat temporaries. Values created while the
// guard is alive carry at least the requested mantissa bits; expression results
// inherit the max precision of their operands.
class PrecisionGuard {
public:
  explicit PrecisionGuard(unsigned bits);
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;
  ~PrecisionGuard();

private:
  unsigned saved_digits10_;
};

struct PrecisionContext {
  enum class Mode { Exact, Float };

  Mode mode = Mode::Float;
  unsigned bits = 256;        // mantissa bits (Float mode); display precision in Exact mode
  double tol_log2 = 0;        // relative tolerance exponent; 0 selects -bits/2
  unsigned max_moments = 128; // cap on requested moment count
  unsigned long max_panels = 1ul << 20; // quadrature panel budget
  unsigned max_bits = 1u << 14;         // precision-escalation cap

  static PrecisionContext exact(unsigned display_bits = 256);
  static PrecisionContext floating(unsigned bits, double tol_log2 = 0);

  bool is_exact() const { return mode == Mode::Exact; }
  double tolerance_log2() const { return tol_log2 != 0 ? tol_log2 : -0.5 * double(bits); }
  // 2^tolerance_log2 materialized at this context's precision; 0 in exact mode.
  BigFloat tolerance() const;
};

// Parses "p/q", integers, plain decimals and decimal-exponent forms ("-0.25",
// "1e-3") exactly into a rational. Throws SpecError on malformed input.
Rational parse_rational(const std::string& s);

// Canonical "p/q" (plain integer when q == 1).
std::string rational_str(const Rational& r);

BigFloat to_bigfloat(const Rational& r, unsigned bits);

// Full-precision decimal string; round-trips through the BigFloat parser.
std::string bigfloat_str(const BigFloat& x);

// True iff r is the square of a rational; the root (>= 0) is returned via out.
bool is_perfect_square(const Rational& r, Rational* root = nullptr);

} // namespace momentkit
