#pragma once

#include "momentkit/exact.hpp"
#include "momentkit/numeric.hpp"

#include <string>

namespace momentkit {

// Complex scalar over an exact or big-float real type. Only the operations the
// toolkit needs: ring arithmetic, conjugation and |z|^2 (which stays in the
// real scalar ring).
template <class T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r) : re(std::move(r)) {} // NOLINT(implicit)
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == T(0) && im == T(0); }
  Complex conj() const { return Complex(re, T(0) - im); }
  T norm_sq() const { return re * re + im * im; }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator*(const T& a, const Complex& b) {
    return Complex(a * b.re, a * b.im);
  }
  friend Complex operator*(const Complex& a, const T& b) { return b * a; }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

using ComplexRational = Complex<Rational>;
using ComplexBigFloat = Complex<BigFloat>;
using ComplexExact = Complex<ExactReal>;

inline ComplexBigFloat to_bigfloat(const ComplexRational& z, unsigned bits) {
  return {to_bigfloat(z.re, bits), to_bigfloat(z.im, bits)};
}

inline ComplexBigFloat to_bigfloat(const ComplexExact& z, unsigned bits) {
  return {z.re.to_bigfloat(bits), z.im.to_bigfloat(bits)};
}

inline ComplexExact to_exact(const ComplexRational& z) {
  return {ExactReal(z.re), ExactReal(z.im)};
}

inline BigFloat abs(const ComplexBigFloat& z) { return sqrt(z.norm_sq()); }

// "a+bi" with decimal-string components parsed exactly as rationals; accepts
// pure-real "a", pure-imaginary "bi"/"i"/"-i" and fraction components "1/3".
ComplexRational parse_complex(const std::string& s);

// Canonical textual form, rational components ("a+bi", "a", "bi").
std::string complex_str(const ComplexRational& z);
// Decimal form at full working precision.
std::string complex_str(const ComplexBigFloat& z);

} // namespace momentkit
