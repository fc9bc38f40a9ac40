#include "momentkit/numeric.hpp"

#include <cctype>
#include <sstream>

namespace momentkit {

unsigned digits10_for_bits(unsigned bits) {
  // bits * log10(2) rounded up, plus slack so the backend never lands short.
  return static_cast<unsigned>((static_cast<unsigned long>(bits) * 301ul) / 1000ul) + 4u;
}

PrecisionGuard::PrecisionGuard(unsigned bits)
    : saved_digits10_(BigFloat::default_precision()) {
  BigFloat::default_precision(digits10_for_bits(bits));
}

PrecisionGuard::~PrecisionGuard() { BigFloat::default_precision(saved_digits10_); }

PrecisionContext PrecisionContext::exact(unsigned display_bits) {
  PrecisionContext ctx;
  ctx.mode = Mode::Exact;
  ctx.bits = display_bits;
  return ctx;
}

PrecisionContext PrecisionContext::floating(unsigned bits, double tol_log2) {
  if (bits < 64) throw SpecError("big-float precision must be at least 64 bits");
  PrecisionContext ctx;
  ctx.mode = Mode::Float;
  ctx.bits = bits;
  ctx.tol_log2 = tol_log2;
  return ctx;
}

BigFloat PrecisionContext::tolerance() const {
  PrecisionGuard guard(bits);
  if (is_exact()) return BigFloat(0);
  BigFloat t = pow(BigFloat(2), BigFloat(tolerance_log2()));
  return t;
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

Rational parse_rational(const std::string& input) {
  std::string s;
  for (char c : input)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw SpecError("empty numeric literal");

  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    pos = 1;
  }
  std::string body = s.substr(pos);
  if (body.empty()) throw SpecError("malformed numeric literal '" + input + "'");

  auto slash = body.find('/');
  if (slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw SpecError("malformed fraction literal '" + input + "'");
    BigInt d(den);
    if (d == 0) throw SpecError("zero denominator in '" + input + "'");
    Rational r(BigInt(num), d);
    return negative ? Rational(-r) : r;
  }

  std::string mantissa = body;
  long exp10 = 0;
  auto epos = body.find_first_of("eE");
  if (epos != std::string::npos) {
    mantissa = body.substr(0, epos);
    std::string es = body.substr(epos + 1);
    if (es.empty()) throw SpecError("malformed exponent in '" + input + "'");
    bool eneg = false;
    if (es[0] == '+' || es[0] == '-') {
      eneg = (es[0] == '-');
      es = es.substr(1);
    }
    if (!all_digits(es) || es.size() > 6)
      throw SpecError("malformed exponent in '" + input + "'");
    exp10 = std::stol(es);
    if (eneg) exp10 = -exp10;
  }

  std::string digits;
  long frac_digits = 0;
  auto dot = mantissa.find('.');
  if (dot != std::string::npos) {
    std::string ip = mantissa.substr(0, dot);
    std::string fp = mantissa.substr(dot + 1);
    if (ip.empty() && fp.empty())
      throw SpecError("malformed numeric literal '" + input + "'");
    if (!ip.empty() && !all_digits(ip))
      throw SpecError("malformed numeric literal '" + input + "'");
    if (!fp.empty() && !all_digits(fp))
      throw SpecError("malformed numeric literal '" + input + "'");
    digits = ip + fp;
    frac_digits = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa))
      throw SpecError("malformed numeric literal '" + input + "'");
    digits = mantissa;
  }
  if (digits.empty()) throw SpecError("malformed numeric literal '" + input + "'");

  Rational r(BigInt(digits), 1);
  long net = exp10 - frac_digits;
  if (net > 0) {
    BigInt scale = pow(BigInt(10), static_cast<unsigned>(net));
    r *= Rational(scale);
  } else if (net < 0) {
    BigInt scale = pow(BigInt(10), static_cast<unsigned>(-net));
    r /= Rational(scale);
  }
  return negative ? Rational(-r) : r;
}

std::string rational_str(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

BigFloat to_bigfloat(const Rational& r, unsigned bits) {
  PrecisionGuard guard(bits);
  BigFloat x(r);
  return x;
}

std::string bigfloat_str(const BigFloat& x) {
  return x.str(0, std::ios_base::scientific);
}

bool is_perfect_square(const Rational& r, Rational* root) {
  if (r < 0) return false;
  if (r == 0) {
    if (root) *root = 0;
    return true;
  }
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  BigInt ns = sqrt(num);
  if (ns * ns != num) return false;
  BigInt ds = sqrt(den);
  if (ds * ds != den) return false;
  if (root) *root = Rational(ns, ds);
  return true;
}

} // namespace momentkit
