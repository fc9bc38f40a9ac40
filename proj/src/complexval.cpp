#include "momentkit/complexval.hpp"

#include <cctype>

namespace momentkit {

namespace {

// Splits "a+bi" / "a-bi" at the sign that separates the two components: the
// last '+'/'-' that is neither leading nor part of an exponent ("1e-3").
std::size_t component_split(const std::string& s) {
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] != '+' && s[i] != '-') continue;
    char prev = s[i - 1];
    if (prev == 'e' || prev == 'E' || prev == '+' || prev == '-' || prev == '/') continue;
    return i;
  }
  return std::string::npos;
}

Rational parse_imag_part(std::string body) {
  // body ends with 'i'; an empty coefficient means 1.
  body.pop_back();
  if (body.empty() || body == "+") return Rational(1);
  if (body == "-") return Rational(-1);
  return parse_rational(body);
}

} // namespace

ComplexRational parse_complex(const std::string& input) {
  std::string s;
  for (char c : input)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw SpecError("empty complex literal");

  if (s.back() != 'i' && s.back() != 'I') return ComplexRational(parse_rational(s));

  s.back() = 'i';
  auto split = component_split(s);
  if (split == std::string::npos) return {Rational(0), parse_imag_part(s)};
  std::string re = s.substr(0, split);
  std::string im = s.substr(split); // keeps the sign
  return {parse_rational(re), parse_imag_part(im)};
}

std::string complex_str(const ComplexRational& z) {
  if (z.im == 0) return rational_str(z.re);
  std::string imag = rational_str(z.im) + "i";
  if (z.re == 0) return imag;
  if (z.im > 0) return rational_str(z.re) + "+" + imag;
  return rational_str(z.re) + imag; // sign carried by the imaginary part
}

std::string complex_str(const ComplexBigFloat& z) {
  if (z.im == 0) return bigfloat_str(z.re);
  std::string imag = bigfloat_str(z.im) + "i";
  if (z.re == 0) return imag;
  if (z.im > 0) return bigfloat_str(z.re) + "+" + imag;
  return bigfloat_str(z.re) + imag;
}

} // namespace momentkit
