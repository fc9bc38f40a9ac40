#include "momentkit/exact.hpp"

#include <sstream>

namespace momentkit {

ExactReal ExactReal::times_sqrt(const Rational& r, const Rational& s) {
  if (s < 0) throw NumericError("negative radicand in exact scalar");
  ExactReal x;
  if (s == 0) return x;
  x.add_term(r, s);
  return x;
}

void ExactReal::add_term(const Rational& r, const Rational& s) {
  if (r == 0) return;
  for (auto& t : terms_) {
    Rational root;
    if (is_perfect_square(s / t.s, &root)) {
      // r*sqrt(s) == r*root*sqrt(t.s)
      t.r += r * root;
      if (t.r == 0) {
        t = terms_.back();
        terms_.pop_back();
      }
      return;
    }
  }
  terms_.push_back(Term{r, s});
}

bool ExactReal::is_rational() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return is_perfect_square(terms_[0].s, nullptr);
}

Rational ExactReal::rational_value() const {
  if (terms_.empty()) return Rational(0);
  Rational root;
  if (terms_.size() == 1 && is_perfect_square(terms_[0].s, &root))
    return terms_[0].r * root;
  throw NumericError("exact scalar is irrational: " + str());
}

int ExactReal::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() > 1)
    throw NumericError("sign of a multi-term exact scalar is not decidable here");
  return terms_[0].r > 0 ? 1 : -1;
}

ExactReal ExactReal::operator-() const {
  ExactReal x(*this);
  for (auto& t : x.terms_) t.r = -t.r;
  return x;
}

ExactReal& ExactReal::operator+=(const ExactReal& o) {
  for (const auto& t : o.terms_) add_term(t.r, t.s);
  return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& o) {
  for (const auto& t : o.terms_) add_term(-t.r, t.s);
  return *this;
}

ExactReal operator*(const ExactReal& a, const ExactReal& b) {
  ExactReal x;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) x.add_term(ta.r * tb.r, ta.s * tb.s);
  return x;
}

ExactReal operator/(const ExactReal& a, const ExactReal& b) {
  if (b.terms_.empty()) throw NumericError("division by zero exact scalar");
  if (b.terms_.size() > 1)
    throw NumericError("division by a multi-term exact scalar is unsupported");
  // 1/(r*sqrt(s)) = (1/(r*s)) * sqrt(s)
  const auto& t = b.terms_[0];
  ExactReal inv = ExactReal::times_sqrt(Rational(1) / (t.r * t.s), t.s);
  return a * inv;
}

BigFloat ExactReal::to_bigfloat(unsigned bits) const {
  PrecisionGuard guard(bits);
  BigFloat acc(0);
  for (const auto& t : terms_) acc += BigFloat(t.r) * sqrt(BigFloat(t.s));
  return acc;
}

std::string ExactReal::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational root;
    const bool rational_term = is_perfect_square(t.s, &root);
    Rational coeff = rational_term ? Rational(t.r * root) : t.r;
    if (!first) os << (coeff > 0 ? " + " : " - ");
    else if (coeff < 0) os << "-";
    first = false;
    Rational mag = coeff > 0 ? coeff : Rational(-coeff);
    if (rational_term) {
      os << rational_str(mag);
    } else if (mag == 1) {
      os << "sqrt(" << rational_str(t.s) << ")";
    } else {
      os << rational_str(mag) << "*sqrt(" << rational_str(t.s) << ")";
    }
  }
  return os.str();
}

} // namespace momentkit
