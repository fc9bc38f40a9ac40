#include "momentkit/measure.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace momentkit {

namespace {

Rational rational_pow(const Rational& r, unsigned long n) {
  return Rational(pow(numerator(r), static_cast<unsigned>(n)),
                  pow(denominator(r), static_cast<unsigned>(n)));
}

BigInt double_factorial(long n) {
  BigInt acc(1);
  for (long k = n; k > 1; k -= 2) acc *= k;
  return acc;
}

BigInt central_binomial_over(long n) {
  BigInt b;
  mpz_bin_uiui(b.backend().data(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(n / 2));
  return b;
}

std::vector<Atom> base_atoms(const std::variant<DiscreteMeasure, CatalogMeasure>& base) {
  if (const auto* d = std::get_if<DiscreteMeasure>(&base)) return d->atoms;
  const auto& c = std::get<CatalogMeasure>(base);
  if (c.kind == CatalogKind::UniformPlusAtom) return {Atom{Rational(1), c.params[0]}};
  return {};
}

void accumulate_atoms(std::map<Rational, Rational>& acc, const std::vector<Atom>& atoms,
                      int sign) {
  for (const auto& a : atoms) acc[a.position] += sign * a.weight;
}

std::vector<Atom> atom_list(const std::map<Rational, Rational>& acc) {
  std::vector<Atom> out;
  for (const auto& [p, w] : acc) {
    if (w == 0) continue;
    out.push_back(Atom{p, w});
  }
  return out;
}

Rational catalog_exact_moment(const CatalogMeasure& c, long n) {
  switch (c.kind) {
  case CatalogKind::Uniform: {
    const Rational& a = c.params[0];
    const Rational& b = c.params[1];
    return (rational_pow(b, n + 1) - rational_pow(a, n + 1)) / (Rational(n + 1) * (b - a));
  }
  case CatalogKind::Gaussian:
    return (n % 2 == 0) ? Rational(double_factorial(n - 1)) : Rational(0);
  case CatalogKind::LognormalBase2: {
    BigInt v(1);
    v <<= static_cast<unsigned long>(n) * static_cast<unsigned long>(n);
    return Rational(v);
  }
  case CatalogKind::UniformPlusAtom: {
    Rational uniform_part = (n % 2 == 0) ? Rational(1, n + 1) : Rational(0);
    return uniform_part + c.params[0];
  }
  case CatalogKind::Chebyshev:
    return (n % 2 == 0) ? Rational(central_binomial_over(n), pow(BigInt(2), unsigned(n)))
                        : Rational(0);
  case CatalogKind::Lognormal:
    throw SpecError("exact mode requested for catalog entry '" + c.name() +
                    "' without rational moments");
  }
  throw SpecError("unknown catalog entry");
}

BigFloat catalog_float_moment(const CatalogMeasure& c, long n, unsigned bits) {
  PrecisionGuard guard(bits);
  if (c.kind == CatalogKind::Lognormal) {
    BigFloat sigma(c.params[0]);
    BigFloat e = BigFloat(n) * BigFloat(n) * sigma * sigma / 2;
    return exp(e);
  }
  return to_bigfloat(catalog_exact_moment(c, n), bits);
}

std::string atoms_str(const std::vector<Atom>& atoms) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) os << ",";
    os << "(" << rational_str(atoms[i].position) << "," << rational_str(atoms[i].weight)
       << ")";
  }
  os << "}";
  return os.str();
}

void validate_atoms(const std::vector<Atom>& atoms) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].weight <= 0) throw SpecError("atom weights must be strictly positive");
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if (atoms[i].position == atoms[j].position)
        throw SpecError("atom positions must be pairwise distinct");
  }
}

} // namespace

std::string CatalogMeasure::name() const {
  switch (kind) {
  case CatalogKind::Uniform:
    return "uniform(" + rational_str(params[0]) + "," + rational_str(params[1]) + ")";
  case CatalogKind::Gaussian:
    return "gaussian(0,1)";
  case CatalogKind::Lognormal:
    return "lognormal(" + rational_str(params[0]) + ")";
  case CatalogKind::LognormalBase2:
    return "lognormal_base2";
  case CatalogKind::UniformPlusAtom:
    return "uniform_plus_atom(" + rational_str(params[0]) + ")";
  case CatalogKind::Chebyshev:
    return "chebyshev";
  }
  return "?";
}

Measure Measure::discrete(std::vector<Atom> atoms) {
  validate_atoms(atoms);
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.position < b.position; });
  return Measure(Variant(DiscreteMeasure{std::move(atoms)}));
}

Measure Measure::catalog(CatalogKind kind, std::vector<Rational> params) {
  CatalogMeasure c{kind, std::move(params)};
  switch (kind) {
  case CatalogKind::Uniform:
    if (c.params.size() != 2 || !(c.params[0] < c.params[1]))
      throw SpecError("uniform(a,b) requires rational a < b");
    break;
  case CatalogKind::Gaussian:
    if (!c.params.empty() && !(c.params.size() == 2 && c.params[0] == 0 && c.params[1] == 1))
      throw SpecError("only gaussian(0,1) is in the catalog");
    c.params.clear();
    break;
  case CatalogKind::Lognormal:
    if (c.params.size() != 1 || c.params[0] <= 0)
      throw SpecError("lognormal(sigma) requires sigma > 0");
    break;
  case CatalogKind::LognormalBase2:
  case CatalogKind::Chebyshev:
    if (!c.params.empty()) throw SpecError(c.name() + " takes no parameters");
    break;
  case CatalogKind::UniformPlusAtom:
    if (c.params.size() != 1 || c.params[0] <= 0)
      throw SpecError("uniform_plus_atom(c) requires c > 0");
    break;
  }
  return Measure(Variant(std::move(c)));
}

bool Measure::is_discrete_variant() const {
  return std::holds_alternative<DiscreteMeasure>(v_);
}

bool Measure::has_exact_moments() const {
  if (const auto* c = std::get_if<CatalogMeasure>(&v_))
    return c->kind != CatalogKind::Lognormal;
  if (const auto* a = std::get_if<AugmentedMeasure>(&v_)) {
    if (const auto* c = std::get_if<CatalogMeasure>(&a->base))
      return c->kind != CatalogKind::Lognormal;
  }
  return true;
}

std::vector<Atom> Measure::net_atoms() const {
  std::map<Rational, Rational> acc;
  if (const auto* d = std::get_if<DiscreteMeasure>(&v_)) {
    accumulate_atoms(acc, d->atoms, +1);
  } else if (const auto* c = std::get_if<CatalogMeasure>(&v_)) {
    accumulate_atoms(acc, base_atoms(*c), +1);
  } else {
    const auto& a = std::get<AugmentedMeasure>(v_);
    accumulate_atoms(acc, base_atoms(a.base), +1);
    accumulate_atoms(acc, a.added, +1);
    accumulate_atoms(acc, a.removed, -1);
  }
  return atom_list(acc);
}

bool Measure::purely_atomic() const {
  if (std::holds_alternative<DiscreteMeasure>(v_)) return true;
  if (const auto* a = std::get_if<AugmentedMeasure>(&v_))
    return std::holds_alternative<DiscreteMeasure>(a->base);
  return false;
}

std::vector<DensityChart> Measure::density_charts(unsigned bits) const {
  const CatalogMeasure* cat = std::get_if<CatalogMeasure>(&v_);
  if (const auto* a = std::get_if<AugmentedMeasure>(&v_))
    cat = std::get_if<CatalogMeasure>(&a->base);
  if (!cat) return {};

  PrecisionGuard guard(bits);
  DensityChart chart;
  switch (cat->kind) {
  case CatalogKind::Uniform: {
    chart.lo = to_bigfloat(cat->params[0], bits);
    chart.hi = to_bigfloat(cat->params[1], bits);
    BigFloat w = BigFloat(1) / to_bigfloat(cat->params[1] - cat->params[0], bits);
    chart.point = [](const BigFloat& t) { return t; };
    chart.weight = [w](const BigFloat&) { return w; };
    break;
  }
  case CatalogKind::UniformPlusAtom: {
    chart.lo = BigFloat(-1);
    chart.hi = BigFloat(1);
    BigFloat w = BigFloat(1) / 2;
    chart.point = [](const BigFloat& t) { return t; };
    chart.weight = [w](const BigFloat&) { return w; };
    break;
  }
  case CatalogKind::Gaussian: {
    chart.unbounded = true;
    BigFloat norm = BigFloat(1) / sqrt(8 * atan(BigFloat(1)));
    chart.point = [](const BigFloat& t) { return t; };
    chart.weight = [norm](const BigFloat& t) { return norm * exp(-t * t / 2); };
    break;
  }
  case CatalogKind::Lognormal:
  case CatalogKind::LognormalBase2: {
    chart.unbounded = true;
    BigFloat sigma = cat->kind == CatalogKind::Lognormal
                         ? to_bigfloat(cat->params[0], bits)
                         : BigFloat(sqrt(2 * log(BigFloat(2))));
    BigFloat norm = BigFloat(1) / (sigma * sqrt(8 * atan(BigFloat(1))));
    BigFloat two_var = 2 * sigma * sigma;
    chart.point = [](const BigFloat& t) { return exp(t); };
    chart.weight = [norm, two_var](const BigFloat& t) { return norm * exp(-t * t / two_var); };
    break;
  }
  case CatalogKind::Chebyshev: {
    chart.lo = BigFloat(0);
    chart.hi = 4 * atan(BigFloat(1));
    BigFloat inv_pi = BigFloat(1) / chart.hi;
    chart.point = [](const BigFloat& t) { return cos(t); };
    chart.weight = [inv_pi](const BigFloat&) { return inv_pi; };
    break;
  }
  }
  return {chart};
}

SupportInfo Measure::support() const { return support_info(*this); }

std::string Measure::describe() const {
  if (const auto* d = std::get_if<DiscreteMeasure>(&v_)) return "discrete" + atoms_str(d->atoms);
  if (const auto* c = std::get_if<CatalogMeasure>(&v_)) return c->name();
  const auto& a = std::get<AugmentedMeasure>(v_);
  std::string base = std::holds_alternative<CatalogMeasure>(a.base)
                         ? std::get<CatalogMeasure>(a.base).name()
                         : "discrete" + atoms_str(std::get<DiscreteMeasure>(a.base).atoms);
  std::string out = base;
  if (!a.added.empty()) out += " + " + atoms_str(a.added);
  if (!a.removed.empty()) out += " - " + atoms_str(a.removed);
  return out;
}

MomentSequence MomentSequence::from_exact(std::vector<Rational> values, std::string source) {
  MomentSequence q;
  q.exact_ = true;
  q.xvalues_ = std::move(values);
  q.source_ = std::move(source);
  q.validate();
  return q;
}

MomentSequence MomentSequence::from_floats(std::vector<BigFloat> values, std::string source,
                                           unsigned bits) {
  MomentSequence q;
  q.exact_ = false;
  q.fvalues_ = std::move(values);
  q.source_ = std::move(source);
  q.bits_ = bits;
  q.validate();
  return q;
}

void MomentSequence::validate() const {
  const std::size_t n = size();
  if (n == 0) return;
  if (exact_) {
    if (xvalues_[0] <= 0) throw SpecError("moment sequence requires q_0 > 0");
    for (std::size_t k = 0; k < n; k += 2)
      if (xvalues_[k] <= 0) throw SpecError("even moments must be strictly positive");
  } else {
    if (fvalues_[0] <= 0) throw SpecError("moment sequence requires q_0 > 0");
    for (std::size_t k = 0; k < n; k += 2)
      if (fvalues_[k] <= 0) throw SpecError("even moments must be strictly positive");
  }
}

std::size_t MomentSequence::size() const {
  return exact_ ? xvalues_.size() : fvalues_.size();
}

const Rational& MomentSequence::at_exact(std::size_t n) const {
  if (!exact_) throw SpecError("moment sequence is not exact");
  return xvalues_.at(n);
}

BigFloat MomentSequence::at(std::size_t n, unsigned bits) const {
  if (exact_) return to_bigfloat(xvalues_.at(n), bits);
  return fvalues_.at(n);
}

const std::vector<Rational>& MomentSequence::exact_values() const {
  if (!exact_) throw SpecError("moment sequence is not exact");
  return xvalues_;
}

std::vector<BigFloat> MomentSequence::float_values(unsigned bits) const {
  if (!exact_) return fvalues_;
  std::vector<BigFloat> out;
  out.reserve(xvalues_.size());
  for (const auto& r : xvalues_) out.push_back(to_bigfloat(r, bits));
  return out;
}

MomentSequence moments(const Measure& m, long count, const PrecisionContext& ctx) {
  if (count < 0) throw SpecError("moment count must be nonnegative");
  if (count > static_cast<long>(ctx.max_moments))
    throw SpecError("moment count " + std::to_string(count) + " exceeds the configured cap " +
                    std::to_string(ctx.max_moments));
  const bool exact = ctx.is_exact();
  if (exact && !m.has_exact_moments())
    throw SpecError("exact mode requested for catalog entry '" + m.describe() +
                    "' without rational moments");

  // Density contribution.
  std::vector<Rational> qx(count + 1, Rational(0));
  std::vector<BigFloat> qf;
  const CatalogMeasure* cat = std::get_if<CatalogMeasure>(&m.value());
  if (const auto* a = std::get_if<AugmentedMeasure>(&m.value()))
    cat = std::get_if<CatalogMeasure>(&a->base);

  if (cat) {
    if (exact || m.has_exact_moments()) {
      for (long n = 0; n <= count; ++n) qx[n] = catalog_exact_moment(*cat, n);
    } else {
      PrecisionGuard guard(ctx.bits);
      qf.assign(count + 1, BigFloat(0));
      for (long n = 0; n <= count; ++n) qf[n] = catalog_float_moment(*cat, n, ctx.bits);
    }
  }

  // Atom deltas relative to what the catalog formula already accounts for.
  std::map<Rational, Rational> delta;
  if (const auto* d = std::get_if<DiscreteMeasure>(&m.value())) {
    accumulate_atoms(delta, d->atoms, +1);
  } else if (const auto* a = std::get_if<AugmentedMeasure>(&m.value())) {
    if (const auto* d = std::get_if<DiscreteMeasure>(&a->base)) accumulate_atoms(delta, d->atoms, +1);
    accumulate_atoms(delta, a->added, +1);
    accumulate_atoms(delta, a->removed, -1);
  }
  for (const auto& [p, w] : delta) {
    if (w == 0) continue;
    Rational power(1);
    for (long n = 0; n <= count; ++n) {
      qx[n] += w * power;
      power *= p;
    }
  }

  std::string source = m.describe();
  if (!qf.empty()) {
    PrecisionGuard guard(ctx.bits);
    for (long n = 0; n <= count; ++n) qf[n] += to_bigfloat(qx[n], ctx.bits);
    return MomentSequence::from_floats(std::move(qf), std::move(source), ctx.bits);
  }
  if (exact) return MomentSequence::from_exact(std::move(qx), std::move(source));
  std::vector<BigFloat> out;
  out.reserve(qx.size());
  for (const auto& r : qx) out.push_back(to_bigfloat(r, ctx.bits));
  return MomentSequence::from_floats(std::move(out), std::move(source), ctx.bits);
}

Measure add_atom(const Measure& m, const Rational& position, const Rational& weight) {
  if (weight <= 0) throw SpecError("atom weight must be strictly positive");
  if (const auto* d = std::get_if<DiscreteMeasure>(&m.v_)) {
    DiscreteMeasure out = *d;
    for (auto& a : out.atoms) {
      if (a.position == position) {
        a.weight += weight;
        return Measure(Measure::Variant(std::move(out)));
      }
    }
    out.atoms.push_back(Atom{position, weight});
    return Measure::discrete(std::move(out.atoms));
  }
  AugmentedMeasure out;
  if (const auto* c = std::get_if<CatalogMeasure>(&m.v_)) {
    out.base = *c;
  } else {
    out = std::get<AugmentedMeasure>(m.v_);
  }
  // Cancel against pending removals first.
  Rational rest = weight;
  for (auto it = out.removed.begin(); it != out.removed.end(); ++it) {
    if (it->position != position) continue;
    Rational cancel = std::min(it->weight, rest);
    it->weight -= cancel;
    rest -= cancel;
    if (it->weight == 0) out.removed.erase(it);
    break;
  }
  if (rest > 0) {
    bool merged = false;
    for (auto& a : out.added) {
      if (a.position == position) {
        a.weight += rest;
        merged = true;
        break;
      }
    }
    if (!merged) out.added.push_back(Atom{position, rest});
  }
  return Measure(Measure::Variant(std::move(out)));
}

Measure remove_atom(const Measure& m, const Rational& position, const Rational& weight) {
  if (weight <= 0) throw SpecError("removed weight must be strictly positive");
  Rational present(0);
  for (const auto& a : m.net_atoms())
    if (a.position == position) present = a.weight;
  if (present == 0)
    throw SpecError("no atom at position " + rational_str(position));
  if (present < weight)
    throw SpecError("removed weight " + rational_str(weight) + " exceeds present weight " +
                    rational_str(present) + " at position " + rational_str(position));

  if (const auto* d = std::get_if<DiscreteMeasure>(&m.v_)) {
    DiscreteMeasure out;
    for (const auto& a : d->atoms) {
      if (a.position == position) {
        if (a.weight > weight) out.atoms.push_back(Atom{position, a.weight - weight});
      } else {
        out.atoms.push_back(a);
      }
    }
    return Measure(Measure::Variant(std::move(out)));
  }

  AugmentedMeasure out;
  if (const auto* c = std::get_if<CatalogMeasure>(&m.v_)) {
    out.base = *c;
  } else {
    out = std::get<AugmentedMeasure>(m.v_);
  }
  Rational rest = weight;
  for (auto it = out.added.begin(); it != out.added.end(); ++it) {
    if (it->position != position) continue;
    Rational cancel = std::min(it->weight, rest);
    it->weight -= cancel;
    rest -= cancel;
    if (it->weight == 0) out.added.erase(it);
    break;
  }
  if (rest > 0) {
    bool merged = false;
    for (auto& a : out.removed) {
      if (a.position == position) {
        a.weight += rest;
        merged = true;
        break;
      }
    }
    if (!merged) out.removed.push_back(Atom{position, rest});
  }
  return Measure(Measure::Variant(std::move(out)));
}

SupportInfo support_info(const Measure& m) {
  SupportInfo info;
  const CatalogMeasure* cat = std::get_if<CatalogMeasure>(&m.value());
  if (const auto* a = std::get_if<AugmentedMeasure>(&m.value()))
    cat = std::get_if<CatalogMeasure>(&a->base);

  bool density_bounded = true;
  bool density_inside = true;
  if (cat) {
    switch (cat->kind) {
    case CatalogKind::Uniform:
      density_inside = cat->params[0] >= -1 && cat->params[1] <= 1;
      break;
    case CatalogKind::UniformPlusAtom:
    case CatalogKind::Chebyshev:
      break;
    case CatalogKind::Gaussian:
    case CatalogKind::Lognormal:
    case CatalogKind::LognormalBase2:
      density_bounded = false;
      density_inside = false;
      break;
    }
  }

  info.discrete = m.purely_atomic();
  info.bounded = density_bounded;
  bool atoms_inside = true;
  for (const auto& a : m.net_atoms()) {
    if (a.position == 1) info.atom_at_plus_1 = true;
    if (a.position == -1) info.atom_at_minus_1 = true;
    if (!(a.position > -1 && a.position < 1)) atoms_inside = false;
  }
  info.inside_open_unit_ball = density_inside && atoms_inside;
  return info;
}

namespace {

using nlohmann::json;

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw SpecError("numeric fields in measure specs must be decimal strings");
}

std::vector<Atom> atoms_from_json(const json& j) {
  std::vector<Atom> atoms;
  if (!j.is_array()) throw SpecError("atom list must be an array of [position, weight] pairs");
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw SpecError("atom entries must be [position, weight] pairs");
    atoms.push_back(Atom{rational_from_json(e[0]), rational_from_json(e[1])});
  }
  return atoms;
}

Measure catalog_from_name(const std::string& name, const std::vector<Rational>& params) {
  if (name == "uniform") return Measure::catalog(CatalogKind::Uniform, params);
  if (name == "gaussian") return Measure::catalog(CatalogKind::Gaussian, params);
  if (name == "lognormal") return Measure::catalog(CatalogKind::Lognormal, params);
  if (name == "lognormal_base2") return Measure::catalog(CatalogKind::LognormalBase2, params);
  if (name == "uniform_plus_atom") return Measure::catalog(CatalogKind::UniformPlusAtom, params);
  if (name == "chebyshev") return Measure::catalog(CatalogKind::Chebyshev, params);
  throw SpecError("unknown measure '" + name + "'");
}

Measure measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw SpecError("measure spec must be an object with a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "discrete") return Measure::discrete(atoms_from_json(j.at("atoms")));
  if (kind == "catalog") {
    std::vector<Rational> params;
    if (j.contains("params"))
      for (const auto& p : j.at("params")) params.push_back(rational_from_json(p));
    return catalog_from_name(j.at("name").get<std::string>(), params);
  }
  if (kind == "augmented") {
    Measure base = measure_from_json(j.at("base"));
    if (std::holds_alternative<AugmentedMeasure>(base.value()))
      throw SpecError("augmented base must be a discrete or catalog measure");
    Measure out = base;
    if (j.contains("add"))
      for (const auto& a : atoms_from_json(j.at("add")))
        out = add_atom(out, a.position, a.weight);
    if (j.contains("remove"))
      for (const auto& a : atoms_from_json(j.at("remove")))
        out = remove_atom(out, a.position, a.weight);
    return out;
  }
  throw SpecError("measure kind must be one of discrete, catalog, augmented");
}

} // namespace

Measure measure_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("invalid measure JSON: ") + e.what());
  }
  return measure_from_json(j);
}

Measure parse_measure(const std::string& spec) {
  if (spec.empty()) throw SpecError("empty measure spec");
  std::string path;
  if (spec[0] == '@') path = spec.substr(1);
  else if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") path = spec;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open measure spec file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return measure_from_json_text(ss.str());
  }

  auto open = spec.find('(');
  std::string name = spec.substr(0, open);
  std::vector<Rational> params;
  if (open != std::string::npos) {
    if (spec.back() != ')') throw SpecError("malformed measure spec '" + spec + "'");
    std::string args = spec.substr(open + 1, spec.size() - open - 2);
    std::string token;
    std::stringstream ss(args);
    while (std::getline(ss, token, ','))
      if (!token.empty()) params.push_back(parse_rational(token));
  }
  return catalog_from_name(name, params);
}

} // namespace momentkit
