#pragma once

#include "momentkit/numeric.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace momentkit {

struct Atom {
  Rational position;
  Rational weight;
};

enum class CatalogKind {
  Uniform,        // uniform(a,b)
  Gaussian,       // gaussian(0,1)
  Lognormal,      // lognormal(sigma), big-float moments only
  LognormalBase2, // sigma^2 = 2 ln 2, q_n = 2^{n^2}
  UniformPlusAtom,// uniform(-1,1) plus an atom of weight c at x = 1
  Chebyshev       // arcsine distribution on [-1,1]
};

struct CatalogMeasure {
  CatalogKind kind;
  std::vector<Rational> params;

  std::string name() const;
};

struct DiscreteMeasure {
  std::vector<Atom> atoms; // pairwise distinct positions, strictly positive weights
};

struct AugmentedMeasure {
  std::variant<DiscreteMeasure, CatalogMeasure> base;
  std::vector<Atom> added;   // merged by position
  std::vector<Atom> removed; // merged by position; never exceeds what the base carries
};

struct SupportInfo {
  bool bounded = false;
  bool inside_open_unit_ball = false; // no mass outside (-1,1)
  bool atom_at_plus_1 = false;
  bool atom_at_minus_1 = false;
  bool discrete = false;
};

// Whether the measure satisfies supp(M) in [-1,1] with no mass at the endpoints.
inline bool condition_iii_holds(const SupportInfo& s) { return s.inside_open_unit_ball; }

// One smooth finite chart of the density part: contributes the integral of
// f(point(t)) * weight(t) over [lo,hi], or over the whole line when unbounded
// (handled by expanding truncation in the quadrature engine). Endpoint-singular
// and unbounded catalog densities are pre-transformed into smooth charts.
struct DensityChart {
  bool unbounded = false;
  BigFloat lo, hi;
  std::function<BigFloat(const BigFloat&)> point;
  std::function<BigFloat(const BigFloat&)> weight;
};

class Measure {
public:
  using Variant = std::variant<DiscreteMeasure, CatalogMeasure, AugmentedMeasure>;

  static Measure discrete(std::vector<Atom> atoms);
  static Measure catalog(CatalogKind kind, std::vector<Rational> params = {});

  const Variant& value() const { return v_; }
  bool is_discrete_variant() const;

  // True when closed-form rational moments exist (all variants except ones
  // built on lognormal(sigma)).
  bool has_exact_moments() const;

  // Atoms actually carried by the measure (base atoms plus net augmentation).
  std::vector<Atom> net_atoms() const;
  // True when there is no density part at all.
  bool purely_atomic() const;

  // Charts of the density part at the given working precision.
  std::vector<DensityChart> density_charts(unsigned bits) const;

  SupportInfo support() const;

  std::string describe() const;

private:
  explicit Measure(Variant v) : v_(std::move(v)) {}
  Variant v_;

  friend Measure add_atom(const Measure& m, const Rational& position, const Rational& weight);
  friend Measure remove_atom(const Measure& m, const Rational& position, const Rational& weight);
};

class MomentSequence {
public:
  static MomentSequence from_exact(std::vector<Rational> values, std::string source);
  static MomentSequence from_floats(std::vector<BigFloat> values, std::string source,
                                    unsigned bits);

  bool exact() const { return exact_; }
  std::size_t size() const;
  long max_index() const { return static_cast<long>(size()) - 1; }

  const Rational& at_exact(std::size_t n) const;
  BigFloat at(std::size_t n, unsigned bits) const;
  const std::vector<Rational>& exact_values() const;
  std::vector<BigFloat> float_values(unsigned bits) const;

  const std::string& source() const { return source_; }
  unsigned bits() const { return bits_; }

private:
  MomentSequence() = default;
  bool exact_ = true;
  std::vector<Rational> xvalues_;
  std::vector<BigFloat> fvalues_;
  std::string source_ = "raw";
  unsigned bits_ = 0;

  void validate() const;
};

// q_0..q_count of the measure. Exact mode requires rational closed-form moments.
MomentSequence moments(const Measure& m, long count, const PrecisionContext& ctx);

Measure add_atom(const Measure& m, const Rational& position, const Rational& weight);
Measure remove_atom(const Measure& m, const Rational& position, const Rational& weight);

SupportInfo support_info(const Measure& m);

// Command-line measure grammar: "uniform(-1,1)", "gaussian", "lognormal(1)",
// "lognormal_base2", "uniform_plus_atom(1)", "chebyshev", or a path to a JSON
// measure spec ("@spec.json" or any token ending in ".json").
Measure parse_measure(const std::string& spec);
// JSON object form: {"kind": "discrete"|"catalog"|"augmented", ...}.
Measure measure_from_json_text(const std::string& text);

} // namespace momentkit
