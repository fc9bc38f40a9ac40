#pragma once

#include "momentkit/measure.hpp"
#include "momentkit/numeric.hpp"

#include <functional>
#include <vector>

namespace momentkit {

using RealFn = std::function<BigFloat(const BigFloat&)>;
using RationalFn = std::function<Rational(const Rational&)>;

// Gauss-Legendre rule on [-1,1]; nodes/weights carry at least `bits` mantissa bits.
struct GlRule {
  std::vector<BigFloat> nodes;
  std::vector<BigFloat> weights;
};

const GlRule& gl_rule(unsigned order, unsigned bits);

// Adaptive bisection with a fixed-order Gauss-Legendre rule per panel. Panels
// are split worst-error-first until the accumulated error estimate drops under
// rel_tol * scale (scale = max(|integral|, small fraction of the absolute
// mass)) or under abs_floor. Throws NumericError when the panel budget is
// exhausted.
BigFloat integrate_interval(const RealFn& f, const BigFloat& a, const BigFloat& b,
                            const PrecisionContext& ctx, const BigFloat& abs_floor = BigFloat(0));

// Integral of f against the measure: density charts by quadrature, atoms as a
// weighted sum. Density parts of unbounded measures are truncated by doubling
// strips until two consecutive strips are negligible.
BigFloat integrate(const Measure& m, const RealFn& f, const PrecisionContext& ctx);

// Exact weighted sum over atoms; requires a purely atomic measure.
Rational integrate_exact(const Measure& m, const RationalFn& f);

} // namespace momentkit
