#include "cle/schwarzian.hpp"

namespace cle {

namespace {

// Jet (value, g', g'', g''') of 1/g about a pole w of g. Exact composition
// when g is a global map; otherwise circle sampling of the reciprocal, which
// is holomorphic there with a simple zero.
std::array<Complex, 4> reciprocal_jet(const AnalyticMap& g, Complex w) {
  if (const MobiusMap* m = g.as_mobius()) {
    const MobiusMap r = MobiusMap::inversion().compose(*m);
    return {r.apply(CPoint(w)).finite(), r.deriv1(w), r.deriv2(w), r.deriv3(w)};
  }
  const double scale = std::max(1.0, std::abs(w));
  for (double r : {1e-2 * scale, 2e-2 * scale, 5e-3 * scale}) {
    auto jet = cauchy_jet(
        [&g, w](Complex z) {
          const CPoint v = g.apply(CPoint(z));
          return v.is_inf() ? Complex{0, 0} : 1.0 / v.z;
        },
        w, r);
    if (std::abs(jet[1]) > 1e-10) return jet;
  }
  fail_validation("schwarzian: reciprocal map degenerate at the pole");
}

Complex schwarzian_from_jet(Complex d1, Complex d2, Complex d3) {
  require(std::abs(d1) > 0.0, "schwarzian: map not conformal at w (vanishing derivative)");
  const Complex r2 = d2 / d1;
  return d3 / d1 - 1.5 * r2 * r2;
}

}  // namespace

Complex schwarzian(const AnalyticMap& g, const CPoint& w) {
  require(!w.is_inf(), "schwarzian: base point at infinity unsupported");
  const Complex wz = w.finite();
  const CPoint gw = g.apply(w);
  if (!gw.is_inf()) {
    const auto d = g.derivs(wz);
    return schwarzian_from_jet(d[0], d[1], d[2]);
  }
  const auto jet = reciprocal_jet(g, wz);
  return schwarzian_from_jet(jet[1], jet[2], jet[3]);
}

NormalForm normal_form(const AnalyticMap& g, const CPoint& w) {
  require(!w.is_inf(), "normal_form: base point at infinity unsupported");
  const Complex wz = w.finite();
  const CPoint gw = g.apply(w);

  Complex v0, d1, d2, d3;
  MobiusMap pre = MobiusMap::identity();  // applied before the constructed map
  if (gw.is_inf()) {
    const auto jet = reciprocal_jet(g, wz);
    v0 = jet[0];
    d1 = jet[1];
    d2 = jet[2];
    d3 = jet[3];
    pre = MobiusMap::inversion();  // normal form of 1/g, then G = G~ o inversion
  } else {
    v0 = gw.z;
    const auto d = g.derivs(wz);
    d1 = d[0];
    d2 = d[1];
    d3 = d[2];
  }
  require(std::abs(d1) > 0.0, "normal_form: map not conformal at w");

  // G1(z) = v0 + d1 (z - w); G2(z) = w + (z-w)/(1 + eta (z-w)), eta = h2.
  const Complex h2 = d2 / (2.0 * d1);
  const Complex h3 = d3 / (6.0 * d1);
  const MobiusMap g1(d1, v0 - d1 * wz, 0.0, 1.0);
  const MobiusMap g2(1.0 + h2 * wz, -h2 * wz * wz, h2, 1.0 - h2 * wz);
  const MobiusMap G = g2.compose(g1.inverse()).compose(pre);
  return NormalForm{G, 6.0 * (h3 - h2 * h2)};
}

}  // namespace cle
