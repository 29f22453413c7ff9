#include "cle/mobius.hpp"

namespace cle {

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  const Complex det = a_ * d_ - b_ * c_;
  require(std::abs(det) > 1e-14, "MobiusMap: degenerate coefficients (ad - bc ~ 0)");
  const Complex s = std::sqrt(det);
  a_ /= s;
  b_ /= s;
  c_ /= s;
  d_ /= s;
}

MobiusMap MobiusMap::scaling(Complex s) {
  require(std::abs(s) > 0.0, "MobiusMap::scaling: zero factor");
  return MobiusMap(s, 0, 0, 1);
}

MobiusMap MobiusMap::similarity(Complex scale_rot, Complex offset) {
  return MobiusMap(scale_rot, offset, 0, 1);
}

MobiusMap MobiusMap::disk_automorphism(Complex a, Complex b) {
  return MobiusMap(a, std::conj(b), b, std::conj(a));
}

CPoint MobiusMap::apply(const CPoint& p) const {
  if (p.is_inf()) {
    if (std::abs(c_) == 0.0) return CPoint::infinity();
    return CPoint(a_ / c_);
  }
  const Complex den = c_ * p.z + d_;
  if (std::abs(den) == 0.0) return CPoint::infinity();
  const Complex num = a_ * p.z + b_;
  // Guard against overflow very close to the pole.
  if (!std::isfinite(std::abs(num / den))) return CPoint::infinity();
  return CPoint(num / den);
}

Complex MobiusMap::deriv1(Complex z) const {
  const Complex den = c_ * z + d_;
  return 1.0 / (den * den);  // ad - bc = 1
}

Complex MobiusMap::deriv2(Complex z) const {
  const Complex den = c_ * z + d_;
  return -2.0 * c_ / (den * den * den);
}

Complex MobiusMap::deriv3(Complex z) const {
  const Complex den = c_ * z + d_;
  return 6.0 * c_ * c_ / (den * den * den * den);
}

CPoint MobiusMap::pole() const {
  if (std::abs(c_) == 0.0) return CPoint::infinity();
  return CPoint(-d_ / c_);
}

MobiusMap MobiusMap::compose(const MobiusMap& m) const {
  return MobiusMap(a_ * m.a_ + b_ * m.c_, a_ * m.b_ + b_ * m.d_, c_ * m.a_ + d_ * m.c_,
                   c_ * m.b_ + d_ * m.d_);
}

bool MobiusMap::is_identity(double tol) const {
  // Normalized form is unique up to overall sign.
  for (double s : {1.0, -1.0}) {
    if (std::abs(a_ - s) < tol && std::abs(b_) < tol && std::abs(c_) < tol && std::abs(d_ - s) < tol)
      return true;
  }
  return false;
}

MobiusMap gen_scale_map(const CPoint& zp, const CPoint& z, double lambda) {
  require(!(zp == z), "gen_scale_map: coincident fixed points");
  require(lambda > 0.0 && lambda <= 1.0, "gen_scale_map: lambda outside (0,1]");
  if (zp.is_inf()) {
    // limit of the finite-coefficient form: x -> (x - (1-lambda) z) / lambda
    const Complex zf = z.finite();
    return MobiusMap(1.0, -(1.0 - lambda) * zf, 0.0, lambda);
  }
  if (z.is_inf()) {
    const Complex zpf = zp.finite();
    return MobiusMap(lambda, (1.0 - lambda) * zpf, 0.0, 1.0);
  }
  const Complex zf = z.finite(), zpf = zp.finite();
  return MobiusMap(-(zpf - lambda * zf), (1.0 - lambda) * zf * zpf, -(1.0 - lambda),
                   zf - lambda * zpf);
}

}  // namespace cle
