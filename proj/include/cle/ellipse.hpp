#pragma once

#include "cle/analytic_map.hpp"

namespace cle {

// Standard rotating-ellipse family: boundary points
//   w + eps e^{i theta} ((b/4) e^{i alpha} - 1/(4b) e^{-i alpha}).
// eps is the ellipse scale (distinct from the corridor fattening), theta its
// orientation, b > 1 the eccentricity parameter. Semi-axes along the rotated
// frame are eps (b -+ 1/b)/4; the real-axis vertex is the shorter one.
struct EllipseSpec {
  Complex w{0.0, 0.0};
  double eps = 1.0;
  double theta = 0.0;
  double b = 2.0;

  EllipseSpec() = default;
  EllipseSpec(Complex center, double scale, double angle, double bb = 2.0)
      : w(center), eps(scale), theta(angle), b(bb) {
    require(eps > 0.0, "EllipseSpec: eps must be positive");
    require(b > 1.0, "EllipseSpec: b must exceed 1");
  }

  Complex boundary(double alpha) const {
    return w + eps * std::polar(1.0, theta) *
                   (b / 4.0 * std::polar(1.0, alpha) - std::polar(1.0, -alpha) / (4.0 * b));
  }

  double semi_axis_re() const { return eps * (b - 1.0 / b) / 4.0; }
  double semi_axis_im() const { return eps * (b + 1.0 / b) / 4.0; }

  bool contains(Complex p) const {
    const Complex q = (p - w) * std::polar(1.0, -theta) / eps;
    const double x = q.real() / ((b - 1.0 / b) / 4.0);
    const double y = q.imag() / ((b + 1.0 / b) / 4.0);
    return x * x + y * y < 1.0;
  }

  // Signed implicit value; ~0 on the boundary, negative inside.
  double implicit(Complex p) const {
    const Complex q = (p - w) * std::polar(1.0, -theta) / eps;
    const double x = q.real() / ((b - 1.0 / b) / 4.0);
    const double y = q.imag() / ((b + 1.0 / b) / 4.0);
    return x * x + y * y - 1.0;
  }

  // The similarity z -> w + eps e^{i theta} z sending E(0,1,0) onto this one.
  MobiusMap frame() const { return MobiusMap::similarity(eps * std::polar(1.0, theta), w); }

  AnalyticMap uniformizer() const { return AnalyticMap::joukowski(w, eps, theta, b); }
};

inline Complex ellipse_boundary(const EllipseSpec& e, double alpha) { return e.boundary(alpha); }

inline AnalyticMap pinch_map(const CPoint& w, double eps, double theta) {
  return AnalyticMap::pinch(w.finite(), eps, theta);
}

}  // namespace cle
