#pragma once

#include <functional>
#include <vector>

#include "cle/complex_point.hpp"

namespace cle {

// Closed polyline; pts.back() connects to pts.front(). Orientation is
// counter-clockwise around the bounded interior when signed_area > 0.
struct BoundaryCurve {
  std::vector<Complex> pts;

  bool empty() const { return pts.empty(); }
  std::size_t size() const { return pts.size(); }
  Complex seg_a(std::size_t i) const { return pts[i]; }
  Complex seg_b(std::size_t i) const { return pts[(i + 1) % pts.size()]; }
};

double signed_area(const BoundaryCurve& c);
BoundaryCurve reversed(BoundaryCurve c);
BoundaryCurve transformed(const BoundaryCurve& c, const std::function<Complex(Complex)>& f);

// Integer winding number; undefined within tol of the curve (check
// point_near_curve first when that matters).
int winding_number(const BoundaryCurve& c, Complex z);

double distance_to_curve(const BoundaryCurve& c, Complex z);
bool point_near_curve(const BoundaryCurve& c, Complex z, double tol);

double segment_distance(Complex a1, Complex a2, Complex b1, Complex b2);
bool segments_intersect(Complex a1, Complex a2, Complex b1, Complex b2, double tol);

// True iff any segment pair properly intersects or touches within tol.
// Grid-accelerated; the quadratic reference lives in the tests.
bool curve_intersects(const BoundaryCurve& a, const BoundaryCurve& b, double tol = 1e-12);

// No self-intersections between non-adjacent segments.
bool is_simple(const BoundaryCurve& c, double tol = 1e-12);

// Max over a of min distance to b, symmetrized (vertex-sampled Hausdorff).
double hausdorff_distance(const BoundaryCurve& a, const BoundaryCurve& b);

}  // namespace cle
