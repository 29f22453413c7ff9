#include "cle/contour.hpp"

#include "cle/error.hpp"

namespace cle {

Complex contour_integral(const BoundaryCurve& curve, std::span<const Complex> values) {
  const std::size_t n = curve.pts.size();
  require(n >= 3 && values.size() == n, "contour_integral: size mismatch");
  Complex acc{0, 0};
  if (n < 16) {
    // chord trapezoid for coarse polylines
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      acc += 0.5 * (values[i] + values[j]) * (curve.pts[j] - curve.pts[i]);
    }
    return acc / (2.0 * kPi * kI);
  }
  // periodic trapezoid with sixth-order tangents: spectral accuracy on smooth
  // uniformly sampled curves
  auto at = [&](std::ptrdiff_t i) { return curve.pts[std::size_t((i + 2 * std::ptrdiff_t(n)) % std::ptrdiff_t(n))]; };
  for (std::size_t i = 0; i < n; ++i) {
    const std::ptrdiff_t k = std::ptrdiff_t(i);
    const Complex tangent =
        (45.0 * (at(k + 1) - at(k - 1)) - 9.0 * (at(k + 2) - at(k - 2)) + (at(k + 3) - at(k - 3))) /
        60.0;
    acc += values[i] * tangent;
  }
  return acc / (2.0 * kPi * kI);
}

Complex contour_integral(const BoundaryCurve& curve, const std::function<Complex(Complex)>& f) {
  std::vector<Complex> vals;
  vals.reserve(curve.pts.size());
  for (const Complex& p : curve.pts) vals.push_back(f(p));
  return contour_integral(curve, vals);
}

Complex circle_integral(Complex center, double radius, int n,
                        const std::function<Complex(Complex)>& f) {
  require(n >= 8 && radius > 0.0, "circle_integral: bad parameters");
  BoundaryCurve c;
  c.pts.reserve(std::size_t(n));
  for (int j = 0; j < n; ++j) c.pts.push_back(center + radius * std::polar(1.0, 2.0 * kPi * j / n));
  return contour_integral(c, f);
}

}  // namespace cle
