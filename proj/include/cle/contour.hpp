#pragma once

#include <functional>
#include <span>

#include "cle/polyline.hpp"

namespace cle {

// Closed-contour integral with the measure dz/(2 pi i): trapezoid rule over
// the polyline, spectrally accurate for analytic integrands on smooth curves.
Complex contour_integral(const BoundaryCurve& curve, std::span<const Complex> values);
Complex contour_integral(const BoundaryCurve& curve, const std::function<Complex(Complex)>& f);

// Same on a circle |z - center| = radius with n uniform points.
Complex circle_integral(Complex center, double radius, int n,
                        const std::function<Complex(Complex)>& f);

}  // namespace cle
