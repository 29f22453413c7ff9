#pragma once

#include <cmath>
#include <complex>

#include "cle/error.hpp"

namespace cle {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr Complex kI{0.0, 1.0};

// Point on the extended plane. Infinity is an explicit flag, never a large
// float; finite points must have finite coordinates.
struct CPoint {
  Complex z{0.0, 0.0};
  bool inf = false;

  CPoint() = default;
  CPoint(Complex v) : z(v) {  // NOLINT: implicit by design, finite literals are common
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            "CPoint: finite point with non-finite coordinates");
  }
  CPoint(double re, double im) : CPoint(Complex{re, im}) {}

  static CPoint infinity() {
    CPoint p;
    p.inf = true;
    p.z = Complex{0.0, 0.0};
    return p;
  }

  bool is_inf() const { return inf; }

  Complex finite() const {
    require(!inf, "CPoint: finite() called on the point at infinity");
    return z;
  }

  bool operator==(const CPoint& o) const { return inf ? o.inf : (!o.inf && z == o.z); }
};

inline double dist(const CPoint& a, const CPoint& b) {
  if (a.inf || b.inf) return (a.inf && b.inf) ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(a.z - b.z);
}

}  // namespace cle
