#pragma once

// Independent numerical oracles for the test suites. Deliberately built on
// plain central differences (with one Richardson step), not on the circle
// sampling the library itself uses.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace oracle {

using Complex = std::complex<double>;

inline Complex fd_deriv1(const std::function<Complex(Complex)>& f, Complex z, double h = 1e-5) {
  auto d = [&](double s) { return (f(z + s) - f(z - s)) / (2.0 * s); };
  return (4.0 * d(h) - d(2.0 * h)) / 3.0;
}

inline Complex fd_deriv2(const std::function<Complex(Complex)>& f, Complex z, double h = 1e-4) {
  auto d = [&](double s) { return (f(z + s) - 2.0 * f(z) + f(z - s)) / (s * s); };
  return (4.0 * d(h) - d(2.0 * h)) / 3.0;
}

inline Complex fd_deriv3(const std::function<Complex(Complex)>& f, Complex z, double h = 1e-3) {
  auto d = [&](double s) {
    return (f(z + 2.0 * s) - 2.0 * f(z + s) + 2.0 * f(z - s) - f(z - 2.0 * s)) / (2.0 * s * s * s);
  };
  return (4.0 * d(h) - d(2.0 * h)) / 3.0;
}

inline Complex fd_schwarzian(const std::function<Complex(Complex)>& f, Complex z) {
  const Complex d1 = fd_deriv1(f, z);
  const Complex d2 = fd_deriv2(f, z);
  const Complex d3 = fd_deriv3(f, z);
  const Complex r = d2 / d1;
  return d3 / d1 - 1.5 * r * r;
}

// Forward-mode jet carrying value and first three derivatives. Evaluating an
// expression on Jet3{z,1,0,0} yields machine-exact derivatives, the role the
// complex-step trick plays for real-valued functions.
struct Jet3 {
  Complex v{0, 0}, d1{0, 0}, d2{0, 0}, d3{0, 0};
  static Jet3 seed(Complex z) { return {z, Complex{1, 0}, Complex{0, 0}, Complex{0, 0}}; }
  static Jet3 paramconst(Complex c) { return {c, {0, 0}, {0, 0}, {0, 0}}; }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
inline Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
inline Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
          a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}
inline Jet3 inv(const Jet3& a) {
  const Complex w = 1.0 / a.v;
  const Complex w2 = w * w;
  const Complex d1 = -a.d1 * w2;
  const Complex d2 = (2.0 * a.d1 * a.d1 * w - a.d2) * w2;
  const Complex d3 = (-6.0 * a.d1 * a.d1 * a.d1 * w2 + 6.0 * a.d1 * a.d2 * w - a.d3) * w2;
  return {w, d1, d2, d3};
}
inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * inv(b); }
inline Jet3 operator*(Complex c, const Jet3& a) { return Jet3::paramconst(c) * a; }
inline Jet3 operator+(Complex c, const Jet3& a) { return Jet3::paramconst(c) + a; }
inline Jet3 operator-(Complex c, const Jet3& a) { return Jet3::paramconst(c) - a; }

inline Complex jet_schwarzian(const Jet3& j) {
  const Complex r = j.d2 / j.d1;
  return j.d3 / j.d1 - 1.5 * r * r;
}

inline Complex random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * 3.14159265358979323846);
  return std::polar(1.0, u(rng));
}

inline Complex random_in_disk(std::mt19937_64& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  while (true) {
    Complex z{u(rng), u(rng)};
    if (std::abs(z) < radius) return z;
  }
}

}  // namespace oracle
