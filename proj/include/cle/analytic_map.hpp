#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cle/mobius.hpp"

namespace cle {

// Holomorphic function bundle: value plus first three derivatives. Derivative
// callables may be omitted; evaluation then falls back to circle sampling.
struct HoloFun {
  std::function<Complex(Complex)> f;
  std::function<Complex(Complex)> d1, d2, d3;
  std::optional<Complex> value_at_inf;  // set when h is holomorphic at infinity

  static HoloFun monomial(int m);                 // z^m, m >= 0
  static HoloFun cauchy_kernel(Complex w, double theta);  // e^{i theta}/(w - z)
};

// {f(w), f'(w), f''(w), f'''(w)} of an analytic callable by trapezoid Fourier
// sums on a circle |z-w| = radius. Spectrally accurate when f is analytic on
// the closed disk.
std::array<Complex, 4> cauchy_jet(const std::function<Complex(Complex)>& f, Complex w,
                                  double radius, int n = 64);

// Evaluatable conformal map with derivatives to order 3 and a declared domain
// of conformality. Value semantics; cheap to copy.
class AnalyticMap {
 public:
  AnalyticMap();  // identity

  static AnalyticMap identity();
  static AnalyticMap mobius(const MobiusMap& m);
  // z + eps^2 e^{2 i theta} / (16 (w - z)); conformal for |z-w| > eps/4 and
  // maps the circle |z-w| = b eps/4 onto the standard ellipse boundary.
  static AnalyticMap pinch(Complex w, double eps, double theta);
  // c0 + c1 z + c2 z^2 + ...
  static AnalyticMap polynomial(std::vector<Complex> coeffs);
  // id + eta * h
  static AnalyticMap perturbation(HoloFun h, double eta,
                                  std::function<bool(Complex)> domain = {});
  // w + eps e^{i theta} ((b/4) v - 1/(4 b v)); conformal on |v| > 1/b, maps the
  // unit circle onto the ellipse boundary.
  static AnalyticMap joukowski(Complex w, double eps, double theta, double b);
  // z / (btilde + z^2/btilde); maps the unit disk onto a vertically elongated
  // domain for btilde > 1.
  static AnalyticMap elongated_disk(double btilde);
  static AnalyticMap custom(std::function<Complex(Complex)> f,
                            std::function<Complex(Complex)> d1,
                            std::function<Complex(Complex)> d2,
                            std::function<Complex(Complex)> d3,
                            std::function<bool(Complex)> domain = {});

  // this after inner: z -> this(inner(z))
  AnalyticMap after(const AnalyticMap& inner) const;

  CPoint apply(const CPoint& p) const;
  CPoint operator()(const CPoint& p) const { return apply(p); }
  Complex value(Complex z) const;

  // g', g'', g''' at a finite point of the declared domain.
  std::array<Complex, 3> derivs(Complex z) const;
  Complex deriv(Complex z, int order = 1) const;

  bool in_domain(Complex z) const;
  // Underlying global map if the whole composition chain is one.
  const MobiusMap* as_mobius() const;

  struct Impl;

 private:
  explicit AnalyticMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace cle
