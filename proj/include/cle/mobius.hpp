#pragma once

#include <array>

#include "cle/complex_point.hpp"

namespace cle {

// Global conformal transformation z -> (az+b)/(cz+d), kept normalized to
// ad - bc = 1. Total on the extended plane.
class MobiusMap {
 public:
  MobiusMap() : a_(1), b_(0), c_(0), d_(1) {}
  MobiusMap(Complex a, Complex b, Complex c, Complex d);

  static MobiusMap identity() { return MobiusMap(); }
  static MobiusMap translation(Complex t) { return MobiusMap(1, t, 0, 1); }
  static MobiusMap scaling(Complex s);
  static MobiusMap rotation(double phi) { return scaling(std::polar(1.0, phi)); }
  static MobiusMap inversion() { return MobiusMap(0, 1, 1, 0); }
  // z -> c + r z
  static MobiusMap similarity(Complex scale_rot, Complex offset);
  // SU(1,1) element (az + conj(b)) / (bz + conj(a)); preserves the unit disk
  // when |a| > |b|. Input need not be pre-normalized.
  static MobiusMap disk_automorphism(Complex a, Complex b);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  CPoint apply(const CPoint& p) const;
  CPoint operator()(const CPoint& p) const { return apply(p); }

  // First three derivatives at a finite point away from the pole.
  Complex deriv1(Complex z) const;
  Complex deriv2(Complex z) const;
  Complex deriv3(Complex z) const;

  CPoint pole() const;  // preimage of infinity

  MobiusMap inverse() const { return MobiusMap(d_, -b_, -c_, a_); }
  // (*this) after m: z -> this(m(z))
  MobiusMap compose(const MobiusMap& m) const;

  bool is_identity(double tol = 1e-12) const;

 private:
  Complex a_, b_, c_, d_;
};

// Generalised scale transformation with fixed points zp and z; lambda=1 is
// the identity and decreasing lambda flows points from z towards zp.
// Accepts zp or z at infinity (not both equal).
MobiusMap gen_scale_map(const CPoint& zp, const CPoint& z, double lambda);

}  // namespace cle
