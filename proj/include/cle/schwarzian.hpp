#pragma once

#include "cle/analytic_map.hpp"

namespace cle {

// Schwarzian derivative {g,w} = g'''/g' - (3/2)(g''/g')^2 at a finite point.
// When g has a pole at w the value is defined through the reciprocal map
// 1/g, which is holomorphic and vanishes at w; both branches agree with the
// unique cubic normal-form coefficient below.
Complex schwarzian(const AnalyticMap& g, const CPoint& w);

struct NormalForm {
  MobiusMap mobius;   // G with (G o g)(z) = z + (a/6)(z-w)^3 + O((z-w)^4)
  Complex coefficient;  // a = {g,w}
};

// Constructive normal form: G1 strips the constant and linear parts, G2 the
// quadratic one; both are global maps.
NormalForm normal_form(const AnalyticMap& g, const CPoint& w);

}  // namespace cle
