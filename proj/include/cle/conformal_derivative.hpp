#pragma once

#include "cle/analytic_map.hpp"
#include "cle/contour.hpp"
#include "cle/stats.hpp"

namespace cle {

// Analytic flow direction with declared holomorphy region. Flows act as
// id + eta * h on marked geometry.
struct DirectionField {
  HoloFun fun;
  std::string name;

  // e^{i theta} / (w - z): the spin-2 kernel family
  static DirectionField cauchy_kernel(Complex w, double theta);
  // coeff * z^m
  static DirectionField monomial(int m, Complex coeff = Complex{1, 0});
  static DirectionField sum(const DirectionField& a, const DirectionField& b);

  AnalyticMap flow(double eta) const { return AnalyticMap::perturbation(fun, eta); }
};

// Marked geometry a functional reads: boundary curves plus marked points.
struct Sigma {
  std::vector<BoundaryCurve> curves;
  std::vector<Complex> points;

  Sigma transformed(const AnalyticMap& g) const {
    Sigma out;
    out.curves.reserve(curves.size());
    for (const BoundaryCurve& c : curves)
      out.curves.push_back(transformed_curve(c, g));
    out.points.reserve(points.size());
    for (const Complex& p : points) out.points.push_back(g.value(p));
    return out;
  }

 private:
  static BoundaryCurve transformed_curve(const BoundaryCurve& c, const AnalyticMap& g) {
    BoundaryCurve out;
    out.pts.reserve(c.pts.size());
    for (const Complex& p : c.pts) out.pts.push_back(g.value(p));
    return out;
  }
};

// One functional evaluation; bins enable paired error analysis across
// perturbed evaluations of Monte Carlo functionals.
struct FunctionalSample {
  double value = 0.0;
  std::vector<double> bins;  // empty for closed forms
};

// Functional of conformal flows about a fixed base geometry. eval receives
// the flow map (id for the base point) and a perturbation index. Monte Carlo
// functionals must derive their chain seeds from their own base seed only --
// never from the perturbation index or scheduling order -- so that all
// perturbed evaluations share randomness (common random numbers).
class BoundaryFunctional {
 public:
  using Eval = std::function<FunctionalSample(const AnalyticMap& flow, std::uint64_t pert)>;

  static BoundaryFunctional closed_form(Sigma base, std::function<double(const Sigma&)> f);
  static BoundaryFunctional monte_carlo(Eval eval);

  FunctionalSample eval(const AnalyticMap& flow, std::uint64_t pert) const {
    return eval_(flow, pert);
  }
  bool is_monte_carlo() const { return mc_; }

 private:
  Eval eval_;
  bool mc_ = false;
};

// Default eta ladders per evaluation kind (bias-variance tradeoffs differ by
// orders of magnitude between closed forms and Monte Carlo estimates).
std::vector<double> default_eta_ladder(bool monte_carlo);

// Central differences [F(id + eta h) - F(id - eta h)]/(2 eta) down the
// ladder, Richardson-extrapolated; for MC functionals the error is a paired
// jackknife over shared bins.
Estimate directional_derivative(const BoundaryFunctional& F, const DirectionField& h,
                                std::span<const double> eta_ladder);

// Discrete theta-average (1/n) sum_j e^{-i theta_j} grad_{h_{w,theta_j}} F,
// the global holomorphic derivative at w. For MC functionals all evaluations
// share bins, so the jackknife captures their correlations.
ComplexEstimate fourier_mode_derivative(const BoundaryFunctional& F, Complex w, int n_theta,
                                        std::span<const double> eta_ladder);

struct ChargeFit {
  Estimate gamma;         // Gamma: 32 x coefficient of z^-4
  Complex gamma_complex{0, 0};
  Complex coeff5{0, 0};   // z^-5 nuisance coefficient
  double chi2 = 0.0;
  bool partition_violation = false;  // dominant z^-3 or slower tail detected
};

// Weighted fit of Delta_z samples to (Gamma/32) z^-4 + c5 z^-5. Radii must
// span at least a decade.
ChargeFit charge_fit(std::span<const Complex> zs, std::span<const Complex> deltas,
                     std::span<const double> errs);

}  // namespace cle
