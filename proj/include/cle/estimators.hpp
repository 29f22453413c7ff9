#pragma once

#include "cle/conformal_derivative.hpp"
#include "cle/fits.hpp"
#include "cle/measure.hpp"
#include "cle/schwarzian.hpp"

namespace cle {

// Measured reference denominators P(corridor(unit disk, eps))_{2 disk} per
// fattening, plus the overall normalization fixed so the renormalised
// probability of the standard ellipse on the plane proxy equals one.
struct NormalizationTable {
  double b = 2.0;
  double spacing = 0.0;
  double proxy_radius = 0.0;
  struct Row {
    double eps = 0.0;
    Estimate denom;
  };
  std::vector<Row> rows;
  Estimate n_const;                 // calibrated N with propagated fit error
  ExtrapolationResult unit_ellipse;  // ladder diagnostics behind N

  std::vector<double> ladder() const {
    std::vector<double> out;
    for (const Row& r : rows) out.push_back(r.eps);
    return out;
  }
  const Estimate& denom_at(double eps) const;
};

struct CalibrationSetup {
  LatticeSpec lattice;
  SamplerConfig sampler;
  std::vector<double> eps_ladder{0.15, 0.22, 0.33};
  double b = 2.0;
  double proxy_radius = 2.0;
  double ellipse_scale = 1.0;  // scale of the reference ellipse
  std::size_t n_samples = 40000;
  int n_theta_check = 4;  // orientations measured for the isotropy diagnostic
};

NormalizationTable calibrate_normalization(const CalibrationSetup& setup);

// Monte Carlo mean of an event probability with autocorrelation-corrected
// errors on one stream.
Estimate estimate_prob(const EventSpec& event, const SampleContext& ctx);

// N * lim_{eps->0} P(X, corridor(A,eps))_C / P(corridor(D,eps))_{2D};
// the limit realized as a ladder extrapolation. X trivial: pass
// EventSpec::trivial().
ExtrapolationResult renormalized_prob(const EventSpec& X, const DomainSpec& A,
                                      const SampleContext& C_ctx, const NormalizationTable& table);

struct RestrictionCheck {
  // pre-limit ratio at each eps: P(X, corridor)_C / P(corridor)_C, which is
  // exactly the conditional probability on the same stream
  std::vector<LadderPoint> prelimit;
  // the same numbers computed through the conditional path; bit-identical to
  // prelimit by the shared-accumulator contract
  std::vector<LadderPoint> conditional;
  ExtrapolationResult ratio_limit;  // eps -> 0 of the ratio
  Estimate annulus_prob;            // P(X) on C minus closure(A)
  Estimate residual;                // ratio_limit - annulus_prob
};

RestrictionCheck restriction_residual(const EventSpec& X, const DomainSpec& A,
                                      const SampleContext& C_ctx, const NormalizationTable& table);

// f(g,A) = P^ren(g(A))_{g(C)} / P^ren(A)_C (reference denominators cancel in
// the ratio, so the table only pins the ladder).
ExtrapolationResult covariance_factor(const AnalyticMap& g, const DomainSpec& A,
                                      const SampleContext& C_ctx, const NormalizationTable& table);

struct StressInsertion {
  ExtrapolationResult value;  // complex P1(X; w)_C
  ComplexEstimate at_smallest_scale;
  // theta-spectrum diagnostics per ellipse scale: mode 0, |mode 2|, |mode 4|
  struct Spectrum {
    double scale = 0.0;
    double mode0 = 0.0, mode2 = 0.0, mode4 = 0.0;
  };
  std::vector<Spectrum> spectra;
  std::vector<std::vector<LadderPoint>> fourier_tables;  // per scale: eps ladder of S/D
};

struct StressSetup {
  std::vector<double> scale_ladder{0.5, 0.65, 0.8};  // ellipse scales
  int n_theta = 16;
};

// - lim (8/pi eps^2) integral dtheta e^{-2 i theta} P^ren(X; E(w,eps,theta))_C
// via the discrete Fourier quadrature on one shared stream.
StressInsertion stress_insertion(const EventSpec& X, Complex w, const SampleContext& C_ctx,
                                 const NormalizationTable& table, const StressSetup& setup);

// Z(C|D) = lim P(corridor(D,eps))_proxy / P(corridor(D,eps))_C.
ExtrapolationResult relative_partition(const SampleContext& C_ctx, const DomainSpec& D,
                                       const NormalizationTable& table);

// One-point value via the global holomorphic derivative of log Z(C|D), with
// the relative partition function evaluated as a functional of conformal
// flows of (boundary of C, boundary of D) under common random numbers.
ComplexEstimate one_point_via_relative_Z(Complex w, const SampleContext& C_ctx,
                                         const DomainSpec& D, const NormalizationTable& table,
                                         int n_theta, std::span<const double> eta_ladder);

struct CentralChargeReport {
  Estimate c_charge_fit;          // route 1: charge of log Z^{-1} at the standard ellipse
  Estimate c_elongated;           // route 2: 2 Re P1(0) on the elongated domain
  double kappa_implied = 0.0;     // from c=(6-k)(3k-8)/(2k) on (8/3,4]
  bool kappa_valid = false;
  double routes_pull = 0.0;       // |c1-c2|/sqrt(err1^2+err2^2)
  ChargeFit fit;                  // route-1 fit diagnostics
  Complex gamma4{0, 0}, gamma5{0, 0};
  StressInsertion route2_detail;
};

struct CentralChargeSetup {
  // route 1 geometry: standard ellipse of scale ellipse_scale, relative disk
  // radius, proxy radius; moments measured with flows z^3 and z^4
  double ellipse_scale = 1.0;
  double relative_disk_radius = 1.2;
  std::vector<double> eta_ladder{8e-3, 4e-3};
  double corridor_eps = 0.33;  // fattening used inside the flow functional
  // route 2 geometry
  double elongation = 1.3;  // btilde
  StressSetup stress;
  SampleContext base;  // lattice/sampler/sample-count template
};

// Both central-charge routes. When `injected` is non-null it replaces the
// route-1 Monte Carlo functional (synthetic closed-form round trips).
CentralChargeReport central_charge(const NormalizationTable& table,
                                   const CentralChargeSetup& setup,
                                   const BoundaryFunctional* injected = nullptr);

double kappa_from_c(double c, bool* valid);

struct TransformationResidual {
  ComplexEstimate residual;  // expected 0
  ComplexEstimate lhs_transformed;
  ComplexEstimate p1_base;
  Estimate px;
  Complex schwarzian_term{0, 0};
};

// (dg(w))^2 P1(gX; g(w))_{g(C)} + (c/12){g,w} P(X)_C - P1(X;w)_C.
TransformationResidual transformation_residual(const AnalyticMap& g, const EventSpec& X,
                                               Complex w, const SampleContext& C_ctx,
                                               const NormalizationTable& table,
                                               const StressSetup& setup, double c_value);

struct PointSplitResult {
  struct Row {
    double separation = 0.0;
    Estimate raw;         // k * mean pair count
    double subtractedexp = 0.0;  // raw.mean - (c_sub/2) log separation
  };
  std::vector<Row> rows;
  Estimate log_slope;   // slope of raw vs log(1/separation)
  Estimate plateau;     // subtracted value at the smallest separation
};

PointSplitResult point_split_object(Complex w, std::span<const double> separations, double k,
                                    double c_sub, const SampleContext& C_ctx);

}  // namespace cle
