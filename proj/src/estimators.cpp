#include "cle/estimators.hpp"

#include <algorithm>
#include <cmath>

namespace cle {

namespace {

std::shared_ptr<const CorridorEvent> make_corridor(const DomainSpec& A, double eps) {
  return std::make_shared<CorridorEvent>(A, eps);
}

std::string eps_name(const std::string& head, std::size_t i) {
  return head + "_eps" + std::to_string(i);
}

// value and error of num/den with an independent denominator estimate
LadderPoint ratio_point(double eps, const Estimate& num, const Estimate& den) {
  LadderPoint p;
  p.eps = eps;
  const double r = num.mean / den.mean;
  p.value = Complex{r, 0.0};
  p.err = std::hypot(num.std_err / den.mean, r * den.std_err / den.mean);
  return p;
}

}  // namespace

const Estimate& NormalizationTable::denom_at(double eps) const {
  for (const Row& r : rows)
    if (std::abs(r.eps - eps) <= 1e-12 * std::max(1.0, eps)) return r.denom;
  fail_validation("NormalizationTable: no denominator measured at the requested fattening");
}

NormalizationTable calibrate_normalization(const CalibrationSetup& setup) {
  require(!setup.eps_ladder.empty(), "calibrate_normalization: empty ladder");
  NormalizationTable table;
  table.b = setup.b;
  table.spacing = setup.lattice.spacing;
  table.proxy_radius = setup.proxy_radius;

  // reference denominators: corridor around the unit disk, sampled on 2D
  {
    SampleContext ref;
    ref.domain = DomainSpec::disk({0, 0}, 2.0);
    ref.lattice = setup.lattice;
    ref.sampler = setup.sampler;
    ref.n_samples = setup.n_samples;
    MeasurePlan plan;
    for (std::size_t i = 0; i < setup.eps_ladder.size(); ++i)
      plan.add(eps_name("den", i),
               corridor_obs(make_corridor(DomainSpec::unit_disk(), setup.eps_ladder[i])));
    const ObservableSet obs = run_measure(ref, plan);
    for (std::size_t i = 0; i < setup.eps_ladder.size(); ++i) {
      NormalizationTable::Row row;
      row.eps = setup.eps_ladder[i];
      row.denom = obs.estimate(i);
      require(row.denom.mean > 0.0 && row.denom.mean <= 1.0,
              "calibrate_normalization: denominator outside (0,1]");
      table.rows.push_back(row);
    }
    // the no-crossing probability must shrink with the corridor
    std::vector<NormalizationTable::Row> sorted = table.rows;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.eps < b.eps; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
      require(sorted[i].denom.mean >= sorted[i - 1].denom.mean -
                  3.0 * std::hypot(sorted[i].denom.std_err, sorted[i - 1].denom.std_err),
              "calibrate_normalization: non-monotone denominators");
  }

  // numerators: corridor around the reference ellipse on the plane proxy, a
  // few orientations for the isotropy diagnostic
  {
    SampleContext proxy;
    proxy.domain = DomainSpec::sphere_proxy(setup.proxy_radius);
    proxy.lattice = setup.lattice;
    proxy.sampler = setup.sampler;
    proxy.sampler.seed ^= 0x9E3779B97F4A7C15ull;  // independent stream family
    proxy.n_samples = setup.n_samples;

    MeasurePlan plan;
    const int nth = std::max(1, setup.n_theta_check);
    for (int t = 0; t < nth; ++t) {
      const double theta = kPi * t / nth;
      const EllipseSpec e(Complex{0, 0}, setup.ellipse_scale, theta, setup.b);
      for (std::size_t i = 0; i < setup.eps_ladder.size(); ++i)
        plan.add("num_t" + std::to_string(t) + "_eps" + std::to_string(i),
                 corridor_obs(make_corridor(DomainSpec::ellipse_interior(e), setup.eps_ladder[i])));
    }
    const ObservableSet obs = run_measure(proxy, plan);

    // orientation-averaged ladder for the calibration itself
    std::vector<LadderPoint> ladder;
    for (std::size_t i = 0; i < setup.eps_ladder.size(); ++i) {
      Estimate avg;
      std::vector<Estimate> per_t;
      std::vector<double> coef;
      for (int t = 0; t < nth; ++t) {
        per_t.push_back(obs.estimate(std::size_t(t) * setup.eps_ladder.size() + i));
        coef.push_back(1.0 / nth);
      }
      avg = linear_combination(per_t, coef);
      ladder.push_back(ratio_point(setup.eps_ladder[i], avg, table.denom_at(setup.eps_ladder[i])));
    }
    table.unit_ellipse = extrapolate_ladder(ladder, FitModel::power_law);
    const double r0 = table.unit_ellipse.value.real();
    require(r0 > 0.0, "calibrate_normalization: nonpositive extrapolated ratio");
    table.n_const.mean = 1.0 / r0;
    table.n_const.std_err = table.unit_ellipse.total_err() / (r0 * r0);
    table.n_const.n_samples = setup.n_samples;
  }
  return table;
}

Estimate estimate_prob(const EventSpec& event, const SampleContext& ctx) {
  MeasurePlan plan;
  plan.add("x", event_obs(event));
  const ObservableSet obs = run_measure(ctx, plan);
  require(obs.discarded(0) < ctx.n_samples, "estimate_prob: all samples discarded");
  return obs.estimate(0);
}

namespace {

// Shared-stream corridor ladder: columns "joint_epsK" for X and corridor,
// plus "corr_epsK" for the corridor alone. The corridor columns inherit the
// event's sample validity, so every column sees the same sample set and the
// pre-limit ratio equals the conditional probability float for float.
ObservableSet corridor_ladder_measure(const EventSpec& X, const DomainSpec& A,
                                      const SampleContext& ctx, std::span<const double> ladder) {
  MeasurePlan plan;
  const bool trivial = X.kind() == EventKind::trivial;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    auto c = make_corridor(A, ladder[i]);
    plan.add(eps_name("joint", i), conj_obs(X, c));
    if (trivial) {
      plan.add(eps_name("corr", i), corridor_obs(c));
    } else {
      plan.add(eps_name("corr", i), [X, c](const LoopConfig& cfg) {
        const EventSpec::Outcome o = X.eval(cfg);
        if (!o.valid) return std::pair<double, bool>(0.0, false);
        return std::pair<double, bool>(c->eval(cfg) ? 1.0 : 0.0, true);
      });
    }
  }
  plan.add("x", event_obs(X));
  return run_measure(ctx, plan);
}

}  // namespace

ExtrapolationResult renormalized_prob(const EventSpec& X, const DomainSpec& A,
                                      const SampleContext& C_ctx,
                                      const NormalizationTable& table) {
  require(A.simply_connected(), "renormalized_prob: A must be simply connected");
  const std::vector<double> ladder = table.ladder();
  const ObservableSet obs = corridor_ladder_measure(X, A, C_ctx, ladder);

  std::vector<LadderPoint> pts;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const Estimate num = obs.estimate(2 * i);
    pts.push_back(ratio_point(ladder[i], num, table.denom_at(ladder[i])));
  }
  ExtrapolationResult out = extrapolate_ladder(pts, FitModel::power_law);
  // apply the calibrated normalization with its relative error
  const double n = table.n_const.mean;
  const double rel_n = table.n_const.std_err / n;
  out.value *= n;
  out.err = std::hypot(out.err * n, std::abs(out.value) * rel_n);
  out.model_spread *= n;
  for (LadderPoint& p : out.table) {
    p.value *= n;
    p.err *= n;
  }
  return out;
}

RestrictionCheck restriction_residual(const EventSpec& X, const DomainSpec& A,
                                      const SampleContext& C_ctx,
                                      const NormalizationTable& table) {
  const std::vector<double> ladder = table.ladder();
  const ObservableSet obs = corridor_ladder_measure(X, A, C_ctx, ladder);

  RestrictionCheck out;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    // ratio path: P(X, corridor) / P(corridor) on the shared stream; when the
    // valid-sample counts agree the common factor cancels so both paths below
    // land on identical floats
    const Estimate r = obs.jackknife_real([i](std::span<const double> s, std::span<const double> c) {
      const std::size_t num = 2 * i, den = 2 * i + 1;
      if (c[num] == c[den]) return Complex{s[num] / s[den], 0.0};
      return Complex{(s[num] / c[num]) / (s[den] / c[den]), 0.0};
    });
    out.prelimit.push_back({ladder[i], Complex{r.mean, 0.0}, r.std_err});

    // conditional path: direct aggregate count of X among corridor-satisfying
    // samples; identical floats to the ratio path when no sample is discarded
    const double cond = obs.total_sum(2 * i) / obs.total_sum(2 * i + 1);
    out.conditional.push_back({ladder[i], Complex{cond, 0.0}, r.std_err});
  }
  out.ratio_limit = extrapolate_ladder(out.prelimit, FitModel::power_law);

  // annulus reference: P(X) on C minus closure(A), its own stream
  SampleContext ann = C_ctx;
  ann.mask.reset();
  ann.domain = DomainSpec::annulus_difference(C_ctx.domain, A);
  ann.sampler.seed ^= 0xA5A5A5A5DEADBEEFull;
  out.annulus_prob = estimate_prob(X, ann);

  out.residual.mean = out.ratio_limit.value.real() - out.annulus_prob.mean;
  out.residual.std_err = std::hypot(out.ratio_limit.total_err(), out.annulus_prob.std_err);
  out.residual.n_samples = C_ctx.n_samples;
  return out;
}

ExtrapolationResult covariance_factor(const AnalyticMap& g, const DomainSpec& A,
                                      const SampleContext& C_ctx,
                                      const NormalizationTable& table) {
  const std::vector<double> ladder = table.ladder();
  const EventSpec triv = EventSpec::trivial();

  const ObservableSet base = corridor_ladder_measure(triv, A, C_ctx, ladder);

  SampleContext gctx = C_ctx;
  gctx.mask.reset();
  if (const MobiusMap* m = g.as_mobius())
    gctx.domain = DomainSpec::mobius_image(C_ctx.domain, *m);
  else
    gctx.domain = DomainSpec::analytic_image(C_ctx.domain, g);
  DomainSpec gA = g.as_mobius() ? DomainSpec::mobius_image(A, *g.as_mobius())
                                : DomainSpec::analytic_image(A, g);
  gctx.sampler.seed ^= 0xC0FFEE1234567890ull;
  const ObservableSet moved = corridor_ladder_measure(triv, gA, gctx, ladder);

  std::vector<LadderPoint> pts;
  for (std::size_t i = 0; i < ladder.size(); ++i)
    pts.push_back(ratio_point(ladder[i], moved.estimate(2 * i), base.estimate(2 * i)));
  return extrapolate_ladder(pts, FitModel::power_law);
}

StressInsertion stress_insertion(const EventSpec& X, Complex w, const SampleContext& C_ctx,
                                 const NormalizationTable& table, const StressSetup& setup) {
  require(setup.n_theta >= 8 && setup.n_theta % 4 == 0,
          "stress_insertion: n_theta >= 8 and divisible by 4");
  require(!setup.scale_ladder.empty(), "stress_insertion: empty scale ladder");
  require(C_ctx.domain.contains(CPoint(w)), "stress_insertion: w outside the region");
  const std::vector<double> ladder = table.ladder();
  const int nth = setup.n_theta;
  const int half = nth / 2;  // E(w,s,theta+pi) = E(w,s,theta): evaluate half, reuse

  MeasurePlan plan;
  for (std::size_t si = 0; si < setup.scale_ladder.size(); ++si) {
    const double scale = setup.scale_ladder[si];
    for (int j = 0; j < half; ++j) {
      const double theta = 2.0 * kPi * j / nth;
      const EllipseSpec e(w, scale, theta, table.b);
      const DomainSpec A = DomainSpec::ellipse_interior(e);
      for (std::size_t k = 0; k < ladder.size(); ++k) {
        auto c = make_corridor(A, ladder[k]);
        plan.add("s" + std::to_string(si) + "_t" + std::to_string(j) + "_e" + std::to_string(k),
                 X.kind() == EventKind::trivial ? corridor_obs(c) : conj_obs(X, c));
      }
    }
  }
  const ObservableSet obs = run_measure(C_ctx, plan);

  const double n_const = table.n_const.mean;
  const double rel_n = table.n_const.std_err / n_const;

  StressInsertion out;
  std::vector<LadderPoint> scale_pts;
  for (std::size_t si = 0; si < setup.scale_ladder.size(); ++si) {
    const double scale = setup.scale_ladder[si];
    std::vector<LadderPoint> eps_pts;
    std::vector<ComplexEstimate> per_eps;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      // joint complex jackknife of the theta sum; the pi-periodic pairing
      // doubles the half-grid weights
      const ComplexEstimate S =
          obs.jackknife([&](std::span<const double> s, std::span<const double> c) {
            Complex acc{0, 0};
            for (int j = 0; j < half; ++j) {
              const std::size_t idx =
                  (std::size_t(si) * std::size_t(half) + std::size_t(j)) * ladder.size() + k;
              const double mean = s[idx] / c[idx];
              acc += 2.0 * std::polar(1.0, -4.0 * kPi * j / nth) * mean;
            }
            return acc;
          });
      per_eps.push_back(S);
      const Estimate den = table.denom_at(ladder[k]);
      LadderPoint p;
      p.eps = ladder[k];
      p.value = S.mean / den.mean;
      p.err = std::hypot(S.err_norm() / den.mean, std::abs(p.value) * den.std_err / den.mean);
      eps_pts.push_back(p);
    }
    out.fourier_tables.push_back(eps_pts);
    const ExtrapolationResult Sren = extrapolate_ladder(eps_pts, FitModel::power_law);

    // P1 rung at this scale: -(8/(pi s^2)) * (2 pi/n) * N * sum = -(16 N)/(s^2 n) * sum
    const double fac = -16.0 * n_const / (scale * scale * double(nth));
    LadderPoint rung;
    rung.eps = scale;
    rung.value = fac * Sren.value;
    rung.err = std::abs(fac) * Sren.total_err() + std::abs(rung.value) * rel_n;
    scale_pts.push_back(rung);

    // spectrum diagnostics at the finest corridor rung
    StressInsertion::Spectrum sp;
    sp.scale = scale;
    const std::size_t fin =
        std::size_t(std::min_element(ladder.begin(), ladder.end()) - ladder.begin());
    Complex m0{0, 0}, m2{0, 0}, m4{0, 0};
    for (int j = 0; j < half; ++j) {
      const std::size_t idx =
          (std::size_t(si) * std::size_t(half) + std::size_t(j)) * ladder.size() + fin;
      const double v = obs.mean(idx);
      m0 += 2.0 * v;
      m2 += 2.0 * std::polar(1.0, -4.0 * kPi * j / nth) * v;
      m4 += 2.0 * std::polar(1.0, -8.0 * kPi * j / nth) * v;
    }
    sp.mode0 = std::abs(m0) / nth;
    sp.mode2 = std::abs(m2) / nth;
    sp.mode4 = std::abs(m4) / nth;
    out.spectra.push_back(sp);

    if (scale <= *std::min_element(setup.scale_ladder.begin(), setup.scale_ladder.end())) {
      // complex estimate with covariance at the smallest ellipse scale,
      // finest corridor rung
      const std::size_t fin = std::size_t(
          std::min_element(ladder.begin(), ladder.end()) - ladder.begin());
      ComplexEstimate ce = per_eps[fin];
      const Estimate den = table.denom_at(ladder[fin]);
      const double f = fac / den.mean;
      ce.mean *= f;
      ce.var_re *= f * f;
      ce.var_im *= f * f;
      ce.cov_reim *= f * f;
      out.at_smallest_scale = ce;
    }
  }
  // smallest scale first in the ladder fit
  const ExtrapolationResult fin = extrapolate_ladder(scale_pts, FitModel::power_law);
  out.value = fin;
  return out;
}

ExtrapolationResult relative_partition(const SampleContext& C_ctx, const DomainSpec& D,
                                       const NormalizationTable& table) {
  const std::vector<double> ladder = table.ladder();
  const EventSpec triv = EventSpec::trivial();

  SampleContext proxy = C_ctx;
  proxy.mask.reset();
  proxy.domain = DomainSpec::sphere_proxy(table.proxy_radius);
  proxy.sampler.seed ^= 0xFEEDFACE12345678ull;
  const ObservableSet num = corridor_ladder_measure(triv, D, proxy, ladder);
  const ObservableSet den = corridor_ladder_measure(triv, D, C_ctx, ladder);

  std::vector<LadderPoint> pts;
  for (std::size_t i = 0; i < ladder.size(); ++i)
    pts.push_back(ratio_point(ladder[i], num.estimate(2 * i), den.estimate(2 * i)));
  return extrapolate_ladder(pts, FitModel::power_law);
}

namespace {

// log Z(C|D) as a functional of conformal flows: both boundaries move; the
// plane proxy stays fixed. Chain seeds never depend on the perturbation
// (common random numbers).
BoundaryFunctional log_relative_partition_functional(const SampleContext& C_ctx,
                                                     const DomainSpec& D, double proxy_radius,
                                                     double corridor_eps) {
  const SampleContext base = C_ctx;
  return BoundaryFunctional::monte_carlo([base, D, proxy_radius, corridor_eps](
                                             const AnalyticMap& flow, std::uint64_t) {
    const bool ident = flow.as_mobius() && flow.as_mobius()->is_identity();
    const DomainSpec Dg = ident ? D : DomainSpec::analytic_image(D, flow);
    SampleContext proxy = base;
    proxy.mask.reset();
    proxy.domain = DomainSpec::sphere_proxy(proxy_radius);
    proxy.sampler.seed ^= 0xFEEDFACE12345678ull;
    SampleContext cc = base;
    if (!ident) {
      cc.mask.reset();
      cc.domain = DomainSpec::analytic_image(base.domain, flow);
    }

    MeasurePlan plan;
    plan.add("corr", corridor_obs(make_corridor(Dg, corridor_eps)));
    const ObservableSet pn = run_measure(proxy, plan);
    const ObservableSet pd = run_measure(cc, plan);

    FunctionalSample s;
    s.value = std::log(pn.mean(0) / pd.mean(0));
    // per-bin log ratios: bins of the two (independent) streams pair by time
    // index, preserving the +eta/-eta coupling within each stream
    const std::size_t nb = std::min(pn.n_bins(), pd.n_bins());
    const double floor_p = 1e-3;  // guards empty-bin logs; rare and conservative
    s.bins.reserve(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      const double bn = std::max(pn.bin_mean(b, 0), floor_p);
      const double bd = std::max(pd.bin_mean(b, 0), floor_p);
      s.bins.push_back(std::log(bn / bd));
    }
    return s;
  });
}

}  // namespace

ComplexEstimate one_point_via_relative_Z(Complex w, const SampleContext& C_ctx,
                                         const DomainSpec& D, const NormalizationTable& table,
                                         int n_theta, std::span<const double> eta_ladder) {
  require(D.contains(CPoint(w)), "one_point_via_relative_Z: w must lie in D");
  const BoundaryFunctional F = log_relative_partition_functional(
      C_ctx, D, table.proxy_radius, table.ladder().back());
  return fourier_mode_derivative(F, w, n_theta, eta_ladder);
}

double kappa_from_c(double c, bool* valid) {
  // c = (6-k)(3k-8)/(2k) -> 3k^2 + (2c-26)k + 48 = 0, dilute branch
  const double disc = (26.0 - 2.0 * c) * (26.0 - 2.0 * c) - 576.0;
  if (disc < 0.0 || c <= 0.0 || c > 1.0) {
    if (valid) *valid = false;
    return 0.0;
  }
  const double k = ((26.0 - 2.0 * c) - std::sqrt(disc)) / 6.0;
  if (valid) *valid = (k > 8.0 / 3.0 && k <= 4.0 + 1e-9);
  return k;
}

CentralChargeReport central_charge(const NormalizationTable& table,
                                   const CentralChargeSetup& setup,
                                   const BoundaryFunctional* injected) {
  CentralChargeReport rep;

  // ---- route 1: charge of log Z at the standard ellipse exterior ----
  BoundaryFunctional F = injected
                             ? *injected
                             : log_relative_partition_functional(
                                   [&] {
                                     SampleContext c = setup.base;
                                     c.mask.reset();
                                     c.domain =
                                         DomainSpec::disk({0, 0}, setup.relative_disk_radius);
                                     return c;
                                   }(),
                                   DomainSpec::ellipse_interior(EllipseSpec(
                                       Complex{0, 0}, setup.ellipse_scale, 0.0, table.b)),
                                   table.proxy_radius, setup.corridor_eps);

  const auto grad = [&](int m, Complex coeff) {
    return directional_derivative(F, DirectionField::monomial(m, coeff), setup.eta_ladder);
  };
  const Estimate g3r = grad(3, Complex{1, 0});
  const Estimate g3i = grad(3, Complex{0, 1});
  const Estimate g4r = grad(4, Complex{1, 0});
  const Estimate g4i = grad(4, Complex{0, 1});
  rep.gamma4 = Complex{(g3r.mean), -(g3i.mean)} * 0.5;
  rep.gamma5 = Complex{(g4r.mean), -(g4i.mean)} * 0.5;
  const double g4err = 0.5 * std::hypot(g3r.std_err, g3i.std_err);
  const double g5err = 0.5 * std::hypot(g4r.std_err, g4i.std_err);

  // synthesized Laurent table of Delta_z over a decade, then the charge fit
  {
    std::vector<Complex> zs, ds;
    std::vector<double> errs;
    const double r0 = 4.0 * std::max(setup.ellipse_scale, setup.relative_disk_radius);
    for (int k = 0; k < 24; ++k) {
      const double r = r0 * std::pow(12.0, k / 23.0);
      const Complex z = r * std::polar(1.0, 2.0 * kPi * k / 24.0);
      zs.push_back(z);
      ds.push_back(rep.gamma4 * std::pow(z, -4) + rep.gamma5 * std::pow(z, -5));
      errs.push_back(g4err / std::pow(r, 4) + g5err / std::pow(r, 5));
    }
    rep.fit = charge_fit(zs, ds, errs);
    rep.c_charge_fit.mean = -rep.fit.gamma.mean;  // c = Gamma log Z^{-1} = -Gamma log Z
    rep.c_charge_fit.std_err = std::max(rep.fit.gamma.std_err, 32.0 * g4err);
    rep.c_charge_fit.n_samples = setup.base.n_samples;
  }

  // ---- route 2: 2 Re P1(0) on the elongated image of the disk ----
  if (!injected) {
    SampleContext ctx = setup.base;
    ctx.mask.reset();
    ctx.domain =
        DomainSpec::analytic_image(DomainSpec::unit_disk(), AnalyticMap::elongated_disk(setup.elongation));
    const StressInsertion si =
        stress_insertion(EventSpec::trivial(), Complex{0, 0}, ctx, table, setup.stress);
    rep.route2_detail = si;
    rep.c_elongated.mean = 2.0 * si.value.value.real();
    rep.c_elongated.std_err = 2.0 * si.value.total_err();
    rep.c_elongated.n_samples = setup.base.n_samples;
  }

  if (injected) {
    rep.routes_pull = 0.0;
    rep.kappa_implied = kappa_from_c(rep.c_charge_fit.mean, &rep.kappa_valid);
    return rep;
  }
  const double perr = std::hypot(rep.c_charge_fit.std_err, rep.c_elongated.std_err);
  rep.routes_pull = perr > 0.0 ? std::abs(rep.c_charge_fit.mean - rep.c_elongated.mean) / perr : 0.0;
  rep.kappa_implied = kappa_from_c(rep.c_elongated.mean, &rep.kappa_valid);
  return rep;
}

TransformationResidual transformation_residual(const AnalyticMap& g, const EventSpec& X,
                                               Complex w, const SampleContext& C_ctx,
                                               const NormalizationTable& table,
                                               const StressSetup& setup, double c_value) {
  TransformationResidual out;
  const Complex gw = g.value(w);
  const Complex dg = g.deriv(w);
  const Complex sch = schwarzian(g, CPoint(w));

  // base side
  const StressInsertion base = stress_insertion(X, w, C_ctx, table, setup);
  out.p1_base.mean = base.value.value;
  out.p1_base.var_re = base.value.total_err() * base.value.total_err();
  out.p1_base.var_im = out.p1_base.var_re;

  out.px = estimate_prob(X, C_ctx);

  // transformed side: gX on g(C) at g(w)
  SampleContext gctx = C_ctx;
  gctx.mask.reset();
  if (const MobiusMap* m = g.as_mobius())
    gctx.domain = DomainSpec::mobius_image(C_ctx.domain, *m);
  else
    gctx.domain = DomainSpec::analytic_image(C_ctx.domain, g);

  EventSpec gX = X;
  if (X.kind() == EventKind::surrounds_parity)
    gX = EventSpec::surrounds_parity(g.value(X.z0()), X.r(), X.even());
  else
    require(X.kind() == EventKind::trivial,
            "transformation_residual: only trivial and parity events transform here");

  StressSetup moved = setup;
  for (double& s : moved.scale_ladder) s *= std::abs(dg);
  const StressInsertion trans = stress_insertion(gX, gw, gctx, table, moved);
  out.lhs_transformed.mean = trans.value.value;
  out.lhs_transformed.var_re = trans.value.total_err() * trans.value.total_err();
  out.lhs_transformed.var_im = out.lhs_transformed.var_re;

  out.schwarzian_term = c_value / 12.0 * sch;

  const Complex resid =
      dg * dg * out.lhs_transformed.mean + out.schwarzian_term * out.px.mean - out.p1_base.mean;
  out.residual.mean = resid;
  const double lhs_err = std::abs(dg * dg) * trans.value.total_err();
  const double sch_err = std::abs(out.schwarzian_term) * out.px.std_err;
  const double err2 = lhs_err * lhs_err + sch_err * sch_err +
                      base.value.total_err() * base.value.total_err();
  out.residual.var_re = err2;
  out.residual.var_im = err2;
  out.residual.n_samples = C_ctx.n_samples;
  return out;
}

PointSplitResult point_split_object(Complex w, std::span<const double> separations, double k,
                                    double c_sub, const SampleContext& C_ctx) {
  require(!separations.empty(), "point_split_object: empty separation ladder");
  for (std::size_t i = 1; i < separations.size(); ++i)
    require(separations[i] < separations[i - 1],
            "point_split_object: separations must strictly decrease");

  const Complex dir = std::polar(1.0, 0.3);  // fixed off-axis direction
  MeasurePlan plan;
  for (std::size_t i = 0; i < separations.size(); ++i) {
    const Complex z1 = w + 0.5 * separations[i] * dir;
    const Complex z2 = w - 0.5 * separations[i] * dir;
    plan.add("n" + std::to_string(i), pair_count_obs(z1, z2));
  }
  const ObservableSet obs = run_measure(C_ctx, plan);

  PointSplitResult out;
  for (std::size_t i = 0; i < separations.size(); ++i) {
    PointSplitResult::Row row;
    row.separation = separations[i];
    Estimate e = obs.estimate(i);
    e.mean *= k;
    e.std_err *= k;
    row.raw = e;
    row.subtractedexp = e.mean - 0.5 * c_sub * std::log(separations[i]);
    out.rows.push_back(row);
  }

  // weighted linear fit of raw vs log(1/d)
  const std::size_t n = separations.size();
  if (n >= 2) {
    double s = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::log(1.0 / separations[i]);
      const double y = out.rows[i].raw.mean;
      const double wgt =
          out.rows[i].raw.std_err > 0 ? 1.0 / (out.rows[i].raw.std_err * out.rows[i].raw.std_err)
                                      : 1.0;
      s += wgt;
      sx += wgt * x;
      sxx += wgt * x * x;
      sy += wgt * y;
      sxy += wgt * x * y;
    }
    const double det = s * sxx - sx * sx;
    out.log_slope.mean = (s * sxy - sx * sy) / det;
    out.log_slope.std_err = std::sqrt(std::max(s / det, 0.0));
    out.log_slope.n_samples = C_ctx.n_samples;
  }
  out.plateau.mean = out.rows.back().subtractedexp;
  out.plateau.std_err = out.rows.back().raw.std_err;
  out.plateau.n_samples = C_ctx.n_samples;
  return out;
}

}  // namespace cle
