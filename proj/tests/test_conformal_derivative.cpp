#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cle/conformal_derivative.hpp"
#include "cle/domain.hpp"
#include "cle/fits.hpp"
#include "cle/schwarzian.hpp"
#include "oracle_helpers.hpp"

using namespace cle;

TEST_CASE("contour integrals with the 1/(2 pi i) measure") {
  const DomainSpec d = DomainSpec::unit_disk();
  const BoundaryCurve circle = d.boundary_polyline(2048);

  // residue of 1/z
  CHECK(std::abs(contour_integral(circle, [](Complex z) { return 1.0 / z; }) - 1.0) < 1e-12);

  // holomorphic integrands vanish on any closed curve
  for (int m : {0, 1, 2, 5}) {
    const BoundaryCurve wavy = transformed(circle, [](Complex z) {
      return z + 0.2 * z * z + Complex{0.1, -0.05};
    });
    CHECK(std::abs(contour_integral(wavy, [m](Complex z) { return std::pow(z, m); })) < 1e-10);
  }

  // Laurent coefficients of a rational function against partial fractions:
  // f = 3/(z-a) + 5/(z-b)^2 + entire part; int f z^k dz/(2 pi i) picks up
  // residues of z^k f
  const Complex a{0.3, 0.1}, b{-0.2, 0.4};
  auto f = [&](Complex z) {
    return 3.0 / (z - a) + 5.0 / ((z - b) * (z - b)) + z * z + Complex{0.7, 0.2};
  };
  CHECK(std::abs(contour_integral(circle, f) - 3.0) < 1e-10);                    // k=0: sum res
  const Complex k1 = contour_integral(circle, [&](Complex z) { return z * f(z); });
  CHECK(std::abs(k1 - (3.0 * a + 5.0)) < 1e-10);  // res of z f: 3a + 5
}

TEST_CASE("directional derivative of the signed area under dilation") {
  // F = signed area; h = z flow: d/deta area((1+eta) K) = 2 area(K) at eta=0
  Sigma base;
  base.curves.push_back(DomainSpec::disk({0.2, -0.1}, 1.3).boundary_polyline(512));
  const double area0 = signed_area(base.curves[0]);
  const BoundaryFunctional F = BoundaryFunctional::closed_form(
      base, [](const Sigma& s) { return signed_area(s.curves[0]); });
  const auto lad = default_eta_ladder(false);
  const Estimate d = directional_derivative(F, DirectionField::monomial(1), lad);
  CHECK(std::abs(d.mean - 2.0 * area0) < 1e-8);

  // flow-invariant functional: winding number of a fixed deep interior point
  const BoundaryFunctional W = BoundaryFunctional::closed_form(base, [](const Sigma& s) {
    return double(winding_number(s.curves[0], Complex{0.2, -0.1}));
  });
  const Estimate dw = directional_derivative(W, DirectionField::monomial(2), lad);
  CHECK(std::abs(dw.mean) < 1e-10);
}

TEST_CASE("linearity of the conformal derivative") {
  Sigma base;
  base.points = {Complex{0.3, 0.2}, Complex{-0.4, 0.5}};
  auto f = [](const Sigma& s) {
    return std::log(std::abs(s.points[0] - s.points[1])) +
           0.3 * std::norm(s.points[0] + s.points[1]);
  };
  const BoundaryFunctional F = BoundaryFunctional::closed_form(base, f);
  const auto lad = default_eta_ladder(false);
  const DirectionField h1 = DirectionField::monomial(2);
  const DirectionField h2 = DirectionField::cauchy_kernel(Complex{2.0, 1.0}, 0.7);
  const double d1 = directional_derivative(F, h1, lad).mean;
  const double d2 = directional_derivative(F, h2, lad).mean;
  const double d12 = directional_derivative(F, DirectionField::sum(h1, h2), lad).mean;
  CHECK(std::abs(d12 - d1 - d2) < 1e-7);
}

TEST_CASE("chain rule through the logarithm") {
  Sigma base;
  base.points = {Complex{0.3, 0.2}, Complex{-0.4, 0.5}};
  auto f = [](const Sigma& s) { return 2.0 + std::abs(s.points[0] - s.points[1]); };
  const BoundaryFunctional F = BoundaryFunctional::closed_form(base, f);
  const BoundaryFunctional logF = BoundaryFunctional::closed_form(
      base, [f](const Sigma& s) { return std::log(f(s)); });
  const auto lad = default_eta_ladder(false);
  const DirectionField h = DirectionField::monomial(2, Complex{0.8, 0.1});
  const double df = directional_derivative(F, h, lad).mean;
  const double dlog = directional_derivative(logF, h, lad).mean;
  CHECK(std::abs(dlog - df / f(base)) < 1e-8);
}

TEST_CASE("plane Ward oracle: fourier mode derivative matches the analytic kernel") {
  // dimension-0 two-point functional F = mu log|z1 - z2|
  const double mu = 0.8;
  Sigma base;
  base.points = {Complex{0.4, 0.1}, Complex{-0.3, -0.2}};
  const BoundaryFunctional F = BoundaryFunctional::closed_form(base, [mu](const Sigma& s) {
    return mu * std::log(std::abs(s.points[0] - s.points[1]));
  });
  // d/dz_j of mu log|z1-z2| = mu/2 * 1/(z_j - z_other)
  auto expected = [&](Complex w) {
    const Complex z1 = base.points[0], z2 = base.points[1];
    return mu / 2.0 * (1.0 / ((w - z1) * (z1 - z2)) + 1.0 / ((w - z2) * (z2 - z1)));
  };
  const auto lad = default_eta_ladder(false);
  for (Complex w : {Complex{1.5, 0.3}, Complex{-0.9, 1.2}, Complex{0.1, -1.4}}) {
    const ComplexEstimate d = fourier_mode_derivative(F, w, 16, lad);
    CHECK(std::abs(d.mean - expected(w)) < 1e-6);
  }
}

TEST_CASE("half-plane Ward oracle: image terms close the contour identity") {
  // F = mu log Im z1 on the upper half-plane; its holomorphic kernel is
  // mu/((z-z1)(z-conj(z1))), holomorphic across the real axis
  const double mu = 1.3;
  const Complex z1{0.4, 0.8};
  Sigma base;
  base.points = {z1};
  const BoundaryFunctional F = BoundaryFunctional::closed_form(base, [mu](const Sigma& s) {
    return mu * std::log(s.points[0].imag());
  });

  // half-plane-preserving direction: h real on the real axis
  const Complex w{0.5, 3.0};
  const DirectionField h = DirectionField::sum(
      DirectionField::cauchy_kernel(w, 0.0), DirectionField::cauchy_kernel(std::conj(w), 0.0));

  const auto lad = default_eta_ladder(false);
  const double lhs = directional_derivative(F, h, lad).mean;

  // single holomorphic contour around z1 AND its reflection, inside |z| < 2
  const Complex rhs = circle_integral(Complex{0, 0}, 2.0, 2048, [&](Complex z) {
    const Complex delta = mu / ((z - z1) * (z - std::conj(z1)));
    return (h.fun.f(z)) * delta;
  });
  CHECK(std::abs(rhs.imag()) < 1e-9);
  CHECK(std::abs(lhs - rhs.real()) < 1e-6);

  // dropping the image pole breaks the identity (the boundary term matters)
  const Complex wrong = circle_integral(z1, 0.3, 2048, [&](Complex z) {
    const Complex delta = mu / ((z - z1) * (z - std::conj(z1)));
    return (h.fun.f(z)) * delta;
  });
  CHECK(std::abs(lhs - wrong.real()) > 1e-3);
}

TEST_CASE("global-map covariance of the fourier mode derivative") {
  // fully Moebius-invariant four-point functional: F = log |cross ratio|
  Sigma base;
  base.points = {Complex{0.5, 0.2}, Complex{-0.4, 0.3}, Complex{0.1, -0.6}, Complex{-0.2, -0.1}};
  auto cross_ratio = [](const Sigma& s) {
    const Complex z1 = s.points[0], z2 = s.points[1], z3 = s.points[2], z4 = s.points[3];
    return (z1 - z3) * (z2 - z4) / ((z1 - z4) * (z2 - z3));
  };
  auto f = [cross_ratio](const Sigma& s) { return std::log(std::abs(cross_ratio(s))); };

  const MobiusMap G(Complex{1.2, 0.1}, Complex{0.3, -0.2}, Complex{0.05, 0.02}, Complex{1.0, 0.0});
  Sigma moved;
  for (const Complex& p : base.points) moved.points.push_back(G.apply(CPoint(p)).finite());

  const BoundaryFunctional F = BoundaryFunctional::closed_form(base, f);
  const BoundaryFunctional FG = BoundaryFunctional::closed_form(moved, f);

  const auto lad = default_eta_ladder(false);
  const Complex z{1.4, 0.9};
  const ComplexEstimate lhs = fourier_mode_derivative(F, z, 16, lad);  // of F o G at z
  const Complex gz = G.apply(CPoint(z)).finite();
  const ComplexEstimate rhs = fourier_mode_derivative(FG, gz, 16, lad);
  const Complex dg = G.deriv1(z);
  CHECK(std::abs(lhs.mean - dg * dg * rhs.mean) < 1e-6);
}

TEST_CASE("charge fit: synthetic round trips") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  // noiseless: exact recovery
  {
    const double gamma = -0.5;
    std::vector<Complex> zs, ds;
    for (int k = 0; k < 24; ++k) {
      const Complex z = (3.0 + 40.0 * k / 23.0) * std::polar(1.0, 2.0 * kPi * k / 24.0);
      zs.push_back(z);
      ds.push_back(gamma / 32.0 * std::pow(z, -4));
    }
    const ChargeFit fit = charge_fit(zs, ds, {});
    CHECK(std::abs(fit.gamma.mean - gamma) < 1e-12);
    CHECK(!fit.partition_violation);
  }

  // 1% multiplicative noise and a z^-5 contamination: within 3 fit sigma
  {
    const double gamma = 0.5;
    std::vector<Complex> zs, ds;
    std::vector<double> errs;
    for (int k = 0; k < 40; ++k) {
      const Complex z = (3.0 + 40.0 * k / 39.0) * std::polar(1.0, 0.37 * k);
      const Complex clean = gamma / 32.0 * std::pow(z, -4) + 0.3 * std::pow(z, -5);
      const double noise = 0.01 * std::abs(clean);
      zs.push_back(z);
      ds.push_back(clean + noise * Complex{u(rng), u(rng)});
      errs.push_back(noise);
    }
    const ChargeFit fit = charge_fit(zs, ds, errs);
    CHECK(std::abs(fit.gamma.mean - gamma) < 3.0 * fit.gamma.std_err);
  }

  // dominant z^-3 tail flags a partition violation
  {
    std::vector<Complex> zs, ds;
    for (int k = 0; k < 24; ++k) {
      const Complex z = (3.0 + 40.0 * k / 23.0) * std::polar(1.0, 0.7 * k);
      zs.push_back(z);
      ds.push_back(0.2 * std::pow(z, -3) + 0.01 * std::pow(z, -4));
    }
    CHECK(charge_fit(zs, ds, {}).partition_violation);
  }

  // window narrower than a decade is rejected
  {
    std::vector<Complex> zs(8), ds(8);
    for (int k = 0; k < 8; ++k) zs[k] = Complex(3.0 + k * 0.5, 0.0), ds[k] = std::pow(zs[k], -4);
    CHECK_THROWS_AS(charge_fit(zs, ds, {}), Error);
  }
}

TEST_CASE("schwarzian-tail oracle reproduces the injected charge") {
  // Delta_z of the log relative partition function for the standard ellipse
  // exterior has the closed form (c/12){s,z} with s the disk uniformizer;
  // its charge equals -c.
  const double c = 0.5;
  const AnalyticMap g = AnalyticMap::custom(
      [](Complex v) { return v - 1.0 / (16.0 * v); },
      [](Complex v) { return 1.0 + 1.0 / (16.0 * v * v); },
      [](Complex v) { return -1.0 / (8.0 * v * v * v); },
      [](Complex v) { return 3.0 / (8.0 * v * v * v * v); });
  auto delta_closed = [&](Complex z) {
    // w = g^{-1}(z) on the branch with w ~ z at infinity
    const Complex w = 0.5 * (z + z * std::sqrt(1.0 + 0.25 / (z * z)));
    const Complex sch = schwarzian(g, CPoint(w));
    const Complex dg = g.deriv(w);
    return c / 12.0 * (-sch / (dg * dg));
  };
  // log-spaced window deep enough that the z^-6 truncation bias stays below
  // the declared synthetic noise
  std::vector<Complex> zs, ds;
  std::vector<double> errs;
  for (int k = 0; k < 30; ++k) {
    const double r = 6.0 * std::pow(15.0, k / 29.0);
    const Complex z = r * std::polar(1.0, 2.0 * kPi * k / 30.0);
    zs.push_back(z);
    ds.push_back(delta_closed(z));
    errs.push_back(1e-3 * std::abs(ds.back()));
  }
  const ChargeFit fit = charge_fit(zs, ds, errs);
  CHECK(std::abs(fit.gamma.mean - (-c)) < 1e-3);
  CHECK(!fit.partition_violation);
  // large-w tail: -(c/32) w^-4
  const Complex far{40.0, 0.0};
  CHECK(std::abs(delta_closed(far) - (-c / 32.0) * std::pow(far, -4)) <
        1e-2 * std::abs(std::pow(far, -4)));
}

TEST_CASE("ladder extrapolation models") {
  // synthetic power law value = 2 + 3 eps^1.3
  std::vector<LadderPoint> table;
  for (double eps : {0.4, 0.2, 0.1, 0.05})
    table.push_back({eps, Complex{2.0 + 3.0 * std::pow(eps, 1.3), 0.0}, 1e-4});
  const ExtrapolationResult r = extrapolate_ladder(table, FitModel::power_law);
  CHECK(std::abs(r.value.real() - 2.0) < 2e-3);
  CHECK(std::abs(r.exponent - 1.3) < 0.15);

  const ExtrapolationResult lin = extrapolate_ladder(table, FitModel::linear);
  CHECK(std::abs(lin.value.real() - 2.0) < 0.1);
}
