#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cle/domain.hpp"
#include "cle/lattice.hpp"
#include "oracle_helpers.hpp"

using namespace cle;

TEST_CASE("boundary polylines: disk, ellipse, mobius image") {
  const DomainSpec d = DomainSpec::unit_disk();
  const BoundaryCurve bc = d.boundary_polyline(16);
  CHECK(std::abs(bc.pts[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(bc.pts[4] - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(bc.pts[8] - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(bc.pts[12] - Complex(0, -1)) < 1e-15);
  CHECK(signed_area(bc) > 0.0);
  CHECK_THROWS_AS(d.boundary_polyline(8), Error);

  const EllipseSpec e(Complex{0, 0}, 1.0, 0.0, 2.0);
  const DomainSpec de = DomainSpec::ellipse_interior(e);
  for (const Complex& p : de.boundary_polyline(64).pts) CHECK(std::abs(e.implicit(p)) < 1e-12);
  CHECK(signed_area(de.boundary_polyline(64)) > 0.0);

  const MobiusMap m(Complex{1.1, 0.0}, Complex{0.2, 0.1}, Complex{0.05, 0.0}, Complex{1.0, 0.0});
  const DomainSpec dm = DomainSpec::mobius_image(d, m);
  const BoundaryCurve img = dm.boundary_polyline(64);
  const BoundaryCurve src = d.boundary_polyline(64);
  // pointwise image up to orientation fixing
  bool found = true;
  for (const Complex& p : src.pts) {
    const Complex q = m.apply(CPoint(p)).finite();
    found = found && (distance_to_curve(img, q) < 1e-9);
  }
  CHECK(found);
  CHECK(signed_area(img) > 0.0);
}

TEST_CASE("containment conventions") {
  const DomainSpec d = DomainSpec::unit_disk();
  CHECK(d.contains(CPoint(0.0, 0.0)));
  CHECK(!d.contains(CPoint(1.0, 0.0)));  // domains are open
  CHECK(!d.contains(CPoint::infinity()));

  const DomainSpec ext = DomainSpec::exterior(d);
  CHECK(ext.contains(CPoint::infinity()));
  CHECK(ext.contains(CPoint(2.0, 0.0)));
  CHECK(!ext.contains(CPoint(1.0, 0.0)));
  CHECK(!ext.contains(CPoint(0.5, 0.0)));

  const DomainSpec ann = DomainSpec::annulus_difference(DomainSpec::disk({0, 0}, 2.0), d);
  CHECK(ann.contains(CPoint(1.5, 0.0)));
  CHECK(!ann.contains(CPoint(0.5, 0.0)));
  CHECK(!ann.contains(CPoint(1.0, 0.0)));
  CHECK(!ann.simply_connected());
  CHECK_THROWS_AS(ann.boundary_polyline(64), Error);
  CHECK(ann.boundary_components(64).size() == 2);
}

TEST_CASE("partner construction") {
  // unit disk partner is the concentric shrink
  const DomainSpec b = DomainSpec::unit_disk().partner(0.1);
  CHECK(b.kind() == DomainKind::disk);
  CHECK(b.disk_radius() == doctest::Approx(0.9).epsilon(1e-14));

  const DomainSpec bd = DomainSpec::disk({0.3, -0.4}, 2.0).partner(0.25);
  CHECK(std::abs(bd.disk_center() - Complex(0.3, -0.4)) < 1e-15);
  CHECK(bd.disk_radius() == doctest::Approx(1.5).epsilon(1e-14));

  // Hausdorff distance to the parent boundary is exactly r*eps for disks
  for (double eps : {0.05, 0.1, 0.2}) {
    const DomainSpec A = DomainSpec::disk({0, 0}, 1.7);
    const double hd = hausdorff_distance(A.boundary_polyline(512).pts.empty()
                                             ? BoundaryCurve{}
                                             : A.boundary_polyline(512),
                                         A.partner(eps).boundary_polyline(512));
    CHECK(hd == doctest::Approx(1.7 * eps).epsilon(1e-3));
  }

  // global-map equivariance: partner of G(A) equals G(partner of A)
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int it = 0; it < 10; ++it) {
    const MobiusMap G = MobiusMap::disk_automorphism(Complex{1.0, 0.0}, Complex{u(rng), u(rng)});
    const DomainSpec A = DomainSpec::disk({0.1, 0.05}, 0.5);
    const DomainSpec lhs = DomainSpec::mobius_image(A, G).partner(0.1);
    const DomainSpec rhs = DomainSpec::mobius_image(A.partner(0.1), G);
    CHECK(hausdorff_distance(lhs.boundary_polyline(256), rhs.boundary_polyline(256)) < 1e-10);
  }

  // ellipse partner stays in the family and strictly inside
  const EllipseSpec e(Complex{0.2, 0.1}, 0.8, 0.6, 2.0);
  const DomainSpec be = DomainSpec::ellipse_interior(e).partner(0.15);
  CHECK(be.kind() == DomainKind::ellipse_interior);
  CHECK(be.ellipse().b == doctest::Approx(1.7).epsilon(1e-14));
  for (const Complex& p : be.boundary_polyline(128).pts)
    CHECK(DomainSpec::ellipse_interior(e).contains(CPoint(p)));

  // exterior partner grows outward
  const DomainSpec xb = DomainSpec::exterior(DomainSpec::disk({0, 0}, 1.0)).partner(0.2);
  CHECK(xb.kind() == DomainKind::exterior);
  CHECK(xb.base().disk_radius() == doctest::Approx(1.25).epsilon(1e-14));

  CHECK_THROWS_AS(DomainSpec::annulus_difference(DomainSpec::disk({0, 0}, 2.0),
                                                 DomainSpec::unit_disk())
                      .partner(0.1),
                  Error);
}

TEST_CASE("canonical disk maps") {
  // unit disk: the identity section
  const AnalyticMap gd = DomainSpec::unit_disk().canonical_disk_map();
  CHECK(gd.as_mobius() != nullptr);
  CHECK(gd.as_mobius()->is_identity());

  // affine section for round disks
  const AnalyticMap ga = DomainSpec::disk({0.5, -1.0}, 2.0).canonical_disk_map();
  CHECK(std::abs(ga.value(Complex{0, 0}) - Complex(0.5, -1.0)) < 1e-14);
  CHECK(std::abs(ga.value(Complex{1, 0}) - Complex(2.5, -1.0)) < 1e-14);

  // ellipse: boundary correspondence of the Joukowski section
  const EllipseSpec e(Complex{-0.1, 0.3}, 0.9, 1.2, 2.0);
  const AnalyticMap ge = DomainSpec::ellipse_interior(e).canonical_disk_map();
  double worst = 0.0;
  for (int j = 0; j < 1024; ++j) {
    const Complex v = std::polar(1.0, 2.0 * kPi * j / 1024);
    worst = std::max(worst, std::abs(e.implicit(ge.value(v))));
  }
  CHECK(worst < 1e-10);

  // exterior of a disk: 0 -> infinity, boundary onto boundary
  const AnalyticMap gx = DomainSpec::exterior(DomainSpec::disk({0, 0}, 1.5)).canonical_disk_map();
  CHECK(gx.apply(CPoint(0.0, 0.0)).is_inf());
  CHECK(std::abs(std::abs(gx.value(Complex{0.5, 0.0})) - 3.0) < 1e-12);

  CHECK_THROWS_AS(DomainSpec::annulus_difference(DomainSpec::disk({0, 0}, 2.0),
                                                 DomainSpec::unit_disk())
                      .canonical_disk_map(),
                  Error);
}

TEST_CASE("analytic image domains") {
  const HoloFun h = HoloFun::monomial(2);
  const AnalyticMap f = AnalyticMap::perturbation(h, 0.15);
  const DomainSpec d = DomainSpec::analytic_image(DomainSpec::unit_disk(), f);
  CHECK(d.contains(CPoint(0.0, 0.0)));
  CHECK(!d.contains(CPoint(2.0, 0.0)));
  // the image of a boundary point is on the image boundary
  const Complex q = f.value(Complex{1.0, 0.0});
  CHECK(!d.contains(CPoint(q)));
  // partner commutes with the constructing map
  const DomainSpec p = d.partner(0.1);
  const Complex inner_pt = f.value(Complex{0.9, 0.0});
  CHECK(point_near_curve(p.boundary_polyline(512), inner_pt, 1e-6));
}

TEST_CASE("rasterize: counts, symmetry, set algebra") {
  LatticeSpec lat;
  lat.spacing = 1.0 / 12.0;

  const DomainSpec d = DomainSpec::unit_disk();
  const LatticeMask m = rasterize(d, lat);
  // site density: area per site is a^2 sqrt(3)/2
  const double cell = lat.spacing * lat.spacing * std::sqrt(3.0) / 2.0;
  const double expect = kPi / cell;
  CHECK(std::abs(double(m.site_count()) - expect) / expect < 0.05);

  // 6-fold rotation symmetry: the rotated mask has the same sites
  const LatticeMask r = m.rotated(1);
  CHECK(r.site_count() == m.site_count());
  for (std::int32_t idx : m.order) {
    auto [n1, n2] = m.coords(std::size_t(idx));
    auto [r1, r2] = rotate60(n1, n2, 1);
    CHECK(r.in_mask(r1, r2));
  }

  // annulus mask = outer minus inner closure; the corridor needs finer
  // spacing to satisfy the in-radius precondition
  LatticeSpec fine;
  fine.spacing = 1.0 / 40.0;
  const LatticeMask mf = rasterize(d, fine);
  const DomainSpec inner = DomainSpec::disk({0, 0}, 0.5);
  const DomainSpec ann = DomainSpec::annulus_difference(d, inner);
  const LatticeMask ma = rasterize(ann, fine);
  std::size_t expected = 0;
  for (std::int32_t idx : mf.order) {
    auto [n1, n2] = mf.coords(std::size_t(idx));
    if (!inner.contains_closure(CPoint(fine.position(n1, n2)))) ++expected;
  }
  CHECK(ma.site_count() == expected);

  CHECK_THROWS_AS(rasterize(DomainSpec::disk({0, 0}, 0.5), LatticeSpec{0.1, {0, 0}}), Error);
}

TEST_CASE("polyline predicates against quadratic oracle") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_curve = [&](int n, double r0) {
    BoundaryCurve c;
    for (int j = 0; j < n; ++j) {
      const double rr = r0 * (0.6 + 0.4 * (0.5 + 0.5 * u(rng)));
      c.pts.push_back(Complex{u(rng) * 0.2, u(rng) * 0.2} + rr * std::polar(1.0, 2.0 * kPi * j / n));
    }
    return c;
  };
  for (int it = 0; it < 60; ++it) {
    const BoundaryCurve a = random_curve(24, 1.0);
    const BoundaryCurve b = random_curve(16, it % 2 ? 0.5 : 1.1);
    bool brute = false;
    for (std::size_t i = 0; i < a.size() && !brute; ++i)
      for (std::size_t j = 0; j < b.size() && !brute; ++j)
        brute = segments_intersect(a.seg_a(i), a.seg_b(i), b.seg_a(j), b.seg_b(j), 1e-12);
    CHECK(curve_intersects(a, b) == brute);
  }

  // concentric circles do not intersect; circle vs through-going box does
  const DomainSpec d1 = DomainSpec::unit_disk();
  const DomainSpec d2 = DomainSpec::disk({0, 0}, 2.0);
  CHECK(!curve_intersects(d1.boundary_polyline(128), d2.boundary_polyline(128)));
  BoundaryCurve box;
  box.pts = {Complex{-3, 0}, Complex{3, 0}, Complex{3, 3}, Complex{-3, 3}};
  CHECK(curve_intersects(d1.boundary_polyline(128), box));
}

TEST_CASE("winding number against angle-sum oracle") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  auto star = [&](int n) {
    BoundaryCurve c;
    for (int j = 0; j < n; ++j) {
      const double rr = 0.5 + 0.45 * std::abs(u(rng)) / 1.5;
      c.pts.push_back(rr * std::polar(1.0, 2.0 * kPi * j / n));
    }
    return c;
  };
  for (int it = 0; it < 40; ++it) {
    const BoundaryCurve c = star(20);
    const Complex z{u(rng), u(rng)};
    if (point_near_curve(c, z, 1e-9)) continue;
    double angle = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
      angle += std::arg((c.seg_b(i) - z) / (c.seg_a(i) - z));
    const int oracle_wn = int(std::lround(angle / (2.0 * kPi)));
    CHECK(winding_number(c, z) == oracle_wn);
  }
}
