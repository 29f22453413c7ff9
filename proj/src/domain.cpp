#include "cle/domain.hpp"

#include <cmath>
#include <mutex>

namespace cle {

struct DomainSpec::Rep {
  DomainKind kind{};
  Complex center{0, 0};
  double radius = 0.0;  // disk / sphere_proxy
  EllipseSpec ell;
  std::shared_ptr<const Rep> base, inner;
  MobiusMap mob;
  AnalyticMap ana;

  // cached dense boundary for analytic images (winding-number containment)
  mutable std::once_flag cache_once;
  mutable BoundaryCurve cache_boundary;
};

namespace {

using Rep = DomainSpec::Rep;

DomainSpec wrap(std::shared_ptr<const Rep> r);

const Rep& deref(const std::shared_ptr<const Rep>& p) {
  require(bool(p), "DomainSpec: missing component");
  return *p;
}

bool rep_simply_connected(const Rep& r) {
  switch (r.kind) {
    case DomainKind::annulus_difference: return false;
    case DomainKind::mobius_image:
    case DomainKind::analytic_image: return rep_simply_connected(deref(r.base));
    case DomainKind::exterior: return rep_simply_connected(deref(r.base));
    default: return true;
  }
}

bool rep_contains_infinity(const Rep& r) {
  switch (r.kind) {
    case DomainKind::disk:
    case DomainKind::ellipse_interior:
    case DomainKind::sphere_proxy:
    case DomainKind::analytic_image: return false;
    case DomainKind::exterior: return true;
    case DomainKind::mobius_image: {
      // infinity is in M(base) iff M^{-1}(infinity) is in base
      const CPoint pre = r.mob.inverse().apply(CPoint::infinity());
      return wrap(r.base).contains(pre);
    }
    case DomainKind::annulus_difference: return rep_contains_infinity(deref(r.base));
  }
  return false;
}

}  // namespace

DomainSpec DomainSpec::disk(Complex center, double radius) {
  require(radius > 0.0, "DomainSpec::disk: radius must be positive");
  auto r = std::make_shared<Rep>();
  r->kind = DomainKind::disk;
  r->center = center;
  r->radius = radius;
  return DomainSpec(std::move(r));
}

DomainSpec DomainSpec::ellipse_interior(const EllipseSpec& e) {
  auto r = std::make_shared<Rep>();
  r->kind = DomainKind::ellipse_interior;
  r->ell = e;
  return DomainSpec(std::move(r));
}

DomainSpec DomainSpec::mobius_image(const DomainSpec& base, const MobiusMap& m) {
  auto r = std::make_shared<Rep>();
  r->kind = DomainKind::mobius_image;
  r->base = base.rep_;
  r->mob = m;
  return DomainSpec(std::move(r));
}

DomainSpec DomainSpec::analytic_image(const DomainSpec& base, const AnalyticMap& f) {
  require(base.simply_connected(), "analytic_image: base must be simply connected");
  auto r = std::make_shared<Rep>();
  r->kind = DomainKind::analytic_image;
  r->base = base.rep_;
  r->ana = f;
  return DomainSpec(std::move(r));
}

DomainSpec DomainSpec::exterior(const DomainSpec& base) {
  require(!base.contains_infinity(), "exterior: base must be bounded");
  require(base.simply_connected(), "exterior: base must be simply connected");
  auto r = std::make_shared<Rep>();
  r->kind = DomainKind::exterior;
  r->base = base.rep_;
  return DomainSpec(std::move(r));
}

DomainSpec DomainSpec::annulus_difference(const DomainSpec& outer, const DomainSpec& inner) {
  auto r = std::make_shared<Rep>();
  r->kind = DomainKind::annulus_difference;
  r->base = outer.rep_;
  r->inner = inner.rep_;
  return DomainSpec(std::move(r));
}

DomainSpec DomainSpec::sphere_proxy(double radius) {
  require(radius > 0.0, "sphere_proxy: radius must be positive");
  auto r = std::make_shared<Rep>();
  r->kind = DomainKind::sphere_proxy;
  r->radius = radius;
  return DomainSpec(std::move(r));
}

namespace {
DomainSpec wrap(std::shared_ptr<const Rep> r) { return DomainSpec(std::move(r)); }
}  // namespace

DomainKind DomainSpec::kind() const { return rep_->kind; }
bool DomainSpec::simply_connected() const { return rep_simply_connected(*rep_); }
bool DomainSpec::contains_infinity() const { return rep_contains_infinity(*rep_); }

Complex DomainSpec::disk_center() const {
  require(rep_->kind == DomainKind::disk || rep_->kind == DomainKind::sphere_proxy,
          "DomainSpec: not a disk variant");
  return rep_->center;
}
double DomainSpec::disk_radius() const {
  require(rep_->kind == DomainKind::disk || rep_->kind == DomainKind::sphere_proxy,
          "DomainSpec: not a disk variant");
  return rep_->radius;
}
const EllipseSpec& DomainSpec::ellipse() const {
  require(rep_->kind == DomainKind::ellipse_interior, "DomainSpec: not an ellipse variant");
  return rep_->ell;
}
DomainSpec DomainSpec::base() const { return wrap(rep_->base); }
DomainSpec DomainSpec::inner() const { return wrap(rep_->inner); }
const MobiusMap& DomainSpec::mobius() const { return rep_->mob; }
const AnalyticMap& DomainSpec::analytic() const { return rep_->ana; }
double DomainSpec::proxy_radius() const {
  require(rep_->kind == DomainKind::sphere_proxy, "DomainSpec: not a sphere proxy");
  return rep_->radius;
}

bool DomainSpec::contains(const CPoint& z, double tol) const {
  switch (rep_->kind) {
    case DomainKind::disk:
    case DomainKind::sphere_proxy:
      if (z.is_inf()) return false;
      return std::abs(z.z - rep_->center) < rep_->radius - tol;
    case DomainKind::ellipse_interior: {
      if (z.is_inf()) return false;
      // implicit form with a boundary margin scaled to the geometry
      const double margin = tol / std::max(rep_->ell.semi_axis_re(), 1e-300);
      return rep_->ell.implicit(z.z) < -2.0 * margin;
    }
    case DomainKind::mobius_image: return base().contains(rep_->mob.inverse().apply(z), tol);
    case DomainKind::analytic_image: {
      if (z.is_inf()) return false;
      std::call_once(rep_->cache_once, [&] {
        cle::BoundaryCurve bc = base().boundary_polyline(1024);
        rep_->cache_boundary = transformed(bc, [&](Complex p) { return rep_->ana.value(p); });
      });
      const BoundaryCurve& bc = rep_->cache_boundary;
      if (point_near_curve(bc, z.z, tol)) return false;
      return winding_number(bc, z.z) != 0;
    }
    case DomainKind::exterior: {
      if (z.is_inf()) return true;
      return !base().contains_closure(z, tol);
    }
    case DomainKind::annulus_difference:
      return base().contains(z, tol) && !inner().contains_closure(z, tol);
  }
  return false;
}

bool DomainSpec::contains_closure(const CPoint& z, double tol) const {
  switch (rep_->kind) {
    case DomainKind::disk:
    case DomainKind::sphere_proxy:
      if (z.is_inf()) return false;
      return std::abs(z.z - rep_->center) <= rep_->radius + tol;
    case DomainKind::ellipse_interior: {
      if (z.is_inf()) return false;
      const double margin = tol / std::max(rep_->ell.semi_axis_re(), 1e-300);
      return rep_->ell.implicit(z.z) <= 2.0 * margin;
    }
    case DomainKind::mobius_image:
      return base().contains_closure(rep_->mob.inverse().apply(z), tol);
    case DomainKind::analytic_image: {
      if (z.is_inf()) return false;
      std::call_once(rep_->cache_once, [&] {
        cle::BoundaryCurve bc = base().boundary_polyline(1024);
        rep_->cache_boundary = transformed(bc, [&](Complex p) { return rep_->ana.value(p); });
      });
      const BoundaryCurve& bc = rep_->cache_boundary;
      if (point_near_curve(bc, z.z, tol)) return true;
      return winding_number(bc, z.z) != 0;
    }
    case DomainKind::exterior: {
      if (z.is_inf()) return true;
      return !base().contains(z, tol);
    }
    case DomainKind::annulus_difference:
      return base().contains_closure(z, tol) && !inner().contains(z, tol);
  }
  return false;
}

BoundaryCurve DomainSpec::boundary_polyline(int n) const {
  require(n >= 16, "boundary_polyline: need at least 16 points");
  BoundaryCurve out;
  out.pts.reserve(std::size_t(n));
  switch (rep_->kind) {
    case DomainKind::disk:
    case DomainKind::sphere_proxy:
      for (int j = 0; j < n; ++j)
        out.pts.push_back(rep_->center + rep_->radius * std::polar(1.0, 2.0 * kPi * j / n));
      return out;
    case DomainKind::ellipse_interior:
      for (int j = 0; j < n; ++j) out.pts.push_back(rep_->ell.boundary(2.0 * kPi * j / n));
      return out;
    case DomainKind::mobius_image: {
      BoundaryCurve bc = base().boundary_polyline(n);
      for (Complex& p : bc.pts) {
        const CPoint im = rep_->mob.apply(CPoint(p));
        require(!im.is_inf(), "boundary_polyline: boundary passes through infinity");
        p = im.z;
      }
      // counter-clockwise around the interior: flip when the image interior
      // is the unbounded side
      if (contains_infinity() == (signed_area(bc) < 0.0)) return bc;
      return reversed(bc);
    }
    case DomainKind::analytic_image: {
      BoundaryCurve bc = base().boundary_polyline(n);
      for (Complex& p : bc.pts) p = rep_->ana.value(p);
      if (signed_area(bc) < 0.0) return reversed(bc);
      return bc;
    }
    case DomainKind::exterior: {
      BoundaryCurve bc = base().boundary_polyline(n);
      return reversed(bc);  // ccw around the unbounded interior
    }
    case DomainKind::annulus_difference:
      fail_validation("boundary_polyline: annulus has two components");
  }
  fail_validation("boundary_polyline: unsupported variant");
}

std::vector<BoundaryCurve> DomainSpec::boundary_components(int n) const {
  if (rep_->kind == DomainKind::annulus_difference)
    return {base().boundary_polyline(n), reversed(inner().boundary_polyline(n))};
  return {boundary_polyline(n)};
}

DomainSpec DomainSpec::partner(double eps_fat) const {
  require(eps_fat > 0.0 && eps_fat < 1.0, "partner: eps_fat outside (0,1)");
  switch (rep_->kind) {
    case DomainKind::disk:
      return disk(rep_->center, rep_->radius * (1.0 - eps_fat));
    case DomainKind::sphere_proxy:
      return disk(rep_->center, rep_->radius * (1.0 - eps_fat));
    case DomainKind::ellipse_interior: {
      const double b2 = rep_->ell.b * (1.0 - eps_fat);
      require(b2 > 1.0, "partner: ellipse corridor too fat for its eccentricity");
      return ellipse_interior(EllipseSpec(rep_->ell.w, rep_->ell.eps, rep_->ell.theta, b2));
    }
    case DomainKind::mobius_image: return mobius_image(base().partner(eps_fat), rep_->mob);
    case DomainKind::analytic_image: return analytic_image(base().partner(eps_fat), rep_->ana);
    case DomainKind::exterior: {
      const DomainSpec b = base();
      if (b.kind() == DomainKind::disk)
        return exterior(disk(b.disk_center(), b.disk_radius() / (1.0 - eps_fat)));
      if (b.kind() == DomainKind::ellipse_interior) {
        const EllipseSpec& e = b.ellipse();
        return exterior(ellipse_interior(EllipseSpec(e.w, e.eps, e.theta, e.b / (1.0 - eps_fat))));
      }
      fail(ErrorCode::not_implemented, "partner: unsupported exterior base");
    }
    case DomainKind::annulus_difference:
      fail_validation("partner: domain must be simply connected");
  }
  fail_validation("partner: unsupported variant");
}

AnalyticMap DomainSpec::canonical_disk_map() const {
  switch (rep_->kind) {
    case DomainKind::disk:
    case DomainKind::sphere_proxy:
      return AnalyticMap::mobius(MobiusMap::similarity(rep_->radius, rep_->center));
    case DomainKind::ellipse_interior: return rep_->ell.uniformizer();
    case DomainKind::mobius_image:
      return AnalyticMap::mobius(rep_->mob).after(base().canonical_disk_map());
    case DomainKind::analytic_image: return rep_->ana.after(base().canonical_disk_map());
    case DomainKind::exterior: {
      const DomainSpec b = base();
      const AnalyticMap inv = AnalyticMap::mobius(MobiusMap::inversion());
      if (b.kind() == DomainKind::disk)
        return AnalyticMap::mobius(
                   MobiusMap::similarity(b.disk_radius(), b.disk_center()).compose(
                       MobiusMap::inversion()));
      if (b.kind() == DomainKind::ellipse_interior)
        return b.ellipse().uniformizer().after(inv);
      fail(ErrorCode::not_implemented, "canonical_disk_map: unsupported exterior base");
    }
    case DomainKind::annulus_difference:
      fail(ErrorCode::not_implemented, "canonical_disk_map: annulus is not simply connected");
  }
  fail(ErrorCode::not_implemented, "canonical_disk_map: unsupported variant");
}

double DomainSpec::scale() const {
  switch (rep_->kind) {
    case DomainKind::disk:
    case DomainKind::sphere_proxy: return rep_->radius;
    case DomainKind::ellipse_interior: return rep_->ell.semi_axis_im();
    case DomainKind::exterior: return base().scale();
    case DomainKind::annulus_difference: return base().scale();
    case DomainKind::mobius_image:
    case DomainKind::analytic_image: {
      const BoundaryCurve bc = boundary_components(64).front();
      Complex c{0, 0};
      for (const Complex& p : bc.pts) c += p;
      c /= double(bc.pts.size());
      double s = 0.0;
      for (const Complex& p : bc.pts) s += std::abs(p - c);
      return s / double(bc.pts.size());
    }
  }
  return 1.0;
}

Complex DomainSpec::anchor() const {
  switch (rep_->kind) {
    case DomainKind::disk:
    case DomainKind::sphere_proxy: return rep_->center;
    case DomainKind::ellipse_interior: return rep_->ell.w;
    case DomainKind::mobius_image: {
      const CPoint p = rep_->mob.apply(CPoint(base().anchor()));
      require(!p.is_inf(), "anchor: maps to infinity; pick explicitly");
      return p.z;
    }
    case DomainKind::analytic_image: return rep_->ana.value(base().anchor());
    case DomainKind::exterior: fail_validation("anchor: exterior domains have no finite default");
    case DomainKind::annulus_difference: {
      // midpoint between the two boundaries along a ray from the inner anchor
      const Complex c = inner().anchor();
      const double r1 = inner().scale(), r2 = base().scale();
      return c + Complex{0.5 * (r1 + r2), 0.0};
    }
  }
  return {0, 0};
}

}  // namespace cle
