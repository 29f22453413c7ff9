#include "cle/events.hpp"

#include <cmath>

namespace cle {

bool winding_surrounds(const std::vector<Complex>& loop, const CPoint& z, double tol) {
  require(!z.is_inf(), "winding_surrounds: point at infinity is never surrounded");
  BoundaryCurve bc;
  bc.pts = loop;
  require(!point_near_curve(bc, z.z, tol), "winding_surrounds: point lies on the loop");
  return winding_number(bc, z.z) != 0;
}

std::optional<bool> try_winding_surrounds(const Loop& loop, Complex z, double tol) {
  if (!loop.bbox_overlaps(z.real() - tol, z.real() + tol, z.imag() - tol, z.imag() + tol))
    return false;
  BoundaryCurve bc;
  bc.pts = loop.pts;  // cheap view would do; loops are short
  if (point_near_curve(bc, z, tol)) return std::nullopt;
  return winding_number(bc, z) != 0;
}

namespace {

struct CurveBox {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  explicit CurveBox(const BoundaryCurve& c) {
    for (const Complex& p : c.pts) {
      x0 = std::min(x0, p.real());
      x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag());
      y1 = std::max(y1, p.imag());
    }
  }
};

bool loop_hits_curve(const Loop& l, const BoundaryCurve& c, const CurveBox& box, double tol) {
  if (!l.bbox_overlaps(box.x0 - tol, box.x1 + tol, box.y0 - tol, box.y1 + tol)) return false;
  BoundaryCurve lc;
  lc.pts = l.pts;
  return curve_intersects(lc, c, tol);
}

}  // namespace

bool eval_crossing(const LoopConfig& cfg, const BoundaryCurve& outer, const BoundaryCurve& inner,
                   double tol) {
  require(!outer.empty() && !inner.empty(), "eval_crossing: empty boundary");
  // nesting precondition: inner vertices strictly inside outer
  require(winding_number(outer, inner.pts.front()) != 0,
          "eval_crossing: inner boundary not inside outer");
  const CurveBox bo(outer), bi(inner);
  for (const Loop& l : cfg.loops) {
    if (!loop_hits_curve(l, inner, bi, tol)) continue;
    if (loop_hits_curve(l, outer, bo, tol)) return false;
  }
  return true;
}

std::optional<int> pair_count(const LoopConfig& cfg, Complex z1, Complex z2, double tol) {
  require(std::abs(z1 - z2) > tol, "pair_count: coincident points");
  int count = 0;
  for (const Loop& l : cfg.loops) {
    const auto a = try_winding_surrounds(l, z1, tol);
    if (!a) return std::nullopt;
    if (!*a) continue;
    const auto b = try_winding_surrounds(l, z2, tol);
    if (!b) return std::nullopt;
    if (*b) ++count;
  }
  return count;
}

std::optional<int> parity_spin_value(const LoopConfig& cfg, Complex z, double tol) {
  int count = 0;
  for (const Loop& l : cfg.loops) {
    const auto a = try_winding_surrounds(l, z, tol);
    if (!a) return std::nullopt;
    if (*a) ++count;
  }
  return (count % 2 == 0) ? 1 : -1;
}

EventSpec EventSpec::trivial() { return EventSpec(); }

EventSpec EventSpec::crossing(BoundaryCurve outer, BoundaryCurve inner) {
  require(!outer.empty() && !inner.empty(), "EventSpec::crossing: empty boundary");
  for (const Complex& p : inner.pts)
    require(winding_number(outer, p) != 0, "EventSpec::crossing: inner not strictly inside outer");
  EventSpec e;
  e.kind_ = EventKind::crossing;
  const CurveBox b(outer);
  e.support_center = Complex{0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)};
  e.support_radius = 0.5 * std::hypot(b.x1 - b.x0, b.y1 - b.y0);
  e.outer_ = std::move(outer);
  e.inner_ = std::move(inner);
  return e;
}

EventSpec EventSpec::surrounds_parity(Complex z0, double r, bool even) {
  require(r >= 0.0, "EventSpec::surrounds_parity: negative radius");
  EventSpec e;
  e.kind_ = EventKind::surrounds_parity;
  e.z0_ = z0;
  e.r_ = r;
  e.even_ = even;
  e.support_radius = -1.0;  // parity reads loops out to the domain boundary
  return e;
}

EventSpec EventSpec::pair_count_at_least(Complex z1, Complex z2, int min_count) {
  require(min_count >= 1, "EventSpec::pair_count_at_least: min_count >= 1");
  EventSpec e;
  e.kind_ = EventKind::pair_count;
  e.z0_ = z1;
  e.z1_ = z2;
  e.min_count_ = min_count;
  e.support_radius = -1.0;
  return e;
}

EventSpec EventSpec::conjunction(std::vector<EventSpec> parts) {
  require(!parts.empty(), "EventSpec::conjunction: empty");
  EventSpec e;
  e.kind_ = EventKind::conjunction;
  e.support_radius = -1.0;
  e.parts_ = std::move(parts);
  return e;
}

EventSpec::Outcome EventSpec::eval(const LoopConfig& cfg) const {
  switch (kind_) {
    case EventKind::trivial: return {true, true};
    case EventKind::crossing: return {eval_crossing(cfg, outer_, inner_), true};
    case EventKind::surrounds_parity: {
      const auto v = parity_spin_value(cfg, z0_, std::max(r_, 1e-12));
      if (!v) return {false, false};
      return {(*v == 1) == even_, true};
    }
    case EventKind::pair_count: {
      const auto c = pair_count(cfg, z0_, z1_);
      if (!c) return {false, false};
      return {*c >= min_count_, true};
    }
    case EventKind::conjunction: {
      bool all = true;
      for (const EventSpec& p : parts_) {
        const Outcome o = p.eval(cfg);
        if (!o.valid) return {false, false};
        all = all && o.value;
      }
      return {all, true};
    }
  }
  return {false, false};
}

}  // namespace cle
