#pragma once

#include <memory>

#include "cle/ellipse.hpp"
#include "cle/polyline.hpp"

namespace cle {

enum class DomainKind {
  disk,
  ellipse_interior,
  mobius_image,
  analytic_image,
  exterior,            // complement of the closure of a bounded base
  annulus_difference,  // outer \ closure(inner)
  sphere_proxy,        // large disk standing in for the full plane
};

// Parametric domain description. Immutable, cheap to copy. Partner domains
// follow one deterministic section per family: disks shrink concentrically,
// ellipses shrink within the Joukowski family (b -> b(1-eps)), and
// constructed images push the base partner forward. This keeps partners
// exactly equivariant under the global maps used to build domains.
class DomainSpec {
 public:
  static DomainSpec disk(Complex center, double radius);
  static DomainSpec unit_disk() { return disk({0.0, 0.0}, 1.0); }
  static DomainSpec ellipse_interior(const EllipseSpec& e);
  static DomainSpec mobius_image(const DomainSpec& base, const MobiusMap& m);
  static DomainSpec analytic_image(const DomainSpec& base, const AnalyticMap& f);
  static DomainSpec exterior(const DomainSpec& base);
  static DomainSpec annulus_difference(const DomainSpec& outer, const DomainSpec& inner);
  static DomainSpec sphere_proxy(double radius);

  DomainKind kind() const;
  bool simply_connected() const;
  bool contains_infinity() const;

  // Open-set membership; points within tol of the boundary count as outside.
  bool contains(const CPoint& z, double tol = 1e-12) const;
  bool contains_closure(const CPoint& z, double tol = 1e-12) const;

  // n points, counter-clockwise around the interior. Errors on multi-component
  // variants; use boundary_components there.
  BoundaryCurve boundary_polyline(int n) const;
  std::vector<BoundaryCurve> boundary_components(int n) const;

  // B = g_A((1-eps) D); closure(B) strictly inside. Simply connected families only.
  DomainSpec partner(double eps_fat) const;

  // Deterministic conformal map g_A with g_A(unit disk) = A per supported
  // family. The ellipse uniformizer is the Joukowski map, conformal on the
  // annulus |v| > 1/b only; it parametrizes the boundary and the partner
  // circles, which is all the corridor construction evaluates.
  AnalyticMap canonical_disk_map() const;

  // Rough linear scale of the bounded geometry (radius-like).
  double scale() const;
  Complex anchor() const;  // representative interior point (finite variants)

  // Accessors used by rasterization and serialization.
  Complex disk_center() const;
  double disk_radius() const;
  const EllipseSpec& ellipse() const;
  DomainSpec base() const;
  DomainSpec inner() const;
  const MobiusMap& mobius() const;
  const AnalyticMap& analytic() const;
  double proxy_radius() const;

  struct Rep;
  explicit DomainSpec(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

 private:
  std::shared_ptr<const Rep> rep_;
};

}  // namespace cle
