#pragma once

#include <optional>

#include "cle/loops.hpp"
#include "cle/polyline.hpp"

namespace cle {

// True iff the winding number of the closed polyline around z is nonzero.
// Errors when z lies on the polyline within tol; the estimator-facing variant
// below reports that case as empty instead, and callers discard the sample.
bool winding_surrounds(const std::vector<Complex>& loop, const CPoint& z, double tol = 1e-12);
std::optional<bool> try_winding_surrounds(const Loop& loop, Complex z, double tol = 1e-12);

// No loop of cfg intersects both curves. Touching within tol counts as
// intersecting (the event requires loops to stay clear of the corridor).
bool eval_crossing(const LoopConfig& cfg, const BoundaryCurve& outer, const BoundaryCurve& inner,
                   double tol = 1e-12);

// Number of loops surrounding both points; empty when either point lies on a
// loop.
std::optional<int> pair_count(const LoopConfig& cfg, Complex z1, Complex z2, double tol = 1e-12);

// +1 when an even number of loops surround z, -1 otherwise. With the +1 fixed
// exterior this equals the spin at the site containing z.
std::optional<int> parity_spin_value(const LoopConfig& cfg, Complex z, double tol = 1e-12);

enum class EventKind { trivial, crossing, surrounds_parity, pair_count, conjunction };

// Measurable predicate on a LoopConfig. Immutable; validated on construction.
class EventSpec {
 public:
  static EventSpec trivial();
  // no loop touches both boundaries; inner must be strictly inside outer
  static EventSpec crossing(BoundaryCurve outer, BoundaryCurve inner);
  // parity of the number of loops surrounding z0 equals `even`; loops passing
  // within r of z0 invalidate the sample
  static EventSpec surrounds_parity(Complex z0, double r, bool even = true);
  // at least `min_count` loops surround both points
  static EventSpec pair_count_at_least(Complex z1, Complex z2, int min_count);
  static EventSpec conjunction(std::vector<EventSpec> parts);

  EventKind kind() const { return kind_; }

  struct Outcome {
    bool value = false;
    bool valid = true;  // false: discard this sample for this observable
  };
  Outcome eval(const LoopConfig& cfg) const;

  // Informal support descriptor (recorded, not verified): a disk covering the
  // region where the event reads the loops; radius < 0 means "everything".
  Complex support_center{0, 0};
  double support_radius = -1.0;

  const BoundaryCurve& outer() const { return outer_; }
  const BoundaryCurve& inner() const { return inner_; }
  Complex z0() const { return z0_; }
  Complex z1() const { return z1_; }
  double r() const { return r_; }
  bool even() const { return even_; }
  int min_count() const { return min_count_; }
  const std::vector<EventSpec>& parts() const { return parts_; }

 private:
  EventSpec() = default;
  EventKind kind_ = EventKind::trivial;
  BoundaryCurve outer_, inner_;
  Complex z0_{0, 0}, z1_{0, 0};
  double r_ = 0.0;
  bool even_ = true;
  int min_count_ = 1;
  std::vector<EventSpec> parts_;
};

}  // namespace cle
