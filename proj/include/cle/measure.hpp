#pragma once

#include <optional>

#include "cle/events.hpp"
#include "cle/sampler.hpp"
#include "cle/stats.hpp"

namespace cle {

// One sampled region of definition: domain, lattice, chain parameters.
struct SampleContext {
  DomainSpec domain = DomainSpec::unit_disk();
  LatticeSpec lattice;
  SamplerConfig sampler;
  std::size_t n_samples = 10000;
  std::size_t bin_len = 64;
  // injected mask (e.g. an index-permuted rotation image); defaults to
  // rasterize(domain, lattice)
  std::optional<LatticeMask> mask;

  LatticeMask build_mask() const { return mask ? *mask : rasterize(domain, lattice); }
};

// Named per-sample observables evaluated on one shared stream.
struct MeasurePlan {
  std::vector<std::string> names;
  // returns (value, valid)
  std::vector<std::function<std::pair<double, bool>(const LoopConfig&)>> obs;

  void add(std::string name, std::function<std::pair<double, bool>(const LoopConfig&)> fn) {
    names.push_back(std::move(name));
    obs.push_back(std::move(fn));
  }
  std::size_t size() const { return names.size(); }
};

// Runs the plan over n_samples split across sampler.n_chains chains (worker
// threads pick chains; per-chain sets merge in chain order, so the result is
// identical for any worker count).
ObservableSet run_measure(const SampleContext& ctx, const MeasurePlan& plan);

// Corridor event around a simply connected domain A: no loop touches both
// the boundary of A and the boundary of its partner at fattening eps.
// Classification-based (vertex sides with a touching tolerance), with a
// bounding-box prefilter; agrees with the polyline crossing predicate.
class CorridorEvent {
 public:
  CorridorEvent(const DomainSpec& A, double eps_fat, double tol = 1e-12);
  bool eval(const LoopConfig& cfg) const;

  const DomainSpec& outer_domain() const { return outer_; }
  const DomainSpec& partner_domain() const { return partner_; }

 private:
  DomainSpec outer_, partner_;
  double tol_;
  double bx0_, bx1_, by0_, by1_;  // outer boundary bbox, padded by tol
  bool crosses(const DomainSpec& d, const Loop& l) const;
};

// Observable wrappers.
std::function<std::pair<double, bool>(const LoopConfig&)> event_obs(const EventSpec& e);
std::function<std::pair<double, bool>(const LoopConfig&)> corridor_obs(
    std::shared_ptr<const CorridorEvent> c);
std::function<std::pair<double, bool>(const LoopConfig&)> conj_obs(
    const EventSpec& e, std::shared_ptr<const CorridorEvent> c);
std::function<std::pair<double, bool>(const LoopConfig&)> pair_count_obs(Complex z1, Complex z2);

}  // namespace cle
