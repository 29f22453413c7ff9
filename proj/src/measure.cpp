#include "cle/measure.hpp"

#include <atomic>
#include <thread>

namespace cle {

ObservableSet run_measure(const SampleContext& ctx, const MeasurePlan& plan) {
  require(plan.size() > 0, "run_measure: empty plan");
  ctx.sampler.validate();
  const LatticeMask mask = ctx.build_mask();
  const int n_chains = ctx.sampler.n_chains;
  // whole bins per chain; the remainder is dropped so results depend only on
  // (seed, chain count), not on worker scheduling
  const std::size_t per_chain =
      (ctx.n_samples / std::size_t(n_chains)) / ctx.bin_len * ctx.bin_len;
  require(per_chain >= 2 * ctx.bin_len, "run_measure: too few samples per chain for binning");

  std::vector<ObservableSet> parts;
  parts.reserve(std::size_t(n_chains));
  for (int c = 0; c < n_chains; ++c) parts.emplace_back(plan.names, ctx.bin_len);

  auto run_chain = [&](int c) {
    IsingSampler chain(mask, ctx.sampler, std::uint64_t(c));
    LoopExtractor extractor(mask);
    LoopConfig loops;
    std::vector<double> vals(plan.size());
    std::vector<std::uint8_t> ok(plan.size());
    // all chains get per_chain samples; the remainder is dropped by design so
    // chain results do not depend on the chain count split
    for (std::size_t i = 0; i < per_chain; ++i) {
      extractor.extract(chain.next_spin_config(), loops);
      for (std::size_t k = 0; k < plan.size(); ++k) {
        const auto [v, valid] = plan.obs[k](loops);
        vals[k] = v;
        ok[k] = valid ? 1 : 0;
      }
      parts[std::size_t(c)].add_sample(vals, ok);
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(hw, unsigned(n_chains));
  if (workers <= 1) {
    for (int c = 0; c < n_chains; ++c) run_chain(c);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        while (true) {
          const int c = next.fetch_add(1);
          if (c >= n_chains) return;
          run_chain(c);
        }
      });
    for (auto& th : pool) th.join();
  }

  ObservableSet out = std::move(parts.front());
  for (std::size_t c = 1; c < parts.size(); ++c) out.merge(parts[c]);
  return out;
}

CorridorEvent::CorridorEvent(const DomainSpec& A, double eps_fat, double tol)
    : outer_(A), partner_(A.partner(eps_fat)), tol_(tol) {
  bx0_ = by0_ = 1e300;
  bx1_ = by1_ = -1e300;
  for (const BoundaryCurve& bc : outer_.boundary_components(256))
    for (const Complex& p : bc.pts) {
      bx0_ = std::min(bx0_, p.real());
      bx1_ = std::max(bx1_, p.real());
      by0_ = std::min(by0_, p.imag());
      by1_ = std::max(by1_, p.imag());
    }
  // exterior variants: the relevant geometry is the bounded base boundary,
  // which the loop classification below sees through contains()
}

bool CorridorEvent::crosses(const DomainSpec& d, const Loop& l) const {
  bool any_in = false, any_out = false;
  for (const Complex& p : l.pts) {
    const CPoint z(p);
    if (d.contains(z, tol_)) {
      any_in = true;
    } else if (!d.contains_closure(z, tol_)) {
      any_out = true;
    } else {
      return true;  // touching the boundary within tol counts as crossing
    }
    if (any_in && any_out) return true;
  }
  return false;
}

bool CorridorEvent::eval(const LoopConfig& cfg) const {
  for (const Loop& l : cfg.loops) {
    if (!l.bbox_overlaps(bx0_ - tol_, bx1_ + tol_, by0_ - tol_, by1_ + tol_)) continue;
    if (crosses(outer_, l) && crosses(partner_, l)) return false;
  }
  return true;
}

std::function<std::pair<double, bool>(const LoopConfig&)> event_obs(const EventSpec& e) {
  return [e](const LoopConfig& cfg) {
    const EventSpec::Outcome o = e.eval(cfg);
    return std::pair<double, bool>(o.value ? 1.0 : 0.0, o.valid);
  };
}

std::function<std::pair<double, bool>(const LoopConfig&)> corridor_obs(
    std::shared_ptr<const CorridorEvent> c) {
  return [c](const LoopConfig& cfg) { return std::pair<double, bool>(c->eval(cfg) ? 1.0 : 0.0, true); };
}

std::function<std::pair<double, bool>(const LoopConfig&)> conj_obs(
    const EventSpec& e, std::shared_ptr<const CorridorEvent> c) {
  return [e, c](const LoopConfig& cfg) {
    const EventSpec::Outcome o = e.eval(cfg);
    if (!o.valid) return std::pair<double, bool>(0.0, false);
    return std::pair<double, bool>(o.value && c->eval(cfg) ? 1.0 : 0.0, true);
  };
}

std::function<std::pair<double, bool>(const LoopConfig&)> pair_count_obs(Complex z1, Complex z2) {
  return [z1, z2](const LoopConfig& cfg) {
    const auto c = pair_count(cfg, z1, z2);
    if (!c) return std::pair<double, bool>(0.0, false);
    return std::pair<double, bool>(double(*c), true);
  };
}

}  // namespace cle
