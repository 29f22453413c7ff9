#include "cle/sampler.hpp"

#include <cmath>

namespace cle {

IsingSampler::IsingSampler(const LatticeMask& mask, const SamplerConfig& cfg,
                           std::uint64_t chain_id)
    : mask_(&mask), cfg_(cfg), rng_(cfg.seed, chain_id) {
  cfg_.validate();
  spins_.mask = mask_;
  spins_.s.assign(mask.rect_size(), 1);  // cold start in the boundary phase
  p_add_ = 1.0 - std::exp(-2.0 * cfg_.beta);
  in_cluster_.assign(mask.rect_size(), 0);
}

void IsingSampler::sweep() {
  if (cfg_.algorithm == Algorithm::metropolis)
    metropolis_sweep();
  else
    wolff_sweep();
  ++sweeps_;
}

void IsingSampler::metropolis_sweep() {
  const LatticeMask& m = *mask_;
  const std::uint64_t sweep_key = sweeps_;
  for (std::size_t k = 0; k < m.order.size(); ++k) {
    const std::size_t i = std::size_t(m.order[k]);
    auto [n1, n2] = m.coords(i);
    int nb_sum = 0;
    for (const auto& off : kNeighborOffsets) nb_sum += spins_.spin(n1 + off[0], n2 + off[1]);
    const int si = spins_.s[i];
    const double dE = 2.0 * double(si) * double(nb_sum);
    if (dE <= 0.0 || rng_.keyed_unit(sweep_key, k) < std::exp(-cfg_.beta * dE))
      spins_.s[i] = std::int8_t(-si);
  }
}

void IsingSampler::wolff_sweep() {
  const LatticeMask& m = *mask_;
  if (m.order.empty()) return;
  // All randomness is keyed by (sweep, canonical bond/site identity); the
  // cluster is then the percolation component of the seed over same-spin
  // bonds, independent of traversal order, so index-permuted masks evolve
  // identically under a shared seed.
  const std::uint64_t sweep_key = sweeps_ | 0x4000000000000000ull;
  const std::size_t seed_ord =
      std::size_t(rng_.keyed_unit(sweep_key, 0) * double(m.order.size()));
  const std::size_t seed_site = std::size_t(m.order[std::min(seed_ord, m.order.size() - 1)]);
  const int cluster_spin = spins_.s[seed_site];

  auto bond_open = [&](std::size_t i_rect, std::size_t j_rect) {
    const std::uint64_t a = std::uint64_t(m.compact[i_rect]);
    const std::uint64_t b = std::uint64_t(m.compact[j_rect]);
    const std::uint64_t key = (std::min(a, b) << 32) | (std::max(a, b) + 1);
    return rng_.keyed_unit(sweep_key, key) < p_add_;
  };

  stack_.clear();
  std::vector<std::int32_t> members;
  stack_.push_back(std::int32_t(seed_site));
  in_cluster_[seed_site] = 1;
  members.push_back(std::int32_t(seed_site));

  // frozen-boundary bonds keep their Boltzmann weight through a Metropolis
  // acceptance on the cluster flip: k same-spin and mm opposite-spin bonds to
  // fixed +1 sites give acceptance (1-p)^(k-mm)
  long frozen_same = 0, frozen_opp = 0;
  while (!stack_.empty()) {
    const std::size_t i = std::size_t(stack_.back());
    stack_.pop_back();
    auto [n1, n2] = m.coords(i);
    for (const auto& off : kNeighborOffsets) {
      const int m1 = n1 + off[0], m2 = n2 + off[1];
      if (!m.in_mask(m1, m2)) {
        if (cluster_spin == 1)
          ++frozen_same;
        else
          ++frozen_opp;
        continue;
      }
      const std::size_t j = m.rect_index(m1, m2);
      if (in_cluster_[j] || spins_.s[j] != cluster_spin) continue;
      if (bond_open(i, j)) {
        in_cluster_[j] = 1;
        members.push_back(std::int32_t(j));
        stack_.push_back(std::int32_t(j));
      }
    }
  }

  bool accept = true;
  const long excess = frozen_same - frozen_opp;
  if (excess > 0) {
    const double acc = std::pow(1.0 - p_add_, double(excess));
    accept = rng_.keyed_unit(sweep_key, 0xFFFFFFFFFFFFFFFEull) < acc;
  }
  if (accept)
    for (std::int32_t j : members) spins_.s[std::size_t(j)] = std::int8_t(-cluster_spin);
  for (std::int32_t j : members) in_cluster_[std::size_t(j)] = 0;
}

const SpinConfig& IsingSampler::next_spin_config() {
  if (!burned_in_) {
    for (int k = 0; k < cfg_.sweeps_burnin; ++k) sweep();
    burned_in_ = true;
  }
  for (int k = 0; k < cfg_.thinning; ++k) sweep();
  return spins_;
}

void sample_loop_stream(const SamplerConfig& cfg, const LatticeMask& mask, std::size_t n,
                        const std::function<void(std::size_t, const LoopConfig&)>& consume,
                        std::uint64_t chain_id) {
  IsingSampler chain(mask, cfg, chain_id);
  LoopExtractor extractor(mask);
  LoopConfig loops;
  for (std::size_t i = 0; i < n; ++i) {
    const SpinConfig& s = chain.next_spin_config();
    extractor.extract(s, loops);
    consume(i, loops);
  }
}

namespace {

// Weighted Boltzmann average of fn over all 2^N spin assignments; bonds with
// at least one in-mask endpoint carry energy, frozen neighbors are +1.
template <class Fn>
double enumerate_average(const LatticeMask& mask, double beta, Fn&& fn) {
  const std::size_t n = mask.site_count();
  require(n <= 24, "enumerate_exact: mask too large (> 24 sites)");
  SpinConfig s;
  s.mask = &mask;
  s.s.assign(mask.rect_size(), 1);

  struct Bond {
    std::size_t i;      // rect index of the owning in-site
    std::size_t jrect;  // rect index of the neighbor (ignored when frozen)
    bool frozen;
  };
  std::vector<Bond> bonds;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = std::size_t(mask.order[k]);
    auto [n1, n2] = mask.coords(i);
    // positive directions cover each in-in bond exactly once
    const int pos[3][2] = {{1, 0}, {0, 1}, {1, -1}};
    for (const auto& off : pos) {
      const int m1 = n1 + off[0], m2 = n2 + off[1];
      if (mask.in_mask(m1, m2))
        bonds.push_back({i, mask.rect_index(m1, m2), false});
      else
        bonds.push_back({i, 0, true});
    }
    const int neg[3][2] = {{-1, 0}, {0, -1}, {-1, 1}};
    for (const auto& off : neg) {
      const int m1 = n1 + off[0], m2 = n2 + off[1];
      if (!mask.in_mask(m1, m2)) bonds.push_back({i, 0, true});
    }
  }

  double z = 0.0, acc = 0.0;
  for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
    for (std::size_t k = 0; k < n; ++k)
      s.s[std::size_t(mask.order[k])] = (bits >> k) & 1 ? std::int8_t(-1) : std::int8_t(1);
    double energy = 0.0;
    for (const Bond& b : bonds) {
      const int si = s.s[b.i];
      const int sj = b.frozen ? 1 : s.s[b.jrect];
      energy -= double(si * sj);
    }
    const double w = std::exp(-beta * energy);
    z += w;
    acc += w * fn(s);
  }
  return acc / z;
}

}  // namespace

double enumerate_exact(const LatticeMask& mask, double beta,
                       const std::function<bool(const LoopConfig&)>& event) {
  LoopExtractor ex(mask);
  LoopConfig loops;
  return enumerate_average(mask, beta, [&](const SpinConfig& s) {
    ex.extract(s, loops);
    return event(loops) ? 1.0 : 0.0;
  });
}

double enumerate_mean(const LatticeMask& mask, double beta,
                      const std::function<double(const SpinConfig&)>& f) {
  return enumerate_average(mask, beta, f);
}

}  // namespace cle
