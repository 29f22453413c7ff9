#include "cle/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace cle {

namespace {

// In-radius proxy per family; conservative where no closed form exists.
double inradius_estimate(const DomainSpec& d) {
  switch (d.kind()) {
    case DomainKind::disk:
    case DomainKind::sphere_proxy: return d.disk_radius();
    case DomainKind::ellipse_interior: return d.ellipse().semi_axis_re();
    case DomainKind::annulus_difference: {
      // corridor half-width between the two boundaries
      const BoundaryCurve outer = d.base().boundary_components(256).front();
      const BoundaryCurve inner = d.inner().boundary_components(256).front();
      double w = 1e300;
      for (const Complex& p : inner.pts) w = std::min(w, distance_to_curve(outer, p));
      return 0.5 * w;
    }
    default: return 0.5 * d.scale();
  }
}

}  // namespace

LatticeMask rasterize(const DomainSpec& d, const LatticeSpec& lattice) {
  require(!d.contains_infinity(),
          "rasterize: unbounded domain; wrap it in a sphere proxy first");
  const double a = lattice.spacing;
  require(a > 0.0, "rasterize: spacing must be positive");
  require(a < inradius_estimate(d) / 8.0, "rasterize: domain too small relative to spacing");

  // Bounding box of the boundary in index space.
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const BoundaryCurve& bc : d.boundary_components(512)) {
    for (const Complex& p : bc.pts) {
      xmin = std::min(xmin, p.real());
      xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag());
      ymax = std::max(ymax, p.imag());
    }
  }
  const double s3 = 0.8660254037844386467637231707529362;
  const double oy = lattice.origin.imag(), ox = lattice.origin.real();
  const int n2_lo = int(std::floor((ymin - oy) / (a * s3))) - 3;
  const int n2_hi = int(std::ceil((ymax - oy) / (a * s3))) + 3;
  // n1 = (x - ox)/a - n2/2; bound over the n2 range
  const double n1_min_f = (xmin - ox) / a - 0.5 * double(std::max(std::abs(n2_lo), std::abs(n2_hi)));
  const double n1_max_f = (xmax - ox) / a + 0.5 * double(std::max(std::abs(n2_lo), std::abs(n2_hi)));
  const int n1_lo = int(std::floor(n1_min_f)) - 3;
  const int n1_hi = int(std::ceil(n1_max_f)) + 3;

  LatticeMask m;
  m.lattice = lattice;
  m.n1_lo = n1_lo;
  m.n1_hi = n1_hi;
  m.n2_lo = n2_lo;
  m.n2_hi = n2_hi;
  m.in.assign(m.rect_size(), 0);
  m.boundary.assign(m.rect_size(), 0);
  m.compact.assign(m.rect_size(), -1);

  for (int n2 = n2_lo; n2 <= n2_hi; ++n2)
    for (int n1 = n1_lo; n1 <= n1_hi; ++n1) {
      if (d.contains(CPoint(lattice.position(n1, n2)))) m.in[m.rect_index(n1, n2)] = 1;
    }

  // connectivity check; a disconnected in-set breaks the loop/boundary logic
  std::size_t total = 0, first = std::size_t(-1);
  for (std::size_t i = 0; i < m.in.size(); ++i)
    if (m.in[i]) {
      ++total;
      if (first == std::size_t(-1)) first = i;
    }
  require(total > 0, "rasterize: empty mask");
  {
    std::vector<std::uint8_t> seen(m.rect_size(), 0);
    std::queue<std::size_t> q;
    q.push(first);
    seen[first] = 1;
    std::size_t reached = 0;
    while (!q.empty()) {
      const std::size_t i = q.front();
      q.pop();
      ++reached;
      auto [n1, n2] = m.coords(i);
      for (const auto& off : kNeighborOffsets) {
        const int m1 = n1 + off[0], m2 = n2 + off[1];
        if (!m.in_rect(m1, m2)) continue;
        const std::size_t j = m.rect_index(m1, m2);
        if (m.in[j] && !seen[j]) {
          seen[j] = 1;
          q.push(j);
        }
      }
    }
    require(reached == total, "rasterize: in-set is not edge-connected");
  }

  // canonical order: by (n2, n1); boundary flags
  for (int n2 = n2_lo; n2 <= n2_hi; ++n2)
    for (int n1 = n1_lo; n1 <= n1_hi; ++n1) {
      const std::size_t i = m.rect_index(n1, n2);
      if (!m.in[i]) continue;
      m.compact[i] = std::int32_t(m.order.size());
      m.order.push_back(std::int32_t(i));
      for (const auto& off : kNeighborOffsets) {
        if (!m.in_mask(n1 + off[0], n2 + off[1])) {
          m.boundary[i] = 1;
          break;
        }
      }
    }
  return m;
}

LatticeMask mask_from_sites(const LatticeSpec& lattice,
                            const std::vector<std::pair<int, int>>& sites) {
  require(!sites.empty(), "mask_from_sites: empty site list");
  int lo1 = 1 << 30, hi1 = -(1 << 30), lo2 = 1 << 30, hi2 = -(1 << 30);
  for (const auto& [n1, n2] : sites) {
    lo1 = std::min(lo1, n1);
    hi1 = std::max(hi1, n1);
    lo2 = std::min(lo2, n2);
    hi2 = std::max(hi2, n2);
  }
  LatticeMask m;
  m.lattice = lattice;
  m.n1_lo = lo1 - 3;
  m.n1_hi = hi1 + 3;
  m.n2_lo = lo2 - 3;
  m.n2_hi = hi2 + 3;
  m.in.assign(m.rect_size(), 0);
  m.boundary.assign(m.rect_size(), 0);
  m.compact.assign(m.rect_size(), -1);
  for (const auto& [n1, n2] : sites) m.in[m.rect_index(n1, n2)] = 1;
  for (int n2 = m.n2_lo; n2 <= m.n2_hi; ++n2)
    for (int n1 = m.n1_lo; n1 <= m.n1_hi; ++n1) {
      const std::size_t i = m.rect_index(n1, n2);
      if (!m.in[i]) continue;
      m.compact[i] = std::int32_t(m.order.size());
      m.order.push_back(std::int32_t(i));
      for (const auto& off : kNeighborOffsets)
        if (!m.in_mask(n1 + off[0], n2 + off[1])) {
          m.boundary[i] = 1;
          break;
        }
    }
  return m;
}

LatticeMask LatticeMask::rotated(int k) const {
  // image rect: rotate the four corners and take the hull
  int lo1 = 1 << 30, hi1 = -(1 << 30), lo2 = 1 << 30, hi2 = -(1 << 30);
  for (int c1 : {n1_lo, n1_hi})
    for (int c2 : {n2_lo, n2_hi}) {
      auto [r1, r2] = rotate60(c1, c2, k);
      lo1 = std::min(lo1, r1);
      hi1 = std::max(hi1, r1);
      lo2 = std::min(lo2, r2);
      hi2 = std::max(hi2, r2);
    }
  LatticeMask out;
  out.lattice = lattice;
  out.n1_lo = lo1;
  out.n1_hi = hi1;
  out.n2_lo = lo2;
  out.n2_hi = hi2;
  out.in.assign(out.rect_size(), 0);
  out.boundary.assign(out.rect_size(), 0);
  out.compact.assign(out.rect_size(), -1);
  out.order.reserve(order.size());
  for (std::int32_t rect_idx : order) {
    auto [n1, n2] = coords(std::size_t(rect_idx));
    auto [r1, r2] = rotate60(n1, n2, k);
    const std::size_t j = out.rect_index(r1, r2);
    out.in[j] = 1;
    out.compact[j] = std::int32_t(out.order.size());
    out.order.push_back(std::int32_t(j));
  }
  for (std::int32_t rect_idx : order) {
    auto [n1, n2] = coords(std::size_t(rect_idx));
    auto [r1, r2] = rotate60(n1, n2, k);
    for (const auto& off : kNeighborOffsets) {
      if (!out.in_mask(r1 + off[0], r2 + off[1])) {
        out.boundary[out.rect_index(r1, r2)] = 1;
        break;
      }
    }
  }
  return out;
}

}  // namespace cle
