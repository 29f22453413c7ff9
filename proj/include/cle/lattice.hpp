#pragma once

#include <cstdint>
#include <vector>

#include "cle/domain.hpp"

namespace cle {

// Triangular spin lattice embedded as p(n1,n2) = origin + a(n1 + n2/2) + i a (sqrt(3)/2) n2.
// Domain walls live on the dual honeycomb whose trivalent vertices are the
// triangle centers; every spin site owns one hexagonal face.
struct LatticeSpec {
  double spacing = 1.0;
  Complex origin{0.0, 0.0};

  Complex position(int n1, int n2) const {
    return origin + spacing * Complex(n1 + 0.5 * n2, 0.8660254037844386467637231707529362 * n2);
  }
};

// Exact 6-fold rotation in index space: rotation by +60 degrees about the
// embedding origin maps site (n1,n2) to (-n2, n1+n2).
inline std::pair<int, int> rotate60(int n1, int n2, int k) {
  k = ((k % 6) + 6) % 6;
  for (int i = 0; i < k; ++i) {
    const int m1 = -n2, m2 = n1 + n2;
    n1 = m1;
    n2 = m2;
  }
  return {n1, n2};
}

// Rasterized domain: a padded bounding rectangle in (n1,n2) index space with
// per-site in/out flags and a canonical compact ordering of the in-sites.
class LatticeMask {
 public:
  LatticeSpec lattice;
  int n1_lo = 0, n1_hi = -1, n2_lo = 0, n2_hi = -1;  // inclusive rect, padded
  std::vector<std::uint8_t> in;                      // rect-indexed
  std::vector<std::uint8_t> boundary;                // in-site with an out-neighbor
  std::vector<std::int32_t> compact;                 // rect index -> site order, -1 if out
  std::vector<std::int32_t> order;                   // site order -> rect index

  int width() const { return n1_hi - n1_lo + 1; }
  int height() const { return n2_hi - n2_lo + 1; }
  std::size_t rect_size() const { return std::size_t(width()) * std::size_t(height()); }
  std::size_t site_count() const { return order.size(); }

  bool in_rect(int n1, int n2) const {
    return n1 >= n1_lo && n1 <= n1_hi && n2 >= n2_lo && n2 <= n2_hi;
  }
  std::size_t rect_index(int n1, int n2) const {
    return std::size_t(n2 - n2_lo) * std::size_t(width()) + std::size_t(n1 - n1_lo);
  }
  bool in_mask(int n1, int n2) const { return in_rect(n1, n2) && in[rect_index(n1, n2)] != 0; }
  std::pair<int, int> coords(std::size_t rect_idx) const {
    const int w = width();
    return {n1_lo + int(rect_idx % std::size_t(w)), n2_lo + int(rect_idx / std::size_t(w))};
  }
  Complex site_position(std::size_t rect_idx) const {
    auto [n1, n2] = coords(rect_idx);
    return lattice.position(n1, n2);
  }

  // Image mask under rotate60^k about the lattice origin; the canonical site
  // order of the result is the image of this mask's order (an index
  // permutation, so paired runs consume randomness identically).
  LatticeMask rotated(int k) const;
};

// Sites whose centers lie in the open domain. Requires the mask to resolve
// the domain (spacing at most an eighth of the in-radius) and the in-set to
// be edge-connected.
LatticeMask rasterize(const DomainSpec& d, const LatticeSpec& lattice);

// Mask over an explicit edge-connected site list; used for the exhaustive
// tiny-lattice oracles, which are far below the rasterizer's resolution
// floor.
LatticeMask mask_from_sites(const LatticeSpec& lattice,
                            const std::vector<std::pair<int, int>>& sites);

// Neighbor offsets of the triangular lattice.
inline constexpr int kNeighborOffsets[6][2] = {{1, 0},  {-1, 0}, {0, 1},
                                               {0, -1}, {1, -1}, {-1, 1}};

}  // namespace cle
