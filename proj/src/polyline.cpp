#include "cle/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace cle {

double signed_area(const BoundaryCurve& c) {
  double acc = 0.0;
  const std::size_t n = c.pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = c.seg_a(i), b = c.seg_b(i);
    acc += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * acc;
}

BoundaryCurve reversed(BoundaryCurve c) {
  std::reverse(c.pts.begin(), c.pts.end());
  return c;
}

BoundaryCurve transformed(const BoundaryCurve& c, const std::function<Complex(Complex)>& f) {
  BoundaryCurve out;
  out.pts.reserve(c.pts.size());
  for (const Complex& p : c.pts) out.pts.push_back(f(p));
  return out;
}

namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

}  // namespace

int winding_number(const BoundaryCurve& c, Complex z) {
  int wn = 0;
  const std::size_t n = c.pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = c.seg_a(i), b = c.seg_b(i);
    if (a.imag() <= z.imag()) {
      if (b.imag() > z.imag() && cross(a, b, z) > 0.0) ++wn;
    } else {
      if (b.imag() <= z.imag() && cross(a, b, z) < 0.0) --wn;
    }
  }
  return wn;
}

double segment_point_distance(Complex a, Complex b, Complex p) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double distance_to_curve(const BoundaryCurve& c, Complex z) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = c.pts.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, segment_point_distance(c.seg_a(i), c.seg_b(i), z));
  return best;
}

bool point_near_curve(const BoundaryCurve& c, Complex z, double tol) {
  return distance_to_curve(c, z) <= tol;
}

double segment_distance(Complex a1, Complex a2, Complex b1, Complex b2) {
  const double d1 = cross(a1, a2, b1), d2 = cross(a1, a2, b2);
  const double d3 = cross(b1, b2, a1), d4 = cross(b1, b2, a2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return 0.0;  // proper crossing
  return std::min(std::min(segment_point_distance(a1, a2, b1), segment_point_distance(a1, a2, b2)),
                  std::min(segment_point_distance(b1, b2, a1), segment_point_distance(b1, b2, a2)));
}

bool segments_intersect(Complex a1, Complex a2, Complex b1, Complex b2, double tol) {
  return segment_distance(a1, a2, b1, b2) <= tol;
}

namespace {

struct SegGrid {
  double x0, y0, cell;
  int nx, ny;
  std::unordered_map<long long, std::vector<int>> bins;

  long long key(int ix, int iy) const { return (long long)ix * 1000003LL + iy; }

  SegGrid(const BoundaryCurve& c, double pad) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300, total = 0.0;
    const std::size_t n = c.pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Complex a = c.seg_a(i), b = c.seg_b(i);
      xmin = std::min({xmin, a.real(), b.real()});
      xmax = std::max({xmax, a.real(), b.real()});
      ymin = std::min({ymin, a.imag(), b.imag()});
      ymax = std::max({ymax, a.imag(), b.imag()});
      total += std::abs(b - a);
    }
    cell = std::max(total / double(n), 1e-9) * 2.0 + pad;
    x0 = xmin - pad;
    y0 = ymin - pad;
    nx = std::max(1, int((xmax - xmin) / cell) + 2);
    ny = std::max(1, int((ymax - ymin) / cell) + 2);
    for (std::size_t i = 0; i < n; ++i) insert(c.seg_a(i), c.seg_b(i), int(i));
  }

  void cells_for(Complex a, Complex b, int& ix0, int& ix1, int& iy0, int& iy1) const {
    ix0 = std::clamp(int((std::min(a.real(), b.real()) - x0) / cell), 0, nx - 1);
    ix1 = std::clamp(int((std::max(a.real(), b.real()) - x0) / cell), 0, nx - 1);
    iy0 = std::clamp(int((std::min(a.imag(), b.imag()) - y0) / cell), 0, ny - 1);
    iy1 = std::clamp(int((std::max(a.imag(), b.imag()) - y0) / cell), 0, ny - 1);
  }

  void insert(Complex a, Complex b, int idx) {
    int ix0, ix1, iy0, iy1;
    cells_for(a, b, ix0, ix1, iy0, iy1);
    for (int ix = ix0; ix <= ix1; ++ix)
      for (int iy = iy0; iy <= iy1; ++iy) bins[key(ix, iy)].push_back(idx);
  }

  template <class Fn>
  bool visit(Complex a, Complex b, Fn&& fn) const {
    int ix0, ix1, iy0, iy1;
    cells_for(a, b, ix0, ix1, iy0, iy1);
    for (int ix = ix0; ix <= ix1; ++ix)
      for (int iy = iy0; iy <= iy1; ++iy) {
        auto it = bins.find(key(ix, iy));
        if (it == bins.end()) continue;
        for (int idx : it->second)
          if (fn(idx)) return true;
      }
    return false;
  }
};

}  // namespace

bool curve_intersects(const BoundaryCurve& a, const BoundaryCurve& b, double tol) {
  if (a.empty() || b.empty()) return false;
  const BoundaryCurve& small = a.size() <= b.size() ? a : b;
  const BoundaryCurve& large = a.size() <= b.size() ? b : a;
  SegGrid grid(small, tol);
  const std::size_t n = large.pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = large.seg_a(i), q = large.seg_b(i);
    const bool hit = grid.visit(p, q, [&](int idx) {
      return segments_intersect(small.seg_a(idx), small.seg_b(idx), p, q, tol);
    });
    if (hit) return true;
  }
  return false;
}

bool is_simple(const BoundaryCurve& c, double tol) {
  const std::size_t n = c.pts.size();
  if (n < 3) return false;
  SegGrid grid(c, tol);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = c.seg_a(i), q = c.seg_b(i);
    const bool hit = grid.visit(p, q, [&](int idx) {
      const std::size_t j = std::size_t(idx);
      if (j == i) return false;
      // adjacent segments share an endpoint by construction
      if ((j + 1) % n == i || (i + 1) % n == j) return false;
      return segments_intersect(c.seg_a(j), c.seg_b(j), p, q, tol);
    });
    if (hit) return false;
  }
  return true;
}

double hausdorff_distance(const BoundaryCurve& a, const BoundaryCurve& b) {
  double d = 0.0;
  for (const Complex& p : a.pts) d = std::max(d, distance_to_curve(b, p));
  for (const Complex& p : b.pts) d = std::max(d, distance_to_curve(a, p));
  return d;
}

}  // namespace cle
