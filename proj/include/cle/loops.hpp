#pragma once

#include <iosfwd>
#include <string>

#include "cle/lattice.hpp"

namespace cle {

// Spin field over the mask rectangle; out-of-mask entries are pinned to +1,
// which closes every domain wall.
struct SpinConfig {
  const LatticeMask* mask = nullptr;
  std::vector<std::int8_t> s;  // rect-indexed

  int spin(int n1, int n2) const {
    if (!mask->in_rect(n1, n2)) return 1;
    return s[mask->rect_index(n1, n2)];
  }
};

// One extracted configuration: disjoint simple closed polylines of lattice
// edge midpoints, with axis-aligned bounding boxes and nesting depths.
struct Loop {
  std::vector<Complex> pts;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  int depth = 0;  // number of loops surrounding this one

  bool bbox_contains(Complex z) const {
    return z.real() > xmin && z.real() < xmax && z.imag() > ymin && z.imag() < ymax;
  }
  bool bbox_overlaps(double x0, double x1, double y0, double y1) const {
    return !(xmax < x0 || x1 < xmin || ymax < y0 || y1 < ymin);
  }
};

struct LoopConfig {
  std::vector<Loop> loops;
  std::size_t total_edges = 0;  // sum of loop lengths in wall segments

  void clear() {
    loops.clear();
    total_edges = 0;
  }
};

// Domain-wall tracer with reusable workspace. Walls cross lattice edges whose
// endpoint spins differ; the trivalent dual pairs them uniquely inside each
// triangle, so tracing is deterministic and loops never intersect.
class LoopExtractor {
 public:
  explicit LoopExtractor(const LatticeMask& mask);
  void extract(const SpinConfig& s, LoopConfig& out, bool annotate_depth = false) const;

 private:
  const LatticeMask* mask_;
  mutable std::vector<std::uint8_t> cross_;    // 3 edge directions per rect site
  mutable std::vector<std::uint8_t> visited_;
};

LoopConfig extract_loops(const SpinConfig& s, const LatticeMask& mask);

// Loop-record stream: little-endian, magic "CLELOOPS", version byte 1.
// Per record: u64 sample index, u32 loop count, then per loop a u32 point
// count followed by (x,y) float64 pairs.
class LoopRecordWriter {
 public:
  explicit LoopRecordWriter(const std::string& path);
  ~LoopRecordWriter();
  void write(std::uint64_t sample_index, const LoopConfig& cfg);

 private:
  struct ImplData;
  ImplData* impl_;
};

struct LoopRecord {
  std::uint64_t sample_index = 0;
  std::vector<std::vector<Complex>> loops;
};

std::vector<LoopRecord> read_loop_records(const std::string& path);

}  // namespace cle
