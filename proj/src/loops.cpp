#include "cle/loops.hpp"

#include <cstring>
#include <fstream>

#include "cle/polyline.hpp"

namespace cle {

namespace {

// Edge directions anchored at (n1,n2):
//   0: (n1,n2)-(n1+1,n2)   1: (n1,n2)-(n1,n2+1)   2: (n1+1,n2)-(n1,n2+1)
// Triangles: U(n1,n2) has edges {0,1,2}@(n1,n2); D(n1,n2) has edges
// 1@(n1+1,n2), 0@(n1,n2+1), 2@(n1,n2).
struct Tri {
  bool up;
  int n1, n2;
  bool operator==(const Tri& o) const { return up == o.up && n1 == o.n1 && n2 == o.n2; }
};

struct Edge {
  int n1, n2, dir;
  bool operator==(const Edge& o) const { return n1 == o.n1 && n2 == o.n2 && dir == o.dir; }
};

void edge_sites(const Edge& e, int& a1, int& a2, int& b1, int& b2) {
  switch (e.dir) {
    case 0: a1 = e.n1; a2 = e.n2; b1 = e.n1 + 1; b2 = e.n2; break;
    case 1: a1 = e.n1; a2 = e.n2; b1 = e.n1; b2 = e.n2 + 1; break;
    default: a1 = e.n1 + 1; a2 = e.n2; b1 = e.n1; b2 = e.n2 + 1; break;
  }
}

Tri other_triangle(const Edge& e, const Tri& t) {
  Tri u{true, e.n1, e.n2};
  Tri d{false, 0, 0};
  switch (e.dir) {
    case 0: d = {false, e.n1, e.n2 - 1}; break;
    case 1: d = {false, e.n1 - 1, e.n2}; break;
    default: d = {false, e.n1, e.n2}; break;
  }
  return (t == u) ? d : u;
}

void triangle_edges(const Tri& t, Edge out[3]) {
  if (t.up) {
    out[0] = {t.n1, t.n2, 0};
    out[1] = {t.n1, t.n2, 1};
    out[2] = {t.n1, t.n2, 2};
  } else {
    out[0] = {t.n1 + 1, t.n2, 1};
    out[1] = {t.n1, t.n2 + 1, 0};
    out[2] = {t.n1, t.n2, 2};
  }
}

}  // namespace

LoopExtractor::LoopExtractor(const LatticeMask& mask) : mask_(&mask) {
  cross_.assign(mask.rect_size() * 3, 0);
  visited_.assign(mask.rect_size() * 3, 0);
}

void LoopExtractor::extract(const SpinConfig& s, LoopConfig& out, bool annotate_depth) const {
  const LatticeMask& m = *mask_;
  out.clear();
  std::fill(cross_.begin(), cross_.end(), 0);
  std::fill(visited_.begin(), visited_.end(), 0);

  auto eidx = [&](const Edge& e) { return m.rect_index(e.n1, e.n2) * 3 + std::size_t(e.dir); };

  // crossing flags; walls always touch an in-mask site, and the rect is
  // padded, so edges anchored strictly inside the rect cover everything
  std::vector<Edge> seeds;
  for (int n2 = m.n2_lo; n2 < m.n2_hi; ++n2)
    for (int n1 = m.n1_lo; n1 < m.n1_hi; ++n1) {
      const int s00 = s.spin(n1, n2);
      const int s10 = s.spin(n1 + 1, n2);
      const int s01 = s.spin(n1, n2 + 1);
      const std::size_t base = m.rect_index(n1, n2) * 3;
      if (s00 != s10) {
        cross_[base + 0] = 1;
        seeds.push_back({n1, n2, 0});
      }
      if (s00 != s01) {
        cross_[base + 1] = 1;
        seeds.push_back({n1, n2, 1});
      }
      if (s10 != s01) {
        cross_[base + 2] = 1;
        seeds.push_back({n1, n2, 2});
      }
    }

  auto midpoint = [&](const Edge& e) {
    int a1, a2, b1, b2;
    edge_sites(e, a1, a2, b1, b2);
    return 0.5 * (m.lattice.position(a1, a2) + m.lattice.position(b1, b2));
  };

  for (const Edge& e0 : seeds) {
    if (visited_[eidx(e0)]) continue;
    Loop loop;
    loop.xmin = loop.ymin = 1e300;
    loop.xmax = loop.ymax = -1e300;

    Edge e = e0;
    Tri tri{true, e0.n1, e0.n2};  // every edge dir has U(n1,n2) on one side
    do {
      visited_[eidx(e)] = 1;
      const Complex p = midpoint(e);
      loop.pts.push_back(p);
      loop.xmin = std::min(loop.xmin, p.real());
      loop.xmax = std::max(loop.xmax, p.real());
      loop.ymin = std::min(loop.ymin, p.imag());
      loop.ymax = std::max(loop.ymax, p.imag());

      // continue through tri: the unique other crossing edge
      Edge tes[3];
      triangle_edges(tri, tes);
      Edge next = e;
      bool found = false;
      for (const Edge& te : tes) {
        if (te == e) continue;
        if (cross_[eidx(te)]) {
          next = te;
          found = true;
          break;
        }
      }
      require(found, "extract_loops: broken wall pairing (corrupt spin field)");
      tri = other_triangle(next, tri);
      e = next;
    } while (!(e == e0));

    out.total_edges += loop.pts.size();
    out.loops.push_back(std::move(loop));
  }

  if (annotate_depth) {
    for (std::size_t i = 0; i < out.loops.size(); ++i) {
      Loop& li = out.loops[i];
      const Complex rep = li.pts.front();
      int depth = 0;
      for (std::size_t j = 0; j < out.loops.size(); ++j) {
        if (i == j) continue;
        const Loop& lj = out.loops[j];
        if (!lj.bbox_contains(rep)) continue;
        BoundaryCurve bc;
        bc.pts = lj.pts;
        if (winding_number(bc, rep) != 0) ++depth;
      }
      li.depth = depth;
    }
  }
}

LoopConfig extract_loops(const SpinConfig& s, const LatticeMask& mask) {
  LoopExtractor ex(mask);
  LoopConfig out;
  ex.extract(s, out, true);
  return out;
}

// ---- loop-record file ----

namespace {

constexpr char kMagic[8] = {'C', 'L', 'E', 'L', 'O', 'O', 'P', 'S'};
constexpr std::uint8_t kVersion = 1;

template <class T>
void put_le(std::ofstream& os, T v) {
  unsigned char buf[sizeof(T)];
  std::uint64_t bits;
  if constexpr (sizeof(T) == 8) {
    std::memcpy(&bits, &v, 8);
  } else {
    bits = std::uint64_t(v);
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = (bits >> (8 * i)) & 0xFF;
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

void put_f64(std::ofstream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_le<std::uint64_t>(os, bits);
}

std::uint64_t get_le(std::ifstream& is, std::size_t bytes) {
  unsigned char buf[8] = {0};
  is.read(reinterpret_cast<char*>(buf), std::streamsize(bytes));
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bytes; ++i) v |= std::uint64_t(buf[i]) << (8 * i);
  return v;
}

}  // namespace

struct LoopRecordWriter::ImplData {
  std::ofstream os;
};

LoopRecordWriter::LoopRecordWriter(const std::string& path) : impl_(new ImplData) {
  impl_->os.open(path, std::ios::binary | std::ios::trunc);
  require(impl_->os.good(), "LoopRecordWriter: cannot open " + path);
  impl_->os.write(kMagic, 8);
  impl_->os.put(char(kVersion));
}

LoopRecordWriter::~LoopRecordWriter() { delete impl_; }

void LoopRecordWriter::write(std::uint64_t sample_index, const LoopConfig& cfg) {
  put_le<std::uint64_t>(impl_->os, sample_index);
  put_le<std::uint32_t>(impl_->os, std::uint32_t(cfg.loops.size()));
  for (const Loop& l : cfg.loops) {
    put_le<std::uint32_t>(impl_->os, std::uint32_t(l.pts.size()));
    for (const Complex& p : l.pts) {
      put_f64(impl_->os, p.real());
      put_f64(impl_->os, p.imag());
    }
  }
}

std::vector<LoopRecord> read_loop_records(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(is.good(), "read_loop_records: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  require(is.good() && std::memcmp(magic, kMagic, 8) == 0, "read_loop_records: bad magic");
  const int version = is.get();
  require(version == kVersion, "read_loop_records: unsupported version");

  std::vector<LoopRecord> out;
  while (true) {
    LoopRecord rec;
    rec.sample_index = get_le(is, 8);
    if (!is.good() || is.eof()) break;
    const std::uint32_t nloops = std::uint32_t(get_le(is, 4));
    rec.loops.resize(nloops);
    for (std::uint32_t i = 0; i < nloops; ++i) {
      const std::uint32_t npts = std::uint32_t(get_le(is, 4));
      rec.loops[i].reserve(npts);
      for (std::uint32_t j = 0; j < npts; ++j) {
        std::uint64_t xb = get_le(is, 8), yb = get_le(is, 8);
        double x, y;
        std::memcpy(&x, &xb, 8);
        std::memcpy(&y, &yb, 8);
        rec.loops[i].push_back(Complex{x, y});
      }
    }
    require(is.good(), "read_loop_records: truncated record");
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace cle
