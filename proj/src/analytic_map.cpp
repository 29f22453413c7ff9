#include "cle/analytic_map.hpp"

#include <cmath>

namespace cle {

HoloFun HoloFun::monomial(int m) {
  require(m >= 0, "HoloFun::monomial: negative power");
  HoloFun h;
  h.f = [m](Complex z) { return std::pow(z, m); };
  h.d1 = [m](Complex z) { return m >= 1 ? double(m) * std::pow(z, m - 1) : Complex{0, 0}; };
  h.d2 = [m](Complex z) {
    return m >= 2 ? double(m) * double(m - 1) * std::pow(z, m - 2) : Complex{0, 0};
  };
  h.d3 = [m](Complex z) {
    return m >= 3 ? double(m) * double(m - 1) * double(m - 2) * std::pow(z, m - 3) : Complex{0, 0};
  };
  if (m == 0) h.value_at_inf = Complex{1, 0};
  return h;
}

HoloFun HoloFun::cauchy_kernel(Complex w, double theta) {
  HoloFun h;
  const Complex ph = std::polar(1.0, theta);
  h.f = [w, ph](Complex z) { return ph / (w - z); };
  h.d1 = [w, ph](Complex z) { Complex d = w - z; return ph / (d * d); };
  h.d2 = [w, ph](Complex z) { Complex d = w - z; return 2.0 * ph / (d * d * d); };
  h.d3 = [w, ph](Complex z) { Complex d = w - z; return 6.0 * ph / (d * d * d * d); };
  h.value_at_inf = Complex{0, 0};
  return h;
}

std::array<Complex, 4> cauchy_jet(const std::function<Complex(Complex)>& f, Complex w,
                                  double radius, int n) {
  require(radius > 0.0 && n >= 8, "cauchy_jet: bad radius or sample count");
  std::array<Complex, 4> c{};  // Fourier coefficients c_k = f^(k)(w) r^k / k!
  for (int j = 0; j < n; ++j) {
    const double phi = 2.0 * kPi * j / n;
    const Complex e = std::polar(1.0, phi);
    const Complex v = f(w + radius * e);
    c[0] += v;
    c[1] += v * std::conj(e);
    c[2] += v * std::conj(e * e);
    c[3] += v * std::conj(e * e * e);
  }
  const double r2 = radius * radius;
  return {c[0] / double(n), c[1] / (double(n) * radius), 2.0 * c[2] / (double(n) * r2),
          6.0 * c[3] / (double(n) * r2 * radius)};
}

namespace {

Complex jet_eval(const HoloFun& h, Complex z, int order) {
  const std::function<Complex(Complex)>* d = nullptr;
  switch (order) {
    case 0: return h.f(z);
    case 1: d = &h.d1; break;
    case 2: d = &h.d2; break;
    case 3: d = &h.d3; break;
    default: fail_validation("HoloFun: derivative order out of range");
  }
  if (*d) return (*d)(z);
  const double r = 1e-2 * std::max(1.0, std::abs(z));
  return cauchy_jet(h.f, z, r)[order];
}

}  // namespace

struct AnalyticMap::Impl {
  virtual ~Impl() = default;
  virtual CPoint apply(const CPoint& p) const = 0;
  virtual std::array<Complex, 3> derivs(Complex z) const = 0;
  virtual bool in_domain(Complex z) const = 0;
  virtual const MobiusMap* mobius() const { return nullptr; }
};

namespace {

struct MobiusImpl final : AnalyticMap::Impl {
  MobiusMap m;
  explicit MobiusImpl(MobiusMap mm) : m(mm) {}
  CPoint apply(const CPoint& p) const override { return m.apply(p); }
  std::array<Complex, 3> derivs(Complex z) const override {
    return {m.deriv1(z), m.deriv2(z), m.deriv3(z)};
  }
  bool in_domain(Complex z) const override {
    const CPoint p = m.pole();
    return p.is_inf() || std::abs(z - p.z) > 0.0;
  }
  const MobiusMap* mobius() const override { return &m; }
};

struct PinchImpl final : AnalyticMap::Impl {
  Complex w, k;  // k = eps^2 e^{2 i theta} / 16
  double eps;
  PinchImpl(Complex ww, double e, double theta) : w(ww), eps(e) {
    k = e * e * std::polar(1.0, 2.0 * theta) / 16.0;
  }
  CPoint apply(const CPoint& p) const override {
    if (p.is_inf()) return CPoint::infinity();
    if (std::abs(p.z - w) == 0.0) return CPoint::infinity();  // pole
    return CPoint(p.z + k / (w - p.z));
  }
  std::array<Complex, 3> derivs(Complex z) const override {
    const Complex d = w - z;
    return {1.0 + k / (d * d), 2.0 * k / (d * d * d), 6.0 * k / (d * d * d * d)};
  }
  bool in_domain(Complex z) const override { return std::abs(z - w) > eps / 4.0; }
};

struct PolyImpl final : AnalyticMap::Impl {
  std::vector<Complex> c;
  explicit PolyImpl(std::vector<Complex> cc) : c(std::move(cc)) {
    require(c.size() >= 2, "polynomial map: degree >= 1 required");
  }
  Complex horner(Complex z, int drop) const {
    // drop-th derivative by term-wise differentiation
    Complex acc{0, 0};
    for (int i = int(c.size()) - 1; i >= drop; --i) {
      double f = 1.0;
      for (int q = 0; q < drop; ++q) f *= double(i - q);
      acc = acc * z + f * c[i];
    }
    return acc;
  }
  CPoint apply(const CPoint& p) const override {
    if (p.is_inf()) return CPoint::infinity();
    return CPoint(horner(p.z, 0));
  }
  std::array<Complex, 3> derivs(Complex z) const override {
    return {horner(z, 1), horner(z, 2), horner(z, 3)};
  }
  bool in_domain(Complex) const override { return true; }
};

struct PerturbImpl final : AnalyticMap::Impl {
  HoloFun h;
  double eta;
  std::function<bool(Complex)> dom;
  PerturbImpl(HoloFun hh, double e, std::function<bool(Complex)> d)
      : h(std::move(hh)), eta(e), dom(std::move(d)) {}
  CPoint apply(const CPoint& p) const override {
    if (p.is_inf()) {
      require(h.value_at_inf.has_value(), "perturbation map: not defined at infinity");
      return CPoint::infinity();
    }
    return CPoint(p.z + eta * h.f(p.z));
  }
  std::array<Complex, 3> derivs(Complex z) const override {
    return {1.0 + eta * jet_eval(h, z, 1), eta * jet_eval(h, z, 2), eta * jet_eval(h, z, 3)};
  }
  bool in_domain(Complex z) const override {
    if (dom && !dom(z)) return false;
    return std::abs(1.0 + eta * jet_eval(h, z, 1)) > 0.0;
  }
};

struct JoukowskiImpl final : AnalyticMap::Impl {
  Complex w, s;  // s = eps e^{i theta}
  double b;
  JoukowskiImpl(Complex ww, double eps, double theta, double bb)
      : w(ww), s(eps * std::polar(1.0, theta)), b(bb) {}
  CPoint apply(const CPoint& p) const override {
    if (p.is_inf()) return CPoint::infinity();
    if (std::abs(p.z) == 0.0) return CPoint::infinity();
    return CPoint(w + s * (b / 4.0 * p.z - 1.0 / (4.0 * b * p.z)));
  }
  std::array<Complex, 3> derivs(Complex z) const override {
    const Complex z2 = z * z;
    return {s * (b / 4.0 + 1.0 / (4.0 * b * z2)), -s / (2.0 * b * z2 * z),
            3.0 * s / (2.0 * b * z2 * z2)};
  }
  bool in_domain(Complex z) const override { return std::abs(z) > 1.0 / b; }
};

struct CustomImpl final : AnalyticMap::Impl {
  std::function<Complex(Complex)> f, d1, d2, d3;
  std::function<bool(Complex)> dom;
  CPoint apply(const CPoint& p) const override {
    require(!p.is_inf(), "custom map: not defined at infinity");
    const Complex v = f(p.z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return CPoint::infinity();
    return CPoint(v);
  }
  std::array<Complex, 3> derivs(Complex z) const override {
    if (d1 && d2 && d3) return {d1(z), d2(z), d3(z)};
    const auto jet = cauchy_jet(f, z, 1e-2 * std::max(1.0, std::abs(z)));
    return {d1 ? d1(z) : jet[1], d2 ? d2(z) : jet[2], d3 ? d3(z) : jet[3]};
  }
  bool in_domain(Complex z) const override { return dom ? dom(z) : true; }
};

struct ComposeImpl final : AnalyticMap::Impl {
  AnalyticMap outer, inner;
  std::optional<MobiusMap> flat;  // set when both sides are global maps
  ComposeImpl(AnalyticMap o, AnalyticMap i) : outer(std::move(o)), inner(std::move(i)) {
    if (outer.as_mobius() && inner.as_mobius())
      flat = outer.as_mobius()->compose(*inner.as_mobius());
  }
  CPoint apply(const CPoint& p) const override {
    if (flat) return flat->apply(p);
    return outer.apply(inner.apply(p));
  }
  std::array<Complex, 3> derivs(Complex z) const override {
    const auto gi = inner.derivs(z);
    const Complex u = inner.value(z);
    const auto go = outer.derivs(u);
    const Complex f1 = go[0] * gi[0];
    const Complex f2 = go[1] * gi[0] * gi[0] + go[0] * gi[1];
    const Complex f3 =
        go[2] * gi[0] * gi[0] * gi[0] + 3.0 * go[1] * gi[0] * gi[1] + go[0] * gi[2];
    return {f1, f2, f3};
  }
  bool in_domain(Complex z) const override {
    if (!inner.in_domain(z)) return false;
    const CPoint u = inner.apply(CPoint(z));
    return !u.is_inf() && outer.in_domain(u.z);
  }
  const MobiusMap* mobius() const override { return flat ? &*flat : nullptr; }
};

}  // namespace

AnalyticMap::AnalyticMap() : impl_(std::make_shared<MobiusImpl>(MobiusMap::identity())) {}

AnalyticMap AnalyticMap::identity() { return AnalyticMap(); }

AnalyticMap AnalyticMap::mobius(const MobiusMap& m) {
  return AnalyticMap(std::make_shared<MobiusImpl>(m));
}

AnalyticMap AnalyticMap::pinch(Complex w, double eps, double theta) {
  require(eps > 0.0, "pinch map: eps must be positive");
  return AnalyticMap(std::make_shared<PinchImpl>(w, eps, theta));
}

AnalyticMap AnalyticMap::polynomial(std::vector<Complex> coeffs) {
  return AnalyticMap(std::make_shared<PolyImpl>(std::move(coeffs)));
}

AnalyticMap AnalyticMap::perturbation(HoloFun h, double eta, std::function<bool(Complex)> domain) {
  require(bool(h.f), "perturbation map: missing value callable");
  return AnalyticMap(std::make_shared<PerturbImpl>(std::move(h), eta, std::move(domain)));
}

AnalyticMap AnalyticMap::joukowski(Complex w, double eps, double theta, double b) {
  require(eps > 0.0 && b > 1.0, "joukowski map: need eps > 0 and b > 1");
  return AnalyticMap(std::make_shared<JoukowskiImpl>(w, eps, theta, b));
}

AnalyticMap AnalyticMap::elongated_disk(double bt) {
  require(bt > 1.0, "elongated_disk: btilde > 1 required");
  auto imp = std::make_shared<CustomImpl>();
  imp->f = [bt](Complex z) { return bt * z / (bt * bt + z * z); };
  imp->d1 = [bt](Complex z) {
    const Complex d = bt * bt + z * z;
    return bt * (bt * bt - z * z) / (d * d);
  };
  imp->d2 = [bt](Complex z) {
    const Complex d = bt * bt + z * z;
    return -2.0 * bt * z * (3.0 * bt * bt - z * z) / (d * d * d);
  };
  imp->d3 = [bt](Complex z) {
    const Complex d = bt * bt + z * z;
    const Complex z2 = z * z;
    return 6.0 * bt * (-bt * bt * bt * bt + 6.0 * bt * bt * z2 - z2 * z2) / (d * d * d * d);
  };
  imp->dom = [bt](Complex z) { return std::abs(z) < bt; };
  return AnalyticMap(std::move(imp));
}

AnalyticMap AnalyticMap::custom(std::function<Complex(Complex)> f,
                                std::function<Complex(Complex)> d1,
                                std::function<Complex(Complex)> d2,
                                std::function<Complex(Complex)> d3,
                                std::function<bool(Complex)> domain) {
  require(bool(f), "custom map: missing value callable");
  auto imp = std::make_shared<CustomImpl>();
  imp->f = std::move(f);
  imp->d1 = std::move(d1);
  imp->d2 = std::move(d2);
  imp->d3 = std::move(d3);
  imp->dom = std::move(domain);
  return AnalyticMap(std::move(imp));
}

AnalyticMap AnalyticMap::after(const AnalyticMap& inner) const {
  return AnalyticMap(std::make_shared<ComposeImpl>(*this, inner));
}

CPoint AnalyticMap::apply(const CPoint& p) const { return impl_->apply(p); }

Complex AnalyticMap::value(Complex z) const {
  const CPoint r = impl_->apply(CPoint(z));
  require(!r.is_inf(), "AnalyticMap::value: hit a pole; use apply()");
  return r.z;
}

std::array<Complex, 3> AnalyticMap::derivs(Complex z) const { return impl_->derivs(z); }

Complex AnalyticMap::deriv(Complex z, int order) const {
  require(order >= 1 && order <= 3, "AnalyticMap::deriv: order in 1..3");
  return impl_->derivs(z)[order - 1];
}

bool AnalyticMap::in_domain(Complex z) const { return impl_->in_domain(z); }

const MobiusMap* AnalyticMap::as_mobius() const { return impl_->mobius(); }

}  // namespace cle
