#include "cle/fits.hpp"

#include <algorithm>
#include <cmath>

#include "cle/error.hpp"

namespace cle {

namespace {

// weighted linear fit value = v0 + v1 * x with complex values
struct LinFit {
  Complex v0{0, 0}, v1{0, 0};
  double var0 = 0.0;  // variance of v0 per real component
  double resid = 0.0;
};

LinFit linear_fit(const std::vector<LadderPoint>& t, const std::vector<double>& x) {
  double s = 0.0, sx = 0.0, sxx = 0.0;
  Complex sy{0, 0}, sxy{0, 0};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double w = t[i].err > 0.0 ? 1.0 / (t[i].err * t[i].err) : 1.0;
    s += w;
    sx += w * x[i];
    sxx += w * x[i] * x[i];
    sy += w * t[i].value;
    sxy += w * x[i] * t[i].value;
  }
  const double det = s * sxx - sx * sx;
  require(std::abs(det) > 1e-300, "extrapolate_ladder: degenerate design");
  LinFit f;
  f.v0 = (sxx * sy - sx * sxy) / det;
  f.v1 = (s * sxy - sx * sy) / det;
  f.var0 = sxx / det;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double w = t[i].err > 0.0 ? 1.0 / (t[i].err * t[i].err) : 1.0;
    f.resid += w * std::norm(t[i].value - f.v0 - f.v1 * x[i]);
  }
  return f;
}

}  // namespace

ExtrapolationResult extrapolate_ladder(std::vector<LadderPoint> table, FitModel model) {
  require(table.size() >= 2, "extrapolate_ladder: need at least two ladder points");
  std::sort(table.begin(), table.end(),
            [](const LadderPoint& a, const LadderPoint& b) { return a.eps > b.eps; });

  ExtrapolationResult out;
  out.table = table;

  auto xs_for = [&](double p) {
    std::vector<double> x(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) x[i] = std::pow(table[i].eps, p);
    return x;
  };

  switch (model) {
    case FitModel::linear: {
      const LinFit f = linear_fit(table, xs_for(1.0));
      out.value = f.v0;
      out.err = std::sqrt(f.var0);
      out.gof = f.resid;
      out.exponent = 1.0;
      out.model = "linear";
      return out;
    }
    case FitModel::richardson: {
      // Neville extrapolation to eps -> 0 assuming leading-power-1 steps
      std::vector<Complex> y;
      std::vector<double> x;
      for (const LadderPoint& lp : table) {
        y.push_back(lp.value);
        x.push_back(lp.eps);
      }
      for (std::size_t lvl = 1; lvl < y.size(); ++lvl)
        for (std::size_t i = y.size() - 1; i >= lvl; --i) {
          y[i] = y[i] + (y[i] - y[i - 1]) * x[i] / (x[i - lvl] - x[i]);
          if (i == lvl) break;
        }
      out.value = y.back();
      double e2 = 0.0;
      for (const LadderPoint& lp : table) e2 += lp.err * lp.err;
      out.err = std::sqrt(e2);  // conservative: Richardson weights are O(1)
      out.exponent = 1.0;
      out.model = "richardson";
      return out;
    }
    case FitModel::power_law: break;
  }

  double best_resid = 1e300, best_p = 1.0;
  LinFit best;
  Complex v0_min{1e300, 1e300}, v0_max{-1e300, -1e300};
  for (int k = 0; k <= 30; ++k) {
    const double p = 0.5 + 1.5 * k / 30.0;
    const LinFit f = linear_fit(table, xs_for(p));
    v0_min = Complex(std::min(v0_min.real(), f.v0.real()), std::min(v0_min.imag(), f.v0.imag()));
    v0_max = Complex(std::max(v0_max.real(), f.v0.real()), std::max(v0_max.imag(), f.v0.imag()));
    if (f.resid < best_resid) {
      best_resid = f.resid;
      best_p = p;
      best = f;
    }
  }
  out.value = best.v0;
  out.err = std::sqrt(best.var0);
  out.gof = best_resid;
  out.exponent = best_p;
  out.model_spread =
      0.5 * std::hypot(v0_max.real() - v0_min.real(), v0_max.imag() - v0_min.imag());
  return out;
}

}  // namespace cle
