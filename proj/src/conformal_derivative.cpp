#include "cle/conformal_derivative.hpp"

#include <algorithm>
#include <cmath>

namespace cle {

DirectionField DirectionField::cauchy_kernel(Complex w, double theta) {
  DirectionField d;
  d.fun = HoloFun::cauchy_kernel(w, theta);
  d.name = "cauchy_kernel";
  return d;
}

DirectionField DirectionField::monomial(int m, Complex coeff) {
  DirectionField d;
  HoloFun base = HoloFun::monomial(m);
  d.fun.f = [base, coeff](Complex z) { return coeff * base.f(z); };
  d.fun.d1 = [base, coeff](Complex z) { return coeff * base.d1(z); };
  d.fun.d2 = [base, coeff](Complex z) { return coeff * base.d2(z); };
  d.fun.d3 = [base, coeff](Complex z) { return coeff * base.d3(z); };
  if (base.value_at_inf) d.fun.value_at_inf = coeff * *base.value_at_inf;
  d.name = "monomial";
  return d;
}

DirectionField DirectionField::sum(const DirectionField& a, const DirectionField& b) {
  DirectionField d;
  const HoloFun fa = a.fun, fb = b.fun;
  d.fun.f = [fa, fb](Complex z) { return fa.f(z) + fb.f(z); };
  if (fa.d1 && fb.d1) d.fun.d1 = [fa, fb](Complex z) { return fa.d1(z) + fb.d1(z); };
  if (fa.d2 && fb.d2) d.fun.d2 = [fa, fb](Complex z) { return fa.d2(z) + fb.d2(z); };
  if (fa.d3 && fb.d3) d.fun.d3 = [fa, fb](Complex z) { return fa.d3(z) + fb.d3(z); };
  if (fa.value_at_inf && fb.value_at_inf)
    d.fun.value_at_inf = *fa.value_at_inf + *fb.value_at_inf;
  d.name = a.name + "+" + b.name;
  return d;
}

BoundaryFunctional BoundaryFunctional::closed_form(Sigma base,
                                                   std::function<double(const Sigma&)> f) {
  BoundaryFunctional b;
  b.mc_ = false;
  b.eval_ = [base = std::move(base), f = std::move(f)](const AnalyticMap& flow, std::uint64_t) {
    FunctionalSample s;
    s.value = f(base.transformed(flow));
    return s;
  };
  return b;
}

BoundaryFunctional BoundaryFunctional::monte_carlo(Eval eval) {
  BoundaryFunctional b;
  b.mc_ = true;
  b.eval_ = std::move(eval);
  return b;
}

std::vector<double> default_eta_ladder(bool monte_carlo) {
  if (monte_carlo) return {1e-2, 5e-3, 2.5e-3};
  return {1e-4, 1e-5, 1e-6, 1e-7};
}

namespace {

// Lagrange coefficients of extrapolation to 0 in x = eta^2.
std::vector<double> neville_coeffs(std::span<const double> etas) {
  const std::size_t n = etas.size();
  std::vector<double> c(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = etas[i] * etas[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double xj = etas[j] * etas[j];
      c[i] *= xj / (xj - xi);
    }
  }
  return c;
}

struct RungPair {
  FunctionalSample plus, minus;
  double eta;
};

// Finite-difference rungs for one direction field, ladder-truncated when a
// rung fails to evaluate.
std::vector<RungPair> collect_rungs(const BoundaryFunctional& F, const DirectionField& h,
                                    std::span<const double> ladder, std::uint64_t pert_base) {
  std::vector<RungPair> rungs;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double eta = ladder[i];
    try {
      RungPair r;
      r.eta = eta;
      r.plus = F.eval(h.flow(eta), pert_base + 2 * i);
      r.minus = F.eval(h.flow(-eta), pert_base + 2 * i + 1);
      rungs.push_back(std::move(r));
    } catch (const Error&) {
      break;  // non-conformal or otherwise unevaluable rung: truncate
    }
  }
  require(!rungs.empty(), "directional_derivative: no evaluable rung in the eta ladder");
  return rungs;
}

}  // namespace

Estimate directional_derivative(const BoundaryFunctional& F, const DirectionField& h,
                                std::span<const double> eta_ladder) {
  require(!eta_ladder.empty(), "directional_derivative: empty eta ladder");
  const auto rungs = collect_rungs(F, h, eta_ladder, 0);
  std::vector<double> etas, dvals;
  for (const RungPair& r : rungs) {
    etas.push_back(r.eta);
    dvals.push_back((r.plus.value - r.minus.value) / (2.0 * r.eta));
  }
  const auto coeff = neville_coeffs(etas);

  Estimate e;
  for (std::size_t i = 0; i < dvals.size(); ++i) e.mean += coeff[i] * dvals[i];
  e.n_samples = 1;

  const std::size_t nb = rungs.front().plus.bins.size();
  bool paired = F.is_monte_carlo() && nb >= 2;
  for (const RungPair& r : rungs)
    paired = paired && r.plus.bins.size() == nb && r.minus.bins.size() == nb;

  if (paired) {
    // jackknife of the full Neville combination over shared bins
    std::vector<double> jk(nb, 0.0);
    double jk_mean = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      double v = 0.0;
      for (std::size_t i = 0; i < rungs.size(); ++i) {
        double sp = 0.0, sm = 0.0;
        for (std::size_t q = 0; q < nb; ++q) {
          if (q == b) continue;
          sp += rungs[i].plus.bins[q];
          sm += rungs[i].minus.bins[q];
        }
        const double d = (sp - sm) / (double(nb - 1) * 2.0 * rungs[i].eta);
        v += coeff[i] * d;
      }
      jk[b] = v;
      jk_mean += v;
    }
    jk_mean /= double(nb);
    double var = 0.0;
    for (double v : jk) var += (v - jk_mean) * (v - jk_mean);
    e.std_err = std::sqrt(var * double(nb - 1) / double(nb));
    e.n_samples = nb;
  } else if (dvals.size() >= 2) {
    // truncation estimate from the last Neville refinement
    double prev = 0.0;
    const auto c2 = neville_coeffs(std::span<const double>(etas.data(), etas.size() - 1));
    for (std::size_t i = 0; i + 1 < dvals.size(); ++i) prev += c2[i] * dvals[i];
    e.std_err = std::abs(e.mean - prev);
  }
  return e;
}

ComplexEstimate fourier_mode_derivative(const BoundaryFunctional& F, Complex w, int n_theta,
                                        std::span<const double> eta_ladder) {
  require(n_theta >= 8 && n_theta % 4 == 0, "fourier_mode_derivative: n_theta >= 8, divisible by 4");
  require(!eta_ladder.empty(), "fourier_mode_derivative: empty eta ladder");

  struct ThetaData {
    Complex phase;
    std::vector<RungPair> rungs;
  };
  std::vector<ThetaData> data;
  std::size_t min_rungs = eta_ladder.size();
  for (int j = 0; j < n_theta; ++j) {
    const double theta = 2.0 * kPi * j / n_theta;
    ThetaData td;
    td.phase = std::polar(1.0, -theta) / double(n_theta);
    td.rungs = collect_rungs(F, DirectionField::cauchy_kernel(w, theta), eta_ladder,
                             std::uint64_t(j) * 64);
    min_rungs = std::min(min_rungs, td.rungs.size());
    data.push_back(std::move(td));
  }
  // uniform ladder depth across theta keeps the quadrature exact
  std::vector<double> etas;
  for (std::size_t i = 0; i < min_rungs; ++i) etas.push_back(data[0].rungs[i].eta);
  const auto coeff = neville_coeffs(etas);

  auto combine = [&](const std::function<double(const FunctionalSample&)>& reduce) {
    Complex acc{0, 0};
    for (const ThetaData& td : data)
      for (std::size_t i = 0; i < min_rungs; ++i) {
        const double d =
            (reduce(td.rungs[i].plus) - reduce(td.rungs[i].minus)) / (2.0 * td.rungs[i].eta);
        acc += td.phase * coeff[i] * d;
      }
    return acc;
  };

  ComplexEstimate out;
  out.mean = combine([](const FunctionalSample& s) { return s.value; });

  std::size_t nb = data[0].rungs[0].plus.bins.size();
  bool paired = F.is_monte_carlo() && nb >= 2;
  for (const ThetaData& td : data)
    for (std::size_t i = 0; i < min_rungs; ++i)
      paired = paired && td.rungs[i].plus.bins.size() == nb &&
               td.rungs[i].minus.bins.size() == nb;

  if (paired) {
    std::vector<Complex> jk(nb);
    Complex jk_mean{0, 0};
    for (std::size_t b = 0; b < nb; ++b) {
      jk[b] = combine([&](const FunctionalSample& s) {
        double acc = 0.0;
        for (std::size_t q = 0; q < nb; ++q)
          if (q != b) acc += s.bins[q];
        return acc / double(nb - 1);
      });
      jk_mean += jk[b];
    }
    jk_mean /= double(nb);
    const double fac = double(nb - 1) / double(nb);
    for (const Complex& v : jk) {
      const Complex d = v - jk_mean;
      out.var_re += fac * d.real() * d.real();
      out.var_im += fac * d.imag() * d.imag();
      out.cov_reim += fac * d.real() * d.imag();
    }
    out.n_samples = nb;
  } else if (min_rungs >= 2) {
    // truncation estimate: difference against the shallower extrapolation
    std::vector<double> etas2(etas.begin(), etas.end() - 1);
    const auto c2 = neville_coeffs(etas2);
    Complex prev{0, 0};
    for (const ThetaData& td : data)
      for (std::size_t i = 0; i + 1 < min_rungs; ++i) {
        const double d = (td.rungs[i].plus.value - td.rungs[i].minus.value) /
                         (2.0 * td.rungs[i].eta);
        prev += td.phase * c2[i] * d;
      }
    const Complex diff = out.mean - prev;
    out.var_re = diff.real() * diff.real();
    out.var_im = diff.imag() * diff.imag();
    out.n_samples = 1;
  }
  return out;
}

ChargeFit charge_fit(std::span<const Complex> zs, std::span<const Complex> deltas,
                     std::span<const double> errs) {
  const std::size_t n = zs.size();
  require(n >= 3 && deltas.size() == n, "charge_fit: need at least 3 samples");
  require(errs.empty() || errs.size() == n, "charge_fit: error vector size mismatch");
  double rmin = 1e300, rmax = 0.0;
  for (const Complex& z : zs) {
    rmin = std::min(rmin, std::abs(z));
    rmax = std::max(rmax, std::abs(z));
  }
  require(rmax >= 9.99 * rmin, "charge_fit: fit window must span at least a decade");

  auto weighted_ls = [&](bool with_cubic, Complex coeffs[3], double var4[1]) {
    // columns: z^-4, z^-5[, z^-3]
    const int K = with_cubic ? 3 : 2;
    Complex ata[9] = {};
    Complex atb[3] = {};
    for (std::size_t k = 0; k < n; ++k) {
      const double w = errs.empty() || errs[k] <= 0.0 ? 1.0 : 1.0 / (errs[k] * errs[k]);
      Complex col[3];
      const Complex z4 = std::pow(zs[k], -4);
      col[0] = z4;
      col[1] = z4 / zs[k];
      col[2] = z4 * zs[k];
      for (int a = 0; a < K; ++a) {
        for (int b = 0; b < K; ++b) ata[a * 3 + b] += w * std::conj(col[a]) * col[b];
        atb[a] += w * std::conj(col[a]) * deltas[k];
      }
    }
    // solve K x K hermitian system by Gaussian elimination
    Complex m[3][4];
    for (int a = 0; a < K; ++a) {
      for (int b = 0; b < K; ++b) m[a][b] = ata[a * 3 + b];
      m[a][3] = atb[a];
    }
    for (int p = 0; p < K; ++p) {
      int piv = p;
      for (int r = p + 1; r < K; ++r)
        if (std::abs(m[r][p]) > std::abs(m[piv][p])) piv = r;
      std::swap(m[p], m[piv]);
      require(std::abs(m[p][p]) > 1e-300, "charge_fit: singular design matrix");
      for (int r = 0; r < K; ++r) {
        if (r == p) continue;
        const Complex f = m[r][p] / m[p][p];
        for (int c2 = p; c2 <= 3; ++c2) m[r][c2] -= f * m[p][c2];
      }
    }
    for (int a = 0; a < K; ++a) coeffs[a] = m[a][3] / m[a][a];
    // variance of the z^-4 coefficient from the inverse normal matrix
    // (diagonal entry via Cramer on the reduced system)
    Complex inv00{0, 0};
    {
      // redo elimination on ata to get (ata)^-1_{00}
      Complex mm[3][6] = {};
      for (int a = 0; a < K; ++a) {
        for (int b = 0; b < K; ++b) mm[a][b] = ata[a * 3 + b];
        mm[a][3 + a] = 1.0;
      }
      for (int p = 0; p < K; ++p) {
        int piv = p;
        for (int r = p + 1; r < K; ++r)
          if (std::abs(mm[r][p]) > std::abs(mm[piv][p])) piv = r;
        std::swap(mm[p], mm[piv]);
        for (int r = 0; r < K; ++r) {
          if (r == p) continue;
          const Complex f = mm[r][p] / mm[p][p];
          for (int c2 = 0; c2 < 3 + K; ++c2) mm[r][c2] -= f * mm[p][c2];
        }
      }
      inv00 = mm[0][3] / mm[0][0];
    }
    var4[0] = std::abs(inv00);
    double chi2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double w = errs.empty() || errs[k] <= 0.0 ? 1.0 : 1.0 / (errs[k] * errs[k]);
      const Complex z4 = std::pow(zs[k], -4);
      Complex fit = coeffs[0] * z4 + coeffs[1] * z4 / zs[k];
      if (with_cubic) fit += coeffs[2] * z4 * zs[k];
      chi2 += w * std::norm(deltas[k] - fit);
    }
    return chi2;
  };

  ChargeFit out;
  Complex c2[3];
  double var4;
  out.chi2 = weighted_ls(false, c2, &var4);
  out.gamma_complex = 32.0 * c2[0];
  out.coeff5 = c2[1];
  out.gamma.mean = out.gamma_complex.real();
  out.gamma.std_err = 32.0 * std::sqrt(var4);
  out.gamma.n_samples = n;

  // slow-tail detector: a z^-3 term that dominates at the window edge
  Complex c3[3];
  double var4b;
  weighted_ls(true, c3, &var4b);
  const double slow = std::abs(c3[2]) / (rmax * rmax * rmax);
  const double fast = std::abs(c3[0]) / std::pow(rmax, 4) + std::abs(c3[1]) / std::pow(rmax, 5);
  out.partition_violation = slow > 2.0 * fast && slow > 1e-14;
  return out;
}

}  // namespace cle
