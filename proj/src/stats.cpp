#include "cle/stats.hpp"

#include <algorithm>
#include <cmath>

#include "cle/error.hpp"

namespace cle {

Estimate linear_combination(std::span<const Estimate> es, std::span<const double> coeffs) {
  require(es.size() == coeffs.size(), "linear_combination: size mismatch");
  Estimate out;
  double var = 0.0;
  for (std::size_t i = 0; i < es.size(); ++i) {
    out.mean += coeffs[i] * es[i].mean;
    var += coeffs[i] * coeffs[i] * es[i].std_err * es[i].std_err;
    out.n_samples = std::max(out.n_samples, es[i].n_samples);
  }
  out.std_err = std::sqrt(var);
  return out;
}

ObservableSet::ObservableSet(std::vector<std::string> names, std::size_t bin_len)
    : names_(std::move(names)), bin_len_(std::max<std::size_t>(bin_len, 1)) {
  const std::size_t k = names_.size();
  require(k > 0, "ObservableSet: no observables");
  cur_sum_.assign(k, 0.0);
  cur_cnt_.assign(k, 0.0);
  naive_sum_.assign(k, 0.0);
  naive_sumsq_.assign(k, 0.0);
  naive_cnt_.assign(k, 0);
  discarded_.assign(k, 0);
}

std::size_t ObservableSet::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  fail_validation("ObservableSet: unknown observable " + name);
}

void ObservableSet::add_sample(std::span<const double> values,
                               std::span<const std::uint8_t> valid) {
  require(values.size() == names_.size(), "ObservableSet: sample width mismatch");
  for (std::size_t k = 0; k < values.size(); ++k) {
    const bool ok = valid.empty() || valid[k] != 0;
    if (!ok) {
      ++discarded_[k];
      continue;
    }
    cur_sum_[k] += values[k];
    cur_cnt_[k] += 1.0;
    naive_sum_[k] += values[k];
    naive_sumsq_[k] += values[k] * values[k];
    ++naive_cnt_[k];
  }
  ++n_samples_;
  if (++in_bin_ == bin_len_) {
    bins_sum_.push_back(cur_sum_);
    bins_cnt_.push_back(cur_cnt_);
    std::fill(cur_sum_.begin(), cur_sum_.end(), 0.0);
    std::fill(cur_cnt_.begin(), cur_cnt_.end(), 0.0);
    in_bin_ = 0;
  }
}

void ObservableSet::merge(const ObservableSet& other) {
  require(other.names_ == names_, "ObservableSet::merge: observable mismatch");
  require(other.in_bin_ == 0, "ObservableSet::merge: other has a partial bin");
  n_samples_ += other.n_samples_;
  for (std::size_t k = 0; k < names_.size(); ++k) {
    naive_sum_[k] += other.naive_sum_[k];
    naive_sumsq_[k] += other.naive_sumsq_[k];
    naive_cnt_[k] += other.naive_cnt_[k];
    discarded_[k] += other.discarded_[k];
  }
  bins_sum_.insert(bins_sum_.end(), other.bins_sum_.begin(), other.bins_sum_.end());
  bins_cnt_.insert(bins_cnt_.end(), other.bins_cnt_.begin(), other.bins_cnt_.end());
}

double ObservableSet::total_sum(std::size_t k) const {
  double s = 0.0;
  for (const auto& b : bins_sum_) s += b[k];
  return s;
}

double ObservableSet::total_count(std::size_t k) const {
  double s = 0.0;
  for (const auto& b : bins_cnt_) s += b[k];
  return s;
}

Estimate ObservableSet::estimate(std::size_t k) const {
  Estimate e;
  const std::size_t nb = bins_sum_.size();
  require(nb >= 2, "ObservableSet::estimate: need at least two complete bins");
  const double cnt = total_count(k);
  require(cnt > 0.0, "ObservableSet::estimate: all samples discarded");
  e.mean = total_sum(k) / cnt;
  e.n_samples = std::size_t(cnt);

  // variance of binned means (bins weighted by their valid counts)
  double var = 0.0;
  std::size_t used = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    if (bins_cnt_[b][k] <= 0.0) continue;
    const double bm = bins_sum_[b][k] / bins_cnt_[b][k];
    var += (bm - e.mean) * (bm - e.mean);
    ++used;
  }
  if (used >= 2) {
    var /= double(used - 1) * double(used);
    e.std_err = std::sqrt(var);
  }
  // tau from naive vs binned variance
  if (naive_cnt_[k] >= 2) {
    const double naive_var = (naive_sumsq_[k] - naive_sum_[k] * naive_sum_[k] / double(naive_cnt_[k])) /
                             double(naive_cnt_[k] - 1);
    const double naive_err2 = naive_var / double(naive_cnt_[k]);
    if (naive_err2 > 0.0) e.tau_int = std::max(0.5, 0.5 * (e.std_err * e.std_err) / naive_err2);
  }
  return e;
}

ComplexEstimate ObservableSet::jackknife(const Statistic& f) const {
  const std::size_t nb = bins_sum_.size();
  const std::size_t K = names_.size();
  require(nb >= 2, "jackknife: need at least two complete bins");

  std::vector<double> sums(K, 0.0), cnts(K, 0.0);
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t k = 0; k < K; ++k) {
      sums[k] += bins_sum_[b][k];
      cnts[k] += bins_cnt_[b][k];
    }
  const Complex full = f(sums, cnts);

  std::vector<double> s(K), c(K);
  Complex jk_mean{0, 0};
  std::vector<Complex> jk(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t k = 0; k < K; ++k) {
      s[k] = sums[k] - bins_sum_[b][k];
      c[k] = cnts[k] - bins_cnt_[b][k];
    }
    jk[b] = f(s, c);
    jk_mean += jk[b];
  }
  jk_mean /= double(nb);

  ComplexEstimate out;
  out.mean = full;
  out.n_samples = n_samples_;
  const double fac = double(nb - 1) / double(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const Complex d = jk[b] - jk_mean;
    out.var_re += fac * d.real() * d.real();
    out.var_im += fac * d.imag() * d.imag();
    out.cov_reim += fac * d.real() * d.imag();
  }
  return out;
}

Estimate ObservableSet::jackknife_real(const Statistic& f) const {
  const ComplexEstimate ce = jackknife(f);
  Estimate e;
  e.mean = ce.mean.real();
  e.std_err = ce.err_re();
  e.n_samples = ce.n_samples;
  return e;
}

Estimate ObservableSet::ratio(std::size_t num, std::size_t den) const {
  return jackknife_real([num, den](std::span<const double> s, std::span<const double> c) {
    const double pn = s[num] / c[num];
    const double pd = s[den] / c[den];
    return Complex{pn / pd, 0.0};
  });
}

}  // namespace cle
