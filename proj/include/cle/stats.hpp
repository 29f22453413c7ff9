#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cle/complex_point.hpp"

namespace cle {

struct Estimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::size_t n_samples = 0;
  double tau_int = 0.5;       // integrated autocorrelation time estimate
  bool autocorrected = true;  // errors from binned means

  double pull(double target = 0.0) const {
    return std_err > 0.0 ? (mean - target) / std_err : (mean == target ? 0.0 : 1e300);
  }
};

struct ComplexEstimate {
  Complex mean{0.0, 0.0};
  double var_re = 0.0, var_im = 0.0, cov_reim = 0.0;  // of the mean
  std::size_t n_samples = 0;

  double err_re() const { return std::sqrt(std::max(var_re, 0.0)); }
  double err_im() const { return std::sqrt(std::max(var_im, 0.0)); }
  double err_norm() const { return std::sqrt(std::max(var_re + var_im, 0.0)); }
};

// Combine independent estimates linearly: sum_i c_i e_i.
Estimate linear_combination(std::span<const Estimate> es, std::span<const double> coeffs);

// Per-sample observable block with fixed-length binning. Values may be marked
// invalid (discarded samples); bins carry per-observable sums and counts.
// Merging appends bins, so reducing per-chain sets in chain order yields the
// same result for any worker count.
class ObservableSet {
 public:
  ObservableSet(std::vector<std::string> names, std::size_t bin_len);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t index_of(const std::string& name) const;

  // One sample: values[k] counted only where valid[k] (empty valid = all).
  void add_sample(std::span<const double> values, std::span<const std::uint8_t> valid = {});
  void merge(const ObservableSet& other);

  std::size_t n_samples() const { return n_samples_; }
  std::size_t n_bins() const { return bins_sum_.size(); }
  std::size_t discarded(std::size_t k) const { return discarded_[k]; }

  // Aggregates over complete bins.
  double total_sum(std::size_t k) const;
  double total_count(std::size_t k) const;
  double mean(std::size_t k) const { return total_sum(k) / total_count(k); }
  double bin_mean(std::size_t b, std::size_t k) const {
    return bins_cnt_[b][k] > 0.0 ? bins_sum_[b][k] / bins_cnt_[b][k] : 0.0;
  }

  Estimate estimate(std::size_t k) const;
  Estimate estimate(const std::string& name) const { return estimate(index_of(name)); }

  // Jackknife over bins of an arbitrary statistic of the aggregate
  // (sums, counts) vectors.
  using Statistic = std::function<Complex(std::span<const double>, std::span<const double>)>;
  ComplexEstimate jackknife(const Statistic& f) const;
  Estimate jackknife_real(const Statistic& f) const;

  // Ratio mean(num)/mean(den) with jackknife error.
  Estimate ratio(std::size_t num, std::size_t den) const;

 private:
  std::vector<std::string> names_;
  std::size_t bin_len_;
  std::size_t n_samples_ = 0;
  std::size_t in_bin_ = 0;
  std::vector<double> cur_sum_, cur_cnt_;
  std::vector<std::vector<double>> bins_sum_, bins_cnt_;  // [bin][obs]
  std::vector<double> naive_sum_, naive_sumsq_;           // valid samples only
  std::vector<std::size_t> naive_cnt_, discarded_;
};

}  // namespace cle
