#pragma once

#include <string>
#include <vector>

#include "cle/stats.hpp"

namespace cle {

struct LadderPoint {
  double eps = 0.0;
  Complex value{0, 0};
  double err = 0.0;
};

// Extrapolated limit of a ladder of measurements with diagnostics. The
// corridor and ellipse limits exist by construction but come with no rate, so
// the default model fits value = v0 + v1 * eps^p with the exponent free in
// [0.5, 2] and reports the sensitivity of v0 to the model choice.
struct ExtrapolationResult {
  Complex value{0, 0};
  double err = 0.0;           // statistical, propagated through the fit
  double model_spread = 0.0;  // v0 variation across admissible exponents
  double exponent = 1.0;
  double gof = 0.0;  // weighted residual norm at the chosen exponent
  std::string model = "power_law";
  std::vector<LadderPoint> table;

  double total_err() const { return std::hypot(err, model_spread); }
};

enum class FitModel { power_law, linear, richardson };

ExtrapolationResult extrapolate_ladder(std::vector<LadderPoint> table,
                                       FitModel model = FitModel::power_law);

}  // namespace cle
