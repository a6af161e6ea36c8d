#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "geoloc/geometry.hpp"

namespace geoloc {

struct EpochStats {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double test_loss = 0.0;
  double accuracy = 0.0;  // fraction of steps with error below the grid spacing

  bool operator==(const EpochStats&) const = default;
};

// Error distribution summary. Central bands use nearest-rank quantiles on
// the sorted errors: the p band is [q_(1-p)/2, q_(1+p)/2].
struct EvalReport {
  double mean_err_m = 0.0;
  std::pair<double, double> p75_box{0.0, 0.0};
  std::pair<double, double> p95_whisker{0.0, 0.0};
  double max_err_m = 0.0;
  std::vector<EpochStats> per_epoch;
  std::size_t n_samples = 0;
};

// Nearest-rank quantile: sorted[ceil(p * N) - 1] (p in (0, 1], N >= 1).
double quantile_nearest_rank(const std::vector<double>& sorted_values, double p);

EvalReport error_stats(const std::vector<Vec2>& pred, const std::vector<Vec2>& truth);

std::vector<double> euclidean_errors(const std::vector<Vec2>& pred, const std::vector<Vec2>& truth);

}  // namespace geoloc
