#include "geoloc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "geoloc/error.hpp"

namespace geoloc {

std::vector<double> euclidean_errors(const std::vector<Vec2>& pred, const std::vector<Vec2>& truth) {
  if (pred.size() != truth.size())
    throw Error(ErrorKind::Shape, "error_stats: prediction and truth lengths differ (" +
                                      std::to_string(pred.size()) + " vs " +
                                      std::to_string(truth.size()) + ")");
  if (pred.empty()) throw Error(ErrorKind::Shape, "error_stats: empty input");
  std::vector<double> errs(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) errs[i] = (pred[i] - truth[i]).norm();
  return errs;
}

double quantile_nearest_rank(const std::vector<double>& sorted_values, double p) {
  if (sorted_values.empty()) throw Error(ErrorKind::Range, "quantile of empty sample");
  if (!(p > 0.0) || p > 1.0) throw Error(ErrorKind::Range, "quantile p must be in (0, 1]");
  auto rank = static_cast<std::size_t>(
      std::ceil(p * static_cast<double>(sorted_values.size())));
  rank = std::max<std::size_t>(rank, 1);
  return sorted_values[rank - 1];
}

EvalReport error_stats(const std::vector<Vec2>& pred, const std::vector<Vec2>& truth) {
  std::vector<double> errs = euclidean_errors(pred, truth);
  std::sort(errs.begin(), errs.end());

  EvalReport rep;
  rep.n_samples = errs.size();
  double sum = 0.0;
  for (double e : errs) sum += e;
  rep.mean_err_m = sum / static_cast<double>(errs.size());
  rep.max_err_m = errs.back();
  rep.p75_box = {quantile_nearest_rank(errs, 0.125), quantile_nearest_rank(errs, 0.875)};
  rep.p95_whisker = {quantile_nearest_rank(errs, 0.025), quantile_nearest_rank(errs, 0.975)};
  return rep;
}

}  // namespace geoloc
