#include "geoloc/kalman.hpp"

#include <cmath>

#include "geoloc/error.hpp"

namespace geoloc {

KalmanState kalman_step(KalmanState state, double measurement) {
  if (!std::isfinite(measurement))
    throw Error(ErrorKind::Numeric, "kalman_step: non-finite measurement");
  double p = state.error_cov + state.process_noise_q;
  double denom = p + state.measurement_noise_r;
  double k = denom > 0.0 ? p / denom : 0.0;
  state.estimate += k * (measurement - state.estimate);
  state.error_cov = (1.0 - k) * p;
  return state;
}

std::vector<Vec3> filter_series(const std::vector<Vec3>& series, double q, double r) {
  if (series.empty()) throw Error(ErrorKind::Config, "filter_series: empty series");
  if (q < 0.0 || r < 0.0) throw Error(ErrorKind::Config, "filter_series: q and r must be >= 0");

  KalmanState init;
  init.process_noise_q = q;
  init.measurement_noise_r = r;

  std::vector<Vec3> out(series.size());
  for (int axis = 0; axis < 3; ++axis) {
    KalmanState s = init;
    s.estimate = series[0][axis];
    s.error_cov = r;
    out[0][axis] = s.estimate;
    for (std::size_t i = 1; i < series.size(); ++i) {
      s = kalman_step(s, series[i][axis]);
      out[i][axis] = s.estimate;
    }
  }
  return out;
}

}  // namespace geoloc
