#pragma once

#include <vector>

#include "geoloc/geometry.hpp"

namespace geoloc {

// Scalar random-walk Kalman filter state. One instance smooths one signal
// component (hand-shake suppression on the magnetometer stream).
struct KalmanState {
  double estimate = 0.0;
  double error_cov = 0.0;
  double process_noise_q = 0.01;
  double measurement_noise_r = 1.0;
};

// One predict-update cycle:
//   P <- P + Q;  K <- P / (P + R);  x <- x + K (z - x);  P <- (1 - K) P
KalmanState kalman_step(KalmanState state, double measurement);

// Three independent scalar filters, one per component. The filter is
// initialized at the first measurement with P0 = R, so the first output
// equals the first input.
std::vector<Vec3> filter_series(const std::vector<Vec3>& series, double q, double r);

}  // namespace geoloc
