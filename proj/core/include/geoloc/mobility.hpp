#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geoloc/geometry.hpp"

namespace geoloc {

enum class MobilityModel { Rwp, GammaRwp };

struct RwpConfig {
  TestBed bed;
  std::size_t n_steps = 0;
  double v_min_mps = 0.5;  // human walking range by default
  double v_max_mps = 1.5;
  double max_pause_s = 0.0;
  double step_dt_s = 1.0;
  std::uint64_t seed = 0;
};

// Ordered positions, one per step of step_dt_s. Every position lies inside
// the bed; pause steps repeat the current position so trace length is
// uniform for the sliding-window stage.
struct Trace {
  std::vector<Vec2> positions;
  std::uint64_t seed = 0;
  MobilityModel model = MobilityModel::Rwp;
};

// Classic random waypoint: uniform waypoint, uniform speed per leg, straight
// constant-speed legs sampled every step_dt_s, the arrival step lands exactly
// on the waypoint, then a uniform pause of [0, max_pause_s] (floor(pause/dt)
// stationary steps). Deterministic given cfg.seed.
Trace rwp_generate(const RwpConfig& cfg);

// Same mechanics with per-leg speed drawn from Gamma(shape_k, scale_theta).
Trace gamma_rwp_generate(const RwpConfig& cfg, double shape_k, double scale_theta);

// trace CSV: header "trace_id,step,x,y", one row per step.
void write_traces_csv(std::ostream& out, const std::vector<Trace>& traces);
std::vector<std::vector<Vec2>> read_traces_csv(std::istream& in);

void save_traces(const std::string& path, const std::vector<Trace>& traces);
std::vector<std::vector<Vec2>> load_traces(const std::string& path);

}  // namespace geoloc
