#include "geoloc/mobility.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "geoloc/error.hpp"
#include "geoloc/rng.hpp"
#include "geoloc/textio.hpp"

namespace geoloc {

namespace {

void check_common(const RwpConfig& cfg) {
  cfg.bed.check();
  if (cfg.n_steps == 0) throw Error(ErrorKind::Config, "n_steps must be positive");
  if (!(cfg.step_dt_s > 0.0)) throw Error(ErrorKind::Config, "step_dt_s must be positive");
  if (cfg.max_pause_s < 0.0) throw Error(ErrorKind::Config, "max_pause_s must be >= 0");
}

Vec2 uniform_point(Rng& rng, const TestBed& bed) {
  // x drawn before y, part of the documented stream identity.
  double x = rng.uniform(0.0, bed.width_m);
  double y = rng.uniform(0.0, bed.height_m);
  return {x, y};
}

template <typename SpeedFn>
Trace generate(const RwpConfig& cfg, MobilityModel model, SpeedFn&& draw_speed) {
  Rng rng(cfg.seed);
  Trace trace;
  trace.seed = cfg.seed;
  trace.model = model;
  trace.positions.reserve(cfg.n_steps);

  Vec2 pos = uniform_point(rng, cfg.bed);
  trace.positions.push_back(pos);

  while (trace.positions.size() < cfg.n_steps) {
    Vec2 waypoint = uniform_point(rng, cfg.bed);
    double speed = draw_speed(rng);
    double step_len = speed * cfg.step_dt_s;
    double remaining = (waypoint - pos).norm();
    while (remaining > step_len && trace.positions.size() < cfg.n_steps) {
      Vec2 dir = (waypoint - pos) * (1.0 / remaining);
      pos = pos + dir * step_len;
      trace.positions.push_back(pos);
      remaining = (waypoint - pos).norm();
    }
    if (trace.positions.size() >= cfg.n_steps) break;
    pos = waypoint;  // truncated arrival step
    trace.positions.push_back(pos);
    if (cfg.max_pause_s > 0.0) {
      double pause = rng.uniform(0.0, cfg.max_pause_s);
      auto pause_steps = static_cast<std::size_t>(std::floor(pause / cfg.step_dt_s));
      for (std::size_t i = 0; i < pause_steps && trace.positions.size() < cfg.n_steps; ++i)
        trace.positions.push_back(pos);
    }
  }
  return trace;
}

}  // namespace

Trace rwp_generate(const RwpConfig& cfg) {
  check_common(cfg);
  if (!(cfg.v_min_mps > 0.0) || cfg.v_min_mps > cfg.v_max_mps)
    throw Error(ErrorKind::Config, "speed range requires 0 < v_min <= v_max");
  return generate(cfg, MobilityModel::Rwp,
                  [&](Rng& rng) { return rng.uniform(cfg.v_min_mps, cfg.v_max_mps); });
}

Trace gamma_rwp_generate(const RwpConfig& cfg, double shape_k, double scale_theta) {
  check_common(cfg);
  if (!(shape_k > 0.0) || !(scale_theta > 0.0))
    throw Error(ErrorKind::Config, "gamma parameters must be positive");
  return generate(cfg, MobilityModel::GammaRwp, [&](Rng& rng) {
    double s = rng.gamma(shape_k, scale_theta);
    while (!(s > 0.0)) s = rng.gamma(shape_k, scale_theta);
    return s;
  });
}

void write_traces_csv(std::ostream& out, const std::vector<Trace>& traces) {
  out << "trace_id,step,x,y\n";
  for (std::size_t t = 0; t < traces.size(); ++t) {
    const auto& tr = traces[t];
    for (std::size_t s = 0; s < tr.positions.size(); ++s)
      out << t << ',' << s << ',' << format_double(tr.positions[s].x) << ','
          << format_double(tr.positions[s].y) << '\n';
  }
}

std::vector<std::vector<Vec2>> read_traces_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "trace_id,step,x,y")
    throw Error(ErrorKind::Schema, "trace CSV must start with header 'trace_id,step,x,y'");
  std::vector<std::vector<Vec2>> traces;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    auto sv = strip_cr(line);
    if (sv.empty() && in.peek() == EOF) break;
    auto cols = split_csv(sv);
    if (cols.size() != 4)
      throw Error(ErrorKind::Schema, "trace row " + std::to_string(row) + ": expected 4 columns");
    auto id = static_cast<std::size_t>(parse_int(cols[0], "trace_id"));
    auto step = static_cast<std::size_t>(parse_int(cols[1], "step"));
    if (id >= traces.size()) traces.resize(id + 1);
    if (step != traces[id].size())
      throw Error(ErrorKind::Schema, "trace row " + std::to_string(row) + ": steps of trace " +
                                         std::to_string(id) + " out of order");
    traces[id].push_back({parse_double(cols[2], "x"), parse_double(cols[3], "y")});
    ++row;
  }
  return traces;
}

void save_traces(const std::string& path, const std::vector<Trace>& traces) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_traces_csv(out, traces);
  if (!out) throw Error(ErrorKind::Io, "write failure on '" + path + "'");
}

std::vector<std::vector<Vec2>> load_traces(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  return read_traces_csv(in);
}

}  // namespace geoloc
