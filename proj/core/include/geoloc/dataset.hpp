#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geoloc/geomap.hpp"
#include "geoloc/geometry.hpp"
#include "geoloc/mobility.hpp"
#include "geoloc/neural/tensor.hpp"

namespace geoloc {

struct AnnotatedStep {
  Vec2 position;  // meters
  Vec3 field;     // uT
};

// Per-feature min-max parameters; transform is (x - min) / (max - min).
// Degenerate features (max == min) map to 0.
struct FeatureRange {
  double min = 0.0;
  double max = 0.0;

  double apply(double x) const { return max > min ? (x - min) / (max - min) : 0.0; }
  double invert(double y) const { return max > min ? y * (max - min) + min : min; }
  bool operator==(const FeatureRange&) const = default;
};

struct NormParams {
  std::vector<FeatureRange> in;
  std::vector<FeatureRange> out;
  bool operator==(const NormParams&) const = default;
};

// Sliding-window sequence data: inputs [samples x time_steps x in_features],
// targets [samples x time_steps x out_features]. norm is present once the
// dataset has been normalized (parameters always come from the training
// split alone).
struct SequenceDataset {
  neural::Tensor inputs;
  neural::Tensor targets;
  std::optional<NormParams> norm;

  std::size_t samples() const { return inputs.shape.empty() ? 0 : inputs.dim(0); }
  std::size_t time_steps() const { return inputs.shape.empty() ? 0 : inputs.dim(1); }
};

// Field value per trace step via map queries; fails with the step index if a
// position is outside the bed.
std::vector<AnnotatedStep> annotate(const Trace& trace, const GeoMap& map);
std::vector<AnnotatedStep> annotate(const std::vector<Vec2>& positions, const GeoMap& map);

// Windows of length T from an annotated series: window i covers steps
// [i*stride, i*stride + T). Inputs are the field components, targets the
// positions. With stride 1 a series of length N yields N-T+1 windows.
SequenceDataset sliding_window(const std::vector<AnnotatedStep>& series, std::size_t T,
                               std::size_t stride = 1);

// Chronological split at split_ratio (train takes floor(N * ratio) samples),
// min-max parameters computed on the training split and applied to both.
std::pair<SequenceDataset, SequenceDataset> normalize(const SequenceDataset& ds, double split_ratio);

// Transform helpers shared with inference.
NormParams compute_norm_params(const neural::Tensor& inputs, const neural::Tensor& targets);
void apply_normalization(const NormParams& p, neural::Tensor& inputs, neural::Tensor& targets);
void normalize_inputs(const NormParams& p, neural::Tensor& inputs);
void denormalize_targets(const NormParams& p, neural::Tensor& targets);

// Binary dataset container (see README for the byte layout): both splits
// plus the normalization parameters.
void save_dataset(const std::string& path, const SequenceDataset& train, const SequenceDataset& test);
std::pair<SequenceDataset, SequenceDataset> load_dataset(const std::string& path);

}  // namespace geoloc
