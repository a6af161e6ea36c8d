#include "geoloc/dataset.hpp"

#include <cstring>
#include <fstream>

#include "geoloc/binio.hpp"
#include "geoloc/error.hpp"
#include "geoloc/log.hpp"

namespace geoloc {

namespace {
constexpr std::uint32_t kDsVersion = 1;
constexpr char kDsMagic[4] = {'S', 'D', 'S', 'B'};
}  // namespace

std::vector<AnnotatedStep> annotate(const std::vector<Vec2>& positions, const GeoMap& map) {
  std::vector<AnnotatedStep> out;
  out.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    try {
      out.push_back({positions[i], map.query(positions[i])});
    } catch (const Error& e) {
      throw Error(ErrorKind::Domain, "trace step " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

std::vector<AnnotatedStep> annotate(const Trace& trace, const GeoMap& map) {
  return annotate(trace.positions, map);
}

SequenceDataset sliding_window(const std::vector<AnnotatedStep>& series, std::size_t T,
                               std::size_t stride) {
  if (T == 0 || stride == 0) throw Error(ErrorKind::Config, "window length and stride must be positive");
  const std::size_t N = series.size();
  if (N < T)
    throw Error(ErrorKind::Config, "series length " + std::to_string(N) +
                                       " shorter than window length " + std::to_string(T));
  const std::size_t n_windows = (N - T) / stride + 1;
  SequenceDataset ds;
  ds.inputs = neural::Tensor({n_windows, T, 3});
  ds.targets = neural::Tensor({n_windows, T, 2});
  for (std::size_t w = 0; w < n_windows; ++w) {
    for (std::size_t t = 0; t < T; ++t) {
      const auto& s = series[w * stride + t];
      for (int c = 0; c < 3; ++c) ds.inputs.at(w, t, c) = s.field[c];
      ds.targets.at(w, t, 0) = s.position.x;
      ds.targets.at(w, t, 1) = s.position.y;
    }
  }
  return ds;
}

NormParams compute_norm_params(const neural::Tensor& inputs, const neural::Tensor& targets) {
  auto ranges = [](const neural::Tensor& t) {
    const std::size_t F = t.shape.back();
    std::vector<FeatureRange> r(F);
    for (std::size_t f = 0; f < F; ++f) r[f] = {t.data[f], t.data[f]};
    for (std::size_t i = 0; i < t.numel(); ++i) {
      auto& fr = r[i % F];
      fr.min = std::min(fr.min, t[i]);
      fr.max = std::max(fr.max, t[i]);
    }
    return r;
  };
  NormParams p;
  p.in = ranges(inputs);
  p.out = ranges(targets);
  for (std::size_t f = 0; f < p.in.size(); ++f)
    if (p.in[f].max <= p.in[f].min)
      log_warn("input feature " + std::to_string(f) + " is constant; normalized to 0");
  for (std::size_t f = 0; f < p.out.size(); ++f)
    if (p.out[f].max <= p.out[f].min)
      log_warn("target feature " + std::to_string(f) + " is constant; normalized to 0");
  return p;
}

namespace {
void transform(const std::vector<FeatureRange>& r, neural::Tensor& t) {
  const std::size_t F = t.shape.back();
  if (r.size() != F) throw Error(ErrorKind::Shape, "normalization parameter count mismatch");
  for (std::size_t i = 0; i < t.numel(); ++i) t[i] = r[i % F].apply(t[i]);
}
void untransform(const std::vector<FeatureRange>& r, neural::Tensor& t) {
  const std::size_t F = t.shape.back();
  if (r.size() != F) throw Error(ErrorKind::Shape, "normalization parameter count mismatch");
  for (std::size_t i = 0; i < t.numel(); ++i) t[i] = r[i % F].invert(t[i]);
}
}  // namespace

void apply_normalization(const NormParams& p, neural::Tensor& inputs, neural::Tensor& targets) {
  transform(p.in, inputs);
  transform(p.out, targets);
}

void normalize_inputs(const NormParams& p, neural::Tensor& inputs) { transform(p.in, inputs); }

void denormalize_targets(const NormParams& p, neural::Tensor& targets) { untransform(p.out, targets); }

std::pair<SequenceDataset, SequenceDataset> normalize(const SequenceDataset& ds, double split_ratio) {
  if (!(split_ratio > 0.0) || !(split_ratio < 1.0))
    throw Error(ErrorKind::Config, "split ratio must be in (0, 1)");
  const std::size_t N = ds.samples();
  const auto n_train = static_cast<std::size_t>(static_cast<double>(N) * split_ratio);
  if (n_train == 0 || n_train >= N)
    throw Error(ErrorKind::Config, "split leaves an empty train or test set (N=" + std::to_string(N) + ")");

  const std::size_t T = ds.time_steps();
  const std::size_t Fi = ds.inputs.dim(2), Fo = ds.targets.dim(2);
  auto slice = [&](const neural::Tensor& t, std::size_t from, std::size_t count, std::size_t F) {
    neural::Tensor out({count, T, F});
    std::memcpy(out.data.data(), &t.data[from * T * F], count * T * F * sizeof(double));
    return out;
  };
  SequenceDataset train, test;
  train.inputs = slice(ds.inputs, 0, n_train, Fi);
  train.targets = slice(ds.targets, 0, n_train, Fo);
  test.inputs = slice(ds.inputs, n_train, N - n_train, Fi);
  test.targets = slice(ds.targets, n_train, N - n_train, Fo);

  NormParams p = compute_norm_params(train.inputs, train.targets);
  apply_normalization(p, train.inputs, train.targets);
  apply_normalization(p, test.inputs, test.targets);
  train.norm = p;
  test.norm = p;
  return {std::move(train), std::move(test)};
}

namespace {
void write_tensor3(std::ostream& out, const neural::Tensor& t) {
  for (double v : t.data) binio::write_f64(out, v);
}
neural::Tensor read_tensor3(std::istream& in, std::size_t n, std::size_t T, std::size_t F) {
  neural::Tensor t({n, T, F});
  for (double& v : t.data) v = binio::read_f64(in);
  return t;
}
}  // namespace

void save_dataset(const std::string& path, const SequenceDataset& train, const SequenceDataset& test) {
  if (!train.norm || !(train.norm == test.norm))
    throw Error(ErrorKind::Config, "save_dataset expects normalized splits sharing parameters");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out.write(kDsMagic, 4);
  binio::write_u32(out, kDsVersion);
  binio::write_u64(out, train.samples());
  binio::write_u64(out, test.samples());
  binio::write_u64(out, train.time_steps());
  binio::write_u64(out, train.inputs.dim(2));
  binio::write_u64(out, train.targets.dim(2));
  for (const auto& r : train.norm->in) {
    binio::write_f64(out, r.min);
    binio::write_f64(out, r.max);
  }
  for (const auto& r : train.norm->out) {
    binio::write_f64(out, r.min);
    binio::write_f64(out, r.max);
  }
  write_tensor3(out, train.inputs);
  write_tensor3(out, train.targets);
  write_tensor3(out, test.inputs);
  write_tensor3(out, test.targets);
  if (!out) throw Error(ErrorKind::Io, "write failure on '" + path + "'");
}

std::pair<SequenceDataset, SequenceDataset> load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kDsMagic, 4) != 0)
    throw Error(ErrorKind::Io, "'" + path + "' is not a dataset file");
  if (binio::read_u32(in) != kDsVersion) throw Error(ErrorKind::Io, "unsupported dataset version");
  std::size_t n_train = binio::read_u64(in), n_test = binio::read_u64(in);
  std::size_t T = binio::read_u64(in), Fi = binio::read_u64(in), Fo = binio::read_u64(in);
  NormParams p;
  p.in.resize(Fi);
  p.out.resize(Fo);
  for (auto& r : p.in) {
    r.min = binio::read_f64(in);
    r.max = binio::read_f64(in);
  }
  for (auto& r : p.out) {
    r.min = binio::read_f64(in);
    r.max = binio::read_f64(in);
  }
  SequenceDataset train, test;
  train.inputs = read_tensor3(in, n_train, T, Fi);
  train.targets = read_tensor3(in, n_train, T, Fo);
  test.inputs = read_tensor3(in, n_test, T, Fi);
  test.targets = read_tensor3(in, n_test, T, Fo);
  if (!in) throw Error(ErrorKind::Io, "truncated dataset file '" + path + "'");
  train.norm = p;
  test.norm = p;
  return {std::move(train), std::move(test)};
}

}  // namespace geoloc
