#include "geoloc/rss_image.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>

#include "geoloc/binio.hpp"
#include "geoloc/error.hpp"

namespace geoloc {

namespace {

constexpr std::uint32_t kImgVersion = 1;
constexpr char kImgMagic[4] = {'R', 'I', 'M', 'G'};

// Center-out spiral over an n x n grid: start at the middle cell, walk
// right/down/left/up with arm lengths 1,1,2,2,3,3,... and keep the cells
// that fall inside the grid. Visits every cell exactly once.
std::vector<std::pair<int, int>> spiral_cells(int n) {
  std::vector<std::pair<int, int>> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  int r = n / 2, c = n / 2;
  auto push = [&](int rr, int cc) {
    if (rr >= 0 && rr < n && cc >= 0 && cc < n) cells.emplace_back(rr, cc);
  };
  push(r, c);
  const int dr[4] = {0, 1, 0, -1};  // right, down, left, up
  const int dc[4] = {1, 0, -1, 0};
  int arm = 1, dir = 0;
  while (cells.size() < static_cast<std::size_t>(n) * n) {
    for (int rep = 0; rep < 2; ++rep) {
      for (int s = 0; s < arm; ++s) {
        r += dr[dir];
        c += dc[dir];
        push(r, c);
      }
      dir = (dir + 1) % 4;
    }
    ++arm;
  }
  return cells;
}

}  // namespace

ApLayout build_layout(const Database& db) {
  if (db.records.empty()) throw Error(ErrorKind::Config, "build_layout: empty database");

  // Mean detected RSS per AP; APs with no detections sit at the sentinel.
  std::vector<double> mean_rss(kApCount, kRssNotDetected);
  for (int ap = 0; ap < kApCount; ++ap) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& rec : db.records) {
      if (rec.rss[ap] > kRssNotDetected) {
        sum += rec.rss[ap];
        ++n;
      }
    }
    if (n > 0) mean_rss[ap] = sum / static_cast<double>(n);
  }

  std::vector<int> order(kApCount);
  for (int i = 0; i < kApCount; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (mean_rss[a] != mean_rss[b]) return mean_rss[a] > mean_rss[b];
    return a < b;
  });

  ApLayout layout;
  layout.side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(kApCount))));
  auto cells = spiral_cells(static_cast<int>(layout.side));
  layout.placement.resize(kApCount);
  for (int rank = 0; rank < kApCount; ++rank) layout.placement[order[rank]] = cells[rank];
  return layout;
}

RssImage render(const std::vector<std::int16_t>& rss, const ApLayout& layout) {
  if (rss.size() != kApCount)
    throw Error(ErrorKind::Shape, "render: rss vector must have " + std::to_string(kApCount) +
                                      " entries, got " + std::to_string(rss.size()));
  RssImage img;
  img.side = layout.side;
  img.pixels.assign(layout.side * layout.side, 0.0);
  for (int ap = 0; ap < kApCount; ++ap) {
    auto [r, c] = layout.placement[ap];
    img.pixels[static_cast<std::size_t>(r) * layout.side + c] =
        (static_cast<double>(rss[ap]) + 110.0) / 110.0;
  }
  return img;
}

std::vector<ReferencePointKey> reference_point_classes(const Database& db) {
  std::set<ReferencePointKey> keys;
  for (const auto& rec : db.records)
    keys.insert({rec.building, rec.floor, rec.loc_x, rec.loc_y});
  return {keys.begin(), keys.end()};
}

RssImage render_record(const FingerprintRecord& rec, const ApLayout& layout,
                       const std::vector<ReferencePointKey>& classes) {
  RssImage img = render(rec.rss, layout);
  ReferencePointKey key{rec.building, rec.floor, rec.loc_x, rec.loc_y};
  auto it = std::lower_bound(classes.begin(), classes.end(), key);
  if (it == classes.end() || !(*it == key))
    throw Error(ErrorKind::Range, "record's reference point is not among the known classes");
  img.label = static_cast<std::size_t>(it - classes.begin());
  return img;
}

void write_pgm(const std::string& path, const RssImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << "P2\n" << img.side << ' ' << img.side << "\n255\n";
  for (std::size_t r = 0; r < img.side; ++r) {
    for (std::size_t c = 0; c < img.side; ++c) {
      int v = static_cast<int>(std::lround(img.at(r, c) * 255.0));
      out << v << (c + 1 == img.side ? '\n' : ' ');
    }
  }
  if (!out) throw Error(ErrorKind::Io, "write failure on '" + path + "'");
}

void save_images(const std::string& path, const std::vector<RssImage>& images) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out.write(kImgMagic, 4);
  binio::write_u32(out, kImgVersion);
  binio::write_u64(out, images.size());
  binio::write_u64(out, images.empty() ? 0 : images[0].side);
  for (const auto& img : images) {
    binio::write_u64(out, img.label);
    for (double p : img.pixels) binio::write_f64(out, p);
  }
  if (!out) throw Error(ErrorKind::Io, "write failure on '" + path + "'");
}

std::vector<RssImage> load_images(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kImgMagic, 4) != 0)
    throw Error(ErrorKind::Io, "'" + path + "' is not an image file");
  if (binio::read_u32(in) != kImgVersion) throw Error(ErrorKind::Io, "unsupported image file version");
  std::size_t count = binio::read_u64(in), side = binio::read_u64(in);
  std::vector<RssImage> images(count);
  for (auto& img : images) {
    img.side = side;
    img.label = binio::read_u64(in);
    img.pixels.resize(side * side);
    for (double& p : img.pixels) p = binio::read_f64(in);
  }
  if (!in) throw Error(ErrorKind::Io, "truncated image file '" + path + "'");
  return images;
}

}  // namespace geoloc
