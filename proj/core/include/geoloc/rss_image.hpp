#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "geoloc/fingerprint.hpp"

namespace geoloc {

// Deterministic arrangement of the 516 APs on a square grid: APs ranked by
// mean detected RSS over the whole database (never-detected APs rank last,
// ties broken by AP index) and placed strongest-first along a center-out
// spiral, so globally strong APs cluster in the middle of the image.
struct ApLayout {
  std::size_t side = 0;                          // smallest s with s*s >= 516
  std::vector<std::pair<int, int>> placement;    // AP index -> (row, col)

  bool operator==(const ApLayout&) const = default;
};

struct RssImage {
  std::size_t side = 0;
  std::vector<double> pixels;  // side*side, row-major, in [0, 1]
  std::size_t label = 0;       // reference-point class index

  double at(std::size_t row, std::size_t col) const { return pixels[row * side + col]; }
};

ApLayout build_layout(const Database& db);

// pixel(placement(i)) = (rss[i] + 110) / 110; cells without an AP stay 0.
RssImage render(const std::vector<std::int16_t>& rss, const ApLayout& layout);

// Distinct (building, floor, loc_x, loc_y) keys in sorted order define the
// class labels for the localization task.
struct ReferencePointKey {
  std::string building;
  std::string floor;
  int loc_x = 0;
  int loc_y = 0;

  auto operator<=>(const ReferencePointKey&) const = default;
};

std::vector<ReferencePointKey> reference_point_classes(const Database& db);
RssImage render_record(const FingerprintRecord& rec, const ApLayout& layout,
                       const std::vector<ReferencePointKey>& classes);

// P2 (ASCII) PGM dump, 8-bit grayscale.
void write_pgm(const std::string& path, const RssImage& img);

// Binary image container (see README): label + pixel block per image.
void save_images(const std::string& path, const std::vector<RssImage>& images);
std::vector<RssImage> load_images(const std::string& path);

}  // namespace geoloc
