#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geoloc/geometry.hpp"

namespace geoloc {

inline constexpr int kApCount = 516;          // WAP000 .. WAP515
inline constexpr int kRssNotDetected = -110;  // dBm sentinel
inline constexpr double kDefaultSpacingM = 0.6;

// Heading / posture of the device during capture.
enum class Direction { North, South, East, West, Left, Right, Up };

const char* to_string(Direction d);
Direction direction_from_string(std::string_view token);

// One database row: RSS vector, grid location, geomagnetic and orientation
// samples plus capture metadata.
struct FingerprintRecord {
  std::vector<std::int16_t> rss;  // kApCount entries, dBm in [-110, 0]
  int loc_x = 0;                  // grid cell index (0.6 m pitch)
  int loc_y = 0;
  std::string floor;     // opaque token, e.g. "5E"
  std::string building;  // e.g. "IBSS"
  Vec3 geo{};            // uT, device frame
  Vec3 ori{};            // degrees
  Direction direction = Direction::North;
  std::string device;
  std::optional<std::int64_t> timestamp;  // milliseconds

  bool operator==(const FingerprintRecord&) const = default;
};

struct Database {
  std::vector<FingerprintRecord> records;
  int ap_count = kApCount;
  double spacing_m = kDefaultSpacingM;

  bool operator==(const Database&) const = default;
};

struct ValidationIssue {
  std::size_t row = 0;     // record index (0-based)
  std::string what;
};

struct ValidationReport {
  std::vector<std::size_t> ap_detection_counts;   // per AP, rss > sentinel
  std::map<std::string, std::size_t> floor_counts;
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
};

// CSV schema (UTF-8, comma separator, '.' decimal point, first line header):
//   WAP000,...,WAP515,Loc_x,Loc_y,Floor,Building,GeoX,GeoY,GeoZ,OriX,OriY,OriZ
// plus optional trailing columns Direction,Device,Timestamp. Serialization
// always emits the full layout; parsing accepts any of the trailing-column
// prefixes.
Database parse_database(std::istream& in);
void serialize_database(const Database& db, std::ostream& out);

Database load_database(const std::string& path);
void save_database(const Database& db, const std::string& path);

// Report-only consistency scan. When bounds are given, rows whose grid
// position falls outside the bed are listed as issues.
ValidationReport validate(const Database& db, const std::optional<TestBed>& bounds = {});

}  // namespace geoloc
