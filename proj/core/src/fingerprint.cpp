#include "geoloc/fingerprint.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "geoloc/textio.hpp"

namespace geoloc {

namespace {

constexpr std::size_t kFixedColumns = kApCount + 10;  // through OriZ
constexpr const char* kTailNames[3] = {"Direction", "Device", "Timestamp"};

std::string wap_name(int i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "WAP%03d", i);
  return buf;
}

std::vector<std::string> canonical_header() {
  std::vector<std::string> h;
  h.reserve(kFixedColumns + 3);
  for (int i = 0; i < kApCount; ++i) h.push_back(wap_name(i));
  for (const char* n : {"Loc_x", "Loc_y", "Floor", "Building", "GeoX", "GeoY", "GeoZ", "OriX", "OriY", "OriZ"})
    h.emplace_back(n);
  for (const char* n : kTailNames) h.emplace_back(n);
  return h;
}

[[noreturn]] void bad_row(ErrorKind kind, std::size_t row, const std::string& detail) {
  throw Error(kind, "row " + std::to_string(row) + ": " + detail);
}

}  // namespace

const char* to_string(Direction d) {
  switch (d) {
    case Direction::North: return "North";
    case Direction::South: return "South";
    case Direction::East: return "East";
    case Direction::West: return "West";
    case Direction::Left: return "Left";
    case Direction::Right: return "Right";
    case Direction::Up: return "Up";
  }
  return "North";
}

Direction direction_from_string(std::string_view token) {
  for (Direction d : {Direction::North, Direction::South, Direction::East, Direction::West,
                      Direction::Left, Direction::Right, Direction::Up})
    if (token == to_string(d)) return d;
  throw Error(ErrorKind::Parse, "unknown direction token '" + std::string(token) + "'");
}

Database parse_database(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Schema, "empty input: missing header row");
  auto header = split_csv(strip_cr(line));

  const auto canon = canonical_header();
  if (header.size() < kFixedColumns || header.size() > canon.size())
    throw Error(ErrorKind::Schema, "header has " + std::to_string(header.size()) + " columns, expected " +
                                       std::to_string(kFixedColumns) + ".." + std::to_string(canon.size()));
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] != canon[i])
      throw Error(ErrorKind::Schema,
                  "header column " + std::to_string(i) + " is '" + std::string(header[i]) + "', expected '" + canon[i] + "'");

  const std::size_t ncols = header.size();
  const bool has_direction = ncols > kFixedColumns;
  const bool has_device = ncols > kFixedColumns + 1;
  const bool has_timestamp = ncols > kFixedColumns + 2;

  Database db;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    auto sv = strip_cr(line);
    if (sv.empty() && in.peek() == EOF) break;  // trailing newline
    auto cols = split_csv(sv);
    if (cols.size() != ncols)
      bad_row(ErrorKind::Schema, row,
              "has " + std::to_string(cols.size()) + " columns, expected " + std::to_string(ncols));

    FingerprintRecord rec;
    rec.rss.resize(kApCount);
    for (int i = 0; i < kApCount; ++i) {
      std::int64_t v;
      try {
        v = parse_int(cols[i], wap_name(i));
      } catch (const Error& e) {
        bad_row(ErrorKind::Parse, row, e.what());
      }
      if (v < kRssNotDetected || v > 0)
        bad_row(ErrorKind::Range, row,
                wap_name(i) + " = " + std::to_string(v) + " outside [-110, 0]");
      rec.rss[i] = static_cast<std::int16_t>(v);
    }
    std::size_t c = kApCount;
    try {
      rec.loc_x = static_cast<int>(parse_int(cols[c], "Loc_x"));
      rec.loc_y = static_cast<int>(parse_int(cols[c + 1], "Loc_y"));
      rec.floor = std::string(cols[c + 2]);
      rec.building = std::string(cols[c + 3]);
      for (int k = 0; k < 3; ++k) rec.geo[k] = parse_double(cols[c + 4 + k], std::string("Geo") + "XYZ"[k]);
      for (int k = 0; k < 3; ++k) rec.ori[k] = parse_double(cols[c + 7 + k], std::string("Ori") + "XYZ"[k]);
      if (has_direction) rec.direction = direction_from_string(cols[c + 10]);
      if (has_device) rec.device = std::string(cols[c + 11]);
      if (has_timestamp && !cols[c + 12].empty())
        rec.timestamp = parse_int(cols[c + 12], "Timestamp");
    } catch (const Error& e) {
      bad_row(e.kind(), row, e.what());
    }
    if (rec.loc_x < 0 || rec.loc_y < 0)
      bad_row(ErrorKind::Range, row, "negative grid coordinate");
    for (int k = 0; k < 3; ++k)
      if (!std::isfinite(rec.geo[k]) || !std::isfinite(rec.ori[k]))
        bad_row(ErrorKind::Numeric, row, "non-finite Geo/Ori value");

    db.records.push_back(std::move(rec));
    ++row;
  }
  return db;
}

void serialize_database(const Database& db, std::ostream& out) {
  const auto canon = canonical_header();
  for (std::size_t i = 0; i < canon.size(); ++i) {
    if (i) out << ',';
    out << canon[i];
  }
  out << '\n';
  for (const auto& rec : db.records) {
    for (int i = 0; i < kApCount; ++i) {
      if (i) out << ',';
      out << rec.rss[i];
    }
    out << ',' << rec.loc_x << ',' << rec.loc_y << ',' << rec.floor << ',' << rec.building;
    for (int k = 0; k < 3; ++k) out << ',' << format_double(rec.geo[k]);
    for (int k = 0; k < 3; ++k) out << ',' << format_double(rec.ori[k]);
    out << ',' << to_string(rec.direction) << ',' << rec.device << ',';
    if (rec.timestamp) out << *rec.timestamp;
    out << '\n';
  }
}

Database load_database(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  return parse_database(in);
}

void save_database(const Database& db, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  serialize_database(db, out);
  if (!out) throw Error(ErrorKind::Io, "write failure on '" + path + "'");
}

ValidationReport validate(const Database& db, const std::optional<TestBed>& bounds) {
  ValidationReport rep;
  rep.ap_detection_counts.assign(kApCount, 0);
  for (std::size_t r = 0; r < db.records.size(); ++r) {
    const auto& rec = db.records[r];
    for (int i = 0; i < kApCount; ++i)
      if (rec.rss[i] > kRssNotDetected) ++rep.ap_detection_counts[i];
    ++rep.floor_counts[rec.floor];
    if (rec.loc_x < 0 || rec.loc_y < 0)
      rep.issues.push_back({r, "negative grid coordinate"});
    if (bounds) {
      double px = rec.loc_x * db.spacing_m, py = rec.loc_y * db.spacing_m;
      if (!bounds->contains({px, py}, 1e-9))
        rep.issues.push_back({r, "grid position (" + std::to_string(rec.loc_x) + "," +
                                     std::to_string(rec.loc_y) + ") outside test bed"});
    }
  }
  return rep;
}

}  // namespace geoloc
