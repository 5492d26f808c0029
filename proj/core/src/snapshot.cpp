#include "relgs/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace relgs {
namespace {

constexpr char kMagic[4] = {'R', 'G', 'S', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  os.write(b, 8);
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Field& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SnapshotError("cannot open snapshot for writing: " + path);
  os.write(kMagic, 4);
  put_u32(os, static_cast<std::uint32_t>(field.grid().dim()));
  put_u32(os, static_cast<std::uint32_t>(field.grid().points_per_axis()));
  put_f64(os, field.grid().box_half_length());
  for (double v : field.values()) put_f64(os, v);
  if (!os) throw SnapshotError("short write on snapshot: " + path);
}

Field read_snapshot(const std::string& path, std::size_t sample_budget) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("cannot open snapshot: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw SnapshotError("bad snapshot magic in " + path);
  }
  const auto dim = static_cast<int>(get_u32(is));
  const auto n = static_cast<int>(get_u32(is));
  const double L = get_f64(is);
  Grid grid = make_grid(dim, L, n, sample_budget);
  std::vector<double> values(grid.size());
  for (double& v : values) v = get_f64(is);
  if (!is) throw SnapshotError("truncated snapshot: " + path);
  return Field(std::move(grid), std::move(values));
}

}  // namespace relgs
