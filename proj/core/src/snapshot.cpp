#include "sqg/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "sqg/errors.hpp"

namespace sqg {
namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double d) {
  std::uint64_t v = std::bit_cast<std::uint64_t>(d);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& snap) {
  if (static_cast<int>(snap.values.size()) != snap.grid.size())
    throw IoError("write_snapshot: value count does not match grid");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open snapshot for writing: " + path);
  os.write("SQGF", 4);
  put_u32(os, 1);
  put_u32(os, snap.grid.nx);
  put_u32(os, snap.grid.ny);
  put_f64(os, snap.time);
  put_f64(os, snap.kappa);
  put_f64(os, snap.gamma);
  for (double v : snap.values) put_f64(os, v);
  if (!os) throw IoError("short write on snapshot: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open snapshot: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "SQGF", 4) != 0)
    throw IoError("not an SQGF snapshot: " + path);
  std::uint32_t version = get_u32(is);
  if (version != 1) throw IoError("unsupported SQGF version in " + path);
  std::uint32_t nx = get_u32(is), ny = get_u32(is);
  Snapshot snap;
  snap.grid = GridSpec(int(nx), int(ny));
  snap.time = get_f64(is);
  snap.kappa = get_f64(is);
  snap.gamma = get_f64(is);
  snap.values.resize(snap.grid.size());
  for (double& v : snap.values) v = get_f64(is);
  if (!is) throw IoError("truncated SQGF snapshot: " + path);
  return snap;
}

}  // namespace sqg
