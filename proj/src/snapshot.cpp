#include "mhdlab/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace mhdlab {

namespace {

constexpr char kMagic[4] = {'M', 'H', 'D', 'F'};

template <typename T>
void put(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little, "snapshot IO assumes a little-endian host");
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  os.write(buf, sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) throw SnapshotError("snapshot truncated");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& f) {
  const Grid& g = f.grid();
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kSnapshotVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n()));
  put<double>(os, g.length());
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.components()));
  for (int c = 0; c < f.components(); ++c) {
    for (Eigen::Index m = 0; m < g.modes(); ++m) {
      put<double>(os, f.coeffs()(m, c).real());
      put<double>(os, f.coeffs()(m, c).imag());
    }
  }
  if (!os) throw SnapshotError("snapshot write failed");
}

SpectralField read_snapshot(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw SnapshotError("not a snapshot (bad magic)");
  const auto version = get<std::uint32_t>(is);
  if (version != kSnapshotVersion) throw SnapshotError("unsupported snapshot version " + std::to_string(version));
  const auto d = get<std::uint32_t>(is);
  if (d != 2 && d != 3) throw SnapshotError("snapshot dimension must be 2 or 3");
  const auto n = get<std::uint32_t>(is);
  if (n > (d == 2 ? 1u << 14 : 1u << 10)) throw SnapshotError("snapshot grid too large");
  for (std::uint32_t a = 1; a < d; ++a) {
    if (get<std::uint32_t>(is) != n) throw SnapshotError("snapshot grids must be cubic");
  }
  const auto length = get<double>(is);
  const auto components = get<std::uint32_t>(is);
  if (components != 1 && components != d) throw SnapshotError("snapshot component count must be 1 or d");
  const Grid g(static_cast<int>(d), static_cast<int>(n), length);
  SpectralField f(g, static_cast<int>(components));
  for (std::uint32_t c = 0; c < components; ++c) {
    for (Eigen::Index m = 0; m < g.modes(); ++m) {
      const double re = get<double>(is);
      const double im = get<double>(is);
      f.coeffs()(m, c) = Complex(re, im);
    }
  }
  return f;
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw SnapshotError("cannot write " + path.string());
  write_snapshot(os, f);
}

SpectralField read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("cannot read " + path.string());
  return read_snapshot(is);
}

bool is_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  char magic[4];
  return is.read(magic, 4) && std::memcmp(magic, kMagic, 4) == 0;
}

}  // namespace mhdlab
