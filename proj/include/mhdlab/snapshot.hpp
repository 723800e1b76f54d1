#pragma once

#include "mhdlab/spectral_field.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

namespace mhdlab {

/// Binary layout, little-endian:
///   "MHDF" | version u32 | d u32 | N u32 per axis | L f64 | components u32
///   then (re, im) f64 pairs, component by component, modes in row-major
///   lattice order (the Grid storage order).
inline constexpr std::uint32_t kSnapshotVersion = 1;

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_snapshot(std::ostream& os, const SpectralField& f);
SpectralField read_snapshot(std::istream& is);

void write_snapshot(const std::filesystem::path& path, const SpectralField& f);
SpectralField read_snapshot(const std::filesystem::path& path);

/// True when the file starts with the snapshot magic.
bool is_snapshot(const std::filesystem::path& path);

}  // namespace mhdlab
