#pragma once

#include "mhdlab/grid.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <functional>

namespace mhdlab {

using Complex = std::complex<double>;

/// Fourier coefficients of a real scalar (1 component) or vector (d components)
/// field on a periodic grid.
///
/// Normalization: f(x) = Σ_k f̂_k exp(i k·x), so the mean is the k = 0
/// coefficient and ‖f‖²_{L²} = |box| Σ_k |f̂_k|². Coefficients are stored
/// modes × components, column-major, so each component is contiguous.
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid, int components = 1);
  SpectralField(const Grid& grid, Eigen::ArrayXXcd coeffs);

  const Grid& grid() const { return grid_; }
  int components() const { return static_cast<int>(coeffs_.cols()); }
  bool is_scalar() const { return components() == 1; }
  bool is_vector() const { return components() == grid_.dim(); }

  Eigen::ArrayXXcd& coeffs() { return coeffs_; }
  const Eigen::ArrayXXcd& coeffs() const { return coeffs_; }
  auto component(int c) { return coeffs_.col(c); }
  auto component(int c) const { return coeffs_.col(c); }
  SpectralField component_field(int c) const;

  Complex mean(int c = 0) const { return coeffs_(0, c); }

  /// ‖f‖_{L²} with pointwise Euclidean magnitude for vector fields.
  double l2_norm() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  SpectralField operator-() const { return (*this) * -1.0; }

 private:
  Grid grid_;
  Eigen::ArrayXXcd coeffs_;
};

/// Real samples of a field at the grid points (points × components).
struct PhysicalField {
  Grid grid;
  Eigen::ArrayXXd values;

  explicit PhysicalField(const Grid& g, int components = 1)
      : grid(g), values(Eigen::ArrayXXd::Zero(g.modes(), components)) {}
  PhysicalField(const Grid& g, Eigen::ArrayXXd v) : grid(g), values(std::move(v)) {}

  int components() const { return static_cast<int>(values.cols()); }
};

PhysicalField to_physical(const SpectralField& f);

/// Forward transform; with `dealias` the 2/3-rule modes are zeroed.
SpectralField to_spectral(const PhysicalField& f, bool dealias = true);

/// Coefficients of a real function sampled at the grid points, dealiased.
/// `fn(x, out)` receives the point coordinates and writes `components` values.
SpectralField sample(const Grid& g, int components,
                     const std::function<void(const double* x, double* out)>& fn);

/// Zero every mode outside the 2/3-rule set.
SpectralField dealias(SpectralField f);

/// Pointwise product of two fields formed in physical space and dealiased.
/// A scalar times a vector broadcasts; two vectors multiply componentwise.
SpectralField product(const SpectralField& a, const SpectralField& b);

/// Pointwise dot product Σ_i a_i b_i of two vector fields, dealiased.
SpectralField dot(const SpectralField& a, const SpectralField& b);

/// Max over the grid of the pointwise Euclidean magnitude.
double linf_norm(const PhysicalField& f);
double linf_norm(const SpectralField& f);

/// Largest deviation from Hermitian symmetry, relative to max |coefficient|.
double hermitian_defect(const SpectralField& f);

/// Projects onto real-valued fields: f̂_k ← (f̂_k + conj f̂_{-k}) / 2.
SpectralField make_real(SpectralField f);

}  // namespace mhdlab
