#pragma once

#include <Eigen/Core>

#include <memory>

namespace mhdlab {

/// Periodic box [0, L)^d sampled on N points per axis.
///
/// Wavenumbers are k = (2π/L)·n with n in [-N/2, N/2) on every axis, stored in
/// FFT order and row-major lattice order (last axis fastest). The per-mode
/// tables are computed once and shared between copies.
class Grid {
 public:
  Grid(int dim, int n, double length);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  double volume() const;
  double spacing() const { return length_ / n_; }
  double dk() const;  // 2π / L

  Eigen::Index modes() const { return tables_->modes; }

  /// Integer lattice index n of every mode (modes × dim).
  const Eigen::ArrayXXi& lattice() const { return tables_->lattice; }
  /// Wavevector k of every mode (modes × dim).
  const Eigen::ArrayXXd& wavevectors() const { return tables_->k; }
  const Eigen::ArrayXd& k2() const { return tables_->k2; }
  const Eigen::ArrayXd& kabs() const { return tables_->kabs; }
  /// Integer |n|^2, exact key for quantities that only depend on |k|.
  const Eigen::ArrayXi& n2() const { return tables_->n2; }
  /// 1 where the mode survives the 2/3 rule, 0 otherwise.
  const Eigen::ArrayXd& keep() const { return tables_->keep; }
  /// Index of the mode carrying -k.
  const Eigen::ArrayXi& conjugate() const { return tables_->conj; }
  /// Sharp dyadic shell floor(log2 |k|) of every mode; INT_MIN at the mean.
  const Eigen::ArrayXi& sharp_shell() const { return tables_->shell; }

  /// Largest retained |n_i| per axis under the 2/3 rule (3K < N).
  int dealias_cutoff() const { return tables_->cutoff; }
  double min_k() const { return dk(); }
  /// Largest |k| among retained modes.
  double max_k() const { return tables_->max_kept_k; }

  /// Lowest and highest dyadic shells any retained mode can fall in.
  int min_shell() const;
  int max_shell() const;

  /// Linear index of the lattice point (i_0, ..., i_{d-1}) in FFT order.
  Eigen::Index index_of(const Eigen::Array3i& idx) const;
  /// Linear index of the mode with integer wavevector n (any sign).
  Eigen::Index mode_index(const Eigen::Array3i& nvec) const;

  /// Physical coordinates of every grid point (points × dim).
  Eigen::ArrayXXd coordinates() const;

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && length_ == o.length_;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  struct Tables {
    Eigen::Index modes = 0;
    Eigen::ArrayXXi lattice;
    Eigen::ArrayXXd k;
    Eigen::ArrayXd k2, kabs, keep;
    Eigen::ArrayXi n2, conj, shell;
    int cutoff = 0;
    double max_kept_k = 0.0;
  };

  int dim_;
  int n_;
  double length_;
  std::shared_ptr<const Tables> tables_;
};

/// Throws std::invalid_argument when the two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace mhdlab
