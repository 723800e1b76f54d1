#include "mhdlab/grid.hpp"

#include <climits>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mhdlab {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int signed_index(int i, int n) { return i < n / 2 ? i : i - n; }

// floor(log2 |k|) from exact comparisons of |k|² against 4^j, so the index is
// consistent between boxes whose lengths differ by powers of two.
int shell_of(double k2) {
  if (k2 <= 0.0) return INT_MIN;
  int j = static_cast<int>(std::floor(0.5 * std::log2(k2)));
  while (std::ldexp(1.0, 2 * j) > k2) --j;
  while (std::ldexp(1.0, 2 * (j + 1)) <= k2) ++j;
  return j;
}

}  // namespace

Grid::Grid(int dim, int n, double length) : dim_(dim), n_(n), length_(length) {
  if (dim != 2 && dim != 3) {
    throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (n < 8 || !is_power_of_two(n)) {
    throw std::invalid_argument("grid points per axis must be a power of two >= 8, got " +
                                std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("grid box length must be positive");
  }

  auto t = std::make_shared<Tables>();
  Eigen::Index modes = 1;
  for (int a = 0; a < dim; ++a) modes *= n;
  t->modes = modes;
  t->lattice.resize(modes, dim);
  t->k.resize(modes, dim);
  t->k2.resize(modes);
  t->kabs.resize(modes);
  t->keep.resize(modes);
  t->n2.resize(modes);
  t->conj.resize(modes);
  t->shell.resize(modes);
  t->cutoff = (n + 2) / 3 - 1;  // ceil(n/3) - 1
  while (3 * t->cutoff >= n) --t->cutoff;

  const double dk = 2.0 * std::numbers::pi / length;
  for (Eigen::Index m = 0; m < modes; ++m) {
    Eigen::Index rem = m;
    int n2 = 0;
    bool kept = true;
    Eigen::Index conj = 0;
    for (int a = dim - 1; a >= 0; --a) {
      const int i = static_cast<int>(rem % n);
      rem /= n;
      const int s = signed_index(i, n);
      t->lattice(m, a) = s;
      t->k(m, a) = dk * s;
      n2 += s * s;
      if (std::abs(s) > t->cutoff) kept = false;
    }
    Eigen::Index stride = 1;
    for (int a = dim - 1; a >= 0; --a) {
      const int s = t->lattice(m, a);
      const int ci = ((-s) % n + n) % n;
      conj += ci * stride;
      stride *= n;
    }
    t->n2(m) = n2;
    t->k2(m) = dk * dk * n2;
    t->kabs(m) = dk * std::sqrt(static_cast<double>(n2));
    t->keep(m) = kept ? 1.0 : 0.0;
    t->shell(m) = shell_of(t->k2(m));
    t->conj(m) = static_cast<int>(conj);
    if (kept) t->max_kept_k = std::max(t->max_kept_k, t->kabs(m));
  }
  tables_ = std::move(t);
}

double Grid::volume() const { return std::pow(length_, dim_); }

double Grid::dk() const { return 2.0 * std::numbers::pi / length_; }

int Grid::min_shell() const { return static_cast<int>(std::floor(std::log2(min_k()))); }

int Grid::max_shell() const { return static_cast<int>(std::floor(std::log2(max_k()))); }

Eigen::Index Grid::index_of(const Eigen::Array3i& idx) const {
  Eigen::Index m = 0;
  for (int a = 0; a < dim_; ++a) m = m * n_ + idx[a];
  return m;
}

Eigen::Index Grid::mode_index(const Eigen::Array3i& nvec) const {
  Eigen::Array3i idx;
  for (int a = 0; a < 3; ++a) idx[a] = ((nvec[a] % n_) + n_) % n_;
  return index_of(idx);
}

Eigen::ArrayXXd Grid::coordinates() const {
  Eigen::ArrayXXd x(modes(), dim_);
  const double h = spacing();
  for (Eigen::Index m = 0; m < modes(); ++m) {
    Eigen::Index rem = m;
    for (int a = dim_ - 1; a >= 0; --a) {
      x(m, a) = h * static_cast<double>(rem % n_);
      rem /= n_;
    }
  }
  return x;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace mhdlab
