#include "mhdlab/spectral_field.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhdlab {

SpectralField::SpectralField(const Grid& grid, int components)
    : grid_(grid), coeffs_(Eigen::ArrayXXcd::Zero(grid.modes(), components)) {
  if (components != 1 && components != grid.dim()) {
    throw std::invalid_argument("field must have 1 or d components");
  }
}

SpectralField::SpectralField(const Grid& grid, Eigen::ArrayXXcd coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != grid.modes()) {
    throw std::invalid_argument("coefficient array does not match grid");
  }
  if (components() != 1 && components() != grid.dim()) {
    throw std::invalid_argument("field must have 1 or d components");
  }
}

SpectralField SpectralField::component_field(int c) const {
  return SpectralField(grid_, Eigen::ArrayXXcd(coeffs_.col(c)));
}

double SpectralField::l2_norm() const {
  return std::sqrt(grid_.volume() * coeffs_.abs2().sum());
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "field addition");
  if (o.components() != components()) throw std::invalid_argument("component mismatch in +");
  coeffs_ += o.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "field subtraction");
  if (o.components() != components()) throw std::invalid_argument("component mismatch in -");
  coeffs_ -= o.coeffs_;
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  coeffs_ *= s;
  return *this;
}

PhysicalField to_physical(const SpectralField& f) {
  const Grid& g = f.grid();
  PhysicalField out(g, f.components());
  Eigen::ArrayXcd buf(g.modes());
  for (int c = 0; c < f.components(); ++c) {
    detail::fft(g, f.coeffs().col(c).data(), buf.data(), +1);
    out.values.col(c) = buf.real();
  }
  return out;
}

SpectralField to_spectral(const PhysicalField& f, bool dealias_output) {
  const Grid& g = f.grid;
  SpectralField out(g, f.components());
  Eigen::ArrayXcd in(g.modes());
  const double scale = 1.0 / static_cast<double>(g.modes());
  for (int c = 0; c < f.components(); ++c) {
    in = f.values.col(c).cast<Complex>();
    detail::fft(g, in.data(), out.coeffs().col(c).data(), -1);
    out.coeffs().col(c) *= scale;
    if (dealias_output) out.coeffs().col(c) *= g.keep();
  }
  return out;
}

SpectralField sample(const Grid& g, int components,
                     const std::function<void(const double* x, double* out)>& fn) {
  const Eigen::ArrayXXd x = g.coordinates();
  PhysicalField p(g, components);
  Eigen::ArrayXd xi(g.dim());
  Eigen::ArrayXd vals(components);
  for (Eigen::Index m = 0; m < g.modes(); ++m) {
    xi = x.row(m).transpose();
    fn(xi.data(), vals.data());
    p.values.row(m) = vals.transpose();
  }
  return to_spectral(p);
}

SpectralField dealias(SpectralField f) {
  for (int c = 0; c < f.components(); ++c) f.coeffs().col(c) *= f.grid().keep();
  return f;
}

SpectralField product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "product");
  const PhysicalField pa = to_physical(a);
  const PhysicalField pb = to_physical(b);
  const int ca = a.components(), cb = b.components();
  if (ca != cb && ca != 1 && cb != 1) throw std::invalid_argument("product: component mismatch");
  const int cout = std::max(ca, cb);
  PhysicalField out(a.grid(), cout);
  for (int c = 0; c < cout; ++c) {
    out.values.col(c) = pa.values.col(ca == 1 ? 0 : c) * pb.values.col(cb == 1 ? 0 : c);
  }
  return to_spectral(out);
}

SpectralField dot(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "dot");
  if (a.components() != b.components()) throw std::invalid_argument("dot: component mismatch");
  const PhysicalField pa = to_physical(a);
  const PhysicalField pb = to_physical(b);
  PhysicalField out(a.grid(), 1);
  out.values.col(0) = (pa.values * pb.values).rowwise().sum();
  return to_spectral(out);
}

double linf_norm(const PhysicalField& f) {
  if (f.values.size() == 0) return 0.0;
  return std::sqrt(f.values.square().rowwise().sum().maxCoeff());
}

double linf_norm(const SpectralField& f) { return linf_norm(to_physical(f)); }

double hermitian_defect(const SpectralField& f) {
  const auto& conj = f.grid().conjugate();
  double worst = 0.0;
  const double scale = std::max(f.coeffs().abs().maxCoeff(), 1e-300);
  for (int c = 0; c < f.components(); ++c) {
    for (Eigen::Index m = 0; m < f.grid().modes(); ++m) {
      worst = std::max(worst, std::abs(f.coeffs()(m, c) - std::conj(f.coeffs()(conj(m), c))));
    }
  }
  return worst / scale;
}

SpectralField make_real(SpectralField f) {
  const auto& conj = f.grid().conjugate();
  Eigen::ArrayXXcd sym(f.coeffs().rows(), f.coeffs().cols());
  for (int c = 0; c < f.components(); ++c) {
    for (Eigen::Index m = 0; m < f.grid().modes(); ++m) {
      sym(m, c) = 0.5 * (f.coeffs()(m, c) + std::conj(f.coeffs()(conj(m), c)));
    }
  }
  f.coeffs() = std::move(sym);
  return f;
}

}  // namespace mhdlab
