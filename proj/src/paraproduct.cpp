#include "mhdlab/paraproduct.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mhdlab {

namespace {

bool is_zero(const SpectralField& f) { return (f.coeffs().abs2() == 0.0).all(); }

void check_operands(const SpectralField& u, const SpectralField& v, const char* what) {
  require_same_grid(u.grid(), v.grid(), what);
  if (u.components() != v.components() && u.components() != 1 && v.components() != 1) {
    throw std::invalid_argument(std::string(what) + ": component mismatch");
  }
}

// Accumulates pointwise products in physical space; one forward transform at the end.
class ProductSum {
 public:
  ProductSum(const Grid& g, int components) : acc_(g, components) {}

  void add(const SpectralField& a, const SpectralField& b) {
    const PhysicalField pa = to_physical(a);
    const PhysicalField pb = to_physical(b);
    const int ca = pa.components(), cb = pb.components();
    for (int c = 0; c < acc_.components(); ++c) {
      acc_.values.col(c) += pa.values.col(ca == 1 ? 0 : c) * pb.values.col(cb == 1 ? 0 : c);
    }
  }

  SpectralField result() const { return to_spectral(acc_); }

 private:
  PhysicalField acc_;
};

}  // namespace

SpectralField paraproduct(const SpectralField& u, const SpectralField& v, Mollifier m) {
  check_operands(u, v, "paraproduct");
  const int comps = std::max(u.components(), v.components());
  ProductSum sum(u.grid(), comps);
  const ShellRange range = shell_range(u.grid(), m);
  for (int q = range.first; q <= range.last; ++q) {
    const SpectralField vq = dyadic_block(v, q, m);
    if (is_zero(vq)) continue;
    const SpectralField low = low_pass(u, q - 1, m);
    if (is_zero(low)) continue;
    sum.add(low, vq);
  }
  return sum.result();
}

SpectralField remainder(const SpectralField& u, const SpectralField& v, Mollifier m) {
  check_operands(u, v, "remainder");
  const int comps = std::max(u.components(), v.components());
  ProductSum sum(u.grid(), comps);
  const ShellRange range = shell_range(u.grid(), m);
  for (int q = range.first; q <= range.last; ++q) {
    const SpectralField uq = dyadic_block(u, q, m);
    if (is_zero(uq)) continue;
    SpectralField vt = dyadic_block(v, q - 1, m) + dyadic_block(v, q, m) + dyadic_block(v, q + 1, m);
    if (is_zero(vt)) continue;
    sum.add(uq, vt);
  }
  SpectralField out = sum.result();
  for (int c = 0; c < comps; ++c) {
    out.coeffs()(0, c) += u.coeffs()(0, u.components() == 1 ? 0 : c) *
                          v.coeffs()(0, v.components() == 1 ? 0 : c);
  }
  return out;
}

}  // namespace mhdlab
