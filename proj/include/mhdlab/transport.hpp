#pragma once

#include "mhdlab/spectral_field.hpp"

#include <stdexcept>
#include <string>

namespace mhdlab {

/// Advective CFL violation; carries a step size that would satisfy the bound.
class CflError : public std::runtime_error {
 public:
  CflError(const std::string& what, double suggested_dt)
      : std::runtime_error(what), suggested_dt_(suggested_dt) {}
  double suggested_dt() const { return suggested_dt_; }

 private:
  double suggested_dt_;
};

/// Advective Courant number dt·max|v|/Δx.
double courant_number(const SpectralField& v, double dt);

/// One classical RK4 step of ∂_t a + v·∇a = f with v and f frozen over the
/// step and dealiased products. Throws CflError when dt·max|v|/Δx > 1.
SpectralField transport_step(const SpectralField& a, const SpectralField& v,
                             const SpectralField& f, double dt);

}  // namespace mhdlab
