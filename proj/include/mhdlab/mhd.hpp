#pragma once

#include "mhdlab/besov.hpp"
#include "mhdlab/spectral_field.hpp"

#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhdlab {

/// compressible:   unknowns (a, u, H) with ρ = 1 + a
/// scaled:         unknowns (b, u, H) with ρ = 1 + εb, Mach number ε
/// incompressible: unknowns (v, B); the density slot holds a zero scalar
enum class Regime { compressible, scaled, incompressible };

std::string to_string(Regime r);
Regime parse_regime(const std::string& name);

struct MHDState {
  Regime regime;
  double eps;
  double t;
  SpectralField density;
  SpectralField u;
  SpectralField H;

  static MHDState compressible(SpectralField a, SpectralField u, SpectralField H, double t = 0.0);
  static MHDState scaled(SpectralField b, SpectralField u, SpectralField H, double eps,
                         double t = 0.0);
  static MHDState incompressible(SpectralField v, SpectralField B, double t = 0.0);

  const Grid& grid() const { return u.grid(); }
  /// Factor s in ρ = 1 + s·density (0 for the incompressible regime).
  double density_scale() const;
};

struct PhysicalParams {
  double mu = 0.1;
  double lambda = 0.0;
  double nu = 0.1;
  /// P(ρ) = A ρ^γ.
  double pressure_coefficient = 1.0;
  double gamma = 1.4;

  double nu_bar() const { return lambda + 2.0 * mu; }
  double nu_min() const { return mu < nu ? mu : nu; }
  double pressure(double rho) const;
  double pressure_derivative(double rho) const;
  /// P′(1), the squared sound speed of the linearization.
  double sound_speed2() const { return pressure_derivative(1.0); }

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

/// I(a) = a/(1+a).
double inertia_factor(double a);
/// P′(1+a)/(1+a), so that ∇G(a) = P′(1+a)/(1+a) ∇a.
double pressure_gradient_factor(const PhysicalParams& prm, double a);
/// K(z) = P′(1+z)/(1+z) − P′(1); K(0) = 0. Evaluated without cancellation.
double pressure_defect(const PhysicalParams& prm, double z);
/// Π(ρ) = A(ρ^γ − 1 − γ(ρ − 1))/(γ − 1), so that ρΠ′ − Π = P(ρ) − P(1).
double pressure_potential(const PhysicalParams& prm, double rho);

/// Aborts of a numerical integration. The CLI maps these to exit code 3.
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VacuumError : public NumericalAbort {
 public:
  explicit VacuumError(double min_density)
      : NumericalAbort("approach to vacuum"), min_density_(min_density) {}
  double min_density() const { return min_density_; }

 private:
  double min_density_;
};

class BlowupError : public NumericalAbort {
 public:
  explicit BlowupError(double t);
  double time() const { return t_; }

 private:
  double t_;
};

enum class Scheme { strang_rk4, etd_rk2 };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& name);

/// Besov norm of one state field recorded in the diagnostics.
struct NormRequest {
  std::string field;  // "density", "u" or "H"
  double s = 0.0;
  Lebesgue p = Lebesgue::two;

  std::string key() const;
};

struct StepperConfig {
  Scheme scheme = Scheme::strang_rk4;
  double dt = 1e-3;
  /// Friedrichs parameter n of Ė_n. 0 disables truncation; the density
  /// tendency still loses its mean so that mass is conserved exactly.
  int truncation = 0;
  bool dealias = true;
  /// Smallest admissible inf(1 + a).
  double vacuum_floor = 0.1;
  int save_stride = 1;
  /// Run aborts once ∫‖∇u‖_{Ḃ^{d/2}} or ∫‖∇H‖_{Ḃ^{d/2}} exceeds this.
  double gradient_limit = std::numeric_limits<double>::infinity();
  std::vector<NormRequest> norms;
};

/// Tendencies of (density, u, H).
struct Tendency {
  SpectralField density;
  SpectralField u;
  SpectralField H;
};

struct SplitTendency {
  Tendency stiff;
  Tendency nonstiff;
};

/// Full right-hand side of the compressible system in the (a, u, H) form,
/// products formed pseudo-spectrally. The mean of da is zeroed.
Tendency rhs_compressible(const MHDState& st, const PhysicalParams& prm,
                          const StepperConfig& cfg = {});

/// Mach-scaled system split into the stiff linear part
///   db = −div u/ε,  du = −P′(1)∇b/ε + 𝒜u,  dH = νΔH
/// and the rest, which includes −K(εb)∇b/ε and −I(εb)𝒜u.
SplitTendency rhs_scaled(const MHDState& st, const PhysicalParams& prm,
                         const StepperConfig& cfg = {});

/// dv = 𝒫(−v·∇v + B·∇B) + μΔv,  dB = 𝒫(−v·∇B + B·∇v) + νΔB.
/// Throws std::invalid_argument when v or B is not solenoidal.
Tendency rhs_incompressible(const MHDState& st, const PhysicalParams& prm,
                            const StepperConfig& cfg = {});

/// Splitting used by the time integrators for any regime. The compressible
/// regime uses the scaled splitting with ε = 1.
SplitTendency split_rhs(const MHDState& st, const PhysicalParams& prm, const StepperConfig& cfg);

/// Exact flow e^{tL} of the stiff linear part. Per mode L acts on (ρ̂, k̂·û) by
///   [[0, −i|k|/ε], [−iP′(1)|k|/ε, −ν̄|k|²]]
/// (ε = 1 for compressible, no coupling and −μ|k|² for incompressible), on the
/// transverse part of û by −μ|k|² and on Ĥ by −ν|k|².
MHDState linear_flow(const MHDState& st, const PhysicalParams& prm, double t);

/// Time integrator with the per-mode matrix functions for one step size
/// precomputed.
class Stepper {
 public:
  Stepper(const Grid& g, Regime regime, double eps, const PhysicalParams& prm,
          const StepperConfig& cfg);
  ~Stepper();
  Stepper(Stepper&&) noexcept;

  /// Advances by cfg.dt. Throws BlowupError on non-finite values and
  /// VacuumError when inf(1 + a) drops below the floor.
  MHDState step(const MHDState& st) const;

  /// Nonstiff tendency after dealiasing and truncation.
  Tendency nonlinear(const MHDState& st) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

MHDState step(const MHDState& st, const PhysicalParams& prm, const StepperConfig& cfg);

/// ∫ ρ|u|²/2 + |H|²/2 + Π(ρ) (Π/ε² in the scaled regime).
double energy(const MHDState& st, const PhysicalParams& prm);
/// μ‖∇u‖² + (μ+λ)‖div u‖² + ν‖∇H‖².
double dissipation(const MHDState& st, const PhysicalParams& prm);
/// Min over the grid of 1 + s·density (1 for incompressible).
double inf_density(const MHDState& st);
/// ‖div f‖_{L²}.
double divergence_norm(const SpectralField& f);

struct Diagnostics {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  /// (E_{n+1} − E_n)/dt + (D_n + D_{n+1})/2 over the last step.
  double energy_residual = 0.0;
  double inf_density = 1.0;
  double mass = 0.0;  // mean of the density variable
  double div_u = 0.0;
  double div_H = 0.0;
  double grad_u = 0.0;  // ‖∇u‖_{Ḃ^{d/2}_{2,1}}
  double grad_H = 0.0;
  std::vector<std::pair<std::string, double>> norms;

  std::string to_json() const;
};

enum class RunStatus { completed, vacuum, blowup, gradient_blowup_u, gradient_blowup_H };

std::string to_string(RunStatus s);

struct RunResult {
  /// Saved states; the first one is the initial state.
  std::vector<MHDState> trajectory;
  /// One entry per saved state after the initial one.
  std::vector<Diagnostics> series;
  RunStatus status = RunStatus::completed;
  std::string reason;
  /// max over steps of |energy residual| / initial energy.
  double max_energy_residual = 0.0;
  /// max over steps of ‖div H‖ (and ‖div u‖ for incompressible).
  double max_div = 0.0;
};

/// Integrates to T with steps of at most cfg.dt (uniform, so T is hit
/// exactly). Numerical aborts end the run with a partial trajectory.
RunResult run(const MHDState& init, const PhysicalParams& prm, const StepperConfig& cfg,
              double T);

/// Diagnostics of one state without the step-dependent residual.
Diagnostics diagnose(const MHDState& st, const PhysicalParams& prm,
                     const std::vector<NormRequest>& norms = {});

}  // namespace mhdlab
