#pragma once

#include "mhdlab/littlewood_paley.hpp"

#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace mhdlab {

/// Linear model problems whose a-priori estimates are measured.
///   transport:  ∂_t a + v·∇a = f
///   momentum:   ∂_t u + v·∇u + u·∇w - (1+c)𝒜u = g
///   induction:  ∂_t H + u·∇H - H·∇u - νΔH = -(div u)H + g,  div H = 0
///   imhd_b2:    the frozen-coefficient (w, B) system linearized about (A, E)
///   imhd_b3:    the same with 𝒫 applied to every term
/// Coefficient fields (v, w, c, u, A, E) and forcings are frozen in time.
enum class AuditKind { transport, momentum, induction, imhd_b2, imhd_b3 };

std::string to_string(AuditKind k);
/// Accepts the identifiers produced by to_string.
AuditKind parse_audit_kind(const std::string& name);

struct AuditConfig {
  int dim = 2;
  int n = 32;
  double length = 2.0 * std::numbers::pi;
  double horizon = 0.1;
  int steps = 50;
  double mu = 0.1;
  double lambda = 0.0;
  double nu = 0.1;
  /// Regularity index s (σ for transport) of the audited norm.
  double s = 0.0;
  /// Hölder-type index of the momentum coefficient norm.
  double alpha = 0.5;
  /// Constants of the estimates, which have no fixed values.
  double kappa = 0.5;
  double gronwall_constant = 1.0;
  /// Random data live on dk <= |k| <= band·dk.
  double band = 6.0;
  double data_amplitude = 1.0;
  double coefficient_amplitude = 0.5;
  double forcing_amplitude = 0.5;
  Mollifier mollifier = Mollifier::sharp;
  /// Also rerun every sample on the dyadically rescaled box.
  bool rescale = true;
  int threads = 1;
};

/// Data of one audit run: initial unknowns, frozen coefficients and forcing by
/// name, plus the integration window.
struct AuditSample {
  AuditKind kind;
  Grid grid;
  double horizon;
  int steps;
  std::map<std::string, SpectralField> fields;

  const SpectralField& at(const std::string& name) const;
};

struct AuditOutcome {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool valid = true;
  std::string note;
};

/// Seeded random sample `index` of a family.
AuditSample make_audit_sample(AuditKind kind, std::uint64_t seed, std::uint64_t index,
                              const AuditConfig& cfg);

/// The sample seen through x ↦ 2x: box halved, velocity-like coefficients
/// doubled, forcing quadrupled, horizon quartered. Every term of every
/// estimate is invariant, so ratios must be too.
AuditSample rescale_sample(const AuditSample& sample);

/// Integrates the model problem and evaluates LHS and RHS with the configured
/// constants. Samples whose solution or bound is not finite come back invalid.
AuditOutcome evaluate_audit(const AuditSample& sample, const AuditConfig& cfg);

struct AuditRecord {
  std::uint64_t sample = 0;
  AuditOutcome base;
  std::optional<AuditOutcome> rescaled;
};

struct AuditReport {
  std::string estimate;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  int resolution = 0;
  std::vector<AuditRecord> records;

  int sample_count() const { return static_cast<int>(records.size()); }
  int excluded() const;
  /// Ratios of valid samples in sample order.
  std::vector<double> ratios() const;
  double max_ratio() const;
  /// max over valid samples of |r_rescaled/r - 1| (0 when no rescale ran).
  double rescale_spread() const;
  /// One JSON object per sample:
  /// {estimate, seed, sample, ratio, rescaled_ratio, valid, horizon, resolution}.
  std::string to_ndjson() const;
};

/// Runs `samples` seeded samples (concurrently when cfg.threads > 1).
AuditReport audit_estimate(AuditKind kind, int samples, std::uint64_t seed,
                           const AuditConfig& cfg = {});

}  // namespace mhdlab
