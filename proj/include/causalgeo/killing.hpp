#pragma once

#include "causalgeo/metric.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace causalgeo {

// ===== Lie-derivative residual =====

// Finite-difference evaluation of (L_X g)_ij at one point, with the best-fit
// conformal factor removed:
//   residual = || L_fd - sigma * g ||_F,   sigma = <L_fd, g>_F / <g, g>_F.
// `sigma` estimates the conformal factor; residual == 0 (up to truncation)
// exactly when X is conformal Killing at the point.
struct LieResidual {
  double residual = 0.0;
  double sigma = 0.0;
};

LieResidual lie_derivative_residual(const VectorFieldCandidate& X, const MetricField& g,
                                    const Vec& pt, double h = 1e-4);

// ===== conformal-timelike-Killing decision over a sample set =====

struct KillingWitness {
  Vec point;
  double residual = 0.0;
  double alignment = 0.0;  // g(X, X) at the witness point
  std::string reason;
};

struct KillingStats {
  bool ok = false;
  std::size_t samples = 0;
  double max_residual = 0.0;
  double max_alignment = 0.0;  // largest g(X, X); must stay negative
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::optional<KillingWitness> witness;  // first failing sample, if any
};

// True (stats.ok) iff at every sample the residual stays below `tol` and
// g(X, X) < 0.  Throws std::invalid_argument on an empty sample set and
// metric_error if the metric is not Lorentzian at some sample.
KillingStats is_conformal_timelike_killing(const VectorFieldCandidate& X, const MetricField& g,
                                           const std::vector<Vec>& samples, double h = 1e-4,
                                           double tol = 1e-6);

// ===== past-completeness probe =====

enum class ProbeOutcome { Survived, EscapedDomain, Inconclusive };

std::string to_string(ProbeOutcome outcome);

struct TrajectoryProbe {
  Vec start;
  ProbeOutcome outcome = ProbeOutcome::Inconclusive;
  double parameter = 0.0;  // flow parameter reached (<= 0; the flow runs backwards)
  Vec final_point;
  std::size_t steps = 0;
  std::string note;
};

struct CompletenessProbe {
  ProbeOutcome outcome = ProbeOutcome::Survived;  // worst outcome over trajectories
  double budget = 0.0;
  double guard_radius = 0.0;
  std::vector<TrajectoryProbe> trajectories;
};

// Integrates the backward flow of X from each start for parameter length
// `budget` with an adaptive embedded Runge-Kutta pair.  A trajectory escapes
// when the metric's clearance drops below `guard_radius`; it survives when the
// full budget is exhausted inside the domain.  Step sizes are clamped to half
// the current clearance so a step cannot jump across the guard ball.
// budget == 0 reports Survived vacuously.
CompletenessProbe probe_past_completeness(const VectorFieldCandidate& X, const MetricField& g,
                                          const std::vector<Vec>& starts, double budget,
                                          double guard_radius = 1e-6, double abs_tol = 1e-9);

// ===== reflectivity certificate =====

enum class CertificateVerdict { CertifiedPastReflecting, Failed, Inconclusive };

std::string to_string(CertificateVerdict verdict);

struct CertifyConfig {
  std::vector<Vec> killing_samples;  // where the conformal-Killing test runs
  std::vector<Vec> probe_starts;     // where the completeness probe starts
  double h = 1e-4;                   // finite-difference step
  double tol = 1e-6;                 // residual tolerance
  double budget = 50.0;              // backward-flow parameter budget
  double guard_radius = 1e-6;        // domain-escape threshold
  double ode_abs_tol = 1e-9;         // integrator absolute tolerance
};

struct Certificate {
  CertificateVerdict verdict = CertificateVerdict::Inconclusive;
  std::string reason;
  // True only for a positive certificate: the property then transfers to
  // every Lorentzian covering of the spacetime.
  bool covering_clause = false;
  KillingStats killing;
  CompletenessProbe completeness;
  CertifyConfig config;
};

// Certifies past reflectivity by exhibiting a complete timelike conformal
// Killing field: the candidate must pass the residual test on every sample and
// the backward flow must survive the probe budget from every start.
// Killing failure or an escaped trajectory yields Failed with a witness;
// exhausted integrator budgets (or empty sample sets) yield Inconclusive.
Certificate certify_past_reflectivity(const VectorFieldCandidate& X, const MetricField& g,
                                      const CertifyConfig& config);

}  // namespace causalgeo
