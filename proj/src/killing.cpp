#include "causalgeo/killing.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace causalgeo {

namespace odeint = boost::numeric::odeint;

// ===== Lie-derivative residual =====

LieResidual lie_derivative_residual(const VectorFieldCandidate& X, const MetricField& g,
                                    const Vec& pt, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite-difference step h must be positive");
  }
  if (!X.eval) {
    throw std::invalid_argument("vector-field candidate has no evaluator");
  }
  if (!lorentz_signature(g, pt)) {
    throw metric_error("metric signature is not Lorentzian at the sample point");
  }
  const int n = g.dim;
  const Mat g0 = evaluate_metric(g, pt);
  const Vec x0 = X.eval(pt);
  if (x0.size() != n || !x0.allFinite()) {
    throw std::invalid_argument("vector-field evaluator returned a malformed vector");
  }

  // J(k, i) = d X^k / d x^i; dir = X^k d_k g, both by central differences.
  Mat jac(n, n);
  Mat dir = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    Vec fwd = pt;
    Vec bwd = pt;
    fwd(i) += h;
    bwd(i) -= h;
    jac.col(i) = (X.eval(fwd) - X.eval(bwd)) / (2.0 * h);
    dir += x0(i) * (evaluate_metric(g, fwd) - evaluate_metric(g, bwd)) / (2.0 * h);
  }
  const Mat lie = dir + jac.transpose() * g0 + g0 * jac;

  const double gg = g0.cwiseProduct(g0).sum();
  LieResidual out;
  out.sigma = lie.cwiseProduct(g0).sum() / gg;
  out.residual = (lie - out.sigma * g0).norm();
  return out;
}

// ===== conformal-timelike-Killing decision =====

KillingStats is_conformal_timelike_killing(const VectorFieldCandidate& X, const MetricField& g,
                                           const std::vector<Vec>& samples, double h, double tol) {
  if (samples.empty()) {
    throw std::invalid_argument("conformal-Killing test needs a nonempty sample set");
  }
  KillingStats stats;
  stats.ok = true;
  stats.samples = samples.size();
  stats.max_alignment = -std::numeric_limits<double>::infinity();
  stats.sigma_min = std::numeric_limits<double>::infinity();
  stats.sigma_max = -std::numeric_limits<double>::infinity();

  for (const Vec& pt : samples) {
    const LieResidual lr = lie_derivative_residual(X, g, pt, h);
    const Vec v = X.eval(pt);
    const double alignment = metric_product(g, pt, v, v);

    stats.max_residual = std::max(stats.max_residual, lr.residual);
    stats.max_alignment = std::max(stats.max_alignment, alignment);
    stats.sigma_min = std::min(stats.sigma_min, lr.sigma);
    stats.sigma_max = std::max(stats.sigma_max, lr.sigma);

    std::string reason;
    if (!(lr.residual < tol)) {
      std::ostringstream os;
      os << "residual " << lr.residual << " exceeds tolerance " << tol;
      reason = os.str();
    } else if (!(alignment < 0.0)) {
      std::ostringstream os;
      os << "g(X, X) = " << alignment << " is not negative (candidate not timelike)";
      reason = os.str();
    }
    if (!reason.empty() && stats.ok) {
      stats.ok = false;
      stats.witness = KillingWitness{pt, lr.residual, alignment, reason};
    }
  }
  return stats;
}

// ===== past-completeness probe =====

std::string to_string(ProbeOutcome outcome) {
  switch (outcome) {
    case ProbeOutcome::Survived:
      return "Survived";
    case ProbeOutcome::EscapedDomain:
      return "EscapedDomain";
    default:
      return "Inconclusive";
  }
}

namespace {

using OdeState = std::vector<double>;

TrajectoryProbe probe_one(const VectorFieldCandidate& X, const MetricField& g, const Vec& start,
                          double budget, double guard_radius, double abs_tol) {
  constexpr std::size_t kMaxAttempts = 500000;
  const int n = g.dim;

  TrajectoryProbe probe;
  probe.start = start;
  probe.final_point = start;

  OdeState y(start.data(), start.data() + n);
  double s = 0.0;
  double dt = std::min(0.125, budget > 0.0 ? budget / 16.0 : 0.125);

  auto sys = [&X, n](const OdeState& state, OdeState& dstate, double) {
    const Vec v = X.eval(Eigen::Map<const Vec>(state.data(), n));
    for (int i = 0; i < n; ++i) {
      dstate[i] = -v(i);  // backward flow
    }
  };
  auto stepper = odeint::make_controlled(abs_tol, 1e-9, odeint::runge_kutta_dopri5<OdeState>());

  const double done = budget - 1e-12 * std::max(1.0, budget);
  for (std::size_t attempts = 0;; ++attempts) {
    const Eigen::Map<const Vec> here(y.data(), n);
    if (!here.allFinite()) {
      probe.outcome = ProbeOutcome::Inconclusive;
      probe.note = "trajectory left the representable range";
      break;
    }
    if (s >= done) {
      probe.outcome = ProbeOutcome::Survived;
      probe.note = "full parameter budget exhausted inside the domain";
      break;
    }
    if (g.has_guard()) {
      const double c = g.clearance(here);
      if (c < guard_radius) {
        probe.outcome = ProbeOutcome::EscapedDomain;
        probe.note = "clearance fell below the guard radius";
        break;
      }
      // A step may advance at most half the clearance, so it cannot jump
      // across the guard ball.
      const double speed = X.eval(here).norm();
      dt = std::min(dt, 0.5 * c / std::max(speed, 1e-12));
    }
    dt = std::min(dt, budget - s);
    if (attempts > kMaxAttempts || !(dt > 1e-14 * std::max(1.0, budget))) {
      probe.outcome = ProbeOutcome::Inconclusive;
      probe.note = attempts > kMaxAttempts ? "step budget exhausted" : "step size underflow";
      break;
    }
    if (stepper.try_step(sys, y, s, dt) == odeint::success) {
      ++probe.steps;
    }
  }

  probe.parameter = -s;
  probe.final_point = Eigen::Map<const Vec>(y.data(), n);
  return probe;
}

}  // namespace

CompletenessProbe probe_past_completeness(const VectorFieldCandidate& X, const MetricField& g,
                                          const std::vector<Vec>& starts, double budget,
                                          double guard_radius, double abs_tol) {
  if (!(budget >= 0.0)) {
    throw std::invalid_argument("probe budget must be nonnegative");
  }
  if (!(guard_radius > 0.0)) {
    throw std::invalid_argument("guard radius must be positive");
  }
  CompletenessProbe out;
  out.budget = budget;
  out.guard_radius = guard_radius;
  out.outcome = ProbeOutcome::Survived;
  for (const Vec& start : starts) {
    if (start.size() != g.dim) {
      throw std::invalid_argument("probe start has wrong dimension");
    }
    TrajectoryProbe probe = probe_one(X, g, start, budget, guard_radius, abs_tol);
    if (probe.outcome == ProbeOutcome::EscapedDomain) {
      out.outcome = ProbeOutcome::EscapedDomain;
    } else if (probe.outcome == ProbeOutcome::Inconclusive &&
               out.outcome == ProbeOutcome::Survived) {
      out.outcome = ProbeOutcome::Inconclusive;
    }
    out.trajectories.push_back(std::move(probe));
  }
  return out;
}

// ===== certificate =====

std::string to_string(CertificateVerdict verdict) {
  switch (verdict) {
    case CertificateVerdict::CertifiedPastReflecting:
      return "CertifiedPastReflecting";
    case CertificateVerdict::Failed:
      return "Failed";
    default:
      return "Inconclusive";
  }
}

Certificate certify_past_reflectivity(const VectorFieldCandidate& X, const MetricField& g,
                                      const CertifyConfig& config) {
  Certificate cert;
  cert.config = config;
  cert.completeness.outcome = ProbeOutcome::Inconclusive;

  if (config.killing_samples.empty()) {
    cert.verdict = CertificateVerdict::Inconclusive;
    cert.reason = "no samples supplied for the conformal-Killing test";
    return cert;
  }
  if (config.probe_starts.empty()) {
    cert.verdict = CertificateVerdict::Inconclusive;
    cert.reason = "no start points supplied for the completeness probe";
    return cert;
  }

  cert.killing =
      is_conformal_timelike_killing(X, g, config.killing_samples, config.h, config.tol);
  if (!cert.killing.ok) {
    cert.verdict = CertificateVerdict::Failed;
    cert.reason = "candidate '" + X.name + "' is not a timelike conformal Killing field: " +
                  cert.killing.witness->reason;
    return cert;
  }

  cert.completeness = probe_past_completeness(X, g, config.probe_starts, config.budget,
                                              config.guard_radius, config.ode_abs_tol);
  switch (cert.completeness.outcome) {
    case ProbeOutcome::EscapedDomain:
      cert.verdict = CertificateVerdict::Failed;
      cert.reason = "backward flow of '" + X.name +
                    "' escapes the domain: the field is not past complete";
      break;
    case ProbeOutcome::Inconclusive:
      cert.verdict = CertificateVerdict::Inconclusive;
      cert.reason = "completeness probe exhausted its integration budget";
      break;
    default: {
      cert.verdict = CertificateVerdict::CertifiedPastReflecting;
      std::ostringstream os;
      os << "timelike conformal Killing field with past-complete flow exhibited "
         << "(residual tolerance " << config.tol << ", probe budget " << config.budget << ")";
      cert.reason = os.str();
      cert.covering_clause = true;
      break;
    }
  }
  return cert;
}

}  // namespace causalgeo
