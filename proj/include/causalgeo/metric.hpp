#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace causalgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Thrown when a metric evaluation is structurally unusable: wrong dimensions,
// non-finite entries, or a signature that is not Lorentzian at the queried point.
class metric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Lorentzian metric given by a pointwise component evaluator on a single
// chart.  Coordinate 0 is always the time coordinate.  `clearance`, when
// present, returns the distance from a chart point to the forbidden set
// (removed points or lines); flows must stay where clearance is positive.
struct MetricField {
  int dim = 0;
  std::string chart;                            // human-readable chart label
  std::function<Mat(const Vec&)> components;    // symmetric dim x dim matrix
  std::function<double(const Vec&)> clearance;  // optional domain guard

  bool has_guard() const { return static_cast<bool>(clearance); }
};

// A named candidate vector field, to be tested for the conformal-Killing and
// completeness properties.  Components are given in the same chart as the
// metric it is paired with.
struct VectorFieldCandidate {
  std::string name;
  std::function<Vec(const Vec&)> eval;
};

// Evaluates the metric at `pt` with shape/finiteness checks.  Throws
// metric_error on malformed output.
Mat evaluate_metric(const MetricField& g, const Vec& pt);

// True when g(pt) has exactly one negative eigenvalue and dim-1 positive ones,
// with no eigenvalue within `tol` (relative to the spectral radius) of zero.
bool lorentz_signature(const MetricField& g, const Vec& pt, double tol = 1e-9);

// Scalar product g(u, v) at pt.
double metric_product(const MetricField& g, const Vec& pt, const Vec& u, const Vec& v);

namespace fixtures {

// Flat Minkowski metric diag(-1, 1, ..., 1) on R^dim, no domain guard.
MetricField minkowski(int dim);

// Static cone-product chart (t, r, psi) with line element -dt^2 + dr^2 + r^2 dpsi^2.
// The chart is valid for r > 0; clearance(pt) = r.
MetricField cone_spacetime();

// Two-dimensional Minkowski plane with the points (0, 0) and (0, -1/k), k >= 1,
// removed from the t = 0 axis.  clearance(pt) is the Euclidean distance from pt
// to the nearest removed point.
MetricField punctured_minkowski_2d();

// Minkowski metric on R^dim with vertical lines {(t, z) : t in R} removed, one
// for each spatial point z in `lines` (each of size dim-1).  clearance is the
// spatial distance to the nearest removed line.
MetricField line_removed_minkowski(int dim, std::vector<Vec> lines);

// Data for a standard stationary-type metric on R x Base built from base
// fields: ds^2 = Lambda^2 * (-beta^2 dt^2 + 2 omega_i dt dx^i + g0_ij dx^i dx^j).
// `base_metric`, `beta`, `omega` take the spatial point (size base_dim);
// `lambda` takes the full chart point (size base_dim + 1) and may depend on t.
struct ConformastationaryData {
  int base_dim = 0;
  std::function<Mat(const Vec&)> base_metric;  // positive definite
  std::function<double(const Vec&)> beta;      // positive
  std::function<Vec(const Vec&)> omega;        // base covector (size base_dim)
  std::function<double(const Vec&)> lambda;    // positive conformal factor
};

MetricField conformastationary(ConformastationaryData data);

// The coordinate field along `axis` (constant components), e.g. axis = 0 for
// the time translation field.
VectorFieldCandidate coordinate_field(int dim, int axis, std::string name);

// The dilation-in-time field t * d/dt on any chart (all other components zero).
VectorFieldCandidate time_dilation_field(int dim);

// The boost generator x * d/dt + t * d/dx on a 2-dimensional (t, x) chart.
VectorFieldCandidate boost_field();

// Regular lattice of sample points: `per_dim` values per coordinate, placed
// strictly inside each [lo, hi] range (midpoint-offset grid).
std::vector<Vec> sample_box(const std::vector<std::pair<double, double>>& bounds, int per_dim);

}  // namespace fixtures

}  // namespace causalgeo
