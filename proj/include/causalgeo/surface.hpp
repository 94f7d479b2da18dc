#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace causalgeo {

using Vec = Eigen::VectorXd;

// Surface embeddings are evaluated in extended precision: the mean-curvature
// scheme uses second differences, whose double-precision cancellation floor
// (~eps/h^2) would swamp the truncation error at the smallest working steps.
using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Thrown when the first fundamental form is numerically singular, i.e. the
// parametrization fails to be an immersion at the queried point.
class rank_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Normalization used for the mean curvature vector: plain (unaveraged) trace
// of the second fundamental form.  All sign claims are invariant under the
// averaged alternative; the label travels with reported results.
inline constexpr const char* kMeanCurvatureConvention = "trace";

// A compact codimension-2 spacelike surface presented inside the t = 0 slice
// of n-dimensional Minkowski space: an (n-2)-parameter embedding into the
// (n-1)-dimensional slice, plus a marker point on the inner side that orients
// the slice normals (the inner normal N_minus points toward it).
struct SlicedSurface {
  int ambient_dim = 0;                            // n >= 3
  std::function<VecL(const VecL&)> embed;         // (n-2) params -> slice point
  VecL inside_point;                              // slice point, size n-1
  std::vector<std::pair<double, double>> domain;  // one range per parameter
};

// Mean curvature vector at parameter u by central finite differences with
// step h, orthogonally projected to the normal space of the surface in the
// slice.  Returned as an ambient n-vector whose time component (index 0) is
// zero.  Throws rank_error when the first fundamental form degenerates.
Vec mean_curvature_fd(const SlicedSurface& S, const VecL& u, double h = 1e-3);

struct ConvergenceSample {
  Vec H;           // ambient mean curvature vector, time component 0
  Vec normal_out;  // ambient unit outward slice normal N_plus, time component 0
  double k_plus = 0.0;   // <H, K_plus> with K_plus = d_t + N_plus
  double k_minus = 0.0;  // <H, K_minus> with K_minus = d_t - N_plus
};

// Null convergence scalars along the two future null normals K_pm = d_t + N_pm.
ConvergenceSample null_convergences(const SlicedSurface& S, const VecL& u, double h = 1e-3);

struct TrappedResult {
  bool inner_trapped = false;  // k_minus > 0 at every grid point
  double min_k_minus = 0.0;
  VecL argmin;  // parameter point attaining the minimum
  std::size_t evaluated = 0;
};

// Checks the inner-trapped predicate over a finite parameter grid.
TrappedResult is_inner_trapped(const SlicedSurface& S, const std::vector<VecL>& grid,
                               double h = 1e-3);

namespace fixtures {

// Round sphere S^{n-2} of the given radius inside the slice, centered at
// `center` (empty vector means the origin).  Inner marker = center.
SlicedSurface sphere_surface(int ambient_dim, double radius, const Vec& center = Vec());

// Axis-aligned ellipsoid with the given semi-axes (size n-1), centered at
// `center`.  Inner marker = center.
SlicedSurface ellipsoid_surface(int ambient_dim, const Vec& semi_axes, const Vec& center = Vec());

// Flat totally geodesic patch: the parameters map to the first n-2 slice
// coordinates and the last slice coordinate is 0; inner marker below.
SlicedSurface flat_patch(int ambient_dim);

// Regular parameter grid with `per_dim` points per parameter, inset 0.25 from
// the domain ends (this keeps spherical charts away from their poles).
std::vector<VecL> parameter_grid(const SlicedSurface& S, int per_dim);

}  // namespace fixtures

}  // namespace causalgeo
