#include "causalgeo/metric.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace causalgeo {

// ===== evaluation and signature checks =====

Mat evaluate_metric(const MetricField& g, const Vec& pt) {
  if (g.dim <= 0 || !g.components) {
    throw metric_error("metric field is not initialized");
  }
  if (pt.size() != g.dim) {
    throw metric_error("point dimension does not match the metric chart");
  }
  Mat m = g.components(pt);
  if (m.rows() != g.dim || m.cols() != g.dim) {
    throw metric_error("metric evaluator returned a matrix of wrong shape");
  }
  if (!m.allFinite()) {
    throw metric_error("metric evaluator returned non-finite components");
  }
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * std::max(scale, 1.0)) {
    throw metric_error("metric evaluator returned a non-symmetric matrix");
  }
  return 0.5 * (m + m.transpose());
}

bool lorentz_signature(const MetricField& g, const Vec& pt, double tol) {
  const Mat m = evaluate_metric(g, pt);
  Eigen::SelfAdjointEigenSolver<Mat> solver(m);
  if (solver.info() != Eigen::Success) {
    return false;
  }
  const Vec ev = solver.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  int negatives = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::fabs(ev(i)) <= tol * scale) {
      return false;  // numerically degenerate direction
    }
    if (ev(i) < 0.0) {
      ++negatives;
    }
  }
  return negatives == 1;
}

double metric_product(const MetricField& g, const Vec& pt, const Vec& u, const Vec& v) {
  if (u.size() != g.dim || v.size() != g.dim) {
    throw metric_error("vector dimension does not match the metric chart");
  }
  const Mat m = evaluate_metric(g, pt);
  return u.dot(m * v);
}

namespace fixtures {

// ===== metric fixtures =====

MetricField minkowski(int dim) {
  if (dim < 2) {
    throw metric_error("minkowski fixture needs dim >= 2");
  }
  MetricField g;
  g.dim = dim;
  g.chart = "cartesian (t, x_1, ..., x_" + std::to_string(dim - 1) + ")";
  g.components = [dim](const Vec&) {
    Mat m = Mat::Identity(dim, dim);
    m(0, 0) = -1.0;
    return m;
  };
  return g;
}

MetricField cone_spacetime() {
  MetricField g;
  g.dim = 3;
  g.chart = "(t, r, psi), r > 0";
  g.components = [](const Vec& pt) {
    const double r = pt(1);
    if (!(r > 0.0)) {
      throw metric_error("cone chart requires r > 0");
    }
    Mat m = Mat::Zero(3, 3);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    m(2, 2) = r * r;
    return m;
  };
  g.clearance = [](const Vec& pt) { return pt(1); };
  return g;
}

namespace {

// Distance from x to the nearest element of {0} U {-1/k : k >= 1}.
double axis_puncture_gap(double x) {
  if (x >= 0.0) {
    return x;
  }
  if (x <= -1.0) {
    return -1.0 - x;
  }
  const double y = -1.0 / x;  // in (1, inf)
  const double k1 = std::max(1.0, std::floor(y));
  const double k2 = k1 + 1.0;
  double best = -x;  // distance to the origin puncture
  best = std::min(best, std::fabs(x + 1.0 / k1));
  best = std::min(best, std::fabs(x + 1.0 / k2));
  return best;
}

}  // namespace

MetricField punctured_minkowski_2d() {
  MetricField g;
  g.dim = 2;
  g.chart = "(t, x) with the points (0, 0) and (0, -1/k) removed";
  g.components = [](const Vec&) {
    Mat m = Mat::Identity(2, 2);
    m(0, 0) = -1.0;
    return m;
  };
  g.clearance = [](const Vec& pt) { return std::hypot(pt(0), axis_puncture_gap(pt(1))); };
  return g;
}

MetricField line_removed_minkowski(int dim, std::vector<Vec> lines) {
  if (dim < 3) {
    throw metric_error("line_removed_minkowski needs dim >= 3");
  }
  for (const Vec& z : lines) {
    if (z.size() != dim - 1) {
      throw metric_error("removed-line anchor has wrong spatial dimension");
    }
  }
  MetricField g;
  g.dim = dim;
  g.chart = "cartesian with " + std::to_string(lines.size()) + " vertical line(s) removed";
  g.components = [dim](const Vec&) {
    Mat m = Mat::Identity(dim, dim);
    m(0, 0) = -1.0;
    return m;
  };
  g.clearance = [dim, lines = std::move(lines)](const Vec& pt) {
    double best = std::numeric_limits<double>::infinity();
    const Vec spatial = pt.tail(dim - 1);
    for (const Vec& z : lines) {
      best = std::min(best, (spatial - z).norm());
    }
    return best;
  };
  return g;
}

MetricField conformastationary(ConformastationaryData data) {
  const int m = data.base_dim;
  if (m < 1 || !data.base_metric || !data.beta || !data.omega || !data.lambda) {
    throw metric_error("conformastationary data is incomplete");
  }
  MetricField g;
  g.dim = m + 1;
  g.chart = "(t, x) over a " + std::to_string(m) + "-dimensional base";
  g.components = [data = std::move(data)](const Vec& pt) {
    const int m = data.base_dim;
    const Vec x = pt.tail(m);
    const double lam = data.lambda(pt);
    const double b = data.beta(x);
    if (!(lam > 0.0) || !(b > 0.0)) {
      throw metric_error("conformastationary factors must be positive");
    }
    const Vec w = data.omega(x);
    const Mat g0 = data.base_metric(x);
    if (w.size() != m || g0.rows() != m || g0.cols() != m) {
      throw metric_error("conformastationary base fields have wrong shape");
    }
    const double lam2 = lam * lam;
    Mat out = Mat::Zero(m + 1, m + 1);
    out(0, 0) = -lam2 * b * b;
    for (int i = 0; i < m; ++i) {
      out(0, i + 1) = lam2 * w(i);
      out(i + 1, 0) = lam2 * w(i);
    }
    out.block(1, 1, m, m) = lam2 * g0;
    return out;
  };
  return g;
}

// ===== vector-field fixtures =====

VectorFieldCandidate coordinate_field(int dim, int axis, std::string name) {
  if (axis < 0 || axis >= dim) {
    throw metric_error("coordinate_field axis out of range");
  }
  VectorFieldCandidate X;
  X.name = std::move(name);
  X.eval = [dim, axis](const Vec&) {
    Vec v = Vec::Zero(dim);
    v(axis) = 1.0;
    return v;
  };
  return X;
}

VectorFieldCandidate time_dilation_field(int dim) {
  VectorFieldCandidate X;
  X.name = "t d_t";
  X.eval = [dim](const Vec& pt) {
    Vec v = Vec::Zero(dim);
    v(0) = pt(0);
    return v;
  };
  return X;
}

VectorFieldCandidate boost_field() {
  VectorFieldCandidate X;
  X.name = "x d_t + t d_x";
  X.eval = [](const Vec& pt) {
    Vec v(2);
    v(0) = pt(1);
    v(1) = pt(0);
    return v;
  };
  return X;
}

std::vector<Vec> sample_box(const std::vector<std::pair<double, double>>& bounds, int per_dim) {
  if (bounds.empty() || per_dim < 1) {
    throw std::invalid_argument("sample_box needs nonempty bounds and per_dim >= 1");
  }
  const int d = static_cast<int>(bounds.size());
  std::vector<int> idx(d, 0);
  std::vector<Vec> out;
  while (true) {
    Vec pt(d);
    for (int i = 0; i < d; ++i) {
      const auto [lo, hi] = bounds[i];
      pt(i) = lo + (idx[i] + 0.5) * (hi - lo) / per_dim;
    }
    out.push_back(pt);
    int c = d - 1;
    while (c >= 0 && ++idx[c] == per_dim) {
      idx[c--] = 0;
    }
    if (c < 0) {
      break;
    }
  }
  return out;
}

}  // namespace fixtures

}  // namespace causalgeo
