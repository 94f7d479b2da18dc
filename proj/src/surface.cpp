#include "causalgeo/surface.hpp"

#include <cmath>

namespace causalgeo {

namespace {

// ===== evaluation helpers =====

void check_surface(const SlicedSurface& S) {
  if (S.ambient_dim < 3) {
    throw std::invalid_argument("sliced surface needs ambient dimension >= 3");
  }
  if (!S.embed) {
    throw std::invalid_argument("sliced surface has no embedding");
  }
  if (S.inside_point.size() != S.ambient_dim - 1) {
    throw std::invalid_argument("inside marker has wrong slice dimension");
  }
}

VecL eval_embed(const SlicedSurface& S, const VecL& u) {
  VecL f = S.embed(u);
  if (f.size() != S.ambient_dim - 1) {
    throw std::invalid_argument("embedding returned a point of wrong slice dimension");
  }
  if (!f.allFinite()) {
    throw std::invalid_argument("embedding returned non-finite components");
  }
  return f;
}

struct SliceFrame {
  VecL point;       // f(u)
  MatL jacobian;    // (n-1) x (n-2)
  MatL gram;        // first fundamental form G = J^T J
  MatL gram_inv;    // G^{-1}
  VecL h_slice;     // mean curvature vector inside the slice
};

SliceFrame slice_frame(const SlicedSurface& S, const VecL& u, double h) {
  check_surface(S);
  const int m = S.ambient_dim - 2;
  if (u.size() != m) {
    throw std::invalid_argument("parameter point has wrong dimension");
  }
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite-difference step h must be positive");
  }
  const long double hl = h;

  SliceFrame fr;
  fr.point = eval_embed(S, u);
  const int d = S.ambient_dim - 1;

  fr.jacobian.resize(d, m);
  for (int a = 0; a < m; ++a) {
    VecL up = u;
    VecL dn = u;
    up(a) += hl;
    dn(a) -= hl;
    fr.jacobian.col(a) = (eval_embed(S, up) - eval_embed(S, dn)) / (2.0L * hl);
  }

  fr.gram = fr.jacobian.transpose() * fr.jacobian;
  Eigen::JacobiSVD<MatL> svd(fr.gram);
  const VecL sv = svd.singularValues();
  if (!(sv(0) > 0.0L) || sv(m - 1) <= 1e-10L * sv(0)) {
    throw rank_error("first fundamental form is singular: not an immersion here");
  }
  fr.gram_inv = fr.gram.inverse();

  // Trace of the Hessian against G^{-1}, then project off the tangent space.
  VecL trace = VecL::Zero(d);
  for (int a = 0; a < m; ++a) {
    VecL up = u;
    VecL dn = u;
    up(a) += hl;
    dn(a) -= hl;
    const VecL diag = (eval_embed(S, up) - 2.0L * fr.point + eval_embed(S, dn)) / (hl * hl);
    trace += fr.gram_inv(a, a) * diag;
    for (int b = a + 1; b < m; ++b) {
      VecL pp = u, mm = u, pm = u, mp = u;
      pp(a) += hl;
      pp(b) += hl;
      mm(a) -= hl;
      mm(b) -= hl;
      pm(a) += hl;
      pm(b) -= hl;
      mp(a) -= hl;
      mp(b) += hl;
      const VecL cross =
          (eval_embed(S, pp) + eval_embed(S, mm) - eval_embed(S, pm) - eval_embed(S, mp)) /
          (4.0L * hl * hl);
      trace += 2.0L * fr.gram_inv(a, b) * cross;
    }
  }
  const VecL tangential = fr.jacobian * (fr.gram_inv * (fr.jacobian.transpose() * trace));
  fr.h_slice = trace - tangential;
  return fr;
}

Vec to_ambient(const VecL& slice_vec) {
  Vec out = Vec::Zero(slice_vec.size() + 1);
  for (int i = 0; i < slice_vec.size(); ++i) {
    out(i + 1) = static_cast<double>(slice_vec(i));
  }
  return out;
}

}  // namespace

// ===== public operations =====

Vec mean_curvature_fd(const SlicedSurface& S, const VecL& u, double h) {
  return to_ambient(slice_frame(S, u, h).h_slice);
}

ConvergenceSample null_convergences(const SlicedSurface& S, const VecL& u, double h) {
  const SliceFrame fr = slice_frame(S, u, h);

  // Outward normal: component of (f(u) - inside marker) orthogonal to the
  // tangent space.  The marker must not project onto the surface itself.
  VecL inside(S.inside_point.size());
  for (int i = 0; i < inside.size(); ++i) {
    inside(i) = S.inside_point(i);
  }
  const VecL offset = fr.point - inside;
  const VecL tangential =
      fr.jacobian * (fr.gram_inv * (fr.jacobian.transpose() * offset));
  VecL nu = offset - tangential;
  const long double norm = nu.norm();
  if (!(norm > 1e-12L)) {
    throw std::invalid_argument("orientation marker projects onto the tangent space");
  }
  nu /= norm;

  ConvergenceSample out;
  out.H = to_ambient(fr.h_slice);
  out.normal_out = to_ambient(nu);
  // K_pm = d_t +/- N_plus are the future null normals; H has no time
  // component, so <H, K_pm> reduces to +/-<H, N_plus> in the slice.
  const double hn = static_cast<double>(fr.h_slice.dot(nu));
  out.k_plus = hn;
  out.k_minus = -hn;
  return out;
}

TrappedResult is_inner_trapped(const SlicedSurface& S, const std::vector<VecL>& grid,
                               double h) {
  if (grid.empty()) {
    throw std::invalid_argument("inner-trapped check needs a nonempty grid");
  }
  TrappedResult out;
  out.inner_trapped = true;
  out.min_k_minus = std::numeric_limits<double>::infinity();
  for (const VecL& u : grid) {
    const ConvergenceSample cs = null_convergences(S, u, h);
    ++out.evaluated;
    if (cs.k_minus < out.min_k_minus) {
      out.min_k_minus = cs.k_minus;
      out.argmin = u;
    }
    if (!(cs.k_minus > 0.0)) {
      out.inner_trapped = false;
    }
  }
  return out;
}

namespace fixtures {

// ===== surface fixtures =====

namespace {

// Spherical chart of S^m inside R^{m+1}: the first m-1 parameters are polar
// angles in (0, pi); the last is the azimuth in (0, 2 pi).
VecL unit_sphere_chart(const VecL& u) {
  const int m = static_cast<int>(u.size());
  VecL out(m + 1);
  long double prod = 1.0L;
  for (int i = 0; i < m; ++i) {
    out(i) = prod * std::cos(static_cast<long double>(u(i)));
    prod *= std::sin(static_cast<long double>(u(i)));
  }
  out(m) = prod;
  return out;
}

VecL slice_vector(const Vec& v, int d) {
  VecL out = VecL::Zero(d);
  if (v.size() == 0) {
    return out;
  }
  if (v.size() != d) {
    throw std::invalid_argument("fixture center/axes vector has wrong slice dimension");
  }
  for (int i = 0; i < d; ++i) {
    out(i) = v(i);
  }
  return out;
}

std::vector<std::pair<double, double>> sphere_domain(int m) {
  std::vector<std::pair<double, double>> dom;
  for (int i = 0; i + 1 < m; ++i) {
    dom.emplace_back(0.0, std::acos(-1.0));
  }
  dom.emplace_back(0.0, 2.0 * std::acos(-1.0));
  return dom;
}

}  // namespace

SlicedSurface sphere_surface(int ambient_dim, double radius, const Vec& center) {
  if (ambient_dim < 3 || !(radius > 0.0)) {
    throw std::invalid_argument("sphere fixture needs ambient_dim >= 3 and radius > 0");
  }
  const int m = ambient_dim - 2;
  const VecL c = slice_vector(center, ambient_dim - 1);
  SlicedSurface S;
  S.ambient_dim = ambient_dim;
  S.embed = [radius, c](const VecL& u) {
    return (c + static_cast<long double>(radius) * unit_sphere_chart(u)).eval();
  };
  S.inside_point = c;
  S.domain = sphere_domain(m);
  return S;
}

SlicedSurface ellipsoid_surface(int ambient_dim, const Vec& semi_axes, const Vec& center) {
  if (ambient_dim < 3) {
    throw std::invalid_argument("ellipsoid fixture needs ambient_dim >= 3");
  }
  const int m = ambient_dim - 2;
  const VecL axes = slice_vector(semi_axes, ambient_dim - 1);
  if ((axes.array() <= 0.0L).any()) {
    throw std::invalid_argument("ellipsoid semi-axes must be positive");
  }
  const VecL c = slice_vector(center, ambient_dim - 1);
  SlicedSurface S;
  S.ambient_dim = ambient_dim;
  S.embed = [axes, c](const VecL& u) {
    return (c + axes.cwiseProduct(unit_sphere_chart(u))).eval();
  };
  S.inside_point = c;
  S.domain = sphere_domain(m);
  return S;
}

SlicedSurface flat_patch(int ambient_dim) {
  if (ambient_dim < 3) {
    throw std::invalid_argument("flat patch needs ambient_dim >= 3");
  }
  const int m = ambient_dim - 2;
  SlicedSurface S;
  S.ambient_dim = ambient_dim;
  S.embed = [m](const VecL& u) {
    VecL out = VecL::Zero(m + 1);
    out.head(m) = u;
    return out;
  };
  S.inside_point = VecL::Zero(m + 1);
  S.inside_point(m) = -1.0L;
  S.domain.assign(m, {-1.0, 1.0});
  return S;
}

std::vector<VecL> parameter_grid(const SlicedSurface& S, int per_dim) {
  check_surface(S);
  const int m = S.ambient_dim - 2;
  if (static_cast<int>(S.domain.size()) != m || per_dim < 1) {
    throw std::invalid_argument("parameter_grid needs a full domain and per_dim >= 1");
  }
  constexpr double kInset = 0.25;
  std::vector<int> idx(m, 0);
  std::vector<VecL> out;
  while (true) {
    VecL u(m);
    for (int i = 0; i < m; ++i) {
      const auto [lo, hi] = S.domain[i];
      const double a = lo + kInset;
      const double b = hi - kInset;
      if (!(b > a)) {
        throw std::invalid_argument("parameter domain too small for the grid inset");
      }
      u(i) = a + (idx[i] + 0.5) * (b - a) / per_dim;
    }
    out.push_back(u);
    int c = m - 1;
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
