#include "neighborly/numeric.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace neighborly {
namespace {

using Extended = boost::multiprecision::cpp_bin_float_quad;

// Row-major dense elimination with partial pivoting, for both tiers.
template <class T>
T determinant(std::vector<T> a, int n) {
  using std::abs;
  T det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    T best = abs(a[c * n + c]);
    for (int r = c + 1; r < n; ++r) {
      T v = abs(a[r * n + c]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0) return T(0);
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(a[c * n + j], a[pivot * n + j]);
      det = -det;
    }
    const T diag = a[c * n + c];
    det *= diag;
    for (int r = c + 1; r < n; ++r) {
      const T f = a[r * n + c] / diag;
      if (f == 0) continue;
      for (int j = c + 1; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  return det;
}

template <class T>
std::vector<T> solve(std::vector<T> a, std::vector<T> b, int n) {
  using std::abs;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    T best = abs(a[c * n + c]);
    for (int r = c + 1; r < n; ++r) {
      T v = abs(a[r * n + c]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0) fail(ErrorCode::DegenerateSimplex, "singular linear system");
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(a[c * n + j], a[pivot * n + j]);
      std::swap(b[c], b[pivot]);
    }
    for (int r = c + 1; r < n; ++r) {
      const T f = a[r * n + c] / a[c * n + c];
      for (int j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
      b[r] -= f * b[c];
    }
  }
  std::vector<T> x(n);
  for (int r = n - 1; r >= 0; --r) {
    T s = b[r];
    for (int j = r + 1; j < n; ++j) s -= a[r * n + j] * x[j];
    x[r] = s / a[r * n + r];
  }
  return x;
}

template <class T>
int sign_of(const T& v) {
  return (v > 0) - (v < 0);
}

void require_simplex(std::span<const Point> pts) {
  if (pts.empty()) fail(ErrorCode::DimensionMismatch, "empty point list");
  const auto d = pts[0].size();
  if (d < 1 || d > kMaxDimension) {
    fail(ErrorCode::DimensionMismatch, "dimension " + std::to_string(d) + " outside [1, 16]");
  }
  if (pts.size() != static_cast<std::size_t>(d) + 1) {
    fail(ErrorCode::DimensionMismatch, "expected " + std::to_string(d + 1) + " points in R^" +
                                           std::to_string(d) + ", got " + std::to_string(pts.size()));
  }
  for (const auto& p : pts) {
    if (p.size() != d) fail(ErrorCode::DimensionMismatch, "points of mixed dimension");
  }
}

struct Determinant {
  double value;
  double scale;  // Hadamard bound of the evaluated matrix
};

template <class T>
Determinant orientation_det(std::span<const Point> pts) {
  const int d = static_cast<int>(pts[0].size());
  std::vector<T> m(d * d);
  double scale = 1.0;
  for (int i = 1; i <= d; ++i) {
    const Point diff = pts[i] - pts[0];
    scale *= diff.norm();
    for (int j = 0; j < d; ++j) m[(i - 1) * d + j] = T(pts[i][j]) - T(pts[0][j]);
  }
  return {static_cast<double>(determinant(std::move(m), d)), scale};
}

// Rows (p_i - p_0, |p_i - p_0|^2) for i = 1..d and (q - p_0, |q - p_0|^2);
// its determinant equals (|q - c|^2 - R^2) * orientation.
template <class T>
Determinant lifted_det(std::span<const Point> pts, const Point& q) {
  const int d = static_cast<int>(pts[0].size());
  const int w = d + 1;
  std::vector<T> m(w * w);
  double scale = 1.0;
  auto fill = [&](int row, const Point& p) {
    T lift = 0;
    for (int j = 0; j < d; ++j) {
      const T v = T(p[j]) - T(pts[0][j]);
      m[row * w + j] = v;
      lift += v * v;
    }
    m[row * w + d] = lift;
    const double dn = (p - pts[0]).norm();
    scale *= std::sqrt(dn * dn + dn * dn * dn * dn);
  };
  for (int i = 1; i <= d; ++i) fill(i - 1, pts[i]);
  fill(d, q);
  return {static_cast<double>(determinant(std::move(m), w)), scale};
}

template <class T>
Sphere circumcenter_in(std::span<const Point> pts) {
  const int d = static_cast<int>(pts[0].size());
  std::vector<T> a(d * d);
  std::vector<T> b(d);
  for (int i = 1; i <= d; ++i) {
    T lift = 0;
    for (int j = 0; j < d; ++j) {
      const T v = T(pts[i][j]) - T(pts[0][j]);
      a[(i - 1) * d + j] = 2 * v;
      lift += v * v;
    }
    b[i - 1] = lift;
  }
  const auto w = solve(std::move(a), std::move(b), d);
  Sphere s;
  s.center.resize(d);
  T r2 = 0;
  for (int j = 0; j < d; ++j) {
    s.center[j] = static_cast<double>(T(pts[0][j]) + w[j]);
    r2 += w[j] * w[j];
  }
  using std::sqrt;
  s.radius = static_cast<double>(sqrt(r2));
  return s;
}

}  // namespace

std::optional<Precision> parse_precision(const std::string& name) {
  if (name == "standard") return Precision::Standard;
  if (name == "extended") return Precision::Extended;
  return std::nullopt;
}

std::string to_string(Precision p) { return p == Precision::Extended ? "extended" : "standard"; }

Precision default_precision() {
  const char* env = std::getenv("NEIGHBORLY_PRECISION");
  if (env == nullptr || *env == '\0') return Precision::Standard;
  const auto p = parse_precision(env);
  if (!p) fail(ErrorCode::InvalidArgument, std::string("NEIGHBORLY_PRECISION must be standard or extended, got ") + env);
  return *p;
}

double unit_roundoff(Precision precision) {
  return precision == Precision::Extended ? std::ldexp(1.0, -113)
                                          : std::numeric_limits<double>::epsilon() / 2;
}

void TolerancePolicy::validate() const {
  if (!(eps_rel > 0) || !std::isfinite(eps_rel)) {
    fail(ErrorCode::InvalidArgument, "eps_rel must be a positive finite number");
  }
  if (!(eps_abs >= 0) || !std::isfinite(eps_abs)) {
    fail(ErrorCode::InvalidArgument, "eps_abs must be a non-negative finite number");
  }
}

Hyperplane Hyperplane::from(const Point& normal, double offset) {
  const double len = normal.norm();
  if (!(len > 0) || !std::isfinite(len)) fail(ErrorCode::DegenerateSimplex, "zero hyperplane normal");
  return Hyperplane{normal / len, offset / len};
}

Hyperplane Hyperplane::bisector(const Point& own, const Point& other) {
  if (own.size() != other.size()) fail(ErrorCode::DimensionMismatch, "bisector of mixed dimensions");
  return from(other - own, 0.5 * (other.squaredNorm() - own.squaredNorm()));
}

int orientation(std::span<const Point> pts, const TolerancePolicy& tol, Precision precision) {
  require_simplex(pts);
  const auto det = precision == Precision::Extended ? orientation_det<Extended>(pts)
                                                    : orientation_det<double>(pts);
  if (tol.is_zero(det.value, det.scale)) return 0;
  return det.value > 0 ? 1 : -1;
}

int in_sphere(std::span<const Point> pts, const Point& q, const TolerancePolicy& tol,
              Precision precision) {
  require_simplex(pts);
  if (q.size() != pts[0].size()) fail(ErrorCode::DimensionMismatch, "query point dimension");
  const int orient = orientation(pts, tol, precision);
  if (orient == 0) fail(ErrorCode::DegenerateSimplex, "in_sphere on affinely dependent points");
  const auto det = precision == Precision::Extended ? lifted_det<Extended>(pts, q)
                                                    : lifted_det<double>(pts, q);
  if (tol.is_zero(det.value, det.scale)) return 0;
  return sign_of(det.value) * orient;
}

Sphere circumcenter(std::span<const Point> pts, const TolerancePolicy& tol, Precision precision) {
  require_simplex(pts);
  if (orientation(pts, tol, precision) == 0) {
    fail(ErrorCode::DegenerateSimplex, "circumcenter of affinely dependent points");
  }
  return precision == Precision::Extended ? circumcenter_in<Extended>(pts)
                                          : circumcenter_in<double>(pts);
}

Point project(const Point& p, const Flat& flat) {
  Point out = flat.anchor;
  const Point rel = p - flat.anchor;
  for (const auto& b : flat.basis) out += b * b.dot(rel);
  return out;
}

Point reflect(const Point& p, const Flat& flat, const TolerancePolicy& tol) {
  if (p.size() != flat.anchor.size()) fail(ErrorCode::DimensionMismatch, "reflect: point vs flat");
  for (std::size_t i = 0; i < flat.basis.size(); ++i) {
    if (flat.basis[i].size() != p.size()) fail(ErrorCode::DimensionMismatch, "reflect: basis vector");
    for (std::size_t j = i; j < flat.basis.size(); ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(flat.basis[i].dot(flat.basis[j]) - expect) > tol.eps_rel) {
        fail(ErrorCode::NonOrthonormalBasis, "flat basis is not orthonormal");
      }
    }
  }
  return 2.0 * project(p, flat) - p;
}

int affine_rank(std::span<const Point> pts, double threshold) {
  if (pts.empty()) return -1;
  if (pts.size() == 1) return 0;
  const auto d = pts[0].size();
  Eigen::MatrixXd m(pts.size() - 1, d);
  for (std::size_t i = 1; i < pts.size(); ++i) m.row(i - 1) = (pts[i] - pts[0]).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > threshold) ++rank;
  }
  return rank;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::NonOrthonormalBasis: return "NonOrthonormalBasis";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::DegeneracyDetected: return "DegeneracyDetected";
    case ErrorCode::TooManyHalfspaces: return "TooManyHalfspaces";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::DegenerateFacet: return "DegenerateFacet";
    case ErrorCode::CensusMismatch: return "CensusMismatch";
    case ErrorCode::UnboundedAfterClip: return "UnboundedAfterClip";
    case ErrorCode::FacetLost: return "FacetLost";
    case ErrorCode::UnionNotConvex: return "UnionNotConvex";
    case ErrorCode::InvalidFlatDimension: return "InvalidFlatDimension";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorCode::IOError: return "IOError";
  }
  return "Unknown";
}

}  // namespace neighborly
