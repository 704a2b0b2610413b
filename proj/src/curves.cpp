#include "neighborly/curves.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace neighborly {
namespace {

// cos/sin of 2*pi*m/n for integer m, reduced into [0, n) first so large
// indices lose no accuracy.
std::pair<double, double> unit_root(long long m, int n) {
  long long r = m % n;
  if (r < 0) r += n;
  const double a = 2.0 * std::numbers::pi * static_cast<double>(r) / n;
  return {std::cos(a), std::sin(a)};
}

bool is_integral(double t) {
  return std::floor(t) == t && std::abs(t) < 1e15;
}

}  // namespace

double HelixFamilySpec::theta() const { return 2.0 * std::numbers::pi / n; }

void HelixFamilySpec::validate() const {
  if (n < 3) fail(ErrorCode::InvalidArgument, "n must be at least 3, got " + std::to_string(n));
  if (k < 1) fail(ErrorCode::InvalidArgument, "k must be at least 1, got " + std::to_string(k));
  if (dimension() > kMaxDimension) {
    fail(ErrorCode::InvalidArgument, "ambient dimension 2k+1 exceeds " + std::to_string(kMaxDimension));
  }
}

void MixedMomentSpec::validate() const {
  if (d_poly < 0 || k < 0) fail(ErrorCode::InvalidArgument, "negative mixed moment parameters");
  if (dimension() < 2) fail(ErrorCode::InvalidArgument, "mixed moment curve needs d + 2k >= 2");
  if (dimension() > kMaxDimension) fail(ErrorCode::InvalidArgument, "mixed moment curve dimension too large");
}

Window default_window(const HelixFamilySpec& spec) { return {0, (2 * spec.k + 1) * spec.n}; }

Window middle_sites(const HelixFamilySpec& spec) { return {spec.k * spec.n, (spec.k + 1) * spec.n}; }

Window centered_window(const HelixFamilySpec& spec, int site) {
  const int half = (spec.k + 1) * spec.n;
  return {site - half, site + half};
}

Point helix_point(const HelixFamilySpec& spec, double t) {
  Point p(spec.dimension());
  p[0] = spec.theta() * t;
  const bool exact = is_integral(t);
  for (int j = 1; j <= spec.k; ++j) {
    if (exact) {
      const auto [c, s] = unit_root(static_cast<long long>(t) * j, spec.n);
      p[2 * j - 1] = c;
      p[2 * j] = s;
    } else {
      p[2 * j - 1] = std::cos(j * p[0]);
      p[2 * j] = std::sin(j * p[0]);
    }
  }
  return p;
}

Point mixed_moment_point(const MixedMomentSpec& spec, double t) {
  Point p(spec.dimension());
  double power = 1.0;
  for (int i = 0; i < spec.d_poly; ++i) {
    power *= t;
    p[i] = power;
  }
  for (int j = 1; j <= spec.k; ++j) {
    p[spec.d_poly + 2 * j - 2] = std::cos(j * t);
    p[spec.d_poly + 2 * j - 1] = std::sin(j * t);
  }
  return p;
}

Point ScrewMotion::apply(const Point& p, int steps) const {
  if (p.size() != spec.dimension()) {
    fail(ErrorCode::DimensionMismatch, "screw motion expects points in R^" + std::to_string(spec.dimension()));
  }
  Point out = p;
  out[0] += spec.theta() * steps;
  for (int j = 1; j <= spec.k; ++j) {
    const auto [c, s] = unit_root(static_cast<long long>(steps) * j, spec.n);
    const double y = p[2 * j - 1];
    const double z = p[2 * j];
    out[2 * j - 1] = y * c - z * s;
    out[2 * j] = y * s + z * c;
  }
  return out;
}

std::vector<Site> sample_window(const HelixFamilySpec& spec, int lo, int hi) {
  if (lo > hi) fail(ErrorCode::InvalidArgument, "sample window needs lo <= hi");
  std::vector<Site> out;
  out.reserve(hi - lo + 1);
  for (int t = lo; t <= hi; ++t) out.push_back({t, helix_point(spec, t)});
  return out;
}

std::vector<Site> sample_window(const HelixFamilySpec& spec, Window window) {
  return sample_window(spec, window.lo, window.hi);
}

}  // namespace neighborly
