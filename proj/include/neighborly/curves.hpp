#pragma once

#include <vector>

#include "neighborly/numeric.hpp"

namespace neighborly {

/// Evenly spaced sites on the generalized helix
///   (s, cos s, sin s, cos 2s, sin 2s, ..., cos ks, sin ks),  s = 2*pi*t/n,
/// in R^(2k+1). k = 1 is the circular helix in R^3.
struct HelixFamilySpec {
  int n = 8;
  int k = 1;

  int dimension() const { return 2 * k + 1; }
  double theta() const;
  /// n >= 3, 1 <= k, 2k+1 <= kMaxDimension.
  void validate() const;
};

/// (t, t^2, ..., t^d, cos t, sin t, ..., cos kt, sin kt) in R^(d+2k).
struct MixedMomentSpec {
  int d_poly = 0;
  int k = 0;

  int dimension() const { return d_poly + 2 * k; }
  void validate() const;
};

/// Inclusive range of integer site indices.
struct Window {
  int lo = 0;
  int hi = 0;

  int size() const { return hi - lo + 1; }
  bool contains(int t) const { return lo <= t && t <= hi; }
  bool operator==(const Window&) const = default;
};

/// Sampling window used when nothing else is requested: [0, (2k+1)n].
/// That is [0, 3n] for the 3D helix and [0, 5n] for k = 2.
Window default_window(const HelixFamilySpec& spec);

/// The n+1 consecutive sites [kn, (k+1)n] whose regions are computed
/// inside default_window().
Window middle_sites(const HelixFamilySpec& spec);

/// A window around a single site wide enough for its Voronoi region.
Window centered_window(const HelixFamilySpec& spec, int site);

/// Integer (or real) parameter t; integral t is range-reduced exactly.
Point helix_point(const HelixFamilySpec& spec, double t);

Point mixed_moment_point(const MixedMomentSpec& spec, double t);

/// Rigid motion mapping helix_point(t) to helix_point(t + 1): translation
/// by 2*pi/n along x_1 and rotation by j*2*pi/n in the j-th harmonic plane.
struct ScrewMotion {
  HelixFamilySpec spec;

  Point apply(const Point& p, int steps = 1) const;
};

struct Site {
  int index = 0;
  Point position;
};

/// Sites lo..hi with their indices. Requires lo <= hi.
std::vector<Site> sample_window(const HelixFamilySpec& spec, int lo, int hi);
std::vector<Site> sample_window(const HelixFamilySpec& spec, Window window);

}  // namespace neighborly
