#pragma once

#include <optional>
#include <string>
#include <vector>

#include "neighborly/curves.hpp"
#include "neighborly/polytope.hpp"

namespace neighborly {

/// Bisector halfspaces between site `t` and every other site of the
/// window, labeled by the other site's index; the site is the interior point.
/// The window must contain [t-n, t+n].
HRep region_hrep(const HelixFamilySpec& spec, int site, Window window);

struct VoronoiRegion {
  HelixFamilySpec spec;
  int site = 0;
  Window window;
  HRep hrep;      // all window bisectors
  VRep vrep;
  std::optional<FaceLattice3D> lattice;  // R^3 only

  /// Labels of the bisectors that support facets.
  std::vector<FacetLabel> facet_labels() const;
};

VoronoiRegion build_region(const HelixFamilySpec& spec, int site, Window window,
                           const TolerancePolicy& tol = {});
/// Region of `site` in centered_window(spec, site).
VoronoiRegion build_region(const HelixFamilySpec& spec, int site, const TolerancePolicy& tol = {});

enum class FacetClass { BigGon, Triangle, Quad, UnboundedQuad, Wedge };

std::string to_string(FacetClass c);

/// Shape of one facet as measured from the lattice.
struct FacetShape {
  int offset = 0;          // neighbor site minus own site
  int vertex_count = 0;
  int segment_count = 0;
  int ray_count = 0;
  bool parallel_rays = false;
  /// Side count of the polygon left after cutting the rays by a plane
  /// transverse to them (segments + rays + 1 for unbounded facets).
  int closed_sides = 0;
};

struct CensusRecord {
  int n = 0;
  int big_gons = 0;
  int triangles = 0;
  int quads = 0;
  int unbounded_quads = 0;
  int wedges = 0;
  int big_gon_sides = 0;  // closed side count of the facets shared with t+-1
  std::vector<FacetShape> shapes;

  int total() const { return big_gons + triangles + quads + unbounded_quads + wedges; }
};

/// Class a neighbor offset belongs to (by |offset|), for n >= 4.
FacetClass expected_class(int offset, int n);

/// Class judged purely from geometry, independent of the label.
std::optional<FacetClass> classify_shape(const FacetShape& shape, int n);

/// Counts facets per class and cross-checks label-derived and shape-derived
/// classes. Throws CensusMismatch listing every disagreement, including a
/// total different from 2n.
CensusRecord facet_census(const FaceLattice3D& lattice, const VRep& vrep, int site, int n);

/// theta(2 pi - theta) / (2 - 2 cos theta) with theta = 2 pi / n: distance
/// from the x-axis of the farthest Voronoi vertex.
double outer_radius(int n);

/// Sphere through h(t) and h(-t) of the unit-speed helix (s, cos s, sin s),
/// tangent to the helix at both; centered on the y-axis. Needs 0 < t < pi.
Sphere bitangent_sphere(double t);

/// min of (|h(s) - c|^2 - r^2) / r^2 over `samples` evenly spaced s in
/// [-3 pi, 3 pi] at distance >= `exclusion` from +-t. Positive when the
/// sphere meets the helix only at its tangency points.
double bitangent_clearance(double t, int samples = 20000, double exclusion = 1e-2);

/// Distance of a point from the helix axis (the x_1 axis).
double axis_distance(const Point& p);

}  // namespace neighborly
