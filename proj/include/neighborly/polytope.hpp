#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neighborly/numeric.hpp"

namespace neighborly {

/// What a halfspace came from: the bisector with another site, the clip
/// plane, the mirror image of a site bisector, or a plain hull facet.
struct FacetLabel {
  enum class Kind { Site, Clip, Mirror, Bound };

  Kind kind = Kind::Site;
  int value = 0;

  static FacetLabel site(int s) { return {Kind::Site, s}; }
  static FacetLabel clip() { return {Kind::Clip, 0}; }
  static FacetLabel mirror(int s) { return {Kind::Mirror, s}; }
  static FacetLabel bound(int i) { return {Kind::Bound, i}; }

  std::string to_string() const;
  auto operator<=>(const FacetLabel&) const = default;
};

struct Halfspace {
  Hyperplane plane;
  FacetLabel label;
};

struct HRep {
  int dimension = 3;
  std::vector<Halfspace> halfspaces;
  /// Strictly interior point when known (Voronoi regions use their site).
  std::optional<Point> interior_point;

  /// Largest |offset|, at least 1; the length scale of tolerances.
  double scale() const;
  std::optional<std::size_t> find(const FacetLabel& label) const;
};

/// Unbounded edge leaving vertices[origin] along `direction` (unit).
struct Ray {
  int origin = 0;
  Point direction;
};

struct VRep {
  std::vector<Point> vertices;
  std::vector<Ray> rays;
  /// Per vertex, indices of the halfspaces tight there.
  std::vector<std::vector<int>> active_sets;
  /// False when rays exist or when a nonempty region has no vertex.
  bool bounded = true;
};

inline constexpr int kMaxHalfspaces = 200;

/// Exhaustive d-subset intersection of the hyperplanes: a solution that
/// satisfies every halfspace (within the tolerance band) is a vertex.
/// Near-duplicates are merged. Rays are the unbounded edges at each vertex.
VRep enumerate_vertices(const HRep& h, const TolerancePolicy& tol = {});

/// One boundary facet of a 3D region. `vertices` is ordered
/// counterclockwise seen from outside. For an unbounded facet the cycle is
/// open: rays[0] leaves vertices.front() and rays[1] leaves vertices.back().
struct Facet3D {
  FacetLabel label;
  int halfspace = 0;
  std::vector<int> vertices;
  std::vector<int> rays;

  bool bounded() const { return rays.empty(); }
  int segment_count() const;
};

struct FaceLattice3D {
  std::vector<Facet3D> facets;  // sorted by label
  std::vector<std::pair<int, int>> edges;
  /// adjacency[i] holds facet indices sharing a segment or a ray with facet i.
  std::vector<std::vector<int>> adjacency;

  const Facet3D* find(const FacetLabel& label) const;
  std::optional<std::size_t> index_of(const FacetLabel& label) const;
  bool adjacent(const FacetLabel& a, const FacetLabel& b) const;
  /// V - E + F; 2 for a bounded polytope.
  int euler_characteristic(const VRep& v) const;
};

FaceLattice3D face_lattice_3d(const HRep& h, const VRep& v, const TolerancePolicy& tol = {});

/// Area of a bounded facet polygon.
double facet_area(const Facet3D& f, const VRep& v);

/// Labels of halfspaces that support a (d-1)-dimensional face.
std::vector<FacetLabel> facet_labels(const HRep& h, const VRep& v, const TolerancePolicy& tol = {});

/// Copy of `h` keeping only halfspaces that support facets.
HRep prune_redundant(const HRep& h, const VRep& v, const TolerancePolicy& tol = {});

/// Facets of the convex hull of a 3D point set: every plane through three
/// of the points with all points on one side. Coplanar points are grouped.
struct HullFacet {
  Hyperplane plane;              // outward
  std::vector<int> on_plane;     // point indices, sorted
};
std::vector<HullFacet> hull_facets_3d(std::span<const Point> pts, const TolerancePolicy& tol = {});

/// Area of a planar convex polygon given by an unordered point set.
double convex_polygon_area(std::span<const Point> pts);

/// Counterclockwise order of coplanar points around their centroid as seen
/// from the side `normal` points to.
std::vector<int> order_around(std::span<const Point> pts, const Point& normal);

}  // namespace neighborly
