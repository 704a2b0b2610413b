#pragma once

#include <optional>
#include <string>
#include <vector>

#include "neighborly/curves.hpp"
#include "neighborly/polytope.hpp"
#include "neighborly/voronoi.hpp"

namespace neighborly {

enum class Provenance { Clipped, SymmetrizedUnion, SymmetrizedFlat, ZaksHull };

std::string to_string(Provenance p);

/// A bounded member of a family, tagged with the site it belongs to.
struct Polytope {
  int site = 0;
  HRep hrep;
  VRep vrep;
  std::optional<FaceLattice3D> lattice;
  Provenance provenance = Provenance::Clipped;

  int dimension() const { return hrep.dimension; }
};

/// Symmetry elements of the clipped region of `site` (3D helix only): the
/// clip plane, the 180-degree rotation axis, and their intersection point.
struct SymmetryFrame {
  Flat plane;
  Flat axis;
  Flat center;
};
SymmetryFrame symmetry_frame(const HelixFamilySpec& spec, int site);

/// Halfspace bounding the region of `site`. For k = 1 it is
/// y cos(2 pi t/n) + z sin(2 pi t/n) <= n. For k >= 2 the normal is the
/// unit radial direction of the site and the offset 1.25 times the largest
/// radial coordinate among `vertices`.
Hyperplane clip_halfspace(const HelixFamilySpec& spec, int site, std::span<const Point> vertices = {});

/// Intersects the region with its clip halfspace. Throws
/// UnboundedAfterClip when rays survive and FacetLost when a facet of the
/// region does not keep positive area.
Polytope clip_region(const VoronoiRegion& region, const TolerancePolicy& tol = {});

/// Convex hull of a clipped 3D region and its mirror image across the clip
/// plane, computed as the intersection of the supporting planes of both.
/// Throws UnionNotConvex if that intersection has a vertex outside the two
/// pieces (a hull facet not supported by an original or mirrored facet).
Polytope symmetrize_union(const Polytope& clipped, const HelixFamilySpec& spec, const TolerancePolicy& tol = {});

/// Flat of dimension r used by symmetrize_flat: it passes through the point
/// at `headroom` times the largest radial vertex coordinate on the site's
/// radial ray and lies in the hyperplane normal to that ray. Its directions
/// are taken in order from: the axis, the tangent of each harmonic plane,
/// then radial directions orthogonal to the ray, so the flats of successive
/// sites correspond under the screw motion.
Flat symmetry_flat(const VoronoiRegion& region, int r, double headroom = 1.25);

/// Intersection of the region and its reflection across symmetry_flat().
/// The headroom starts at 1.25 and doubles (up to 64) until every facet of
/// the region keeps a facet of the result; FacetLost after that.
Polytope symmetrize_flat(const VoronoiRegion& region, int r, const TolerancePolicy& tol = {});

/// Headroom that symmetrize_flat settled on for (region, r).
double symmetrize_flat_headroom(const VoronoiRegion& region, int r, const TolerancePolicy& tol = {});

enum class FamilyMode { Clipped, SymmetrizedUnion, Zaks };

std::string to_string(FamilyMode m);
std::optional<FamilyMode> parse_family_mode(const std::string& s);

struct Family {
  HelixFamilySpec spec;
  FamilyMode mode = FamilyMode::Clipped;
  ScrewMotion transform;
  std::vector<Polytope> members;  // sorted by site
};

/// Triangle inscribed in a facet: centroid + scale * (v - centroid) for the
/// three cycle vertices, evenly spread in cycle order, of largest area.
std::vector<Point> inscribed_triangle(const Facet3D& facet, const VRep& vrep, double scale);

/// Hulls of screw-replicated triangles placed on the shared facets of the
/// middle regions. Requires n >= 4 and 0 < triangle_scale < 1.
Family zaks_family(const HelixFamilySpec& spec, double triangle_scale = 0.5, const TolerancePolicy& tol = {});

/// n+1 members for the middle sites [n, 2n] of the window [0, 3n].
Family build_family(const HelixFamilySpec& spec, FamilyMode mode, const TolerancePolicy& tol = {});

/// Bounded 3D polytope from the convex hull of a point set.
Polytope polytope_from_hull(std::span<const Point> pts, int site, Provenance provenance,
                            const TolerancePolicy& tol = {});

/// Bijective nearest-neighbour matching of two point sets. Returns the
/// largest matched distance, or nullopt when sizes differ or some point has
/// no partner within `tolerance`.
std::optional<double> match_point_sets(std::span<const Point> a, std::span<const Point> b, double tolerance);

}  // namespace neighborly
