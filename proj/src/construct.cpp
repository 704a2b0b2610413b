#include "neighborly/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace neighborly {
namespace {

// Orthonormal basis of the complement of span(given), completed from the
// standard basis in index order.
std::vector<Point> orthonormal_complement(const std::vector<Point>& given, int d) {
  std::vector<Point> span;
  for (const auto& g : given) {
    Point v = g;
    for (const auto& s : span) v -= s * s.dot(v);
    if (v.norm() > 1e-12) span.push_back(v / v.norm());
  }
  std::vector<Point> out;
  for (int i = 0; i < d && static_cast<int>(span.size()) < d; ++i) {
    Point v = Point::Unit(d, i);
    for (const auto& s : span) v -= s * s.dot(v);
    if (v.norm() > 1e-6) {
      v /= v.norm();
      span.push_back(v);
      out.push_back(v);
    }
  }
  return out;
}

Halfspace mirror(const Halfspace& hs, const Flat& flat, FacetLabel label) {
  // R(y) = L y + t with L = 2*Pi - I and t = 2 (I - Pi) anchor.
  auto linear = [&](const Point& v) {
    Point proj = Point::Zero(v.size());
    for (const auto& b : flat.basis) proj += b * b.dot(v);
    return Point(2.0 * proj - v);
  };
  const Point t = flat.anchor - linear(flat.anchor);
  return {Hyperplane::from(linear(hs.plane.normal), hs.plane.offset - hs.plane.normal.dot(t)), label};
}

bool same_plane(const Hyperplane& a, const Hyperplane& b, double band) {
  return a.normal.dot(b.normal) > 1.0 - 1e-12 && std::abs(a.offset - b.offset) <= band;
}

void add_unique(HRep& h, const Halfspace& hs, double band) {
  for (const auto& existing : h.halfspaces) {
    if (same_plane(existing.plane, hs.plane, band)) return;
  }
  h.halfspaces.push_back(hs);
}

Point axis_origin(const Point& site) {
  Point o = Point::Zero(site.size());
  o[0] = site[0];
  return o;
}

Point radial_direction(const Point& site) {
  Point u = site - axis_origin(site);
  return u / u.norm();
}

void require_facets_kept(const std::vector<FacetLabel>& before, const std::vector<FacetLabel>& after,
                         const std::string& where) {
  for (const auto& l : before) {
    if (!std::binary_search(after.begin(), after.end(), l)) {
      fail(ErrorCode::FacetLost, where + " lost facet " + l.to_string());
    }
  }
}

Polytope finish(int site, HRep h, Provenance provenance, const TolerancePolicy& tol) {
  Polytope p;
  p.site = site;
  p.provenance = provenance;
  p.vrep = enumerate_vertices(h, tol);
  p.hrep = std::move(h);
  if (p.hrep.dimension == 3) p.lattice = face_lattice_3d(p.hrep, p.vrep, tol);
  return p;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Clipped: return "clipped";
    case Provenance::SymmetrizedUnion: return "symmetrized_union";
    case Provenance::SymmetrizedFlat: return "symmetrized_flat";
    case Provenance::ZaksHull: return "zaks_hull";
  }
  return "?";
}

std::string to_string(FamilyMode m) {
  switch (m) {
    case FamilyMode::Clipped: return "clipped";
    case FamilyMode::SymmetrizedUnion: return "symmetrized";
    case FamilyMode::Zaks: return "zaks";
  }
  return "?";
}

std::optional<FamilyMode> parse_family_mode(const std::string& s) {
  if (s == "clipped") return FamilyMode::Clipped;
  if (s == "symmetrized") return FamilyMode::SymmetrizedUnion;
  if (s == "zaks") return FamilyMode::Zaks;
  return std::nullopt;
}

SymmetryFrame symmetry_frame(const HelixFamilySpec& spec, int site) {
  if (spec.k != 1) fail(ErrorCode::InvalidArgument, "symmetry_frame is defined for the 3D helix");
  const Point p = helix_point(spec, site);
  const Point nu = radial_direction(p);
  const Point centre = axis_origin(p) + spec.n * nu;
  SymmetryFrame f;
  f.plane = {centre, orthonormal_complement({nu}, 3)};
  f.axis = {centre, {nu}};
  f.center = {centre, {}};
  return f;
}

Hyperplane clip_halfspace(const HelixFamilySpec& spec, int site, std::span<const Point> vertices) {
  const Point p = helix_point(spec, site);
  const Point nu = radial_direction(p);
  if (spec.k == 1) return Hyperplane::from(nu, spec.n);
  if (vertices.empty()) fail(ErrorCode::InvalidArgument, "clip offset for k >= 2 needs the region's vertices");
  double reach = 0.0;
  for (const auto& v : vertices) reach = std::max(reach, nu.dot(v));
  return Hyperplane::from(nu, 1.25 * reach);
}

Polytope clip_region(const VoronoiRegion& region, const TolerancePolicy& tol) {
  const auto before = region.facet_labels();
  HRep h = prune_redundant(region.hrep, region.vrep, tol);
  h.halfspaces.push_back({clip_halfspace(region.spec, region.site, region.vrep.vertices), FacetLabel::clip()});
  Polytope p = finish(region.site, std::move(h), Provenance::Clipped, tol);
  if (!p.vrep.bounded) fail(ErrorCode::UnboundedAfterClip, "site " + std::to_string(region.site));
  const std::string where = "clip of site " + std::to_string(region.site);
  if (p.lattice) {
    const double scale = p.hrep.scale();
    for (const auto& l : before) {
      const Facet3D* f = p.lattice->find(l);
      if (f == nullptr || facet_area(*f, p.vrep) <= 1e-6 * scale * scale) {
        fail(ErrorCode::FacetLost, where + " lost facet " + l.to_string());
      }
    }
  } else {
    require_facets_kept(before, facet_labels(p.hrep, p.vrep, tol), where);
  }
  return p;
}

Polytope symmetrize_union(const Polytope& clipped, const HelixFamilySpec& spec, const TolerancePolicy& tol) {
  if (clipped.provenance != Provenance::Clipped || clipped.dimension() != 3) {
    fail(ErrorCode::InvalidArgument, "symmetrize_union takes a clipped 3D region");
  }
  const SymmetryFrame frame = symmetry_frame(spec, clipped.site);
  std::vector<Point> pieces = clipped.vrep.vertices;
  for (const auto& v : clipped.vrep.vertices) pieces.push_back(reflect(v, frame.plane, tol));

  const double band = tol.band(clipped.hrep.scale());
  auto supports_all = [&](const Halfspace& hs) {
    return std::all_of(pieces.begin(), pieces.end(), [&](const Point& x) { return hs.plane.slack(x) >= -band; });
  };
  HRep h{3, {}, frame.center.anchor};
  for (const auto& hs : clipped.hrep.halfspaces) {
    if (hs.label.kind == FacetLabel::Kind::Clip) continue;
    if (supports_all(hs)) add_unique(h, hs, band);
  }
  for (const auto& hs : clipped.hrep.halfspaces) {
    if (hs.label.kind == FacetLabel::Kind::Clip) continue;
    const Halfspace m = mirror(hs, frame.plane, FacetLabel::mirror(hs.label.value));
    if (supports_all(m)) add_unique(h, m, band);
  }
  Polytope p;
  try {
    p = finish(clipped.site, std::move(h), Provenance::SymmetrizedUnion, tol);
  } catch (const GeometryError& e) {
    fail(ErrorCode::UnionNotConvex, std::string("supporting planes do not close the union: ") + e.what());
  }
  if (!p.vrep.bounded) fail(ErrorCode::UnionNotConvex, "supporting planes leave the union unbounded");
  const double reach = 10.0 * band;
  for (const auto& v : p.vrep.vertices) {
    const bool known = std::any_of(pieces.begin(), pieces.end(), [&](const Point& x) { return (x - v).norm() <= reach; });
    if (!known) fail(ErrorCode::UnionNotConvex, "hull facet not supported by an original or mirrored facet");
  }
  return p;
}

Flat symmetry_flat(const VoronoiRegion& region, int r, double headroom) {
  const int d = region.spec.dimension();
  if (r < 0 || r > d - 1) {
    fail(ErrorCode::InvalidFlatDimension, "flat dimension " + std::to_string(r) + " outside [0, " +
                                              std::to_string(d - 1) + "]");
  }
  if (!(headroom > 1.0)) fail(ErrorCode::InvalidArgument, "headroom must exceed 1");
  const Point site = helix_point(region.spec, region.site);
  const Point o = axis_origin(site);
  const Point rho = radial_direction(site);
  double reach = 0.0;
  for (const auto& v : region.vrep.vertices) reach = std::max(reach, rho.dot(v - o));
  Flat f{o + headroom * reach * rho, {}};
  // Directions orthogonal to rho, all carried along by the screw motion: the
  // axis, the tangent in each harmonic plane, then radial combinations.
  std::vector<Point> dirs{Point::Unit(d, 0)};
  const int k = region.spec.k;
  std::vector<Point> radial;
  for (int j = 1; j <= k; ++j) {
    const double c = site[2 * j - 1], s = site[2 * j];
    Point tangent = Point::Zero(d);
    tangent[2 * j - 1] = -s;
    tangent[2 * j] = c;
    dirs.push_back(tangent);
    Point out = Point::Zero(d);
    out[2 * j - 1] = c;
    out[2 * j] = s;
    radial.push_back(out);
  }
  std::vector<Point> span{rho};
  for (int j = 0; j + 1 < k; ++j) {
    Point v = radial[j];
    for (const auto& b : span) v -= b * b.dot(v);
    v /= v.norm();
    span.push_back(v);
    dirs.push_back(v);
  }
  f.basis.assign(dirs.begin(), dirs.begin() + r);
  return f;
}

namespace {

struct FlatAttempt {
  Polytope polytope;
  double headroom = 0.0;
};

FlatAttempt symmetrize_flat_search(const VoronoiRegion& region, int r, const TolerancePolicy& tol) {
  const auto before = region.facet_labels();
  const HRep base = prune_redundant(region.hrep, region.vrep, tol);
  const double band = tol.band(base.scale());
  std::string missing;
  for (double headroom = 1.25; headroom <= 64.0; headroom *= 2.0) {
    const Flat f = symmetry_flat(region, r, headroom);
    HRep h{base.dimension, {}, f.anchor};
    for (const auto& hs : base.halfspaces) add_unique(h, hs, band);
    for (const auto& hs : base.halfspaces) add_unique(h, mirror(hs, f, FacetLabel::mirror(hs.label.value)), band);
    Polytope p = finish(region.site, std::move(h), Provenance::SymmetrizedFlat, tol);
    if (!p.vrep.bounded) fail(ErrorCode::UnboundedPolytope, "flat symmetrization left rays");
    const auto after = facet_labels(p.hrep, p.vrep, tol);
    missing.clear();
    for (const auto& l : before) {
      if (!std::binary_search(after.begin(), after.end(), l)) missing += " " + l.to_string();
    }
    if (missing.empty()) return {std::move(p), headroom};
  }
  fail(ErrorCode::FacetLost, "flat symmetrization of site " + std::to_string(region.site) + " lost" + missing);
}

}  // namespace

Polytope symmetrize_flat(const VoronoiRegion& region, int r, const TolerancePolicy& tol) {
  return symmetrize_flat_search(region, r, tol).polytope;
}

double symmetrize_flat_headroom(const VoronoiRegion& region, int r, const TolerancePolicy& tol) {
  return symmetrize_flat_search(region, r, tol).headroom;
}

std::vector<Point> inscribed_triangle(const Facet3D& facet, const VRep& vrep, double scale) {
  const int m = static_cast<int>(facet.vertices.size());
  if (!facet.bounded() || m < 3) fail(ErrorCode::DegenerateTriangle, "facet " + facet.label.to_string() + " is not a bounded polygon");
  Point centroid = Point::Zero(3);
  for (int v : facet.vertices) centroid += vrep.vertices[v];
  centroid /= m;
  const int s1 = m / 3, s2 = (2 * m) / 3;
  double best = -1.0;
  std::vector<Point> tri;
  for (int s = 0; s < m; ++s) {
    std::vector<Point> cand;
    for (int off : {0, s1, s2}) cand.push_back(centroid + scale * (vrep.vertices[facet.vertices[(s + off) % m]] - centroid));
    const double area = 0.5 * Eigen::Vector3d(cand[1] - cand[0]).cross(Eigen::Vector3d(cand[2] - cand[0])).norm();
    if (area > best) {
      best = area;
      tri = cand;
    }
  }
  if (best <= 1e-12) fail(ErrorCode::DegenerateTriangle, "facet " + facet.label.to_string());
  return tri;
}

Polytope polytope_from_hull(std::span<const Point> pts, int site, Provenance provenance, const TolerancePolicy& tol) {
  const auto facets = hull_facets_3d(pts, tol);
  std::vector<int> used;
  for (const auto& f : facets) used.insert(used.end(), f.on_plane.begin(), f.on_plane.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::map<int, int> remap;
  Polytope p;
  p.site = site;
  p.provenance = provenance;
  p.hrep.dimension = 3;
  Point centroid = Point::Zero(3);
  for (int u : used) {
    remap[u] = static_cast<int>(p.vrep.vertices.size());
    p.vrep.vertices.push_back(pts[u]);
    centroid += pts[u];
  }
  if (!used.empty()) p.hrep.interior_point = Point(centroid / static_cast<double>(used.size()));
  p.vrep.active_sets.assign(used.size(), {});
  for (std::size_t i = 0; i < facets.size(); ++i) {
    p.hrep.halfspaces.push_back({facets[i].plane, FacetLabel::bound(static_cast<int>(i))});
    for (int u : facets[i].on_plane) p.vrep.active_sets[remap[u]].push_back(static_cast<int>(i));
  }
  p.lattice = face_lattice_3d(p.hrep, p.vrep, tol);
  return p;
}

Family zaks_family(const HelixFamilySpec& spec, double triangle_scale, const TolerancePolicy& tol) {
  spec.validate();
  if (spec.k != 1) fail(ErrorCode::InvalidArgument, "the triangle-hull family is built in R^3");
  if (spec.n < 4) fail(ErrorCode::InvalidArgument, "the triangle-hull family needs n >= 4");
  if (!(triangle_scale > 0.0 && triangle_scale < 1.0)) fail(ErrorCode::InvalidArgument, "triangle_scale must lie in (0, 1)");

  const Window window = default_window(spec);
  const Window middle = middle_sites(spec);
  const int base = middle.lo;
  const ScrewMotion screw{spec};
  const Polytope anchor = clip_region(build_region(spec, base, window, tol), tol);

  // triangles[j-1] sits on the facet shared by regions base and base + j.
  std::vector<std::vector<Point>> triangles;
  for (int j = 1; j <= spec.n; ++j) {
    const Facet3D* f = anchor.lattice->find(FacetLabel::site(base + j));
    if (f == nullptr) fail(ErrorCode::FacetLost, "no facet between sites " + std::to_string(base) + " and " + std::to_string(base + j));
    triangles.push_back(inscribed_triangle(*f, anchor.vrep, triangle_scale));
  }

  Family fam{spec, FamilyMode::Zaks, screw, {}};
  for (int s = middle.lo; s <= middle.hi; ++s) {
    std::vector<Point> pts;
    std::vector<int> neighbour;
    for (int j = 1; j <= spec.n; ++j) {
      for (const auto& v : triangles[j - 1]) pts.push_back(screw.apply(v, s - base));
      neighbour.push_back(s + j);
      for (const auto& v : triangles[j - 1]) pts.push_back(screw.apply(v, s - base - j));
      neighbour.push_back(s - j);
    }
    Polytope p = polytope_from_hull(pts, s, Provenance::ZaksHull, tol);
    // Relabel the hull facets that carry a triangle by the neighbouring site.
    const Point own = helix_point(spec, s);
    const double band = tol.band(p.hrep.scale());
    for (auto& hs : p.hrep.halfspaces) {
      for (int nb : neighbour) {
        if (same_plane(hs.plane, Hyperplane::bisector(own, helix_point(spec, nb)), 1e3 * band)) hs.label = FacetLabel::site(nb);
      }
    }
    p.lattice = face_lattice_3d(p.hrep, p.vrep, tol);
    fam.members.push_back(std::move(p));
  }
  return fam;
}

Family build_family(const HelixFamilySpec& spec, FamilyMode mode, const TolerancePolicy& tol) {
  spec.validate();
  if (spec.k != 1) fail(ErrorCode::InvalidArgument, "build_family constructs 3D families (k = 1)");
  if (mode == FamilyMode::Zaks) return zaks_family(spec, 0.5, tol);
  Family fam{spec, mode, ScrewMotion{spec}, {}};
  const Window window = default_window(spec);
  const Window middle = middle_sites(spec);
  for (int s = middle.lo; s <= middle.hi; ++s) {
    Polytope p = clip_region(build_region(spec, s, window, tol), tol);
    if (mode == FamilyMode::SymmetrizedUnion) p = symmetrize_union(p, spec, tol);
    fam.members.push_back(std::move(p));
  }
  return fam;
}

std::optional<double> match_point_sets(std::span<const Point> a, std::span<const Point> b, double tolerance) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = (b[j] - p).norm();
      if (dist < best) {
        best = dist;
        pick = j;
      }
    }
    if (pick == b.size() || best > tolerance) return std::nullopt;
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace neighborly
