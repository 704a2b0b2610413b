#include "neighborly/voronoi.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace neighborly {

HRep region_hrep(const HelixFamilySpec& spec, int site, Window window) {
  spec.validate();
  if (!window.contains(site - spec.n) || !window.contains(site + spec.n)) {
    fail(ErrorCode::WindowTooSmall, "window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                                        "] must contain [t-n, t+n] around site " + std::to_string(site));
  }
  const Point own = helix_point(spec, site);
  HRep h{spec.dimension(), {}, own};
  for (int s = window.lo; s <= window.hi; ++s) {
    if (s == site) continue;
    h.halfspaces.push_back({Hyperplane::bisector(own, helix_point(spec, s)), FacetLabel::site(s)});
  }
  return h;
}

std::vector<FacetLabel> VoronoiRegion::facet_labels() const { return neighborly::facet_labels(hrep, vrep); }

VoronoiRegion build_region(const HelixFamilySpec& spec, int site, Window window, const TolerancePolicy& tol) {
  VoronoiRegion r{spec, site, window, region_hrep(spec, site, window), {}, std::nullopt};
  r.vrep = enumerate_vertices(r.hrep, tol);
  if (spec.dimension() == 3) r.lattice = face_lattice_3d(r.hrep, r.vrep, tol);
  return r;
}

VoronoiRegion build_region(const HelixFamilySpec& spec, int site, const TolerancePolicy& tol) {
  return build_region(spec, site, centered_window(spec, site), tol);
}

std::string to_string(FacetClass c) {
  switch (c) {
    case FacetClass::BigGon: return "big_gon";
    case FacetClass::Triangle: return "triangle";
    case FacetClass::Quad: return "quad";
    case FacetClass::UnboundedQuad: return "unbounded_quad";
    case FacetClass::Wedge: return "wedge";
  }
  return "?";
}

FacetClass expected_class(int offset, int n) {
  const int a = std::abs(offset);
  if (a == 1) return FacetClass::BigGon;
  if (a == n) return FacetClass::Wedge;
  if (a == n - 1) return FacetClass::UnboundedQuad;
  if (a == 2) return FacetClass::Triangle;
  return FacetClass::Quad;
}

std::optional<FacetClass> classify_shape(const FacetShape& s, int n) {
  if (s.ray_count == 0) {
    if (s.vertex_count == 3) return FacetClass::Triangle;
    if (s.vertex_count == 4) return FacetClass::Quad;
    return std::nullopt;
  }
  if (s.ray_count != 2) return std::nullopt;
  if (!s.parallel_rays) return s.vertex_count == 1 ? std::optional(FacetClass::Wedge) : std::nullopt;
  if (s.vertex_count == 2 * n - 3) return FacetClass::BigGon;
  if (s.vertex_count == 3) return FacetClass::UnboundedQuad;
  return std::nullopt;
}

CensusRecord facet_census(const FaceLattice3D& lattice, const VRep& vrep, int site, int n) {
  if (n < 4) fail(ErrorCode::InvalidArgument, "facet census needs n >= 4");
  CensusRecord rec;
  rec.n = n;
  std::ostringstream diff;
  for (const auto& f : lattice.facets) {
    if (f.label.kind != FacetLabel::Kind::Site) continue;
    FacetShape s;
    s.offset = f.label.value - site;
    s.vertex_count = static_cast<int>(f.vertices.size());
    s.segment_count = f.segment_count();
    s.ray_count = static_cast<int>(f.rays.size());
    if (s.ray_count == 2) {
      s.parallel_rays = vrep.rays[f.rays[0]].direction.dot(vrep.rays[f.rays[1]].direction) > 1.0 - 1e-9;
    }
    s.closed_sides = s.ray_count == 0 ? s.vertex_count : s.segment_count + s.ray_count + 1;
    const FacetClass want = expected_class(s.offset, n);
    const auto got = classify_shape(s, n);
    if (!got || *got != want) {
      diff << " offset " << s.offset << ": expected " << to_string(want) << ", measured "
           << (got ? to_string(*got) : std::string("unclassifiable")) << " (" << s.vertex_count << " vertices, "
           << s.ray_count << " rays);";
    }
    switch (want) {
      case FacetClass::BigGon:
        ++rec.big_gons;
        rec.big_gon_sides = s.closed_sides;
        break;
      case FacetClass::Triangle: ++rec.triangles; break;
      case FacetClass::Quad: ++rec.quads; break;
      case FacetClass::UnboundedQuad: ++rec.unbounded_quads; break;
      case FacetClass::Wedge: ++rec.wedges; break;
    }
    rec.shapes.push_back(s);
  }
  auto expect = [&](const char* name, int got, int want) {
    if (got != want) diff << ' ' << name << ": " << got << " != " << want << ';';
  };
  expect("big_gons", rec.big_gons, 2);
  expect("triangles", rec.triangles, 2);
  expect("quads", rec.quads, 2 * n - 8);
  expect("unbounded_quads", rec.unbounded_quads, 2);
  expect("wedges", rec.wedges, 2);
  expect("total", rec.total(), 2 * n);
  if (!diff.str().empty()) fail(ErrorCode::CensusMismatch, "site " + std::to_string(site) + ":" + diff.str());
  return rec;
}

double outer_radius(int n) {
  if (n < 3) fail(ErrorCode::InvalidArgument, "outer_radius needs n >= 3");
  const double theta = 2.0 * std::numbers::pi / n;
  return theta * (2.0 * std::numbers::pi - theta) / (2.0 - 2.0 * std::cos(theta));
}

Sphere bitangent_sphere(double t) {
  if (!(t > 0.0 && t < std::numbers::pi)) fail(ErrorCode::InvalidArgument, "bitangent sphere needs 0 < t < pi");
  // Tangency at h(t): t + a sin t = 0.
  const double a = -t / std::sin(t);
  Point c = Point::Zero(3);
  c[1] = a;
  const Point h = Point((Eigen::Vector3d() << t, std::cos(t), std::sin(t)).finished());
  return {c, (h - c).norm()};
}

double bitangent_clearance(double t, int samples, double exclusion) {
  const Sphere s = bitangent_sphere(t);
  const double r2 = s.radius * s.radius;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double u = -3.0 * std::numbers::pi + 6.0 * std::numbers::pi * i / (samples - 1);
    if (std::abs(u - t) < exclusion || std::abs(u + t) < exclusion) continue;
    const Eigen::Vector3d h(u, std::cos(u), std::sin(u));
    worst = std::min(worst, ((h - Eigen::Vector3d(s.center)).squaredNorm() - r2) / r2);
  }
  return worst;
}

double axis_distance(const Point& p) { return p.tail(p.size() - 1).norm(); }

}  // namespace neighborly
