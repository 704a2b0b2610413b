#include "neighborly/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace neighborly {
namespace {

// |det| of d unit normals below this is treated as a singular system.
constexpr double kSingular = 1e-10;

template <class F>
void for_each_combination(int m, int r, F&& visit) {
  if (r > m || r <= 0) return;
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == m - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::optional<Point> intersect3(const Halfspace& a, const Halfspace& b, const Halfspace& c) {
  const Eigen::Vector3d n1 = a.plane.normal, n2 = b.plane.normal, n3 = c.plane.normal;
  const Eigen::Vector3d c23 = n2.cross(n3);
  const double det = n1.dot(c23);
  if (std::abs(det) < kSingular) return std::nullopt;
  const Eigen::Vector3d x =
      (a.plane.offset * c23 + b.plane.offset * n3.cross(n1) + c.plane.offset * n1.cross(n2)) / det;
  return Point(x);
}

std::optional<Point> intersect_general(const HRep& h, const std::vector<int>& idx) {
  const int d = h.dimension;
  Eigen::MatrixXd a(d, d);
  Eigen::VectorXd b(d);
  for (int i = 0; i < d; ++i) {
    a.row(i) = h.halfspaces[idx[i]].plane.normal.transpose();
    b[i] = h.halfspaces[idx[i]].plane.offset;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (std::abs(lu.determinant()) < kSingular) return std::nullopt;
  return Point(lu.solve(b));
}

// Unit null vector of the rows, when their rank is exactly d-1.
std::optional<Point> null_direction(const std::vector<Point>& rows, int d) {
  Eigen::MatrixXd a(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i) a.row(i) = rows[i].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // Rows are unit normals; rank d-1 needs every one of the d-1 singular values clear of zero.
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] < 1e-8) return std::nullopt;
  }
  Point u = svd.matrixV().col(d - 1);
  return u / u.norm();
}

double rank_threshold(double scale) { return 1e-7 * std::max(1.0, scale); }

struct FaceSupport {
  std::vector<int> vertices;
  std::vector<int> rays;
};

FaceSupport support_of(const HRep& h, const VRep& v, int hs) {
  FaceSupport s;
  for (std::size_t i = 0; i < v.vertices.size(); ++i) {
    const auto& act = v.active_sets[i];
    if (std::find(act.begin(), act.end(), hs) != act.end()) s.vertices.push_back(static_cast<int>(i));
  }
  const Point& n = h.halfspaces[hs].plane.normal;
  for (std::size_t r = 0; r < v.rays.size(); ++r) {
    const auto& ray = v.rays[r];
    if (std::find(s.vertices.begin(), s.vertices.end(), ray.origin) != s.vertices.end() &&
        std::abs(n.dot(ray.direction)) <= 1e-9) {
      s.rays.push_back(static_cast<int>(r));
    }
  }
  return s;
}

int support_rank(const VRep& v, const FaceSupport& s, double scale) {
  std::vector<Point> pts;
  for (int i : s.vertices) pts.push_back(v.vertices[i]);
  const double reach = std::max(1.0, scale);
  for (int r : s.rays) pts.push_back(v.vertices[v.rays[r].origin] + reach * v.rays[r].direction);
  return affine_rank(pts, rank_threshold(scale));
}

// Orthonormal pair spanning the plane with the given normal, e1 x e2 = n.
std::pair<Eigen::Vector3d, Eigen::Vector3d> plane_basis(const Eigen::Vector3d& n) {
  Eigen::Vector3d seed = std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  Eigen::Vector3d e1 = (seed - n * n.dot(seed)).normalized();
  return {e1, n.cross(e1)};
}

}  // namespace

std::string FacetLabel::to_string() const {
  switch (kind) {
    case Kind::Site: return "site:" + std::to_string(value);
    case Kind::Clip: return "clip";
    case Kind::Mirror: return "mirror:" + std::to_string(value);
    case Kind::Bound: return "bound:" + std::to_string(value);
  }
  return "?";
}

double HRep::scale() const {
  double s = 1.0;
  for (const auto& hs : halfspaces) s = std::max(s, std::abs(hs.plane.offset));
  return s;
}

std::optional<std::size_t> HRep::find(const FacetLabel& label) const {
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    if (halfspaces[i].label == label) return i;
  }
  return std::nullopt;
}

VRep enumerate_vertices(const HRep& h, const TolerancePolicy& tol) {
  const int d = h.dimension;
  const int m = static_cast<int>(h.halfspaces.size());
  if (m > kMaxHalfspaces) {
    fail(ErrorCode::TooManyHalfspaces, std::to_string(m) + " halfspaces exceeds " + std::to_string(kMaxHalfspaces));
  }
  for (const auto& hs : h.halfspaces) {
    if (hs.plane.dimension() != d) fail(ErrorCode::DimensionMismatch, "halfspace dimension differs from H-rep");
  }
  const double feas = tol.band(h.scale());
  auto feasible = [&](const Point& x) {
    for (const auto& hs : h.halfspaces) {
      if (hs.plane.normal.dot(x) - hs.plane.offset > feas) return false;
    }
    return true;
  };

  std::vector<Point> candidates;
  for_each_combination(m, d, [&](const std::vector<int>& idx) {
    const auto x = d == 3 ? intersect3(h.halfspaces[idx[0]], h.halfspaces[idx[1]], h.halfspaces[idx[2]])
                          : intersect_general(h, idx);
    if (x && feasible(*x)) candidates.push_back(*x);
  });

  VRep out;
  if (!candidates.empty()) {
    Point lo = candidates.front(), hi = candidates.front();
    for (const auto& c : candidates) {
      lo = lo.cwiseMin(c);
      hi = hi.cwiseMax(c);
    }
    const double merge = std::max(feas, tol.eps_rel * std::max(1.0, (hi - lo).norm()));
    for (const auto& c : candidates) {
      const bool seen = std::any_of(out.vertices.begin(), out.vertices.end(),
                                    [&](const Point& v) { return (v - c).norm() <= merge; });
      if (!seen) out.vertices.push_back(c);
    }
  }
  for (const auto& x : out.vertices) {
    std::vector<int> act;
    for (int i = 0; i < m; ++i) {
      if (std::abs(h.halfspaces[i].plane.slack(x)) <= feas) act.push_back(i);
    }
    out.active_sets.push_back(std::move(act));
  }

  if (out.vertices.empty()) {
    if (h.interior_point && feasible(*h.interior_point)) {
      out.bounded = false;
      return out;
    }
    fail(ErrorCode::EmptyRegion, "halfspace system has no vertex and no interior point");
  }

  for (std::size_t vi = 0; vi < out.vertices.size(); ++vi) {
    const auto& act = out.active_sets[vi];
    std::vector<Point> found;
    for_each_combination(static_cast<int>(act.size()), d - 1, [&](const std::vector<int>& sub) {
      std::vector<Point> rows;
      for (int s : sub) rows.push_back(h.halfspaces[act[s]].plane.normal);
      auto u = null_direction(rows, d);
      if (!u) return;
      for (int flip = 0; flip < 2; ++flip) {
        const Point dir = flip ? Point(-*u) : *u;
        bool leaves = true;
        for (int a : act) leaves = leaves && h.halfspaces[a].plane.normal.dot(dir) <= 1e-9;
        if (!leaves) continue;
        bool blocked = false;
        for (int i = 0; i < m && !blocked; ++i) blocked = h.halfspaces[i].plane.normal.dot(dir) > 1e-9;
        if (blocked) continue;
        const bool dup = std::any_of(found.begin(), found.end(),
                                     [&](const Point& f) { return f.dot(dir) > 1.0 - 1e-12; });
        if (!dup) {
          found.push_back(dir);
          out.rays.push_back({static_cast<int>(vi), dir});
        }
      }
    });
  }
  out.bounded = out.rays.empty();
  return out;
}

int Facet3D::segment_count() const {
  const int nv = static_cast<int>(vertices.size());
  return bounded() ? nv : nv - 1;
}

const Facet3D* FaceLattice3D::find(const FacetLabel& label) const {
  for (const auto& f : facets) {
    if (f.label == label) return &f;
  }
  return nullptr;
}

std::optional<std::size_t> FaceLattice3D::index_of(const FacetLabel& label) const {
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (facets[i].label == label) return i;
  }
  return std::nullopt;
}

bool FaceLattice3D::adjacent(const FacetLabel& a, const FacetLabel& b) const {
  const auto ia = index_of(a), ib = index_of(b);
  if (!ia || !ib) return false;
  const auto& adj = adjacency[*ia];
  return std::find(adj.begin(), adj.end(), static_cast<int>(*ib)) != adj.end();
}

int FaceLattice3D::euler_characteristic(const VRep& v) const {
  return static_cast<int>(v.vertices.size()) - static_cast<int>(edges.size()) + static_cast<int>(facets.size());
}

FaceLattice3D face_lattice_3d(const HRep& h, const VRep& v, const TolerancePolicy& tol) {
  if (h.dimension != 3) fail(ErrorCode::DimensionMismatch, "face lattice is built in R^3 only");
  const double scale = h.scale();
  FaceLattice3D lat;
  std::set<std::vector<int>> seen_vertex_sets;
  for (int hs = 0; hs < static_cast<int>(h.halfspaces.size()); ++hs) {
    const auto sup = support_of(h, v, hs);
    if (support_rank(v, sup, scale) != 2) continue;
    if (sup.rays.empty() && !seen_vertex_sets.insert(sup.vertices).second) {
      fail(ErrorCode::DegenerateFacet, "two halfspaces support the same facet (" +
                                           h.halfspaces[hs].label.to_string() + ")");
    }
    const Eigen::Vector3d n = h.halfspaces[hs].plane.normal;
    Facet3D f;
    f.label = h.halfspaces[hs].label;
    f.halfspace = hs;
    std::vector<Point> pts;
    for (int i : sup.vertices) pts.push_back(v.vertices[i]);
    if (sup.rays.empty()) {
      for (int i : order_around(pts, n)) f.vertices.push_back(sup.vertices[i]);
      if (facet_area(f, v) <= tol.band(scale * scale)) {
        fail(ErrorCode::DegenerateFacet, "zero-area facet " + f.label.to_string());
      }
    } else {
      // Angular order around a point pushed deep into the facet along its
      // recession directions; the chain starts after the widest gap.
      Eigen::Vector3d centre = Eigen::Vector3d::Zero();
      for (const auto& p : pts) centre += p;
      centre /= static_cast<double>(pts.size());
      Eigen::Vector3d push = Eigen::Vector3d::Zero();
      for (int r : sup.rays) push += v.rays[r].direction;
      double spread = 1.0;
      for (const auto& p : pts) spread = std::max(spread, (p - Point(centre)).norm());
      const Eigen::Vector3d inner = centre + 10.0 * spread * push.normalized();
      const auto [e1, e2] = plane_basis(n);
      std::vector<std::pair<double, int>> ang;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const Eigen::Vector3d rel = Eigen::Vector3d(pts[i]) - inner;
        ang.emplace_back(std::atan2(rel.dot(e2), rel.dot(e1)), sup.vertices[i]);
      }
      std::sort(ang.begin(), ang.end());
      std::size_t start = 0;
      double widest = -1.0;
      for (std::size_t i = 0; i < ang.size(); ++i) {
        const double prev = i == 0 ? ang.back().first - 2.0 * M_PI : ang[i - 1].first;
        if (ang[i].first - prev > widest) {
          widest = ang[i].first - prev;
          start = i;
        }
      }
      for (std::size_t i = 0; i < ang.size(); ++i) f.vertices.push_back(ang[(start + i) % ang.size()].second);
      // rays[0] leaves the first vertex, rays[1] the last; at a lone apex
      // rays[1] is the one with the facet interior on its left.
      std::vector<int> rays = sup.rays;
      if (rays.size() == 2) {
        const auto& r0 = v.rays[rays[0]];
        const auto& r1 = v.rays[rays[1]];
        if (f.vertices.size() == 1) {
          const Eigen::Vector3d apex = v.vertices[r1.origin];
          const Eigen::Vector3d u1 = r1.direction;
          if (n.dot(u1.cross(inner - apex)) < 0) std::swap(rays[0], rays[1]);
        } else if (r0.origin != f.vertices.front() || r1.origin != f.vertices.back()) {
          std::swap(rays[0], rays[1]);
        }
      }
      f.rays = rays;
    }
    lat.facets.push_back(std::move(f));
  }
  std::sort(lat.facets.begin(), lat.facets.end(),
            [](const Facet3D& a, const Facet3D& b) { return a.label < b.label; });

  std::map<std::pair<int, int>, std::vector<int>> edge_owners;
  std::map<int, std::vector<int>> ray_owners;
  for (int fi = 0; fi < static_cast<int>(lat.facets.size()); ++fi) {
    const auto& f = lat.facets[fi];
    const int nv = static_cast<int>(f.vertices.size());
    for (int i = 0; i < f.segment_count(); ++i) {
      int a = f.vertices[i], b = f.vertices[(i + 1) % nv];
      if (a > b) std::swap(a, b);
      edge_owners[{a, b}].push_back(fi);
    }
    for (int r : f.rays) ray_owners[r].push_back(fi);
  }
  lat.adjacency.assign(lat.facets.size(), {});
  auto link = [&](const std::vector<int>& owners) {
    for (int a : owners) {
      for (int b : owners) {
        if (a != b) lat.adjacency[a].push_back(b);
      }
    }
  };
  for (const auto& [e, owners] : edge_owners) {
    lat.edges.push_back(e);
    link(owners);
  }
  for (const auto& [r, owners] : ray_owners) link(owners);
  for (auto& adj : lat.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return lat;
}

double facet_area(const Facet3D& f, const VRep& v) {
  if (!f.bounded()) return std::numeric_limits<double>::infinity();
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  const Eigen::Vector3d o = v.vertices[f.vertices[0]];
  for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i) {
    const Eigen::Vector3d a = Eigen::Vector3d(v.vertices[f.vertices[i]]) - o;
    const Eigen::Vector3d b = Eigen::Vector3d(v.vertices[f.vertices[i + 1]]) - o;
    acc += a.cross(b);
  }
  return 0.5 * acc.norm();
}

std::vector<FacetLabel> facet_labels(const HRep& h, const VRep& v, const TolerancePolicy&) {
  std::vector<FacetLabel> out;
  const double scale = h.scale();
  for (int hs = 0; hs < static_cast<int>(h.halfspaces.size()); ++hs) {
    if (support_rank(v, support_of(h, v, hs), scale) == h.dimension - 1) out.push_back(h.halfspaces[hs].label);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HRep prune_redundant(const HRep& h, const VRep& v, const TolerancePolicy& tol) {
  const auto keep = facet_labels(h, v, tol);
  HRep out{h.dimension, {}, h.interior_point};
  for (const auto& hs : h.halfspaces) {
    if (std::binary_search(keep.begin(), keep.end(), hs.label) && !out.find(hs.label)) out.halfspaces.push_back(hs);
  }
  return out;
}

std::vector<HullFacet> hull_facets_3d(std::span<const Point> pts, const TolerancePolicy& tol) {
  const int m = static_cast<int>(pts.size());
  double scale = 1.0;
  for (const auto& p : pts) {
    if (p.size() != 3) fail(ErrorCode::DimensionMismatch, "hull_facets_3d expects points in R^3");
    scale = std::max(scale, p.cwiseAbs().maxCoeff());
  }
  const double band = tol.band(scale);
  std::vector<HullFacet> out;
  std::set<std::vector<int>> seen;
  std::vector<double> dist(m);
  for_each_combination(m, 3, [&](const std::vector<int>& idx) {
    const Eigen::Vector3d a = pts[idx[0]], b = pts[idx[1]], c = pts[idx[2]];
    Eigen::Vector3d n = (b - a).cross(c - a);
    const double len = n.norm();
    if (len <= 1e-9 * scale * scale) return;
    n /= len;
    const double off = n.dot(a);
    bool above = false, below = false;
    for (int l = 0; l < m; ++l) {
      dist[l] = n.dot(Eigen::Vector3d(pts[l])) - off;
      above = above || dist[l] > band;
      below = below || dist[l] < -band;
      if (above && below) return;
    }
    if (above) {
      n = -n;
      for (auto& x : dist) x = -x;
    }
    std::vector<int> on;
    for (int l = 0; l < m; ++l) {
      if (std::abs(dist[l]) <= band) on.push_back(l);
    }
    if (!seen.insert(on).second) return;
    out.push_back({Hyperplane::from(Point(n), n.dot(a)), std::move(on)});
  });
  return out;
}

std::vector<int> order_around(std::span<const Point> pts, const Point& normal) {
  const Eigen::Vector3d n = Eigen::Vector3d(normal).normalized();
  Eigen::Vector3d centre = Eigen::Vector3d::Zero();
  for (const auto& p : pts) centre += Eigen::Vector3d(p);
  centre /= static_cast<double>(pts.size());
  const auto [e1, e2] = plane_basis(n);
  std::vector<std::pair<double, int>> ang;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Eigen::Vector3d rel = Eigen::Vector3d(pts[i]) - centre;
    ang.emplace_back(std::atan2(rel.dot(e2), rel.dot(e1)), static_cast<int>(i));
  }
  std::sort(ang.begin(), ang.end());
  std::vector<int> out;
  for (const auto& [a, i] : ang) out.push_back(i);
  return out;
}

double convex_polygon_area(std::span<const Point> pts) {
  if (pts.size() < 3) return 0.0;
  Eigen::Vector3d centre = Eigen::Vector3d::Zero();
  for (const auto& p : pts) centre += Eigen::Vector3d(p);
  centre /= static_cast<double>(pts.size());
  Eigen::MatrixXd m(pts.size(), 3);
  for (std::size_t i = 0; i < pts.size(); ++i) m.row(i) = (Eigen::Vector3d(pts[i]) - centre).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::Vector3d n = svd.matrixV().col(2);
  const auto order = order_around(pts, Point(n));
  double area = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Eigen::Vector3d a = Eigen::Vector3d(pts[order[i]]) - centre;
    const Eigen::Vector3d b = Eigen::Vector3d(pts[order[(i + 1) % order.size()]]) - centre;
    area += 0.5 * n.dot(a.cross(b));
  }
  return std::abs(area);
}

}  // namespace neighborly
