#include "neighborly/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace neighborly {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string subset_name(std::span<const int> s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// Calls visit(subset) for each r-subset of items, in lexicographic order.
template <class F>
void for_each_subset(const std::vector<int>& items, int r, F&& visit) {
  const int m = static_cast<int>(items.size());
  if (r > m || r < 0) return;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  std::vector<int> subset(r);
  while (true) {
    for (int i = 0; i < r; ++i) subset[i] = items[idx[i]];
    visit(subset);
    int i = r - 1;
    while (i >= 0 && idx[i] == m - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

// Orthonormal basis of the affine hull of pts (singular values above threshold).
Eigen::MatrixXd affine_basis(std::span<const Point> pts, const Point& origin, double threshold) {
  Eigen::MatrixXd diff(pts[0].size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) diff.col(i) = pts[i] - origin;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff, Eigen::ComputeThinU);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > threshold) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

double polygon_area_any_dim(std::span<const Point> pts, double threshold) {
  if (pts.size() < 3) return 0.0;
  Point c = Point::Zero(pts[0].size());
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  const Eigen::MatrixXd basis = affine_basis(pts, c, threshold);
  if (basis.cols() != 2) return 0.0;
  std::vector<std::pair<double, Eigen::Vector2d>> ring;
  for (const auto& p : pts) {
    const Eigen::Vector2d q = basis.transpose() * (p - c);
    ring.push_back({std::atan2(q.y(), q.x()), q});
  }
  std::sort(ring.begin(), ring.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& a = ring[i].second;
    const auto& b = ring[(i + 1) % ring.size()].second;
    twice += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * std::abs(twice);
}

bool plane_less(const Halfspace& a, const Halfspace& b) {
  for (int i = 0; i < a.plane.normal.size(); ++i) {
    if (a.plane.normal[i] != b.plane.normal[i]) return a.plane.normal[i] < b.plane.normal[i];
  }
  return a.plane.offset < b.plane.offset;
}

bool is_voronoi_family(const Polytope& p) {
  return p.provenance == Provenance::Clipped || p.provenance == Provenance::SymmetrizedUnion;
}

Check make(std::string name, std::string claim, bool pass, double value, double tolerance, std::string detail = {}) {
  return {std::move(name), std::move(claim), pass, value, tolerance, std::move(detail)};
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void VerificationReport::add(Check c) { checks.push_back(std::move(c)); }

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

FacetOverlap shared_facet(const Polytope& a, const Polytope& b, const TolerancePolicy& tol) {
  if (a.dimension() != b.dimension()) fail(ErrorCode::DimensionMismatch, "polytopes of different dimension");
  FacetOverlap out;
  out.site_a = a.site;
  out.site_b = b.site;
  const double scale = std::max(a.hrep.scale(), b.hrep.scale());
  const double band = tol.band(scale);

  HRep h{a.dimension(), {}, std::nullopt};
  auto take = [&](const Polytope& own, const Polytope& other) {
    for (const auto& hs : own.hrep.halfspaces) {
      const bool slack_everywhere = std::all_of(other.vrep.vertices.begin(), other.vrep.vertices.end(),
                                                [&](const Point& x) { return hs.plane.slack(x) > band; });
      if (!slack_everywhere) h.halfspaces.push_back(hs);
    }
  };
  take(a, b);
  take(b, a);
  std::sort(h.halfspaces.begin(), h.halfspaces.end(), plane_less);
  if (h.halfspaces.empty()) {
    // Each contains the other's vertices strictly: full-dimensional overlap.
    out.dimension = a.dimension();
    out.vertices = a.vrep.vertices;
    return out;
  }
  try {
    out.vertices = enumerate_vertices(h, tol).vertices;
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::EmptyRegion) throw;
    return out;
  }
  std::sort(out.vertices.begin(), out.vertices.end(), [](const Point& p, const Point& q) {
    return std::lexicographical_compare(p.data(), p.data() + p.size(), q.data(), q.data() + q.size());
  });
  const double threshold = 1e-7 * std::max(1.0, scale);
  out.dimension = affine_rank(out.vertices, threshold);
  if (out.dimension == 1) {
    for (const auto& p : out.vertices) {
      for (const auto& q : out.vertices) out.measure = std::max(out.measure, (p - q).norm());
    }
  } else if (out.dimension == 2) {
    out.measure = polygon_area_any_dim(out.vertices, threshold);
  }
  return out;
}

VerificationReport neighborly_check(std::span<const Polytope> members, const HelixFamilySpec* spec,
                                    const TolerancePolicy& tol) {
  VerificationReport rep;
  const int m = static_cast<int>(members.size());
  if (m < 2) fail(ErrorCode::InvalidArgument, "neighborly_check needs at least two polytopes");
  const int d = members[0].dimension();
  double min_measure = kInf;
  double worst_residual = 0.0;
  int bad_pairs = 0;
  std::ostringstream failures;
  double scale = 1.0;
  for (const auto& p : members) scale = std::max(scale, p.hrep.scale());
  const double area_floor = 1e-6 * scale * scale;
  const bool bisector_test = spec != nullptr && spec->k == 1 &&
                             std::all_of(members.begin(), members.end(), [](const Polytope& p) { return is_voronoi_family(p); });
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const FacetOverlap o = shared_facet(members[i], members[j], tol);
      const bool ok = o.dimension == d - 1 && o.measure > area_floor;
      if (o.dimension == d - 1) min_measure = std::min(min_measure, o.measure);
      else min_measure = std::min(min_measure, 0.0);
      if (!ok) {
        ++bad_pairs;
        failures << " (" << members[i].site << "," << members[j].site << ") dim " << o.dimension;
      }
      if (bisector_test && o.dimension >= 0) {
        const Hyperplane bis = Hyperplane::bisector(helix_point(*spec, members[i].site), helix_point(*spec, members[j].site));
        for (const auto& v : o.vertices) worst_residual = std::max(worst_residual, std::abs(bis.slack(v)));
      }
    }
  }
  const int pairs = m * (m - 1) / 2;
  rep.add(make("neighborly-pairs", "pairwise-facet-sharing", bad_pairs == 0, min_measure, area_floor,
               std::to_string(pairs - bad_pairs) + "/" + std::to_string(pairs) + " pairs share a facet" +
                   (bad_pairs ? ";" + failures.str() : std::string())));
  if (bisector_test) {
    rep.add(make("overlap-in-bisector", "shared-facet-on-bisector", worst_residual < 1e-9, worst_residual, 1e-9));
  }
  return rep;
}

VerificationReport neighborly_check(const Family& fam, const TolerancePolicy& tol) {
  return neighborly_check(fam.members, &fam.spec, tol);
}

SubsetStatus subset_status(const DelaunayComplex& complex, std::span<const int> subset) {
  std::vector<int> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  if (s.empty()) return SubsetStatus::Covered;
  if (s.back() - s.front() > complex.spec.n) return SubsetStatus::NotApplicable;
  for (const auto& key : complex.simplices) {
    if (key.contains_all(s)) return SubsetStatus::Covered;
  }
  return SubsetStatus::Missing;
}

ClearanceResult subset_clearance(const HelixFamilySpec& spec, Window window, std::span<const int> subset,
                                 const DelaunayComplex& complex, const TolerancePolicy& tol, Precision precision) {
  const int d = spec.dimension();
  const int s = static_cast<int>(subset.size());
  if (s < 2 || s > d) fail(ErrorCode::InvalidArgument, "subset size must lie in [2, d]");
  std::vector<Point> own;
  for (int t : subset) {
    if (!window.contains(t)) fail(ErrorCode::InvalidArgument, "subset index outside the window");
    own.push_back(helix_point(spec, t));
  }
  std::vector<Point> others;
  for (int t = window.lo; t <= window.hi; ++t) {
    if (std::find(subset.begin(), subset.end(), t) == subset.end()) others.push_back(helix_point(spec, t));
  }

  // Equidistant points: 2 (p_i - p_0) . x = |p_i|^2 - |p_0|^2.
  Eigen::MatrixXd a(s - 1, d);
  Eigen::VectorXd rhs(s - 1);
  for (int i = 1; i < s; ++i) {
    a.row(i - 1) = 2.0 * (own[i] - own[0]).transpose();
    rhs[i - 1] = own[i].squaredNorm() - own[0].squaredNorm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd null = svd.matrixV().rightCols(d - (s - 1));
  const Point particular = svd.solve(rhs);

  Point start = Point::Zero(d);
  int used = 0;
  for (const auto& key : complex.simplices) {
    if (!key.contains_all(subset)) continue;
    std::vector<Point> pts;
    for (int v : key.vertices()) pts.push_back(helix_point(spec, v));
    start += circumcenter(pts, tol, precision).center;
    ++used;
  }
  if (used > 0) start /= used;
  else {
    for (const auto& p : own) start += p;
    start /= s;
  }
  Eigen::VectorXd coords = null.transpose() * (start - particular);

  auto clearance = [&](const Eigen::VectorXd& c) {
    const Point x = particular + null * c;
    const double r = (x - own[0]).norm();
    double worst = kInf;
    for (const auto& q : others) worst = std::min(worst, ((x - q).norm() - r) / r);
    return worst;
  };
  double best = clearance(coords);
  for (double step = 1.0; step > 1e-6; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int j = 0; j < coords.size(); ++j) {
        for (double sign : {1.0, -1.0}) {
          Eigen::VectorXd trial = coords;
          trial[j] += sign * step;
          const double c = clearance(trial);
          if (c > best) {
            best = c;
            coords = trial;
            improved = true;
          }
        }
      }
    }
  }
  return {particular + null * coords, best};
}

VerificationReport k_neighborly_check(const HelixFamilySpec& spec, Window window, int spot_checks,
                                      const TolerancePolicy& tol, Precision precision) {
  VerificationReport rep;
  const DelaunayComplex complex = local_simplices(spec, window);
  const Window middle = middle_sites(spec);
  if (!window.contains(middle.lo) || !window.contains(middle.hi)) {
    fail(ErrorCode::WindowTooSmall, "window does not contain the middle sites");
  }
  std::vector<std::vector<int>> subsets;
  for_each_subset(range(middle.lo, middle.hi), spec.k + 1, [&](const std::vector<int>& s) { subsets.push_back(s); });
  int covered = 0, not_applicable = 0;
  std::string missing;
  for (const auto& s : subsets) {
    switch (subset_status(complex, s)) {
      case SubsetStatus::Covered: ++covered; break;
      case SubsetStatus::NotApplicable: ++not_applicable; break;
      case SubsetStatus::Missing: missing += " " + subset_name(s); break;
    }
  }
  const int total = static_cast<int>(subsets.size());
  rep.add(make("subset-coverage", "k-plus-one-neighborly-combinatorial", missing.empty(), covered, 0.0,
               std::to_string(covered) + "/" + std::to_string(total) + " subsets in a local simplex" +
                   (not_applicable ? ", " + std::to_string(not_applicable) + " not applicable" : std::string()) +
                   (missing.empty() ? std::string() : "; missing" + missing)));

  const int picks = std::min(spot_checks, total);
  double worst = kInf;
  std::string negatives;
  for (int i = 0; i < picks; ++i) {
    const auto& s = subsets[static_cast<std::size_t>(i) * total / picks];
    const double c = subset_clearance(spec, window, s, complex, tol, precision).clearance;
    worst = std::min(worst, c);
    if (!(c > 0.0)) negatives += " " + subset_name(s);
  }
  if (picks > 0) {
    rep.add(make("subset-clearance", "k-plus-one-neighborly-geometric", negatives.empty(), worst, 0.0,
                 std::to_string(picks) + " subsets spot-checked" + (negatives.empty() ? "" : "; no clearance for" + negatives)));
  }
  return rep;
}

std::set<std::vector<int>> gale_evenness(int m, int dim) {
  if (!(m > dim && dim >= 2)) fail(ErrorCode::InvalidArgument, "gale_evenness needs m > dim >= 2");
  std::set<std::vector<int>> out;
  for_each_subset(range(0, m - 1), dim, [&](const std::vector<int>& s) {
    std::vector<bool> in(m, false);
    for (int v : s) in[v] = true;
    for (int i = 0; i < m; ++i) {
      if (in[i]) continue;
      for (int j = i + 1; j < m; ++j) {
        if (in[j]) continue;
        int between = 0;
        for (int l = i + 1; l < j; ++l) between += in[l];
        if (between % 2 != 0) return;
      }
    }
    out.insert(s);
  });
  return out;
}

std::set<std::vector<int>> hull_facets_bruteforce(std::span<const Point> pts, const TolerancePolicy& tol,
                                                  Precision precision) {
  const int m = static_cast<int>(pts.size());
  if (m == 0) return {};
  const int dim = static_cast<int>(pts[0].size());
  if (m > kMaxHullPoints) fail(ErrorCode::TooManyPoints, std::to_string(m) + " points exceeds " + std::to_string(kMaxHullPoints));
  if (dim > kMaxHullDimension || dim < 2) fail(ErrorCode::InvalidArgument, "hull dimension must lie in [2, 6]");
  if (m <= dim) fail(ErrorCode::InvalidArgument, "need more points than the dimension");
  std::set<std::vector<int>> out;
  for_each_subset(range(0, m - 1), dim, [&](const std::vector<int>& s) {
    std::vector<Point> simplex;
    for (int v : s) simplex.push_back(pts[v]);
    simplex.push_back(Point());
    int side = 0;
    for (int q = 0; q < m; ++q) {
      if (std::binary_search(s.begin(), s.end(), q)) continue;
      simplex.back() = pts[q];
      const int o = orientation(simplex, tol, precision);
      if (o == 0) fail(ErrorCode::DegeneracyDetected, "point " + std::to_string(q) + " on hyperplane " + subset_name(s));
      if (side == 0) side = o;
      else if (o != side) return;
    }
    out.insert(s);
  });
  return out;
}

std::vector<Point> cyclic_sample(const MixedMomentSpec& spec, int m) {
  spec.validate();
  std::vector<Point> out;
  for (int i = 0; i < m; ++i) out.push_back(mixed_moment_point(spec, 2.0 * std::numbers::pi * (i + 1) / (m + 1)));
  return out;
}

VerificationReport cyclic_check(const MixedMomentSpec& spec, int m, const TolerancePolicy& tol, Precision precision) {
  VerificationReport rep;
  const int dim = spec.dimension();
  const auto pts = cyclic_sample(spec, m);
  const auto hull = hull_facets_bruteforce(pts, tol, precision);
  const auto predicted = gale_evenness(m, dim);
  std::string diff;
  for (const auto& f : hull) {
    if (!predicted.count(f)) diff += " extra" + subset_name(f);
  }
  for (const auto& f : predicted) {
    if (!hull.count(f)) diff += " missing" + subset_name(f);
  }
  rep.add(make("cyclic-facets", "mixed-moment-curve-cyclic", diff.empty(), static_cast<double>(hull.size()), 0.0,
               std::to_string(hull.size()) + " hull facets, " + std::to_string(predicted.size()) + " predicted" + diff));
  if (dim % 2 == 0) {
    // Facet count of an even-dimensional cyclic polytope with m vertices.
    const int half = dim / 2;
    auto binom = [](int a, int b) {
      double r = 1.0;
      for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
      return static_cast<int>(std::lround(r));
    };
    const int expected = m * binom(m - half - 1, half - 1) / half;
    rep.add(make("cyclic-facet-count", "cyclic-upper-bound-count", static_cast<int>(hull.size()) == expected,
                 static_cast<double>(hull.size()), 0.0, "expected " + std::to_string(expected)));
  }
  return rep;
}

Isometry reflection_isometry(const Flat& flat) {
  return [flat](const Point& p) { return reflect(p, flat); };
}

SymmetryResult symmetry_check(const Polytope& p, const Isometry& iso, double tolerance) {
  std::vector<Point> image;
  for (const auto& v : p.vrep.vertices) image.push_back(iso(v));
  const auto worst = match_point_sets(image, p.vrep.vertices, tolerance);
  if (!worst) return {false, kInf};
  return {true, *worst};
}

VerificationReport congruence_check(const Family& fam, double tolerance) {
  VerificationReport rep;
  if (fam.members.size() < 2) fail(ErrorCode::InvalidArgument, "congruence_check needs at least two members");
  double worst = 0.0;
  std::string bad;
  for (std::size_t i = 0; i + 1 < fam.members.size(); ++i) {
    const auto& a = fam.members[i];
    const auto& b = fam.members[i + 1];
    std::vector<Point> image;
    for (const auto& v : a.vrep.vertices) image.push_back(fam.transform.apply(v, b.site - a.site));
    const auto m = match_point_sets(image, b.vrep.vertices, tolerance);
    if (!m) {
      worst = kInf;
      bad += " (" + std::to_string(a.site) + "," + std::to_string(b.site) + ")";
    } else {
      worst = std::max(worst, *m);
    }
  }
  rep.add(make("congruence", "screw-congruent-members", bad.empty(), worst, tolerance,
               bad.empty() ? std::to_string(fam.members.size() - 1) + " consecutive pairs matched" : "unmatched pairs" + bad));
  return rep;
}

namespace {

void tolerance_sanity(const VerifyOptions& o, VerificationReport& rep) {
  const double u = unit_roundoff(o.precision);
  const bool ok = o.tol.eps_rel >= u;
  rep.add(make("tolerance-sanity", "plumbing", ok, o.tol.eps_rel, u,
               ok ? "" : "eps_rel below the unit roundoff of the active precision tier"));
  if (!ok) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", o.tol.eps_rel);
    rep.warnings.push_back(std::string("eps_rel ") + buf +
                           " is below the unit roundoff; near-degenerate predicate signs are decided by rounding noise");
  }
}

void verify_3d(const HelixFamilySpec& spec, const VerifyOptions& o, VerificationReport& rep) {
  const int n = spec.n;
  const Window window = o.window.value_or(default_window(spec));
  const Window middle = middle_sites(spec);
  const TolerancePolicy& tol = o.tol;

  // Delaunay characterization against the brute-force oracle.
  if (window.size() <= kMaxBruteforcePoints) {
    const int margin = (n + 1) / 2;
    const Window safe{window.lo + margin, window.hi - margin};
    try {
      const auto sites = sample_window(spec, window);
      const DelaunayComplex oracle{spec, window, delaunay_bruteforce(sites, 3, tol, o.precision)};
      const auto combinatorial = local_tetrahedra(spec, window).restricted_to(safe);
      const auto brute = oracle.restricted_to(safe);
      int diff = 0;
      for (const auto& k : combinatorial) diff += !brute.count(k);
      for (const auto& k : brute) diff += !combinatorial.count(k);
      rep.add(make("delaunay-oracle", "local-tetrahedra-delaunay", diff == 0, diff, 0.0,
                   std::to_string(combinatorial.size()) + " local tetrahedra in the safe middle"));
    } catch (const GeometryError& e) {
      rep.add(make("delaunay-oracle", "local-tetrahedra-delaunay", false, kInf, 0.0, e.what()));
      rep.warnings.push_back(std::string("degeneracy: ") + e.what());
    }
  }

  const DelaunayComplex local = local_tetrahedra(spec, window);
  double radius_err = 0.0, cylinder_excess = -kInf, duality_err = 0.0, redundancy_slack = kInf, clip_slack = kInf;
  int census_failures = 0, duality_failures = 0, big_gon_sides = 0;
  std::string census_detail;
  const double radius = outer_radius(n);
  for (int t = middle.lo; t <= middle.hi; ++t) {
    const VoronoiRegion region = build_region(spec, t, window, tol);
    if (n >= 4) {
      try {
        big_gon_sides = facet_census(*region.lattice, region.vrep, t, n).big_gon_sides;
        if (big_gon_sides != 2 * n - 1) {
          ++census_failures;
          census_detail += " site " + std::to_string(t) + ": big gon has " + std::to_string(big_gon_sides) + " sides;";
        }
      } catch (const GeometryError& e) {
        ++census_failures;
        census_detail += std::string(" ") + e.what();
      }
    }
    double far = 0.0;
    for (const auto& v : region.vrep.vertices) far = std::max(far, axis_distance(v));
    radius_err = std::max(radius_err, std::abs(far - radius) / radius);
    cylinder_excess = std::max(cylinder_excess, far - radius);

    const Hyperplane clip = clip_halfspace(spec, t);
    for (const auto& v : region.vrep.vertices) clip_slack = std::min(clip_slack, clip.slack(v));

    std::vector<Point> centers;
    for (const auto& key : local.simplices) {
      if (!key.contains(t)) continue;
      std::vector<Point> pts;
      for (int v : key.vertices()) pts.push_back(helix_point(spec, v));
      centers.push_back(circumcenter(pts, tol, o.precision).center);
    }
    const auto match = match_point_sets(region.vrep.vertices, centers, 1e-9);
    if (match) duality_err = std::max(duality_err, *match);
    else ++duality_failures;

    for (const auto& hs : region.hrep.halfspaces) {
      if (std::abs(hs.label.value - t) <= n) continue;
      for (const auto& v : region.vrep.vertices) redundancy_slack = std::min(redundancy_slack, hs.plane.slack(v));
    }
  }
  if (n >= 4) {
    rep.add(make("facet-census", "voronoi-facet-census", census_failures == 0, big_gon_sides, 0.0,
                 census_failures ? census_detail : "2n facets in the five classes; big gons have 2n-1 sides"));
  }
  rep.add(make("outer-radius", "farthest-vertex-radius", radius_err <= 1e-9, radius_err, 1e-9,
               "closed form " + std::to_string(radius)));
  rep.add(make("cylinder-bound", "vertices-in-cylinder", cylinder_excess <= 1e-9, cylinder_excess, 1e-9));
  if (n >= 6) {
    rep.add(make("radius-near-n-minus-1", "radius-approx-n-minus-1", std::abs(radius - (n - 1)) <= 0.5,
                 radius - (n - 1), 0.5));
  }
  rep.add(make("clip-strict", "clip-contains-all-vertices", clip_slack > 0.0, clip_slack, 0.0));
  rep.add(make("voronoi-delaunay-duality", "vertices-are-circumcenters", duality_failures == 0,
               duality_failures ? kInf : duality_err, 1e-9));
  if (redundancy_slack < kInf) {
    rep.add(make("far-bisectors-redundant", "only-near-neighbours-are-facets", redundancy_slack > 0.0,
                 redundancy_slack, 0.0));
  }

  double bitangent = kInf;
  for (int j = 1; 2 * j < n; ++j) bitangent = std::min(bitangent, bitangent_clearance(spec.theta() * j));
  if (bitangent < kInf) {
    rep.add(make("bitangent-sphere", "bitangent-sphere-meets-helix-twice", bitangent > 0.0, bitangent, 0.0,
                 "sampled over [-3pi, 3pi] away from the tangency points"));
  }

  const Family fam = build_family(spec, o.mode, tol);
  rep.merge(neighborly_check(fam, tol));
  rep.merge(congruence_check(fam));

  double worst_line = 0.0, worst_plane = 0.0, worst_point = 0.0;
  bool line_ok = true, plane_ok = true, point_ok = true;
  for (const auto& p : fam.members) {
    const SymmetryFrame frame = symmetry_frame(spec, p.site);
    const auto line = symmetry_check(p, reflection_isometry(frame.axis));
    line_ok &= line.pass;
    worst_line = std::max(worst_line, line.max_displacement);
    if (o.mode == FamilyMode::SymmetrizedUnion) {
      const auto plane = symmetry_check(p, reflection_isometry(frame.plane));
      const auto point = symmetry_check(p, reflection_isometry(frame.center));
      plane_ok &= plane.pass;
      point_ok &= point.pass;
      worst_plane = std::max(worst_plane, plane.max_displacement);
      worst_point = std::max(worst_point, point.max_displacement);
    }
  }
  if (o.mode != FamilyMode::Zaks) {
    rep.add(make("line-symmetry", "half-turn-symmetry", line_ok, worst_line, 1e-9));
  }
  if (o.mode == FamilyMode::SymmetrizedUnion) {
    rep.add(make("plane-symmetry", "bilateral-symmetry", plane_ok, worst_plane, 1e-9));
    rep.add(make("point-symmetry", "central-symmetry", point_ok, worst_point, 1e-9));
  }
}

void verify_higher(const HelixFamilySpec& spec, const VerifyOptions& o, VerificationReport& rep) {
  const Window window = o.window.value_or(default_window(spec));
  const Window middle = middle_sites(spec);
  const TolerancePolicy& tol = o.tol;
  const auto sites = sample_window(spec, window);
  const DelaunayComplex local = local_simplices(spec, window);

  double margin = kInf;
  int failures = 0, degenerate = 0;
  for (const auto& key : local.simplices) {
    const auto r = empty_sphere_check(key, sites, tol, o.precision);
    margin = std::min(margin, r.margin);
    failures += !r.pass;
    degenerate += r.degenerate;
  }
  if (degenerate > 0) rep.warnings.push_back(std::to_string(degenerate) + " in-sphere signs fell in the tolerance band");
  rep.add(make("local-simplices-empty", "local-simplices-delaunay", failures == 0 && margin > 1e-9, margin, 1e-9,
               std::to_string(local.simplices.size()) + " local simplices"));

  rep.merge(k_neighborly_check(spec, window, o.spot_checks, tol, o.precision));

  // Facets of a middle region against the Delaunay edges at its site.
  const int t = middle.lo;
  const VoronoiRegion region = build_region(spec, t, window, tol);
  std::set<int> dual;
  for (const auto& key : local.simplices) {
    if (!key.contains(t)) continue;
    for (int v : key.vertices()) {
      if (v != t) dual.insert(v);
    }
  }
  std::set<int> facet_sites;
  for (const auto& l : region.facet_labels()) facet_sites.insert(l.value);
  rep.add(make("region-facets-dual", "facets-are-delaunay-edges", dual == facet_sites,
               static_cast<double>(facet_sites.size()), 0.0,
               std::to_string(dual.size()) + " Delaunay neighbours"));

  std::vector<int> dims;
  if (o.flat_dimension) dims.push_back(*o.flat_dimension);
  else for (int r = 0; r <= 2 * spec.k; ++r) dims.push_back(r);
  for (int r : dims) {
    Family fam{spec, FamilyMode::Clipped, ScrewMotion{spec}, {}};
    double worst = 0.0;
    bool ok = true;
    for (int s = middle.lo; s <= middle.hi; ++s) {
      const VoronoiRegion reg = build_region(spec, s, window, tol);
      const double headroom = symmetrize_flat_headroom(reg, r, tol);
      Polytope p = symmetrize_flat(reg, r, tol);
      const auto sym = symmetry_check(p, reflection_isometry(symmetry_flat(reg, r, headroom)));
      ok &= sym.pass;
      worst = std::max(worst, sym.max_displacement);
      fam.members.push_back(std::move(p));
    }
    const std::string suffix = "-r" + std::to_string(r);
    rep.add(make("flat-symmetry" + suffix, "r-flat-symmetry", ok, worst, 1e-9));
    auto cong = congruence_check(fam);
    cong.checks[0].name += suffix;
    rep.merge(cong);
  }
}

}  // namespace

VerificationReport run_verification(const HelixFamilySpec& spec, const VerifyOptions& options) {
  spec.validate();
  VerificationReport rep;
  tolerance_sanity(options, rep);
  if (spec.k == 1) verify_3d(spec, options, rep);
  else verify_higher(spec, options, rep);
  return rep;
}

}  // namespace neighborly
