// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and time budgets are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "neighborly/io.hpp"
#include "neighborly/verify.hpp"

using namespace neighborly;

namespace {

constexpr double kRadiusRelTol = 1e-9;
constexpr double kRadiusApproxTol = 0.5;
constexpr double kCongruenceTol = 1e-9;
constexpr double kSymmetryTol = 1e-9;
constexpr double kAreaFloor = 1e-6;
constexpr double kEmptyMargin = 1e-9;
constexpr double kOracleBudget = 60.0;
constexpr double kNeighborlyBudget = 120.0;
constexpr double kHigherDimBudget = 600.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  int keys = 0;
  for (int n = 4; n <= 10; ++n) {
    const HelixFamilySpec spec{n, 1};
    const Window w = default_window(spec);
    const int margin = (n + 1) / 2;
    const Window safe{w.lo + margin, w.hi - margin};
    try {
      const DelaunayComplex brute{spec, w, delaunay_bruteforce(sample_window(spec, w), 3)};
      const auto local = local_tetrahedra(spec, w).restricted_to(safe);
      o.require(local == brute.restricted_to(safe), "n=" + std::to_string(n) + " sets differ");
      keys += static_cast<int>(local.size());
    } catch (const GeometryError& e) {
      o.require(false, "n=" + std::to_string(n) + ": " + e.what());
    }
  }
  const double t = seconds_since(start);
  o.require(t < kOracleBudget, "took " + fmt("%.1f", t) + " s");
  o.detail = std::to_string(keys) + " tetrahedra matched in " + fmt("%.1f", t) + " s" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome facet_census_all() {
  Outcome o;
  int regions = 0;
  for (int n = 5; n <= 16; ++n) {
    const HelixFamilySpec spec{n, 1};
    const Window middle = middle_sites(spec);
    for (int t = middle.lo; t <= middle.hi; ++t) {
      const VoronoiRegion r = build_region(spec, t, default_window(spec));
      try {
        const CensusRecord c = facet_census(*r.lattice, r.vrep, t, n);
        const bool ok = c.big_gons == 2 && c.triangles == 2 && c.quads == 2 * n - 8 && c.unbounded_quads == 2 &&
                        c.wedges == 2 && c.total() == 2 * n && c.big_gon_sides == 2 * n - 1;
        o.require(ok, "n=" + std::to_string(n) + " site " + std::to_string(t) + " counts");
        if (n == 16 && t == middle.lo) o.require(c.big_gon_sides == 31, "n=16 big facets are not 31-gons");
      } catch (const GeometryError& e) {
        o.require(false, e.what());
      }
      ++regions;
    }
  }
  o.detail = std::to_string(regions) + " regions, n=5..16" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome neighborly_at_scale() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::string summary;
  for (int count : {16, 17}) {
    const HelixFamilySpec spec{count - 1, 1};
    const Family fam = build_family(spec, FamilyMode::Clipped);
    o.require(static_cast<int>(fam.members.size()) == count, "member count");
    int good = 0, pairs = 0;
    double smallest = INFINITY;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      for (std::size_t j = i + 1; j < fam.members.size(); ++j) {
        const auto ov = shared_facet(fam.members[i], fam.members[j]);
        ++pairs;
        smallest = std::min(smallest, ov.measure);
        good += ov.dimension == 2 && ov.measure > kAreaFloor;
      }
    }
    o.require(pairs == count * (count - 1) / 2 && good == pairs,
              "count " + std::to_string(count) + ": " + std::to_string(good) + "/" + std::to_string(pairs));
    summary += "count " + std::to_string(count) + ": " + std::to_string(good) + "/" + std::to_string(pairs) +
               " pairs, min area " + fmt("%.3g", smallest) + "; ";
  }
  const double t = seconds_since(start);
  o.require(t < kNeighborlyBudget, "took " + fmt("%.1f", t) + " s");
  o.detail = summary + fmt("%.1f", t) + " s" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome radius_formula() {
  Outcome o;
  double worst_rel = 0, worst_approx = 0;
  for (int n = 4; n <= 32; ++n) {
    const VoronoiRegion r = build_region(HelixFamilySpec{n, 1}, 0);
    double far = 0;
    for (const auto& v : r.vrep.vertices) far = std::max(far, axis_distance(v));
    const double rel = std::abs(far - outer_radius(n)) / outer_radius(n);
    worst_rel = std::max(worst_rel, rel);
    o.require(rel <= kRadiusRelTol, "n=" + std::to_string(n) + " relative error " + fmt("%.3g", rel));
    if (n >= 6) {
      worst_approx = std::max(worst_approx, std::abs(far - (n - 1)));
      o.require(std::abs(far - (n - 1)) <= kRadiusApproxTol, "n=" + std::to_string(n) + " far from n-1");
    }
  }
  o.detail = "max relative error " + fmt("%.3g", worst_rel) + ", max |R-(n-1)| " + fmt("%.4f", worst_approx) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome congruence_and_symmetry() {
  Outcome o;
  for (int n : {4, 8, 12}) {
    const HelixFamilySpec spec{n, 1};
    for (FamilyMode mode : {FamilyMode::Clipped, FamilyMode::SymmetrizedUnion, FamilyMode::Zaks}) {
      const Family fam = build_family(spec, mode);
      o.require(congruence_check(fam, kCongruenceTol).passed(), "n=" + std::to_string(n) + " " + to_string(mode) + " congruence");
      if (mode != FamilyMode::SymmetrizedUnion) continue;
      for (const auto& m : fam.members) {
        const SymmetryFrame f = symmetry_frame(spec, m.site);
        o.require(symmetry_check(m, reflection_isometry(f.plane), kSymmetryTol).pass, "plane symmetry");
        o.require(symmetry_check(m, reflection_isometry(f.axis), kSymmetryTol).pass, "line symmetry");
        o.require(symmetry_check(m, reflection_isometry(f.center), kSymmetryTol).pass, "point symmetry");
      }
    }
  }
  o.detail = "n in {4,8,12}, three modes" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome higher_dimensions() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::string summary;
  for (int n : {5, 6}) {
    const HelixFamilySpec spec{n, 2};
    const Window w = default_window(spec);
    const auto sites = sample_window(spec, w);
    double worst = INFINITY;
    int count = 0;
    for (const auto& key : local_simplices(spec, w).simplices) {
      const auto r = empty_sphere_check(key, sites, {}, Precision::Extended);
      worst = std::min(worst, r.margin);
      o.require(r.pass && r.margin > kEmptyMargin, "n=" + std::to_string(n) + " " + key.to_string());
      ++count;
    }
    const auto rep = k_neighborly_check(spec, w, 10, {}, Precision::Extended);
    const Check* cov = rep.find("subset-coverage");
    const Check* clr = rep.find("subset-clearance");
    o.require(cov && cov->pass, "n=" + std::to_string(n) + " coverage" + (cov ? ": " + cov->detail : ""));
    o.require(clr && clr->pass, "n=" + std::to_string(n) + " clearance" + (clr ? ": " + clr->detail : ""));
    summary += "n=" + std::to_string(n) + ": " + std::to_string(count) + " simplices, min margin " +
               fmt("%.3g", worst) + ", min clearance " + fmt("%.3g", clr ? clr->value : NAN) + "; ";
  }
  const double t = seconds_since(start);
  o.require(t < kHigherDimBudget, "took " + fmt("%.1f", t) + " s");
  o.detail = summary + fmt("%.1f", t) + " s extended" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome cyclic_polytopes() {
  Outcome o;
  const struct {
    int d, k, m;
  } cases[] = {{1, 1, 7}, {2, 1, 8}, {0, 2, 8}};
  std::string summary;
  for (const auto& c : cases) {
    const auto rep = cyclic_check(MixedMomentSpec{c.d, c.k}, c.m);
    const Check* f = rep.find("cyclic-facets");
    const std::string tag = "(" + std::to_string(c.d) + "," + std::to_string(c.k) + "," + std::to_string(c.m) + ")";
    o.require(rep.passed(), tag + (f ? ": " + f->detail : ""));
    if (c.m == 8) o.require(f && f->value == 20 && gale_evenness(8, 4).size() == 20, tag + " is not 20 facets");
    summary += tag + " " + std::to_string(f ? static_cast<int>(f->value) : -1) + " facets; ";
  }
  summary.resize(summary.size() - 2);
  o.detail = summary + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome determinism_and_controls() {
  Outcome o;
  RunConfig cfg;
  cfg.command = "verify";
  cfg.n = 6;
  const std::string a = report_json(cfg, run_verification(cfg.spec())).dump(2);
  const std::string b = report_json(cfg, run_verification(cfg.spec())).dump(2);
  o.require(a == b, "report.json differs between runs");
  const Family f1 = build_family(HelixFamilySpec{7, 1}, FamilyMode::Zaks);
  const Family f2 = build_family(HelixFamilySpec{7, 1}, FamilyMode::Zaks);
  for (std::size_t i = 0; i < f1.members.size(); ++i) {
    o.require(off_string(f1.members[i]) == off_string(f2.members[i]), "OFF output differs between runs");
  }

  int controls = 0;
  auto control = [&](const std::string& name, bool failed) {
    ++controls;
    o.require(failed, "negative control passed: " + name);
  };

  // neighborliness: two members pushed apart along the axis
  Family apart = build_family(HelixFamilySpec{5, 1}, FamilyMode::Clipped);
  for (auto& v : apart.members.back().vrep.vertices) v[0] += 100.0;
  for (auto& h : apart.members.back().hrep.halfspaces) h.plane.offset += 100.0 * h.plane.normal[0];
  if (auto& ip = apart.members.back().hrep.interior_point) (*ip)[0] += 100.0;
  control("neighborly", !neighborly_check(apart.members, nullptr).passed());

  // congruence: one perturbed vertex
  Family bent = build_family(HelixFamilySpec{5, 1}, FamilyMode::Clipped);
  bent.members[2].vrep.vertices[0][2] += 1e-6;
  control("congruence", !congruence_check(bent, kCongruenceTol).passed());

  // symmetry: a clipped member has no centre of symmetry
  const Family plain = build_family(HelixFamilySpec{8, 1}, FamilyMode::Clipped);
  const Polytope& clipped = plain.members[0];
  control("point symmetry",
          !symmetry_check(clipped, reflection_isometry(symmetry_frame(HelixFamilySpec{8, 1}, clipped.site).center),
                          kSymmetryTol)
               .pass);

  // empty sphere: a key that is not local
  const HelixFamilySpec eight{8, 1};
  control("empty sphere", !empty_sphere_check(SimplexKey({0, 1, 4, 6}), sample_window(eight, 0, 24)).pass);

  // coverage: a complex with the simplices through one site removed
  DelaunayComplex thin = local_simplices(HelixFamilySpec{6, 2}, {0, 30});
  std::erase_if(thin.simplices, [](const SimplexKey& k) { return k.contains(14); });
  const std::vector<int> subset{12, 14, 16};
  control("subset coverage", subset_status(thin, subset) == SubsetStatus::Missing);

  // cyclic: a point pulled into the interior
  auto pts = cyclic_sample(MixedMomentSpec{2, 1}, 8);
  Point c = Point::Zero(4);
  for (const auto& p : pts) c += p;
  pts[3] = c / 8.0;
  control("cyclic facets", hull_facets_bruteforce(pts) != gale_evenness(8, 4));

  // census: a region missing its facet list
  bool threw = false;
  try {
    const VoronoiRegion r = build_region(HelixFamilySpec{6, 1}, 0);
    FaceLattice3D lat = *r.lattice;
    lat.facets.pop_back();
    facet_census(lat, r.vrep, 0, 6);
  } catch (const GeometryError& e) {
    threw = e.code() == ErrorCode::CensusMismatch;
  }
  control("facet census", threw);

  // oracle equivalence: a complex with one key dropped
  const HelixFamilySpec five{5, 1};
  auto dropped = local_tetrahedra(five, default_window(five)).restricted_to({3, 12});
  dropped.erase(dropped.begin());
  const DelaunayComplex brute{five, default_window(five), delaunay_bruteforce(sample_window(five, default_window(five)), 3)};
  control("oracle equivalence", dropped != brute.restricted_to({3, 12}));

  // tolerance: below the unit roundoff
  VerifyOptions tiny;
  tiny.tol.eps_rel = 1e-30;
  control("tolerance sanity", !run_verification(HelixFamilySpec{4, 1}, tiny).passed());

  o.detail = "byte-identical reports and OFF, " + std::to_string(controls) + " negative controls" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 local tetrahedra equal the brute-force Delaunay set (n=4..10)", oracle_equivalence},
      {"2 facet census (n=5..16)", facet_census_all},
      {"3 neighborly clipped families (count 16, 17)", neighborly_at_scale},
      {"4 outer radius formula (n=4..32)", radius_formula},
      {"5 congruence and symmetry (n=4,8,12)", congruence_and_symmetry},
      {"6 five-dimensional helix (n=5,6, extended)", higher_dimensions},
      {"7 cyclic polytope facets", cyclic_polytopes},
      {"8 determinism and negative controls", determinism_and_controls},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::printf("%s criterion %s: %s\n", out.pass ? "PASS" : "FAIL", name, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
