#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "neighborly/construct.hpp"
#include "neighborly/delaunay.hpp"

namespace neighborly {

struct Check {
  std::string name;
  std::string claim;  // short tag of the property being checked
  bool pass = false;
  double value = 0.0;  // margin or measured quantity
  double tolerance = 0.0;
  std::string detail;  // why it failed, or a note
};

struct VerificationReport {
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  bool passed() const;
  void add(Check c);
  void merge(const VerificationReport& other);
  const Check* find(const std::string& name) const;
};

/// Intersection of two polytopes of the same dimension.
struct FacetOverlap {
  int site_a = 0;
  int site_b = 0;
  int dimension = -1;  // -1 when empty
  /// Length for dimension 1, area for dimension 2, 0 otherwise.
  double measure = 0.0;
  std::vector<Point> vertices;
};

/// A ∩ B by vertex enumeration of the combined halfspaces. Halfspaces of one
/// polytope that hold strictly on all of the other are dropped first, and the
/// rest are put in a canonical order, so the result is symmetric in A and B.
FacetOverlap shared_facet(const Polytope& a, const Polytope& b, const TolerancePolicy& tol = {});

/// Every pair shares a (d-1)-dimensional face with measure above
/// 1e-6 * scale^2. For Voronoi-derived families the shared polygon must also
/// lie in the bisector plane of the two sites.
VerificationReport neighborly_check(const Family& fam, const TolerancePolicy& tol = {});
VerificationReport neighborly_check(std::span<const Polytope> members, const HelixFamilySpec* spec,
                                    const TolerancePolicy& tol = {});

enum class SubsetStatus { Covered, Missing, NotApplicable };

/// Covered when some local simplex of `complex` contains every index of
/// `subset`; NotApplicable when the subset spans more than one turn.
SubsetStatus subset_status(const DelaunayComplex& complex, std::span<const int> subset);

/// Equidistant point for the sites of `subset` (inside the window) with the
/// largest clearance found: min over other window sites s of
/// (|x - p_s| - r) / r, r the common distance. Positive clearance exhibits a
/// face of dimension d - |subset| + 1 shared by the subset's regions.
struct ClearanceResult {
  Point center;
  double clearance = 0.0;
};
ClearanceResult subset_clearance(const HelixFamilySpec& spec, Window window, std::span<const int> subset,
                                 const DelaunayComplex& complex, const TolerancePolicy& tol = {},
                                 Precision precision = Precision::Standard);

/// Every (k+1)-subset of the middle sites is covered by a local simplex,
/// plus a geometric clearance spot-check on `spot_checks` evenly spread
/// subsets.
VerificationReport k_neighborly_check(const HelixFamilySpec& spec, Window window, int spot_checks = 10,
                                      const TolerancePolicy& tol = {},
                                      Precision precision = Precision::Standard);

/// dim-subsets of {0..m-1} satisfying the evenness condition.
std::set<std::vector<int>> gale_evenness(int m, int dim);

inline constexpr int kMaxHullPoints = 16;
inline constexpr int kMaxHullDimension = 6;

/// dim-subsets whose hyperplane has every other point strictly on one side.
/// Throws DegeneracyDetected on a zero orientation.
std::set<std::vector<int>> hull_facets_bruteforce(std::span<const Point> pts, const TolerancePolicy& tol = {},
                                                  Precision precision = Precision::Standard);

/// Points t_i = 2 pi (i+1) / (m+1), i < m, on the mixed moment curve.
std::vector<Point> cyclic_sample(const MixedMomentSpec& spec, int m);

/// Brute-force hull facets of cyclic_sample against gale_evenness.
VerificationReport cyclic_check(const MixedMomentSpec& spec, int m, const TolerancePolicy& tol = {},
                                Precision precision = Precision::Standard);

using Isometry = std::function<Point(const Point&)>;

Isometry reflection_isometry(const Flat& flat);

struct SymmetryResult {
  bool pass = false;
  double max_displacement = 0.0;  // infinity when no matching exists
};

/// The isometry maps the vertex set onto itself within `tolerance`.
SymmetryResult symmetry_check(const Polytope& p, const Isometry& iso, double tolerance = 1e-9);

/// Screw motion maps each member's vertices onto the next member's.
VerificationReport congruence_check(const Family& fam, double tolerance = 1e-9);

struct VerifyOptions {
  TolerancePolicy tol;
  Precision precision = Precision::Standard;
  FamilyMode mode = FamilyMode::Clipped;
  std::optional<Window> window;
  std::optional<int> flat_dimension;  // r for the higher-dimensional symmetrization
  int spot_checks = 10;
};

/// The full battery for one helix family.
VerificationReport run_verification(const HelixFamilySpec& spec, const VerifyOptions& options = {});

}  // namespace neighborly
