#pragma once

#include <compare>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "neighborly/curves.hpp"
#include "neighborly/numeric.hpp"

namespace neighborly {

/// Strictly increasing list of site indices naming a simplex.
class SimplexKey {
 public:
  SimplexKey() = default;
  /// Sorts the indices; throws InvalidArgument on repeats.
  explicit SimplexKey(std::vector<int> vertices);

  const std::vector<int>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  int front() const { return vertices_.front(); }
  int back() const { return vertices_.back(); }
  bool contains(int site) const;
  bool contains_all(std::span<const int> sites) const;
  SimplexKey shifted(int offset) const;
  /// Keys obtained by dropping one vertex.
  std::vector<SimplexKey> facets() const;
  std::string to_string() const;

  auto operator<=>(const SimplexKey&) const = default;

 private:
  std::vector<int> vertices_;
};

struct DelaunayComplex {
  HelixFamilySpec spec;
  Window window;
  std::set<SimplexKey> simplices;

  /// Simplices with every vertex inside `range`.
  std::set<SimplexKey> restricted_to(Window range) const;
  DelaunayComplex shifted(int offset) const;
};

/// Keys (a, a+1, c, c+1) with a+1 < c and c+1-a <= n inside the window.
DelaunayComplex local_tetrahedra(const HelixFamilySpec& spec, Window window);

/// Keys made of k+1 adjacent index pairs (a_i, a_i+1) with a_i+1 < a_{i+1}
/// and a_k+1 <= a_0+n (one turn), inside the window.
DelaunayComplex local_simplices(const HelixFamilySpec& spec, Window window);

/// True when the sorted key has the adjacent-pairs-within-one-turn form.
bool is_local_key(const SimplexKey& key, int n);

struct EmptySphereResult {
  bool pass = false;
  /// min over non-vertex points of (distance - radius) / radius.
  double margin = 0.0;
  /// Non-vertex points whose in_sphere sign fell in the tolerance band.
  int degenerate = 0;
  /// First point found inside (or on) the sphere, if any.
  std::optional<int> witness;
};

/// Empty-circumsphere test of `key` against every other site in `sites`.
/// The key's indices must all be present in `sites`.
EmptySphereResult empty_sphere_check(const SimplexKey& key, std::span<const Site> sites,
                                     const TolerancePolicy& tol = {},
                                     Precision precision = Precision::Standard);

inline constexpr int kMaxBruteforcePoints = 64;

/// Every affinely independent (dim+1)-subset whose circumsphere is empty.
/// O(m^(dim+2)); used only as an independent oracle. Throws
/// DegeneracyDetected when a point lies on a circumsphere with no point
/// strictly inside.
std::set<SimplexKey> delaunay_bruteforce(std::span<const Site> sites, int dim,
                                         const TolerancePolicy& tol = {},
                                         Precision precision = Precision::Standard);

enum class BoundaryForm {
  Low,   ///< <a_k+1-n, a_1, a_1+1, ..., a_k, a_k+1>
  High,  ///< <a_1, a_1+1, ..., a_k, a_k+1, a_1+n>
};

struct BoundaryFacet {
  std::vector<int> vertices;
  BoundaryForm form;
};

/// Which of the two boundary vertex patterns a sorted (2k+1)-tuple follows.
std::optional<BoundaryForm> classify_boundary(std::span<const int> vertices, int n);

/// Facets of local simplices that belong to exactly one local simplex,
/// restricted to those at least n away from both window ends (closer ones
/// are window artifacts). Throws when a unique facet matches neither form.
std::vector<BoundaryFacet> boundary_facets(const HelixFamilySpec& spec, Window window);

/// Number of local simplices containing each facet (same interior filter).
struct FacetIncidence {
  std::vector<int> vertices;
  int count = 0;
};
std::vector<FacetIncidence> facet_incidences(const HelixFamilySpec& spec, Window window);

}  // namespace neighborly
