#include "neighborly/delaunay.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace neighborly {

SimplexKey::SimplexKey(std::vector<int> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    fail(ErrorCode::InvalidArgument, "simplex key with repeated vertex");
  }
}

bool SimplexKey::contains(int site) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), site);
}

bool SimplexKey::contains_all(std::span<const int> sites) const {
  return std::all_of(sites.begin(), sites.end(), [&](int s) { return contains(s); });
}

SimplexKey SimplexKey::shifted(int offset) const {
  SimplexKey out = *this;
  for (auto& v : out.vertices_) v += offset;
  return out;
}

std::vector<SimplexKey> SimplexKey::facets() const {
  std::vector<SimplexKey> out;
  for (std::size_t skip = 0; skip < vertices_.size(); ++skip) {
    SimplexKey f;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (i != skip) f.vertices_.push_back(vertices_[i]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string SimplexKey::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < vertices_.size(); ++i) os << (i ? "," : "") << vertices_[i];
  os << ')';
  return os.str();
}

std::set<SimplexKey> DelaunayComplex::restricted_to(Window range) const {
  std::set<SimplexKey> out;
  for (const auto& key : simplices) {
    if (range.contains(key.front()) && range.contains(key.back())) out.insert(key);
  }
  return out;
}

DelaunayComplex DelaunayComplex::shifted(int offset) const {
  DelaunayComplex out{spec, {window.lo + offset, window.hi + offset}, {}};
  for (const auto& key : simplices) out.simplices.insert(key.shifted(offset));
  return out;
}

bool is_local_key(const SimplexKey& key, int n) {
  const auto& v = key.vertices();
  if (v.size() < 4 || v.size() % 2 != 0) return false;
  for (std::size_t i = 0; i < v.size(); i += 2) {
    if (v[i + 1] != v[i] + 1) return false;
    if (i + 2 < v.size() && !(v[i + 1] < v[i + 2])) return false;
  }
  // a_i + 1 < a_{i+1} holds automatically for a strictly increasing key.
  return v.back() <= v.front() + n;
}

DelaunayComplex local_simplices(const HelixFamilySpec& spec, Window window) {
  spec.validate();
  if (window.size() < spec.n + 2) {
    fail(ErrorCode::WindowTooSmall, "window holds " + std::to_string(window.size()) +
                                        " sites, need at least n+2 = " + std::to_string(spec.n + 2));
  }
  DelaunayComplex out{spec, window, {}};
  std::vector<int> starts;
  std::function<void(int)> extend = [&](int next_min) {
    if (static_cast<int>(starts.size()) == spec.k + 1) {
      std::vector<int> v;
      for (int a : starts) {
        v.push_back(a);
        v.push_back(a + 1);
      }
      out.simplices.insert(SimplexKey(std::move(v)));
      return;
    }
    const int remaining = spec.k - static_cast<int>(starts.size());
    // The last pair must end by a_0 + n and inside the window.
    const int last_end = std::min(starts.front() + spec.n, window.hi);
    for (int a = next_min; a + 1 + 2 * remaining <= last_end; ++a) {
      starts.push_back(a);
      extend(a + 2);
      starts.pop_back();
    }
  };
  for (int a0 = window.lo; a0 + 1 <= window.hi; ++a0) {
    starts.assign(1, a0);
    extend(a0 + 2);
  }
  return out;
}

DelaunayComplex local_tetrahedra(const HelixFamilySpec& spec, Window window) {
  if (spec.k != 1) fail(ErrorCode::InvalidArgument, "local_tetrahedra is the k = 1 case");
  spec.validate();
  if (window.size() < spec.n + 2) {
    fail(ErrorCode::WindowTooSmall, "window holds " + std::to_string(window.size()) +
                                        " sites, need at least n+2 = " + std::to_string(spec.n + 2));
  }
  DelaunayComplex out{spec, window, {}};
  for (int a = window.lo; a + 3 <= window.hi; ++a) {
    for (int c = a + 2; c + 1 <= window.hi && c + 1 - a <= spec.n; ++c) {
      out.simplices.insert(SimplexKey({a, a + 1, c, c + 1}));
    }
  }
  return out;
}

EmptySphereResult empty_sphere_check(const SimplexKey& key, std::span<const Site> sites,
                                     const TolerancePolicy& tol, Precision precision) {
  std::vector<Point> verts;
  for (int v : key.vertices()) {
    auto it = std::find_if(sites.begin(), sites.end(), [&](const Site& s) { return s.index == v; });
    if (it == sites.end()) fail(ErrorCode::InvalidArgument, "key vertex " + std::to_string(v) + " not sampled");
    verts.push_back(it->position);
  }
  const Sphere sphere = circumcenter(verts, tol, precision);
  EmptySphereResult result;
  result.pass = true;
  result.margin = std::numeric_limits<double>::infinity();
  for (const auto& s : sites) {
    if (key.contains(s.index)) continue;
    const int sign = in_sphere(verts, s.position, tol, precision);
    result.margin = std::min(result.margin, ((s.position - sphere.center).norm() - sphere.radius) / sphere.radius);
    if (sign == 0) ++result.degenerate;
    if (sign != 1) {
      result.pass = false;
      if (!result.witness) result.witness = s.index;
    }
  }
  return result;
}

std::set<SimplexKey> delaunay_bruteforce(std::span<const Site> sites, int dim, const TolerancePolicy& tol,
                                         Precision precision) {
  const int m = static_cast<int>(sites.size());
  if (m > kMaxBruteforcePoints) {
    fail(ErrorCode::TooManyPoints, std::to_string(m) + " points exceeds the oracle limit of " +
                                       std::to_string(kMaxBruteforcePoints));
  }
  for (const auto& s : sites) {
    if (s.position.size() != dim) fail(ErrorCode::DimensionMismatch, "site dimension differs from dim");
  }
  std::set<SimplexKey> out;
  if (m < dim + 1) return out;
  std::vector<int> idx(dim + 1);
  for (int i = 0; i <= dim; ++i) idx[i] = i;
  std::vector<Point> verts(dim + 1);
  while (true) {
    for (int i = 0; i <= dim; ++i) verts[i] = sites[idx[i]].position;
    // Affinely dependent subsets span no simplex.
    bool empty = orientation(verts, tol, precision) != 0;
    int on_sphere = -1;
    for (int j = 0, c = 0; j < m && empty; ++j) {
      if (c <= dim && idx[c] == j) {
        ++c;
        continue;
      }
      const int sign = in_sphere(verts, sites[j].position, tol, precision);
      if (sign == 0 && on_sphere < 0) on_sphere = j;
      empty = sign >= 0;
    }
    // A point on an otherwise empty sphere makes the answer ambiguous.
    if (empty && on_sphere >= 0) {
      fail(ErrorCode::DegeneracyDetected, "site " + std::to_string(sites[on_sphere].index) +
                                              " lies on an empty circumsphere");
    }
    if (empty) {
      std::vector<int> key;
      for (int i : idx) key.push_back(sites[i].index);
      out.insert(SimplexKey(std::move(key)));
    }
    int i = dim;
    while (i >= 0 && idx[i] == m - dim - 1 + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j <= dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

namespace {

bool adjacent_pairs(std::span<const int> v) {
  for (std::size_t i = 0; i + 1 < v.size(); i += 2) {
    if (v[i + 1] != v[i] + 1) return false;
    if (i + 2 < v.size() && !(v[i + 1] < v[i + 2])) return false;
  }
  return v.size() % 2 == 0;
}

std::map<std::vector<int>, int> interior_incidences(const HelixFamilySpec& spec, Window window) {
  if (window.size() < 3 * spec.n + 1) {
    fail(ErrorCode::WindowTooSmall, "boundary classification needs a window of at least 3n+1 sites");
  }
  const auto complex = local_simplices(spec, window);
  std::map<std::vector<int>, int> counts;
  for (const auto& key : complex.simplices) {
    for (const auto& f : key.facets()) {
      if (f.front() >= window.lo + spec.n && f.back() <= window.hi - spec.n) ++counts[f.vertices()];
    }
  }
  return counts;
}

}  // namespace

std::optional<BoundaryForm> classify_boundary(std::span<const int> v, int n) {
  if (v.size() < 3 || v.size() % 2 == 0) return std::nullopt;
  const std::size_t last = v.size() - 1;
  // The lone vertex sits one turn away from the far end of the pairs.
  const bool low = adjacent_pairs(v.subspan(1)) && v[0] == v[last] - n && v[0] < v[1];
  const bool high = adjacent_pairs(v.subspan(0, last)) && v[last] == v[0] + n && v[last - 1] < v[last];
  if (low == high) return std::nullopt;
  return low ? BoundaryForm::Low : BoundaryForm::High;
}

std::vector<FacetIncidence> facet_incidences(const HelixFamilySpec& spec, Window window) {
  std::vector<FacetIncidence> out;
  for (const auto& [verts, count] : interior_incidences(spec, window)) out.push_back({verts, count});
  return out;
}

std::vector<BoundaryFacet> boundary_facets(const HelixFamilySpec& spec, Window window) {
  std::vector<BoundaryFacet> out;
  for (const auto& [verts, count] : interior_incidences(spec, window)) {
    if (count != 1) continue;
    const auto form = classify_boundary(verts, spec.n);
    if (!form) {
      fail(ErrorCode::InvalidArgument, "boundary facet " + SimplexKey(verts).to_string() +
                                           " matches neither boundary pattern");
    }
    out.push_back({verts, *form});
  }
  return out;
}

}  // namespace neighborly
