#include "neighborly/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace neighborly {

std::string to_string(OutputFormat f) { return f == OutputFormat::Off ? "off" : "json"; }

std::optional<OutputFormat> parse_format(const std::string& s) {
  if (s == "off") return OutputFormat::Off;
  if (s == "json") return OutputFormat::Json;
  return std::nullopt;
}

std::optional<Window> parse_window(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return std::nullopt;
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string lo = s.substr(0, colon), hi = s.substr(colon + 1);
    Window w{std::stoi(lo, &used_lo), std::stoi(hi, &used_hi)};
    if (used_lo != lo.size() || used_hi != hi.size() || w.lo > w.hi) return std::nullopt;
    return w;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void RunConfig::validate() const {
  tol.validate();
  if (command == "cyclic") {
    MixedMomentSpec{d_poly, k}.validate();
    const int dim = d_poly + 2 * k;
    if (dim < 2 || dim > kMaxHullDimension) fail(ErrorCode::InvalidArgument, "cyclic dimension d + 2k must lie in [2, 6]");
    if (m <= dim || m > kMaxHullPoints) fail(ErrorCode::InvalidArgument, "point count m must lie in (d + 2k, 16]");
    return;
  }
  if (count && *count < 2) fail(ErrorCode::InvalidArgument, "--count must be at least 2");
  spec().validate();
  if (command == "census" && (k != 1 || n < 4)) fail(ErrorCode::InvalidArgument, "census needs k = 1 and n >= 4");
  if (k != 1 && mode == FamilyMode::Zaks) fail(ErrorCode::InvalidArgument, "zaks mode is three-dimensional (k = 1)");
  if (k != 1 && format == OutputFormat::Off && command == "generate") {
    fail(ErrorCode::InvalidArgument, "OFF output is three-dimensional; use --format json for k >= 2");
  }
  if (r && (*r < 0 || *r > 2 * k)) fail(ErrorCode::InvalidFlatDimension, "--r must lie in [0, 2k]");
  if (window) {
    const Window middle = middle_sites(spec());
    if (!(window->lo <= middle.lo - n && window->hi >= middle.hi + n)) {
      fail(ErrorCode::WindowTooSmall, "--window must contain [" + std::to_string(middle.lo - n) + ", " +
                                          std::to_string(middle.hi + n) + "]");
    }
  }
}

Json RunConfig::to_json() const {
  Json j;
  j["command"] = command;
  if (command == "cyclic") {
    j["d"] = d_poly;
    j["k"] = k;
    j["m"] = m;
  } else {
    j["n"] = n;
    j["count"] = count ? Json(*count) : Json(nullptr);
    j["k"] = k;
    j["mode"] = to_string(mode);
    j["r"] = r ? Json(*r) : Json(nullptr);
    const Window w = window.value_or(default_window(spec()));
    j["window"] = {w.lo, w.hi};
    j["format"] = to_string(format);
  }
  j["eps_rel"] = json_number(tol.eps_rel);
  j["eps_abs"] = json_number(tol.eps_abs);
  j["precision"] = to_string(precision);
  return j;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

Json json_number(double x) {
  if (!std::isfinite(x)) return x > 0 ? Json("inf") : x < 0 ? Json("-inf") : Json(nullptr);
  const double rounded = std::stod(format_number(x));
  if (rounded == 0.0) return 0.0;  // no negative zero
  return rounded;
}

std::string off_string(const Polytope& p) {
  if (p.dimension() != 3) fail(ErrorCode::InvalidArgument, "OFF export is for 3D polytopes");
  if (!p.vrep.bounded || !p.vrep.rays.empty()) fail(ErrorCode::UnboundedPolytope, "cannot export rays to OFF");
  if (!p.lattice) fail(ErrorCode::InvalidArgument, "polytope has no face lattice");
  std::ostringstream os;
  os << "OFF\n" << p.vrep.vertices.size() << ' ' << p.lattice->facets.size() << ' ' << p.lattice->edges.size() << '\n';
  // Rounding noise around zero would otherwise print as e.g. 5.5e-15 or -0.
  auto coord = [](double x) { return format_number(std::abs(x) < 1e-11 ? 0.0 : x); };
  for (const auto& v : p.vrep.vertices) os << coord(v[0]) << ' ' << coord(v[1]) << ' ' << coord(v[2]) << '\n';
  for (const auto& f : p.lattice->facets) {
    os << f.vertices.size();
    for (int v : f.vertices) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

OffMesh parse_off(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!(is >> header) || header != "OFF") fail(ErrorCode::IOError, "missing OFF header");
  int nv = 0, nf = 0, ne = 0;
  if (!(is >> nv >> nf >> ne) || nv < 0 || nf < 0 || ne < 0) fail(ErrorCode::IOError, "bad OFF counts line");
  OffMesh mesh;
  mesh.edges = ne;
  for (int i = 0; i < nv; ++i) {
    Point v(3);
    if (!(is >> v[0] >> v[1] >> v[2])) fail(ErrorCode::IOError, "truncated OFF vertex list");
    mesh.vertices.push_back(v);
  }
  for (int i = 0; i < nf; ++i) {
    int c = 0;
    if (!(is >> c) || c < 3) fail(ErrorCode::IOError, "bad OFF facet size");
    std::vector<int> face(c);
    for (int& v : face) {
      if (!(is >> v) || v < 0 || v >= nv) fail(ErrorCode::IOError, "OFF facet index out of range");
    }
    mesh.faces.push_back(std::move(face));
  }
  std::string extra;
  if (is >> extra) fail(ErrorCode::IOError, "trailing data after OFF facets");
  return mesh;
}

Json polytope_json(const Polytope& p, const TolerancePolicy& tol) {
  Json j;
  j["site"] = p.site;
  j["dimension"] = p.dimension();
  j["provenance"] = to_string(p.provenance);
  Json verts = Json::array();
  for (const auto& v : p.vrep.vertices) {
    Json row = Json::array();
    for (int i = 0; i < v.size(); ++i) row.push_back(json_number(v[i]));
    verts.push_back(row);
  }
  j["vertices"] = verts;
  Json facets = Json::array();
  for (const auto& label : facet_labels(p.hrep, p.vrep, tol)) {
    const auto idx = p.hrep.find(label);
    Json on = Json::array();
    for (std::size_t v = 0; v < p.vrep.active_sets.size(); ++v) {
      const auto& act = p.vrep.active_sets[v];
      if (std::find(act.begin(), act.end(), static_cast<int>(*idx)) != act.end()) on.push_back(v);
    }
    facets.push_back({{"label", label.to_string()}, {"vertices", on}});
  }
  j["facets"] = facets;
  return j;
}

Json report_json(const RunConfig& config, const VerificationReport& report) {
  Json j;
  j["config"] = config.to_json();
  Json checks = Json::array();
  int failed = 0;
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"claim", c.claim},
                      {"pass", c.pass},
                      {"value", json_number(c.value)},
                      {"tolerance", json_number(c.tolerance)}});
    failed += !c.pass;
  }
  j["checks"] = checks;
  Json notes = Json::array();
  for (const auto& c : report.checks) {
    if (!c.detail.empty()) notes.push_back(c.name + ": " + c.detail);
  }
  j["summary"] = {{"pass", report.passed()},
                  {"total", report.checks.size()},
                  {"failed", failed},
                  {"notes", notes},
                  {"warnings", report.warnings}};
  return j;
}

Json census_json(const CensusRecord& r) {
  Json shapes = Json::array();
  for (const auto& s : r.shapes) {
    shapes.push_back({{"offset", s.offset},
                      {"class", to_string(expected_class(s.offset, r.n))},
                      {"vertices", s.vertex_count},
                      {"segments", s.segment_count},
                      {"rays", s.ray_count},
                      {"parallel_rays", s.parallel_rays},
                      {"closed_sides", s.closed_sides}});
  }
  return {{"n", r.n},
          {"big_gons", r.big_gons},
          {"triangles", r.triangles},
          {"quads", r.quads},
          {"unbounded_quads", r.unbounded_quads},
          {"wedges", r.wedges},
          {"big_gon_sides", r.big_gon_sides},
          {"total", r.total()},
          {"shapes", shapes}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::IOError, "cannot open " + path.string() + " for writing");
  os << text;
  if (text.empty() || text.back() != '\n') os << '\n';
  if (!os) fail(ErrorCode::IOError, "write to " + path.string() + " failed");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::IOError, "cannot open " + path.string());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace neighborly
