#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "neighborly/io.hpp"

namespace py = pybind11;
using namespace neighborly;

namespace {

std::vector<std::vector<int>> keys(const std::set<SimplexKey>& s) {
  std::vector<std::vector<int>> out;
  for (const auto& k : s) out.push_back(k.vertices());
  return out;
}

Precision precision_of(const std::string& name) {
  const auto p = parse_precision(name);
  if (!p) throw py::value_error("precision must be 'standard' or 'extended'");
  return *p;
}

FamilyMode mode_of(const std::string& name) {
  const auto m = parse_family_mode(name);
  if (!m) throw py::value_error("mode must be 'clipped', 'symmetrized' or 'zaks'");
  return *m;
}

}  // namespace

PYBIND11_MODULE(_neighborly, m) {
  m.doc() = "Helix Voronoi neighborly families";

  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);

  m.def("helix_point", [](int n, int k, double t) {
    const Point p = helix_point(HelixFamilySpec{n, k}, t);
    return std::vector<double>(p.data(), p.data() + p.size());
  }, py::arg("n"), py::arg("k"), py::arg("t"));

  m.def("outer_radius", &outer_radius, py::arg("n"));

  m.def("local_simplices", [](int n, int k, int lo, int hi) {
    return keys(local_simplices(HelixFamilySpec{n, k}, Window{lo, hi}).simplices);
  }, py::arg("n"), py::arg("k"), py::arg("lo"), py::arg("hi"));

  m.def("delaunay_bruteforce", [](int n, int k, int lo, int hi, const std::string& precision) {
    const HelixFamilySpec spec{n, k};
    const auto sites = sample_window(spec, Window{lo, hi});
    return keys(delaunay_bruteforce(sites, spec.dimension(), {}, precision_of(precision)));
  }, py::arg("n"), py::arg("k"), py::arg("lo"), py::arg("hi"), py::arg("precision") = "standard");

  m.def("gale_evenness", [](int count, int dim) {
    const auto s = gale_evenness(count, dim);
    return std::vector<std::vector<int>>(s.begin(), s.end());
  }, py::arg("m"), py::arg("dim"));

  m.def("cyclic_hull_facets", [](int d_poly, int k, int count) {
    const auto s = hull_facets_bruteforce(cyclic_sample(MixedMomentSpec{d_poly, k}, count));
    return std::vector<std::vector<int>>(s.begin(), s.end());
  }, py::arg("d"), py::arg("k"), py::arg("m"));

  m.def("census_json", [](int n, std::optional<int> site) {
    const HelixFamilySpec spec{n, 1};
    const int t = site.value_or(middle_sites(spec).lo);
    const VoronoiRegion region = build_region(spec, t, default_window(spec));
    return census_json(facet_census(*region.lattice, region.vrep, t, n)).dump();
  }, py::arg("n"), py::arg("site") = py::none());

  m.def("family_json", [](int n, const std::string& mode) {
    const Family fam = build_family(HelixFamilySpec{n, 1}, mode_of(mode));
    Json out = Json::array();
    for (const auto& p : fam.members) out.push_back(polytope_json(p));
    return out.dump();
  }, py::arg("n"), py::arg("mode") = "clipped");

  m.def("family_off", [](int n, const std::string& mode) {
    const Family fam = build_family(HelixFamilySpec{n, 1}, mode_of(mode));
    std::vector<std::string> out;
    for (const auto& p : fam.members) out.push_back(off_string(p));
    return out;
  }, py::arg("n"), py::arg("mode") = "clipped");

  m.def("verify_json", [](int n, int k, const std::string& mode, double eps_rel, double eps_abs,
                          const std::string& precision) {
    RunConfig c;
    c.command = "verify";
    c.n = n;
    c.k = k;
    c.mode = mode_of(mode);
    c.tol = {eps_rel, eps_abs};
    c.precision = precision_of(precision);
    c.format = k == 1 ? OutputFormat::Off : OutputFormat::Json;
    c.validate();
    VerifyOptions o;
    o.tol = c.tol;
    o.precision = c.precision;
    o.mode = c.mode;
    py::gil_scoped_release release;
    return report_json(c, run_verification(c.spec(), o)).dump();
  }, py::arg("n"), py::arg("k") = 1, py::arg("mode") = "clipped", py::arg("eps_rel") = 1e-9,
     py::arg("eps_abs") = 1e-12, py::arg("precision") = "standard");

  m.def("cyclic_json", [](int d_poly, int k, int count) {
    RunConfig c;
    c.command = "cyclic";
    c.d_poly = d_poly;
    c.k = k;
    c.m = count;
    c.validate();
    return report_json(c, cyclic_check(MixedMomentSpec{d_poly, k}, count)).dump();
  }, py::arg("d"), py::arg("k"), py::arg("m"));
}
