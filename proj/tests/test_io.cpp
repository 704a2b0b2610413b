#include <doctest.h>

#include <filesystem>
#include <map>

#include "neighborly/io.hpp"

using namespace neighborly;

namespace {

// Closed, consistently oriented, outward-facing polygon mesh.
std::string off_problems(const OffMesh& m) {
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& v : m.vertices) centroid += Eigen::Vector3d(v);
  centroid /= static_cast<double>(m.vertices.size());
  std::map<std::pair<int, int>, int> directed;
  for (const auto& f : m.faces) {
    Eigen::Vector3d normal = Eigen::Vector3d::Zero(), mid = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Eigen::Vector3d a(m.vertices[f[i]]), b(m.vertices[f[(i + 1) % f.size()]]);
      normal += a.cross(b);
      mid += a;
      ++directed[{f[i], f[(i + 1) % f.size()]}];
    }
    mid /= static_cast<double>(f.size());
    if (normal.dot(mid - centroid) <= 0) return "face not counterclockwise from outside";
    const Eigen::Vector3d u = normal.normalized();
    for (int v : f)
      if (std::abs(u.dot(Eigen::Vector3d(m.vertices[v]) - mid)) > 1e-6) return "face not planar";
  }
  for (const auto& [e, c] : directed) {
    if (c != 1) return "edge used twice in one direction";
    if (!directed.count({e.second, e.first})) return "open edge";
  }
  const int edges = static_cast<int>(directed.size() / 2);
  if (edges != m.edges) return "edge count in header is wrong";
  if (static_cast<int>(m.vertices.size()) - edges + static_cast<int>(m.faces.size()) != 2) return "Euler characteristic";
  return "";
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(12345678912.0) == "1.23456789e+10");
  CHECK(format_number(2.0) == "2");
  CHECK(json_number(1.0 / 3.0).get<double>() == 0.333333333);
  CHECK(json_number(-0.0).dump() == "0.0");
  CHECK(json_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("OFF output of a clipped region") {
  const Family fam = build_family(HelixFamilySpec{8, 1}, FamilyMode::Clipped);
  for (const auto& p : fam.members) {
    const std::string text = off_string(p);
    const OffMesh mesh = parse_off(text);
    CHECK(mesh.faces.size() == 17);
    CHECK(off_problems(mesh) == "");
  }
}

TEST_CASE("OFF output of symmetrized and hull families") {
  for (FamilyMode mode : {FamilyMode::SymmetrizedUnion, FamilyMode::Zaks}) {
    const Family fam = build_family(HelixFamilySpec{5, 1}, mode);
    for (const auto& p : fam.members) CHECK(off_problems(parse_off(off_string(p))) == "");
  }
}

TEST_CASE("OFF round trip") {
  std::vector<Point> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(Point((Eigen::Vector3d() << (i & 1), (i >> 1) & 1, (i >> 2) & 1).finished()));
  const Polytope cube = polytope_from_hull(pts, 0, Provenance::ZaksHull);
  const std::string text = off_string(cube);
  CHECK(text.rfind("OFF\n8 6 12\n", 0) == 0);
  const OffMesh mesh = parse_off(text);
  CHECK(mesh.vertices.size() == 8);
  CHECK(mesh.faces.size() == 6);
  CHECK(off_problems(mesh) == "");
  for (std::size_t i = 0; i < 8; ++i) CHECK((mesh.vertices[i] - cube.vrep.vertices[i]).norm() < 1e-9);
}

TEST_CASE("malformed OFF") {
  CHECK_THROWS_AS(parse_off("PLY\n"), GeometryError);
  CHECK_THROWS_AS(parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n"), GeometryError);
  CHECK_THROWS_AS(parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 5\n"), GeometryError);
  CHECK_THROWS_AS(parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n7\n"), GeometryError);
  CHECK_NOTHROW(parse_off("OFF\n3 1 3\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n"));
}

TEST_CASE("OFF export rejects what it cannot represent") {
  const VoronoiRegion r = build_region(HelixFamilySpec{5, 1}, 0);
  Polytope open{0, r.hrep, r.vrep, r.lattice, Provenance::Clipped};
  CHECK_THROWS_AS(off_string(open), GeometryError);
}

TEST_CASE("windows and formats") {
  CHECK(parse_window("0:24") == Window{0, 24});
  CHECK(parse_window("-3:5") == Window{-3, 5});
  CHECK_FALSE(parse_window("5:3").has_value());
  CHECK_FALSE(parse_window("0-24").has_value());
  CHECK_FALSE(parse_window("0:2x").has_value());
  CHECK(parse_format("off") == OutputFormat::Off);
  CHECK(parse_format("json") == OutputFormat::Json);
  CHECK_FALSE(parse_format("ply").has_value());
}

TEST_CASE("run config validation") {
  RunConfig c;
  c.command = "generate";
  CHECK_NOTHROW(c.validate());
  c.count = 1;
  CHECK_THROWS_AS(c.validate(), GeometryError);
  c.count.reset();
  c.k = 2;
  CHECK_THROWS_AS(c.validate(), GeometryError);  // OFF is 3D only
  c.format = OutputFormat::Json;
  CHECK_NOTHROW(c.validate());
  c.r = 5;
  CHECK_THROWS_AS(c.validate(), GeometryError);
  c = RunConfig{};
  c.command = "verify";
  c.window = Window{2, 20};
  CHECK_THROWS_AS(c.validate(), GeometryError);
  c.window = Window{0, 24};
  CHECK_NOTHROW(c.validate());
  c.command = "cyclic";
  c.d_poly = 2;
  c.k = 1;
  c.m = 20;
  CHECK_THROWS_AS(c.validate(), GeometryError);
}

TEST_CASE("reports are deterministic and follow the schema") {
  RunConfig c;
  c.command = "verify";
  c.n = 5;
  const auto rep = run_verification(c.spec());
  const std::string a = report_json(c, rep).dump(2);
  const std::string b = report_json(c, run_verification(c.spec())).dump(2);
  CHECK(a == b);
  const Json j = report_json(c, rep);
  CHECK(j.contains("config"));
  CHECK(j.contains("checks"));
  CHECK(j.contains("summary"));
  for (const auto& check : j["checks"]) {
    for (const char* key : {"name", "claim", "pass", "value", "tolerance"}) CHECK(check.contains(key));
  }
  CHECK(j["summary"]["pass"] == true);
  CHECK(j["summary"]["total"] == rep.checks.size());
  CHECK(j["config"]["n"] == 5);
  CHECK(j["config"]["window"] == Json::array({0, 15}));
}

TEST_CASE("polytope json lists facets by label") {
  const Family fam = build_family(HelixFamilySpec{4, 1}, FamilyMode::Clipped);
  const Json j = polytope_json(fam.members.front());
  CHECK(j["site"] == 4);
  CHECK(j["dimension"] == 3);
  CHECK(j["facets"].size() == 9);
  CHECK(j["vertices"].size() == fam.members.front().vrep.vertices.size());
}

TEST_CASE("census json") {
  const VoronoiRegion r = build_region(HelixFamilySpec{6, 1}, 0);
  const Json j = census_json(facet_census(*r.lattice, r.vrep, 0, 6));
  CHECK(j["total"] == 12);
  CHECK(j["big_gon_sides"] == 11);
  CHECK(j["shapes"].size() == 12);
}

TEST_CASE("text files") {
  const auto dir = std::filesystem::temp_directory_path() / "neighborly_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_text(dir / "a.txt", "hello");
  CHECK(read_text(dir / "a.txt") == "hello\n");
  CHECK_THROWS_AS(read_text(dir / "missing.txt"), GeometryError);
  std::filesystem::remove_all(dir.parent_path());
}
