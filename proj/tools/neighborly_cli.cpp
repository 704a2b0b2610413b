#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "neighborly/io.hpp"

using namespace neighborly;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConstruction = 2;
constexpr int kExitUsage = 64;

struct Flags {
  std::optional<int> n;
  std::optional<int> count;
  int k = 1;
  std::string mode = "clipped";
  std::optional<int> r;
  std::string window;
  double eps_rel = TolerancePolicy{}.eps_rel;
  double eps_abs = TolerancePolicy{}.eps_abs;
  std::string out = ".";
  std::optional<std::string> format;
  int d_poly = 1;
  int m = 7;
};

void add_family_flags(CLI::App* app, Flags& f) {
  app->add_option("--n", f.n, "Sites per turn of the helix");
  app->add_option("--count", f.count, "Number of polytopes (n = count - 1)");
  app->add_option("--k", f.k, "Harmonics; the ambient dimension is 2k+1");
  app->add_option("--mode", f.mode, "Family construction")->check(CLI::IsMember({"clipped", "symmetrized", "zaks"}));
  app->add_option("--r", f.r, "Dimension of the symmetry flat (k >= 2)");
  app->add_option("--window", f.window, "Sampling window lo:hi");
}

void add_common_flags(CLI::App* app, Flags& f) {
  app->add_option("--eps-rel", f.eps_rel, "Relative tolerance of predicate zero bands");
  app->add_option("--eps-abs", f.eps_abs, "Absolute tolerance of predicate zero bands");
  app->add_option("--out", f.out, "Output directory");
  app->add_option("--format", f.format, "Mesh format")->check(CLI::IsMember({"off", "json"}));
}

RunConfig make_config(const std::string& command, const Flags& f) {
  RunConfig c;
  c.command = command;
  c.k = f.k;
  c.count = f.count;
  if (f.count) c.n = *f.count - 1;
  else if (f.n) c.n = *f.n;
  if (f.count && f.n && *f.n != *f.count - 1) fail(ErrorCode::InvalidArgument, "--n and --count disagree");
  c.mode = *parse_family_mode(f.mode);
  c.r = f.r;
  if (!f.window.empty()) {
    c.window = parse_window(f.window);
    if (!c.window) fail(ErrorCode::InvalidArgument, "--window expects lo:hi with lo <= hi");
  }
  c.tol = {f.eps_rel, f.eps_abs};
  c.precision = default_precision();
  c.out = f.out;
  c.format = f.format ? *parse_format(*f.format) : (f.k == 1 ? OutputFormat::Off : OutputFormat::Json);
  c.d_poly = f.d_poly;
  c.m = f.m;
  c.validate();
  return c;
}

void print_report(const VerificationReport& rep) {
  for (const auto& c : rep.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << format_number(c.value)
              << " tolerance=" << format_number(c.tolerance);
    if (!c.detail.empty()) std::cout << "  # " << c.detail;
    std::cout << '\n';
  }
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << (rep.passed() ? "all checks passed" : "verification FAILED") << '\n';
}

int finish(const RunConfig& config, const VerificationReport& rep) {
  write_text(fs::path(config.out) / "report.json", report_json(config, rep).dump(2));
  print_report(rep);
  return rep.passed() ? kExitOk : kExitCheckFailed;
}

std::string member_name(const Polytope& p, OutputFormat f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "member_%04d.%s", p.site, f == OutputFormat::Off ? "off" : "json");
  return buf;
}

int cmd_generate(const RunConfig& c) {
  const HelixFamilySpec spec = c.spec();
  Family fam{spec, c.mode, ScrewMotion{spec}, {}};
  VerificationReport rep;
  if (spec.k == 1) {
    fam = build_family(spec, c.mode, c.tol);
    rep.merge(neighborly_check(fam, c.tol));
  } else {
    const Window window = c.window.value_or(default_window(spec));
    const Window middle = middle_sites(spec);
    const int r = c.r.value_or(2 * spec.k);
    for (int s = middle.lo; s <= middle.hi; ++s) {
      const VoronoiRegion region = build_region(spec, s, window, c.tol);
      if (c.mode == FamilyMode::SymmetrizedUnion) {
        Polytope p = symmetrize_flat(region, r, c.tol);
        const Flat f = symmetry_flat(region, r, symmetrize_flat_headroom(region, r, c.tol));
        const auto sym = symmetry_check(p, reflection_isometry(f));
        rep.add({"flat-symmetry-site-" + std::to_string(s), "r-flat-symmetry", sym.pass, sym.max_displacement, 1e-9, {}});
        fam.members.push_back(std::move(p));
      } else {
        fam.members.push_back(clip_region(region, c.tol));
      }
    }
  }
  rep.merge(congruence_check(fam));
  if (spec.k == 1 && c.mode == FamilyMode::SymmetrizedUnion) {
    for (const auto& p : fam.members) {
      const SymmetryFrame frame = symmetry_frame(spec, p.site);
      const auto plane = symmetry_check(p, reflection_isometry(frame.plane));
      const auto line = symmetry_check(p, reflection_isometry(frame.axis));
      const auto point = symmetry_check(p, reflection_isometry(frame.center));
      const std::string site = std::to_string(p.site);
      rep.add({"plane-symmetry-site-" + site, "bilateral-symmetry", plane.pass, plane.max_displacement, 1e-9, {}});
      rep.add({"line-symmetry-site-" + site, "half-turn-symmetry", line.pass, line.max_displacement, 1e-9, {}});
      rep.add({"point-symmetry-site-" + site, "central-symmetry", point.pass, point.max_displacement, 1e-9, {}});
    }
  }
  for (const auto& p : fam.members) {
    const fs::path path = fs::path(c.out) / member_name(p, c.format);
    write_text(path, c.format == OutputFormat::Off ? off_string(p) : polytope_json(p, c.tol).dump(2));
  }
  std::cout << "wrote " << fam.members.size() << " polytopes to " << c.out << '\n';
  return finish(c, rep);
}

int cmd_verify(const RunConfig& c) {
  VerifyOptions o;
  o.tol = c.tol;
  o.precision = c.precision;
  o.mode = c.mode;
  o.window = c.window;
  o.flat_dimension = c.r;
  return finish(c, run_verification(c.spec(), o));
}

int cmd_cyclic(const RunConfig& c) {
  return finish(c, cyclic_check({c.d_poly, c.k}, c.m, c.tol, c.precision));
}

int cmd_delaunay(const RunConfig& c) {
  const HelixFamilySpec spec = c.spec();
  const Window window = c.window.value_or(default_window(spec));
  const DelaunayComplex local = spec.k == 1 ? local_tetrahedra(spec, window) : local_simplices(spec, window);
  Json simplices = Json::array();
  for (const auto& key : local.simplices) simplices.push_back(key.vertices());

  // Brute force only when the subset count stays at desk scale.
  double subsets = 1.0;
  const int d = spec.dimension();
  for (int i = 0; i <= d; ++i) subsets = subsets * (window.size() - i) / (i + 1);
  VerificationReport rep;
  Json oracle = {{"run", false}};
  if (window.size() <= kMaxBruteforcePoints && subsets <= 5e6) {
    const int margin = spec.k * ((spec.n + 1) / 2);
    const Window safe{window.lo + margin, window.hi - margin};
    const auto sites = sample_window(spec, window);
    const auto brute = DelaunayComplex{spec, window, delaunay_bruteforce(sites, d, c.tol, c.precision)}.restricted_to(safe);
    const auto combinatorial = local.restricted_to(safe);
    Json missing = Json::array(), extra = Json::array();
    for (const auto& key : brute) {
      if (!combinatorial.count(key)) missing.push_back(key.vertices());
    }
    for (const auto& key : combinatorial) {
      if (!brute.count(key)) extra.push_back(key.vertices());
    }
    const bool same = missing.empty() && extra.empty();
    oracle = {{"run", true}, {"safe_window", {safe.lo, safe.hi}}, {"compared", combinatorial.size()},
              {"missing_from_local", missing}, {"not_delaunay", extra}};
    rep.add({"delaunay-oracle", spec.k == 1 ? "local-tetrahedra-delaunay" : "local-simplices-delaunay", same,
             static_cast<double>(missing.size() + extra.size()), 0.0,
             std::to_string(combinatorial.size()) + " local simplices in the safe middle"});
  } else {
    const auto sites = sample_window(spec, window);
    double margin = std::numeric_limits<double>::infinity();
    bool all = true;
    for (const auto& key : local.simplices) {
      const auto r = empty_sphere_check(key, sites, c.tol, c.precision);
      margin = std::min(margin, r.margin);
      all &= r.pass;
    }
    rep.add({"local-simplices-empty", "local-simplices-delaunay", all, margin, 0.0,
             "window too large for the brute-force oracle; empty-sphere test of each local simplex"});
  }
  Json dump = {{"config", c.to_json()}, {"simplices", simplices}, {"oracle", oracle}};
  write_text(fs::path(c.out) / "delaunay.json", dump.dump(2));
  std::cout << local.simplices.size() << " local simplices in [" << window.lo << ", " << window.hi << "]\n";
  return finish(c, rep);
}

int cmd_census(const RunConfig& c) {
  const HelixFamilySpec spec = c.spec();
  const Window window = c.window.value_or(default_window(spec));
  const int site = middle_sites(spec).lo;
  const VoronoiRegion region = build_region(spec, site, window, c.tol);
  Json j = census_json(facet_census(*region.lattice, region.vrep, site, spec.n));
  j["site"] = site;
  j["vertex_count"] = region.vrep.vertices.size();
  j["ray_count"] = region.vrep.rays.size();
  const std::string text = j.dump(2);
  write_text(fs::path(c.out) / "census.json", text);
  std::cout << text << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neighborly families of congruent polytopes from helix Voronoi diagrams"};
  app.require_subcommand(1);
  Flags flags;
  std::string command;

  auto* generate = app.add_subcommand("generate", "Write the polytopes of a family and a report");
  add_family_flags(generate, flags);
  add_common_flags(generate, flags);
  auto* verify = app.add_subcommand("verify", "Run every check for one family and write report.json");
  add_family_flags(verify, flags);
  add_common_flags(verify, flags);
  auto* cyclic = app.add_subcommand("cyclic", "Compare hull facets of mixed-moment-curve points with Gale evenness");
  cyclic->add_option("--d", flags.d_poly, "Polynomial degree");
  cyclic->add_option("--k", flags.k, "Trigonometric harmonics");
  cyclic->add_option("--m,--n,--count", flags.m, "Number of points");
  add_common_flags(cyclic, flags);
  auto* delaunay = app.add_subcommand("delaunay", "Dump local simplices and diff them against brute force");
  add_family_flags(delaunay, flags);
  add_common_flags(delaunay, flags);
  auto* census = app.add_subcommand("census", "Print the facet census of a middle Voronoi region");
  add_family_flags(census, flags);
  add_common_flags(census, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) command = sub->get_name();

  RunConfig config;
  try {
    config = make_config(command, flags);
  } catch (const GeometryError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (command == "generate") return cmd_generate(config);
    if (command == "verify") return cmd_verify(config);
    if (command == "cyclic") return cmd_cyclic(config);
    if (command == "delaunay") return cmd_delaunay(config);
    return cmd_census(config);
  } catch (const GeometryError& e) {
    std::cerr << "construction error (" << command << "): " << e.what() << '\n';
    return kExitConstruction;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConstruction;
  }
}
