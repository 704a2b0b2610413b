#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "neighborly/construct.hpp"
#include "neighborly/verify.hpp"

namespace neighborly {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Off, Json };

/// Everything a CLI run depends on; serialized into every report.
struct RunConfig {
  std::string command;
  int n = 8;
  std::optional<int> count;
  int k = 1;
  FamilyMode mode = FamilyMode::Clipped;
  std::optional<int> r;
  std::optional<Window> window;
  TolerancePolicy tol;
  Precision precision = Precision::Standard;
  std::string out = ".";
  OutputFormat format = OutputFormat::Off;
  // cyclic
  int d_poly = 1;
  int m = 7;

  /// Throws InvalidArgument on any inconsistent field.
  void validate() const;
  HelixFamilySpec spec() const { return {n, k}; }
  Json to_json() const;
};

std::string to_string(OutputFormat f);
std::optional<OutputFormat> parse_format(const std::string& s);
/// "lo:hi" with lo <= hi.
std::optional<Window> parse_window(const std::string& s);

/// %.9g; JSON numbers are rounded the same way.
std::string format_number(double x);
Json json_number(double x);

/// OFF text: "OFF", "V F E", one vertex per line, then each facet as its
/// vertex count and zero-based indices, counterclockwise seen from outside.
std::string off_string(const Polytope& p);

struct OffMesh {
  std::vector<Point> vertices;
  std::vector<std::vector<int>> faces;
  int edges = 0;
};
/// Parses OFF text; throws IOError on malformed input.
OffMesh parse_off(const std::string& text);

/// Vertices and, per facet label, the indices of the vertices on it.
Json polytope_json(const Polytope& p, const TolerancePolicy& tol = {});

Json report_json(const RunConfig& config, const VerificationReport& report);
Json census_json(const CensusRecord& record);

/// Writes text (newline-terminated) to path; throws IOError.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace neighborly
