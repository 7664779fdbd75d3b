#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sectorgraph/digraph.hpp"
#include "sectorgraph/montecarlo.hpp"
#include "sectorgraph/sampling.hpp"

namespace sg::io {

using Json = nlohmann::ordered_json;

/// Invalid configuration or input document (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File system failure (CLI exit code 3).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolVersion = SECTORGRAPH_VERSION;

/// %.17g; round-trips every finite double.
std::string format_double(double x);

// ---------------------------------------------------------------------------
// Config fragments
// ---------------------------------------------------------------------------

/// Radians, or one of "pi", "pi/2", "3pi/2", "2pi".
double parse_angle(const Json& j, const std::string& field);
/// A number, or "2/alpha" / "4/alpha" resolved against alpha.
double parse_scale(const Json& j, double alpha, const std::string& field);
Point2 parse_point(const Json& j, const std::string& field);
/// "uniform", "gaussian", or {"type": "grid", origin, cell_size, nx, ny, values}.
DensityModel parse_density(const Json& j);
/// "uniform" (unit cube) or "gaussian".
Density3 parse_density3(const Json& j);
/// "plane", or {"type": "plane" | "rect" | "disk" | "sector", ...}.
Region parse_region(const Json& j);
/// "l2", "linf", or {"lp": p}.
Norm parse_norm(const Json& j);
DegreeKind parse_kind(const Json& j, const std::string& field);
/// Scalar or array of numbers.
std::vector<double> parse_number_list(const Json& j, const std::string& field);

Json density_to_json(const DensityModel& d);
Json region_to_json(const Region& r);
Json norm_to_json(const Norm& n);

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

/// Applies the fields of j on top of base. Unknown keys are rejected. The
/// result is validated; any failure is reported as ConfigError.
ExperimentConfig parse_experiment_config(const Json& j, ExperimentConfig base);
/// The preset named by j["experiment"] (or `preset_override` when nonempty),
/// merged with the remaining fields of j.
ExperimentConfig experiment_config_from_json(const Json& j, const std::string& preset_override = "");
/// Echo of every field that affects results (thread count excluded).
Json config_to_json(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

Json row_to_json(const ReportRow& row);
Json report_to_json(const ExperimentReport& report);
/// replicate,t,kind,xi,xi_poisson,N
void write_replicates_csv(std::ostream& os, const ExperimentReport& report);

struct SummaryRow {
  std::string experiment;
  Json row;
};

/// Rows of every report, sorted by (experiment, t) with input order kept for
/// ties. Throws ConfigError on a schema_version conflict or malformed input.
std::vector<SummaryRow> merge_reports(const std::vector<Json>& reports);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
void write_summary_text(std::ostream& os, const std::vector<SummaryRow>& rows);

// ---------------------------------------------------------------------------
// Digraph output
// ---------------------------------------------------------------------------

void write_points_csv(std::ostream& os, const MarkedPointCloud& cloud);
void write_points3_csv(std::ostream& os, const MarkedPointCloud3& cloud);
void write_degrees_csv(std::ostream& os, const GeometricDigraph& g);
void write_arcs_csv(std::ostream& os, const std::vector<DirectedArc>& arcs);

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

/// Parses a JSON file. Missing or unreadable files raise IoError, bad JSON ConfigError.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
/// JSON text with two-space indentation and a trailing newline.
std::string dump(const Json& j);
/// Creates the directory (and parents) or raises IoError.
void ensure_directory(const std::string& path);

/// {schema_version, tool_version, command, seed, config, ...extra}
Json manifest(const std::string& command, std::uint64_t seed, const Json& config, const Json& extra = Json::object());

}  // namespace sg::io
