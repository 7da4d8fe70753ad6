#pragma once

// Scene configuration for the command-line tool: a JSON file whose keys can
// be overridden by flags.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "geomopt/geometrize.hpp"
#include "geomopt/tensor.hpp"

namespace geomopt::cli {

/// Invalid configuration; the message names the offending key or line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Geometrize, Inverse, Trace, Verify };

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

struct MetricSpec {
  enum class Kind { Vacuum, Matrix, Index };
  Kind kind = Kind::Vacuum;
  Mat4 matrix;           // Kind::Matrix
  std::string profile;   // Kind::Index, a catalog medium name
};

/// "minkowski" | "vacuum" | "diag:a,b,c,d" | "matrix:g00,...,g33" | "index:NAME" | NAME.
MetricSpec parse_metric(const std::string& s);

/// Samples origin + i * extent / (n - 1) along each axis; n = 1 holds the
/// axis at its origin.
struct GridConfig {
  Point3 origin{0.0, 0.0, 0.0};
  Point3 extent{1.0, 1.0, 0.0};
  std::array<std::size_t, 3> resolution{2, 2, 1};

  std::size_t total() const { return resolution[0] * resolution[1] * resolution[2]; }
  Point3 point(std::size_t flat) const;
};

/// "nx,ny,nz" or "ox,oy,oz:ex,ey,ez:nx,ny,nz".
void apply_grid_flag(GridConfig& grid, const std::string& s);

struct RayLaunch {
  Point3 position;
  Vec3 direction;
};

struct SceneConfig {
  Mode mode = Mode::Verify;
  double c = 1.0;
  std::uint64_t seed = 20261016;
  std::filesystem::path out_dir = "out";
  MetricSpec metric;
  CoordinateSystem coordinates = CoordinateSystem::Cartesian;
  std::optional<GridConfig> grid;
  std::string medium = "luneburg";
  double homogeneous_n = 1.0;
  double step = 1e-3;
  std::optional<std::size_t> steps;
  std::vector<RayLaunch> rays;
};

/// Fills `config` from a parsed JSON document.
void apply_json(SceneConfig& config, const nlohmann::json& doc);

/// Reads and applies a JSON file. Parse errors report the line.
void apply_config_file(SceneConfig& config, const std::filesystem::path& path);

/// Rejects non-positive step, c, zero resolution and unknown media.
void validate(const SceneConfig& config);

}  // namespace geomopt::cli
