#include "scene.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "geomopt/raytrace.hpp"

namespace geomopt::cli {

using nlohmann::json;

Mode parse_mode(const std::string& s) {
  if (s == "geometrize") return Mode::Geometrize;
  if (s == "inverse") return Mode::Inverse;
  if (s == "trace") return Mode::Trace;
  if (s == "verify") return Mode::Verify;
  throw ConfigError("key 'mode': unknown mode '" + s + "'");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Geometrize: return "geometrize";
    case Mode::Inverse: return "inverse";
    case Mode::Trace: return "trace";
    case Mode::Verify: return "verify";
  }
  return "?";
}

namespace {

std::vector<double> parse_numbers(const std::string& s, const std::string& key) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': '" + item + "' is not a number");
    }
  }
  return out;
}

std::array<std::size_t, 3> to_resolution(const std::vector<double>& v, const std::string& key) {
  if (v.size() != 3) throw ConfigError("key '" + key + "': expected 3 values");
  std::array<std::size_t, 3> r{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(v[i] >= 1.0) || v[i] != static_cast<double>(static_cast<std::size_t>(v[i])))
      throw ConfigError("key '" + key + "': resolution must be a positive integer");
    r[i] = static_cast<std::size_t>(v[i]);
  }
  return r;
}

Point3 to_point(const std::vector<double>& v, const std::string& key) {
  if (v.size() != 3) throw ConfigError("key '" + key + "': expected 3 values");
  return {v[0], v[1], v[2]};
}

template <typename T>
T get(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

Point3 json_point(const json& j, const std::string& key) {
  return to_point(get<std::vector<double>>(j, key), key);
}

CoordinateSystem parse_coordinates(const std::string& s) {
  if (s == "cartesian") return CoordinateSystem::Cartesian;
  if (s == "spherical") return CoordinateSystem::Spherical;
  if (s == "cylindrical") return CoordinateSystem::Cylindrical;
  throw ConfigError("key 'coordinates': unknown system '" + s + "'");
}

Mat4 symmetric_from(const std::vector<double>& v, const std::string& key) {
  if (v.size() != 16) throw ConfigError("key '" + key + "': expected 16 entries");
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) m.a[i] = v[i];
  if (!(m == m.transposed())) throw ConfigError("key '" + key + "': matrix is not symmetric");
  return m;
}

MetricSpec json_metric(const json& j) {
  if (j.is_string()) return parse_metric(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("key 'metric': expected a string or an object");
  MetricSpec spec;
  if (j.contains("matrix")) {
    std::vector<double> flat;
    for (const auto& row : j.at("matrix"))
      for (double v : get<std::vector<double>>(row, "metric.matrix")) flat.push_back(v);
    spec.kind = MetricSpec::Kind::Matrix;
    spec.matrix = symmetric_from(flat, "metric.matrix");
  } else if (j.contains("diagonal")) {
    const auto d = get<std::vector<double>>(j.at("diagonal"), "metric.diagonal");
    if (d.size() != 4) throw ConfigError("key 'metric.diagonal': expected 4 entries");
    spec.kind = MetricSpec::Kind::Matrix;
    spec.matrix = Mat4::diagonal({d[0], d[1], d[2], d[3]});
  } else if (j.contains("index")) {
    spec.kind = MetricSpec::Kind::Index;
    spec.profile = get<std::string>(j.at("index"), "metric.index");
  } else {
    throw ConfigError("key 'metric': expected one of 'matrix', 'diagonal', 'index'");
  }
  return spec;
}

}  // namespace

MetricSpec parse_metric(const std::string& s) {
  MetricSpec spec;
  if (s == "minkowski" || s == "vacuum") return spec;
  const auto colon = s.find(':');
  const std::string head = s.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (head == "diag" && colon != std::string::npos) {
    const auto d = parse_numbers(tail, "metric");
    if (d.size() != 4) throw ConfigError("key 'metric': diag needs 4 entries");
    spec.kind = MetricSpec::Kind::Matrix;
    spec.matrix = Mat4::diagonal({d[0], d[1], d[2], d[3]});
  } else if (head == "matrix" && colon != std::string::npos) {
    spec.kind = MetricSpec::Kind::Matrix;
    spec.matrix = symmetric_from(parse_numbers(tail, "metric"), "metric");
  } else if (head == "index" && colon != std::string::npos) {
    spec.kind = MetricSpec::Kind::Index;
    spec.profile = tail;
  } else {
    spec.kind = MetricSpec::Kind::Index;
    spec.profile = s;
  }
  return spec;
}

Point3 GridConfig::point(std::size_t flat) const {
  const std::size_t idx[3] = {flat / (resolution[1] * resolution[2]),
                              (flat / resolution[2]) % resolution[1], flat % resolution[2]};
  Point3 p;
  for (std::size_t a = 0; a < 3; ++a) {
    const double frac =
        resolution[a] > 1 ? static_cast<double>(idx[a]) / static_cast<double>(resolution[a] - 1) : 0.0;
    p[a] = origin[a] + frac * extent[a];
  }
  return p;
}

void apply_grid_flag(GridConfig& grid, const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() == 1) {
    grid.resolution = to_resolution(parse_numbers(parts[0], "grid"), "grid");
  } else if (parts.size() == 3) {
    grid.origin = to_point(parse_numbers(parts[0], "grid"), "grid");
    grid.extent = to_point(parse_numbers(parts[1], "grid"), "grid");
    grid.resolution = to_resolution(parse_numbers(parts[2], "grid"), "grid");
  } else {
    throw ConfigError("key 'grid': expected 'nx,ny,nz' or 'ox,oy,oz:ex,ey,ez:nx,ny,nz'");
  }
}

void apply_json(SceneConfig& config, const json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "mode") {
      config.mode = parse_mode(get<std::string>(value, key));
    } else if (key == "c") {
      config.c = get<double>(value, key);
    } else if (key == "seed") {
      config.seed = get<std::uint64_t>(value, key);
    } else if (key == "out_dir") {
      config.out_dir = get<std::string>(value, key);
    } else if (key == "metric") {
      config.metric = json_metric(value);
    } else if (key == "coordinates") {
      config.coordinates = parse_coordinates(get<std::string>(value, key));
    } else if (key == "grid") {
      GridConfig grid;
      for (const auto& [gk, gv] : value.items()) {
        const std::string full = "grid." + gk;
        if (gk == "origin") grid.origin = json_point(gv, full);
        else if (gk == "extent") grid.extent = json_point(gv, full);
        else if (gk == "resolution") grid.resolution = to_resolution(get<std::vector<double>>(gv, full), full);
        else throw ConfigError("key '" + full + "': unknown key");
      }
      config.grid = grid;
    } else if (key == "medium") {
      config.medium = get<std::string>(value, key);
    } else if (key == "homogeneous_n") {
      config.homogeneous_n = get<double>(value, key);
    } else if (key == "rays") {
      for (const auto& [rk, rv] : value.items()) {
        const std::string full = "rays." + rk;
        if (rk == "step") {
          config.step = get<double>(rv, full);
        } else if (rk == "steps") {
          config.steps = get<std::size_t>(rv, full);
        } else if (rk == "launches") {
          config.rays.clear();
          for (std::size_t i = 0; i < rv.size(); ++i) {
            const std::string item = full + "[" + std::to_string(i) + "]";
            const json& l = rv.at(i);
            if (!l.contains("position") || !l.contains("direction"))
              throw ConfigError("key '" + item + "': needs 'position' and 'direction'");
            const Point3 d = json_point(l.at("direction"), item + ".direction");
            config.rays.push_back({json_point(l.at("position"), item + ".position"), Vec3{d}});
          }
        } else {
          throw ConfigError("key '" + full + "': unknown key");
        }
      }
    } else {
      throw ConfigError("key '" + key + "': unknown key");
    }
  }
}

void apply_config_file(SceneConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    // e.byte is an offset; report the line for humans.
    std::ifstream again(path);
    std::size_t line = 1;
    char ch;
    for (std::size_t i = 0; i + 1 < e.byte && again.get(ch); ++i)
      if (ch == '\n') ++line;
    throw ConfigError(path.string() + ":" + std::to_string(line) + ": " + e.what());
  }
  apply_json(config, doc);
}

void validate(const SceneConfig& config) {
  if (!(config.c > 0.0)) throw ConfigError("key 'c': must be positive");
  if (!(config.step > 0.0)) throw ConfigError("key 'rays.step': must be positive");
  if (config.grid)
    for (std::size_t r : config.grid->resolution)
      if (r < 1) throw ConfigError("key 'grid.resolution': must be at least 1");
  const bool uses_medium = config.mode == Mode::Trace || config.mode == Mode::Inverse;
  try {
    if (uses_medium) find_medium(config.medium, config.homogeneous_n);
    if (config.metric.kind == MetricSpec::Kind::Index)
      find_medium(config.metric.profile, config.homogeneous_n);
  } catch (const Error& e) {
    throw ConfigError(std::string("key 'medium': ") + e.what());
  }
}

}  // namespace geomopt::cli
