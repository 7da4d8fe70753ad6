#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "geomopt/parallel.hpp"
#include "geomopt/raytrace.hpp"
#include "geomopt/verify.hpp"

namespace geomopt::cli {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return fmt::format("{:.17g}", v); }

GridConfig default_grid() { return {}; }

double physical_radius(CoordinateSystem system, const Point3& p) {
  switch (system) {
    case CoordinateSystem::Cartesian: return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    case CoordinateSystem::Spherical: return std::abs(p[0]);
    case CoordinateSystem::Cylindrical: return std::sqrt(p[0] * p[0] + p[2] * p[2]);
  }
  return 0.0;
}

// Metric of the scene at a grid point given in the scene's coordinates. An
// index profile scales the spatial part of the coordinate vacuum metric by n^2.
Metric4 metric_at(const SceneConfig& config, const MetricSpec& spec, const Point3& p) {
  const Metric4 gamma = coordinate_metric(config.coordinates, p);
  switch (spec.kind) {
    case MetricSpec::Kind::Vacuum: return gamma;
    case MetricSpec::Kind::Matrix: return Metric4(spec.matrix);
    case MetricSpec::Kind::Index: {
      const MediumCatalogEntry medium = find_medium(spec.profile, config.homogeneous_n);
      const double n = medium.profile(physical_radius(config.coordinates, p));
      const Metric4 iso = isotropic_metric_from_index(n);
      if (config.coordinates == CoordinateSystem::Cartesian) return iso;
      Mat4 g = gamma.components();
      for (std::size_t i = 1; i < 4; ++i)
        for (std::size_t j = 1; j < 4; ++j) g(i, j) *= n * n;
      return Metric4(g);
    }
  }
  return gamma;
}

std::ofstream open_output(const SceneConfig& config, const std::string& name) {
  std::filesystem::create_directories(config.out_dir);
  const auto path = config.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

// ---------------------------------------------------------------------------

struct MaterialRow {
  Point3 p;
  std::optional<GeometrizationResult> result;
  std::string flag;
};

}  // namespace

int cmd_geometrize(const SceneConfig& config, std::ostream& out, std::ostream&) {
  const GridConfig grid = config.grid.value_or(default_grid());
  const bool curvilinear = config.coordinates != CoordinateSystem::Cartesian;
  std::vector<MaterialRow> rows(grid.total());
  parallel_for(rows.size(), [&](std::size_t i) {
    MaterialRow& row = rows[i];
    row.p = grid.point(i);
    try {
      const Metric4 g = metric_at(config, config.metric, row.p);
      row.result = curvilinear
                       ? plebanski_curvilinear(g, coordinate_metric(config.coordinates, row.p))
                       : plebanski_cartesian(g);
      if (row.result->negative_g00) row.flag = "negative_g00";
    } catch (const Error& e) {
      row.flag = to_string(e.code());
    }
  });

  std::ofstream csv = open_output(config, "material.csv");
  csv << "x,y,z";
  for (const char* t : {"eps", "mu"})
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) csv << ',' << t << i << j;
  csv << ",w1,w2,w3,flag\n";

  double eig_min = INFINITY, eig_max = -INFINITY, anisotropy = 0.0, max_w = 0.0;
  std::size_t flagged = 0, negative_g00 = 0;
  json failures = json::object();
  for (const MaterialRow& row : rows) {
    csv << num(row.p[0]) << ',' << num(row.p[1]) << ',' << num(row.p[2]);
    if (row.result) {
      const MaterialTensors& m = row.result->material;
      for (double v : m.eps.a) csv << ',' << num(v);
      for (double v : m.mu.a) csv << ',' << num(v);
      for (double v : m.w.c) csv << ',' << num(v);

      Eigen::Matrix3d e;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) e(i, j) = m.eps(i, j);
      const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(e, Eigen::EigenvaluesOnly).eigenvalues();
      eig_min = std::min(eig_min, ev.minCoeff());
      eig_max = std::max(eig_max, ev.maxCoeff());
      if (ev.minCoeff() > 0.0) anisotropy = std::max(anisotropy, ev.maxCoeff() / ev.minCoeff());
      max_w = std::max(max_w, norm(m.w));
      if (row.result->negative_g00) ++negative_g00;
    } else {
      for (int i = 0; i < 21; ++i) csv << ',' << num(kNaN);
      ++flagged;
      failures[row.flag] = failures.value(row.flag, 0) + 1;
    }
    csv << ',' << row.flag << '\n';
  }

  json warnings = json::array();
  if (negative_g00 > 0)
    warnings.push_back(fmt::format("g00 < 0 at {} points: eps may be indefinite", negative_g00));
  for (const auto& [code, count] : failures.items())
    warnings.push_back(fmt::format("{} at {} points", code, count.get<int>()));
  const bool any = flagged < rows.size();
  json summary = {
      {"points", rows.size()},
      {"flagged", flagged},
      {"eps_eigenvalue_min", any ? json(eig_min) : json(nullptr)},
      {"eps_eigenvalue_max", any ? json(eig_max) : json(nullptr)},
      {"max_anisotropy_ratio", any ? json(anisotropy) : json(nullptr)},
      {"max_coupling_norm", any ? json(max_w) : json(nullptr)},
      {"warnings", warnings},
  };
  open_output(config, "material_summary.json") << summary.dump(2) << '\n';
  out << fmt::format("geometrize: {} points, {} flagged -> {}\n", rows.size(), flagged,
                     (config.out_dir / "material.csv").string());
  return 0;
}

int cmd_inverse(const SceneConfig& config, std::ostream& out, std::ostream&) {
  const GridConfig grid = config.grid.value_or(default_grid());
  MetricSpec spec;
  spec.kind = MetricSpec::Kind::Index;
  spec.profile = config.medium;
  struct Row {
    Point3 p;
    std::optional<Metric4> g;
    std::string flag;
  };
  std::vector<Row> rows(grid.total());
  parallel_for(rows.size(), [&](std::size_t i) {
    rows[i].p = grid.point(i);
    try {
      rows[i].g = metric_at(config, spec, rows[i].p);
    } catch (const Error& e) {
      rows[i].flag = to_string(e.code());
    }
  });

  std::ofstream csv = open_output(config, "metric.csv");
  csv << "x,y,z,g00,g01,g02,g03,g11,g12,g13,g22,g23,g33,flag\n";
  std::size_t flagged = 0;
  for (const Row& row : rows) {
    csv << num(row.p[0]) << ',' << num(row.p[1]) << ',' << num(row.p[2]);
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a; b < 4; ++b) csv << ',' << num(row.g ? (*row.g)(a, b) : kNaN);
    csv << ',' << row.flag << '\n';
    if (!row.g) ++flagged;
  }
  out << fmt::format("inverse: {} points, {} flagged -> {}\n", rows.size(), flagged,
                     (config.out_dir / "metric.csv").string());
  return 0;
}

// ---------------------------------------------------------------------------

namespace {

struct Bounds {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  void add(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
};

std::vector<RayLaunch> default_rays(const std::string& medium) {
  if (medium == "luneburg") {
    std::vector<RayLaunch> fan;
    for (int i = 0; i < 11; ++i) fan.push_back({{-2.0, -0.9 + 0.18 * i, 0.0}, Vec3{{1.0, 0.0, 0.0}}});
    return fan;
  }
  if (medium == "maxwell_fisheye") return {{{0.5, 0.0, 0.0}, Vec3{{0.0, 1.0, 0.0}}}};
  return {{{-2.0, 0.0, 0.0}, Vec3{{1.0, 0.0, 0.0}}}};
}

// Affine length that carries the default rays across the scene.
double default_length(const std::string& medium, double homogeneous_n) {
  if (medium == "luneburg") return 5.0;
  if (medium == "maxwell_fisheye") return 2.0 * std::numbers::pi;
  return 4.0 * homogeneous_n;
}

// Radii at which the radial profile crosses evenly spaced levels of n.
std::vector<std::pair<double, double>> contour_radii(const RadialIndexProfile& profile, double rmax) {
  constexpr int kSamples = 2000;
  std::vector<double> r(kSamples + 1), n(kSamples + 1);
  for (int i = 0; i <= kSamples; ++i) {
    r[i] = rmax * i / kSamples;
    n[i] = profile(r[i]);
  }
  const auto [lo, hi] = std::minmax_element(n.begin(), n.end());
  std::vector<std::pair<double, double>> out;
  if (*hi - *lo < 1e-12) return out;
  constexpr int kLevels = 8;
  for (int l = 1; l <= kLevels; ++l) {
    const double level = *lo + (*hi - *lo) * l / (kLevels + 1);
    for (int i = 0; i < kSamples; ++i) {
      const double a = n[i] - level, b = n[i + 1] - level;
      if (a == 0.0 || a * b < 0.0) out.emplace_back(r[i] + (r[i + 1] - r[i]) * a / (a - b), level);
    }
  }
  return out;
}

}  // namespace

int cmd_trace(const SceneConfig& config, std::ostream& out, std::ostream& err) {
  const MediumCatalogEntry medium = find_medium(config.medium, config.homogeneous_n);
  const MetricField field = medium.field();
  const std::vector<RayLaunch> rays = config.rays.empty() ? default_rays(medium.name) : config.rays;
  TraceOptions options;
  options.step = config.step;
  options.steps = config.steps.value_or(static_cast<std::size_t>(
      std::ceil(default_length(medium.name, config.homogeneous_n) / config.step)));

  std::vector<std::optional<Trajectory>> traces(rays.size());
  std::vector<std::string> errors(rays.size());
  parallel_for(rays.size(), [&](std::size_t i) {
    try {
      const Point3& p = rays[i].position;
      const Vector4 k = launch_covector(field, p, rays[i].direction);
      traces[i] = trace_ray(field, {0.0, p[0], p[1], p[2]}, k, options);
    } catch (const Error& e) {
      errors[i] = fmt::format("{}: {}", to_string(e.code()), e.what());
    }
  });

  int status = 0;
  Bounds world;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (!traces[i]) {
      err << fmt::format("ray {}: {}\n", i, errors[i]);
      status = 1;
      continue;
    }
    std::ofstream csv = open_output(config, fmt::format("ray_{:03d}.csv", i));
    csv << "lambda,t,x,y,z,kt,kx,ky,kz,H\n";
    for (const RayState& s : traces[i]->states) {
      csv << num(s.lambda) << ',' << num(s.x[0] / config.c);
      for (std::size_t a = 1; a < 4; ++a) csv << ',' << num(s.x[a]);
      for (std::size_t a = 0; a < 4; ++a) csv << ',' << num(s.k[a]);
      csv << ',' << num(s.hamiltonian) << '\n';
      world.add(s.x[1], s.x[2]);
    }
    out << fmt::format("ray {}: {} states, {}, max |H| {:.3e}\n", i, traces[i]->states.size(),
                       traces[i]->status == TraceStatus::Completed ? "completed" : "left domain",
                       traces[i]->max_null_drift);
  }

  // World window: the configured grid, else the rays padded to a square.
  if (config.grid) {
    const GridConfig& g = *config.grid;
    world = {};
    world.add(g.origin[0], g.origin[1]);
    world.add(g.origin[0] + g.extent[0], g.origin[1] + g.extent[1]);
  } else {
    if (!std::isfinite(world.xmin)) world.add(-1.0, -1.0), world.add(1.0, 1.0);
    const double cx = 0.5 * (world.xmin + world.xmax), cy = 0.5 * (world.ymin + world.ymax);
    const double half = 0.55 * std::max({world.xmax - world.xmin, world.ymax - world.ymin, 1e-9});
    world = {};
    world.add(cx - half, cy - half);
    world.add(cx + half, cy + half);
  }
  constexpr double kView = 800.0;
  const double sx = kView / std::max(world.xmax - world.xmin, 1e-12);
  const double sy = kView / std::max(world.ymax - world.ymin, 1e-12);
  auto vx = [&](double x) { return (x - world.xmin) * sx; };
  auto vy = [&](double y) { return kView - (y - world.ymin) * sy; };

  std::ofstream svg = open_output(config, "rays.svg");
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  svg << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  const double rmax = std::hypot(std::max(std::abs(world.xmin), std::abs(world.xmax)),
                                 std::max(std::abs(world.ymin), std::abs(world.ymax)));
  for (const auto& [r, level] : contour_radii(medium.profile, rmax)) {
    svg << fmt::format(
        "<ellipse cx=\"{:.3f}\" cy=\"{:.3f}\" rx=\"{:.3f}\" ry=\"{:.3f}\" fill=\"none\" "
        "stroke=\"#bbbbbb\" stroke-width=\"1\"><title>n = {:.4f}</title></ellipse>\n",
        vx(0.0), vy(0.0), r * sx, r * sy, level);
  }
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (!traces[i]) continue;
    svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    const auto& states = traces[i]->states;
    // Thin long traces so the file stays small; always keep the last point.
    const std::size_t stride = std::max<std::size_t>(1, states.size() / 2000);
    for (std::size_t j = 0; j < states.size(); j += stride)
      svg << fmt::format("{:.3f},{:.3f} ", vx(states[j].x[1]), vy(states[j].x[2]));
    svg << fmt::format("{:.3f},{:.3f}", vx(states.back().x[1]), vy(states.back().x[2]));
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return status;
}

int cmd_verify(const SceneConfig& config, std::ostream& out, std::ostream&) {
  bool ok = true;
  for (const CheckResult& check : run_verification_suite(config.seed)) {
    out << check.report_line() << '\n';
    ok = ok && check.ok();
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometrization toolkit: metrics to media, media to metrics, rays and checks"};
  std::string positional_mode, mode_flag, config_path, out_dir, grid, metric, medium, coords;
  std::optional<std::uint64_t> seed;
  std::optional<double> step, c, homogeneous_n;
  std::optional<std::size_t> steps;
  const auto modes = CLI::IsMember({"geometrize", "inverse", "trace", "verify"});
  app.add_option("command", positional_mode, "geometrize | inverse | trace | verify")->check(modes);
  app.add_option("--mode", mode_flag, "Same as the positional command")->check(modes);
  app.add_option("--config", config_path, "JSON scene file")->check(CLI::ExistingFile);
  app.add_option("--out-dir", out_dir, "Output directory");
  app.add_option("--seed", seed, "Seed for the verification draws");
  app.add_option("--step", step, "Affine step for ray tracing");
  app.add_option("--steps", steps, "Number of ray steps");
  app.add_option("--grid", grid, "nx,ny,nz or ox,oy,oz:ex,ey,ez:nx,ny,nz");
  app.add_option("--metric", metric, "minkowski | diag:a,b,c,d | matrix:16 values | index:NAME");
  app.add_option("--medium", medium, "Catalog medium: maxwell_fisheye | luneburg | homogeneous");
  app.add_option("--homogeneous-n", homogeneous_n, "Index of the homogeneous medium");
  app.add_option("--coordinates", coords, "cartesian | spherical | cylindrical")
      ->check(CLI::IsMember({"cartesian", "spherical", "cylindrical"}));
  app.add_option("--c", c, "Speed of light");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    SceneConfig config;
    if (!config_path.empty()) apply_config_file(config, config_path);
    json overrides = json::object();
    if (!mode_flag.empty()) config.mode = parse_mode(mode_flag);
    if (!positional_mode.empty()) config.mode = parse_mode(positional_mode);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (seed) config.seed = *seed;
    if (step) config.step = *step;
    if (steps) config.steps = *steps;
    if (c) config.c = *c;
    if (homogeneous_n) config.homogeneous_n = *homogeneous_n;
    if (!coords.empty()) overrides["coordinates"] = coords;
    if (!medium.empty()) config.medium = medium;
    if (!metric.empty()) config.metric = parse_metric(metric);
    if (!grid.empty()) {
      GridConfig g = config.grid.value_or(default_grid());
      apply_grid_flag(g, grid);
      config.grid = g;
    }
    apply_json(config, overrides);
    validate(config);

    switch (config.mode) {
      case Mode::Geometrize: return cmd_geometrize(config, out, err);
      case Mode::Inverse: return cmd_inverse(config, out, err);
      case Mode::Trace: return cmd_trace(config, out, err);
      case Mode::Verify: return cmd_verify(config, out, err);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace geomopt::cli
