#pragma once

#include <iosfwd>

#include "scene.hpp"

namespace geomopt::cli {

/// Writes material.csv and material_summary.json. Returns the exit code.
int cmd_geometrize(const SceneConfig& config, std::ostream& out, std::ostream& err);

/// Writes metric.csv.
int cmd_inverse(const SceneConfig& config, std::ostream& out, std::ostream& err);

/// Writes ray_NNN.csv per ray and rays.svg. Nonzero when a ray fails to launch.
int cmd_trace(const SceneConfig& config, std::ostream& out, std::ostream& err);

/// Prints the verification report. Zero iff every check has its intended outcome.
int cmd_verify(const SceneConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: flags, optional config file, dispatch.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geomopt::cli
