#pragma once

// Null-geodesic tracing in static effective metrics, with the Hamiltonian
// H = 1/2 g^{ab} k_a k_b, and a catalog of gradient-index test media.

#include <cstddef>
#include <string>
#include <vector>

#include "geomopt/geometrize.hpp"
#include "geomopt/tensor.hpp"

namespace geomopt {

struct RayState {
  Vector4 x{};  // (t, x, y, z)
  Vector4 k{};  // (k_t, k_x, k_y, k_z)
  double lambda = 0.0;
  double hamiltonian = 0.0;
};

/// 1/2 g^{ab} k_a k_b for an inverse metric.
double hamiltonian(const Metric4& g_inv, const Vector4& k);

struct TraceOptions {
  double step = 1e-3;
  std::size_t steps = 1000;
  /// Finite-difference step for metric gradients, relative to the largest
  /// finite extent of the field's domain (1 when the domain is unbounded).
  double fd_delta = 1e-5;
  /// Launch tolerance on |H|.
  double null_tolerance = 1e-9;
  /// Rescale the spatial part of k0 onto the null cone before launching.
  bool project_to_null = false;
};

enum class TraceStatus { Completed, DomainExit };

struct Trajectory {
  /// Launch state, one state per step, plus one extra state at every
  /// interface crossing of a piecewise field.
  std::vector<RayState> states;
  TraceStatus status = TraceStatus::Completed;
  double max_null_drift = 0.0;
};

/// Fixed-step RK4 on dx^a/dl = g^{ab} k_b, dk_a/dl = -1/2 d_a g^{bc} k_b k_c.
/// In piecewise fields each step uses a single smooth branch; a step that
/// crosses the interface is split at the crossing, located by Illinois
/// regula falsi. A ray leaving field.domain stops with DomainExit after the
/// first outside state. Throws NonNullLaunch when |H(x0, k0)| exceeds
/// null_tolerance after optional projection.
Trajectory trace_ray(const MetricField& field, const Vector4& x0, const Vector4& k0,
                     const TraceOptions& options = {});

struct Launch {
  Vector4 x;
  Vector4 k;
};

/// Traces independent rays in parallel.
std::vector<Trajectory> trace_fan(const MetricField& field, const std::vector<Launch>& launches,
                                  const TraceOptions& options = {});

/// Null covector with k_0 = omega whose ray leaves x0 along the spatial
/// direction `direction`. Throws NonNullLaunch if no future-directed null
/// vector points that way.
Vector4 launch_covector(const MetricField& field, const Point3& x0, const Vec3& direction,
                        double omega = 1.0);

/// Rescales the spatial components of k so that H = 0, picking the root
/// closest to the input. Throws NonNullLaunch if none exists.
Vector4 project_to_null(const Metric4& g_inv, const Vector4& k);

// ---------------------------------------------------------------------------

struct MediumCatalogEntry {
  std::string name;
  RadialIndexProfile profile;
  Box3 domain;

  MetricField field() const { return lift_index_profile(profile, name, domain); }
};

/// maxwell_fisheye: n = 2/(1+r^2); luneburg: n = sqrt(2-r^2) for r <= 1, else 1;
/// homogeneous: n = homogeneous_n.
std::vector<MediumCatalogEntry> catalog(double homogeneous_n = 1.0);

/// Throws UnknownMedium.
MediumCatalogEntry find_medium(const std::string& name, double homogeneous_n = 1.0);

}  // namespace geomopt
