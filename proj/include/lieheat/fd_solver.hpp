#pragma once

#include "lieheat/analytic.hpp"
#include "lieheat/problem.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>
#include <vector>

namespace lieheat {

/// Uniform grid on [0, L] and a theta time scheme (0 explicit, 1/2
/// Crank-Nicolson, 1 implicit).
struct GridSpec {
  double L = 2.0;
  double dx = 2e-3;
  double dt = 1.0;
  double theta = 0.5;
  double t_end = 3600.0;
  std::vector<double> snapshot_times{60.0, 600.0, 3600.0};

  /// Default grid for each problem (ibvp1: L = 2 m, dx = 2 mm, dt = 1 s;
  /// ibvp2: L = 10 m, dx = 5 mm, dt = 5 s; both to 3600 s).
  static GridSpec defaults(Problem p);

  Eigen::Index intervals() const;
  /// r = alpha dt / dx^2.
  double mesh_ratio(double alpha) const { return alpha * dt / (dx * dx); }
  /// Throws ConfigError for a malformed grid and StabilityViolation when an
  /// explicit-leaning scheme is unstable for this alpha.
  void validate(double alpha) const;
};

struct Field {
  Eigen::VectorXd values;
  double time = 0.0;
  double dx = 0.0;

  double x(Eigen::Index i) const { return static_cast<double>(i) * dx; }
};

struct FdSolution {
  std::vector<Field> snapshots;  // in the order of GridSpec::snapshot_times
  std::vector<std::string> warnings;
};

using StepObserver = std::function<void(const Field&)>;

/// Marches the theta scheme. ibvp1: T = T_s at x = 0, T = T_i at x = L,
/// initial T_i. ibvp2: -k T_x(0) = q0pp through a ghost node, T = 0 at x = L,
/// initial 0. Each step is one tridiagonal solve.
FdSolution solve_fd(Problem problem, const ThermalConfig& cfg, const GridSpec& grid,
                    const StepObserver& observer = {});

struct TruncationReport {
  double far_field = 0.0;
  double near_end_value = 0.0;  // FD value at the last free node (x = L - dx)
  double analytic_at_L = 0.0;   // semi-infinite solution at (L, time)
  double deviation = 0.0;       // worst of the two against the far field
  double tolerance = 0.1;
  bool pass = false;
};

/// Checks that the truncated domain did not feel the far boundary. The node
/// at x = L is pinned by the Dirichlet condition, so the check uses the last
/// free node together with the analytic value at x = L.
TruncationReport validate_truncation(const Field& last, const ThermalConfig& cfg, Problem problem,
                                     double tolerance = 0.1);

}  // namespace lieheat
