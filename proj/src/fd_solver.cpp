#include "lieheat/fd_solver.hpp"

#include "lieheat/errors.hpp"
#include "lieheat/tridiagonal.hpp"

#include <cmath>
#include <sstream>

namespace lieheat {

namespace {

Eigen::Index checked_ratio(double num, double den, const char* what) {
  const double q = num / den;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, q)) {
    std::ostringstream msg;
    msg << what << " = " << q << " is not an integer";
    throw ConfigError(msg.str());
  }
  return static_cast<Eigen::Index>(r);
}

}  // namespace

GridSpec GridSpec::defaults(Problem p) {
  GridSpec g;
  if (p == Problem::ibvp2) {
    g.L = 10.0;
    g.dx = 5e-3;
    g.dt = 5.0;
  }
  return g;
}

Eigen::Index GridSpec::intervals() const { return checked_ratio(L, dx, "L/dx"); }

void GridSpec::validate(double alpha) const {
  if (!(L > 0.0) || !(dx > 0.0)) throw ConfigError("L and dx must be positive");
  if (intervals() < 8) throw ConfigError("L/dx must be at least 8");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in [0, 1]");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  checked_ratio(t_end, dt, "t_end/dt");
  for (double s : snapshot_times) {
    if (!(s > 0.0) || s > t_end * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "snapshot time " << s << " outside (0, t_end]";
      throw ConfigError(msg.str());
    }
  }
  if (theta < 0.5) {
    const double limit = 1.0 / (2.0 * (1.0 - 2.0 * theta));
    const double r = mesh_ratio(alpha);
    if (r > limit * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "mesh ratio r = " << r << " exceeds the stability limit " << limit
          << " for theta = " << theta;
      throw StabilityViolation(msg.str());
    }
  }
}

FdSolution solve_fd(Problem problem, const ThermalConfig& cfg, const GridSpec& grid,
                    const StepObserver& observer) {
  cfg.validate();
  grid.validate(cfg.alpha);

  const Eigen::Index n = grid.intervals();
  const Eigen::Index steps = checked_ratio(grid.t_end, grid.dt, "t_end/dt");
  const double r = grid.mesh_ratio(cfg.alpha);
  const double th = grid.theta;

  FdSolution out;
  // Snapshot step indices, snapped to the time grid.
  std::vector<Eigen::Index> snap_steps;
  for (double s : grid.snapshot_times) {
    auto k = static_cast<Eigen::Index>(std::llround(s / grid.dt));
    k = std::clamp<Eigen::Index>(k, 1, steps);
    if (std::abs(static_cast<double>(k) * grid.dt - s) > 0.5 * grid.dt) {
      std::ostringstream msg;
      msg << "snapshot time " << s << " moved to " << static_cast<double>(k) * grid.dt;
      out.warnings.push_back(msg.str());
    }
    snap_steps.push_back(k);
  }
  out.snapshots.resize(snap_steps.size());

  const bool flux = problem == Problem::ibvp2;
  const double far = flux ? 0.0 : cfg.T_i;
  const double ghost_source = flux ? 2.0 * r * grid.dx * cfg.q0pp / cfg.kcond : 0.0;

  // March the deviation from the far-field value so uniform states stay exact.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 1);
  Field u{Eigen::VectorXd::Constant(n + 1, far), 0.0, grid.dx};

  // Implicit part of the step matrix, constant over the march.
  Eigen::VectorXd lower = Eigen::VectorXd::Constant(n, -th * r);
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(n + 1, 1.0 + 2.0 * th * r);
  Eigen::VectorXd upper = Eigen::VectorXd::Constant(n, -th * r);
  if (flux) {
    upper(0) = -2.0 * th * r;
  } else {
    diag(0) = 1.0;
    upper(0) = 0.0;
  }
  diag(n) = 1.0;
  lower(n - 1) = 0.0;

  Eigen::VectorXd rhs(n + 1);
  const double expl = (1.0 - th) * r;
  for (Eigen::Index step = 1; step <= steps; ++step) {
    const auto& v = w;
    for (Eigen::Index i = 1; i < n; ++i)
      rhs(i) = v(i) + expl * (v(i - 1) - 2.0 * v(i) + v(i + 1));
    if (flux)
      rhs(0) = v(0) + expl * (2.0 * v(1) - 2.0 * v(0)) + ghost_source;
    else
      rhs(0) = cfg.T_s - far;
    rhs(n) = 0.0;

    w = thomas_solve<double>(lower, diag, upper, rhs);
    u.values = w.array() + far;
    u.time = static_cast<double>(step) * grid.dt;
    if (!u.values.allFinite()) throw NumericalFailure("non-finite value in the FD march");
    if (observer) observer(u);
    for (std::size_t s = 0; s < snap_steps.size(); ++s)
      if (snap_steps[s] == step) out.snapshots[s] = u;
  }
  return out;
}

TruncationReport validate_truncation(const Field& last, const ThermalConfig& cfg, Problem problem,
                                     double tolerance) {
  TruncationReport rep;
  rep.tolerance = tolerance;
  rep.far_field = problem == Problem::ibvp1 ? cfg.T_i : 0.0;
  const Eigen::Index n = last.values.size() - 1;
  rep.near_end_value = last.values(std::max<Eigen::Index>(n - 1, 0));
  const double L = last.x(n);
  rep.analytic_at_L = temperature(problem, L, last.time, cfg);
  rep.deviation = std::max(std::abs(rep.near_end_value - rep.far_field),
                           std::abs(rep.analytic_at_L - rep.far_field));
  rep.pass = rep.deviation <= tolerance;
  return rep;
}

}  // namespace lieheat
