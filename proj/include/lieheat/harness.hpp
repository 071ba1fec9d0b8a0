#pragma once

#include "lieheat/analytic.hpp"
#include "lieheat/fd_solver.hpp"
#include "lieheat/problem.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lieheat {

struct RunConfig {
  Problem problem = Problem::ibvp1;
  ThermalConfig thermal;
  GridSpec grid;
  std::filesystem::path output_dir = "out";
};

/// Flat `key = value` format, one pair per line, `#` starts a comment.
/// Keys: problem, T_i, T_s, q0pp, k, rho, c_heat, alpha, L, dx, dt, theta,
/// t_end, snapshot_times (comma separated), output_dir. Material values
/// default to AISI 304 steel and alpha to k/(rho c_heat); grid keys default to
/// GridSpec::defaults(problem). Throws ConfigError carrying the line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// The built-in run for each problem with the AISI 304 data.
RunConfig default_run(Problem p);

/// 12 significant digits, '.' separator, independent of the locale.
std::string format_number(double v);

struct SnapshotError {
  double time = 0.0;
  double linf = 0.0;
  double l2 = 0.0;  // root mean square over the nodes
  double relative_linf = 0.0;
  double scale = 0.0;  // normalizer used for relative_linf
  std::filesystem::path csv;
};

struct ComparisonReport {
  Problem problem = Problem::ibvp1;
  std::vector<SnapshotError> snapshots;
  TruncationReport truncation;
  std::vector<std::string> warnings;
};

/// Temperature scale for relative errors: |T_s - T_i| for ibvp1, the analytic
/// surface temperature for ibvp2. Falls back to 1 K when that scale is zero.
double temperature_scale(Problem p, const ThermalConfig& cfg, double t);

/// Analytic profile at each snapshot time: `<problem>_profile_t<time>.csv`
/// with columns x,t,T_analytic.
std::vector<std::filesystem::path> write_analytic_profiles(const RunConfig& rc);

/// Numeric profile at each snapshot time: `<problem>_fd_t<time>.csv` with
/// columns x,t,T_numeric.
std::vector<std::filesystem::path> write_fd_profiles(const RunConfig& rc, const FdSolution& sol);

/// Runs the FD solver, compares with the closed form on the same nodes and
/// writes `<problem>_compare_t<time>.csv` (x,t,T_analytic,T_numeric,abs_error)
/// plus the analytic profile family.
ComparisonReport run_compare(const RunConfig& rc);

/// Figure datasets: fig1_ibvp1_analytic.csv, fig2_ibvp1_compare.csv,
/// fig3_ibvp2_analytic.csv, fig4_ibvp2_compare.csv.
std::vector<std::filesystem::path> reproduce_figures(const RunConfig& ibvp1, const RunConfig& ibvp2);

std::string format_report(const ComparisonReport& r);

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitConfig = 2, kExitNumerical = 3 };

/// Command-line entry point. Subcommands: verify-algebra, filter, reduce,
/// solve-analytic, solve-fd, compare, reproduce-figures.
int cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Text report of the symmetry and commutator checks; `ok` tells whether
/// every check passed.
struct AlgebraVerification {
  bool ok = true;
  std::vector<std::string> lines;
};
AlgebraVerification verify_algebra();

}  // namespace lieheat
