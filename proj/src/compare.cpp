#include "lieheat/errors.hpp"
#include "lieheat/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace lieheat {

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  // Binary mode keeps '\n' line endings on every platform.
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::string stem(Problem p, const char* kind, double t) {
  return std::string(name(p)) + "_" + kind + "_t" + format_number(t) + ".csv";
}

struct Overlay {
  double time;
  std::vector<double> x, analytic, numeric, error;
};

Overlay overlay(const RunConfig& rc, const Field& f) {
  Overlay o;
  o.time = f.time;
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    const double x = f.x(i);
    const double a = temperature(rc.problem, x, f.time, rc.thermal);
    o.x.push_back(x);
    o.analytic.push_back(a);
    o.numeric.push_back(f.values(i));
    o.error.push_back(std::abs(a - f.values(i)));
  }
  return o;
}

void write_overlay_rows(std::ostream& out, const Overlay& o) {
  for (std::size_t i = 0; i < o.x.size(); ++i) {
    out << format_number(o.x[i]) << ',' << format_number(o.time) << ','
        << format_number(o.analytic[i]) << ',' << format_number(o.numeric[i]) << ','
        << format_number(o.error[i]) << '\n';
  }
}

void write_profile_rows(std::ostream& out, const RunConfig& rc, double t) {
  const Eigen::Index n = rc.grid.intervals();
  for (Eigen::Index i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) * rc.grid.dx;
    out << format_number(x) << ',' << format_number(t) << ','
        << format_number(temperature(rc.problem, x, t, rc.thermal)) << '\n';
  }
}

}  // namespace

double temperature_scale(Problem p, const ThermalConfig& cfg, double t) {
  const double s = p == Problem::ibvp1
                       ? std::abs(cfg.T_s - cfg.T_i)
                       : 2.0 * cfg.q0pp / cfg.kcond * std::sqrt(cfg.alpha * t / std::numbers::pi);
  return s > 0.0 ? s : 1.0;
}

std::vector<std::filesystem::path> write_analytic_profiles(const RunConfig& rc) {
  std::vector<std::filesystem::path> paths;
  for (double t : rc.grid.snapshot_times) {
    const auto path = rc.output_dir / stem(rc.problem, "profile", t);
    auto out = open_csv(path);
    out << "x,t,T_analytic\n";
    write_profile_rows(out, rc, t);
    paths.push_back(path);
  }
  return paths;
}

std::vector<std::filesystem::path> write_fd_profiles(const RunConfig& rc, const FdSolution& sol) {
  std::vector<std::filesystem::path> paths;
  for (const auto& f : sol.snapshots) {
    const auto path = rc.output_dir / stem(rc.problem, "fd", f.time);
    auto out = open_csv(path);
    out << "x,t,T_numeric\n";
    for (Eigen::Index i = 0; i < f.values.size(); ++i)
      out << format_number(f.x(i)) << ',' << format_number(f.time) << ','
          << format_number(f.values(i)) << '\n';
    paths.push_back(path);
  }
  return paths;
}

ComparisonReport run_compare(const RunConfig& rc) {
  // One march serves the snapshots and the end-of-run truncation check.
  GridSpec grid = rc.grid;
  grid.snapshot_times.push_back(grid.t_end);
  const FdSolution sol = solve_fd(rc.problem, rc.thermal, grid);

  ComparisonReport rep;
  rep.problem = rc.problem;
  rep.warnings = sol.warnings;
  for (std::size_t k = 0; k + 1 < sol.snapshots.size(); ++k) {
    const Field& f = sol.snapshots[k];
    const Overlay o = overlay(rc, f);
    SnapshotError e;
    e.time = f.time;
    double sum2 = 0.0;
    for (double v : o.error) {
      e.linf = std::max(e.linf, v);
      sum2 += v * v;
    }
    e.l2 = std::sqrt(sum2 / static_cast<double>(o.error.size()));
    e.scale = temperature_scale(rc.problem, rc.thermal, f.time);
    e.relative_linf = e.linf / e.scale;
    e.csv = rc.output_dir / stem(rc.problem, "compare", f.time);
    auto out = open_csv(e.csv);
    out << "x,t,T_analytic,T_numeric,abs_error\n";
    write_overlay_rows(out, o);
    rep.snapshots.push_back(e);
  }
  rep.truncation = validate_truncation(sol.snapshots.back(), rc.thermal, rc.problem);
  write_analytic_profiles(rc);
  return rep;
}

std::vector<std::filesystem::path> reproduce_figures(const RunConfig& ibvp1, const RunConfig& ibvp2) {
  std::vector<std::filesystem::path> paths;
  int figure = 1;
  for (const RunConfig* rc : {&ibvp1, &ibvp2}) {
    const std::string tag = std::string(name(rc->problem));
    const auto profile_path = rc->output_dir / ("fig" + std::to_string(figure) + "_" + tag + "_analytic.csv");
    {
      auto out = open_csv(profile_path);
      out << "x,t,T_analytic\n";
      for (double t : rc->grid.snapshot_times) write_profile_rows(out, *rc, t);
    }
    const auto compare_path =
        rc->output_dir / ("fig" + std::to_string(figure + 1) + "_" + tag + "_compare.csv");
    {
      const FdSolution sol = solve_fd(rc->problem, rc->thermal, rc->grid);
      auto out = open_csv(compare_path);
      out << "x,t,T_analytic,T_numeric,abs_error\n";
      for (const auto& f : sol.snapshots) write_overlay_rows(out, overlay(*rc, f));
    }
    paths.push_back(profile_path);
    paths.push_back(compare_path);
    figure += 2;
  }
  return paths;
}

std::string format_report(const ComparisonReport& r) {
  std::ostringstream out;
  out << "problem " << name(r.problem) << "\n";
  out << "time_s,Linf_K,L2_K,relative_Linf,scale_K,csv\n";
  for (const auto& s : r.snapshots)
    out << format_number(s.time) << ',' << format_number(s.linf) << ',' << format_number(s.l2)
        << ',' << format_number(s.relative_linf) << ',' << format_number(s.scale) << ','
        << s.csv.string() << "\n";
  const auto& t = r.truncation;
  out << "truncation: far_field=" << format_number(t.far_field)
      << " T(L-dx)=" << format_number(t.near_end_value)
      << " T_analytic(L)=" << format_number(t.analytic_at_L)
      << " deviation=" << format_number(t.deviation) << " tolerance=" << format_number(t.tolerance)
      << (t.pass ? " PASS" : " FAIL") << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

}  // namespace lieheat
