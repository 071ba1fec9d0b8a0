#include "lieheat/bvp_filter.hpp"
#include "lieheat/errors.hpp"
#include "lieheat/harness.hpp"
#include "lieheat/parse.hpp"
#include "lieheat/reduction.hpp"
#include "lieheat/vector_field.hpp"

#include <CLI11.hpp>

#include <array>
#include <ostream>

namespace lieheat {

AlgebraVerification verify_algebra() {
  AlgebraVerification v;
  auto record = [&v](bool ok, const std::string& what) {
    v.ok = v.ok && ok;
    v.lines.push_back(std::string(ok ? "PASS  " : "FAIL  ") + what);
  };

  for (int i = 1; i <= 6; ++i) {
    const auto check = check_symmetry(named_generator(i));
    record(check.holds, "symmetry X" + std::to_string(i) +
                            (check.holds ? "" : " (" + check.diagnostic + ")"));
  }
  for (const char* f : {"1", "x", "x^2 + 2*alpha*t", "x^3 + 6*alpha*x*t"}) {
    const auto check = check_symmetry(inf_generator(parse_expr(f)));
    record(check.holds, std::string("symmetry X_inf f = ") + f);
  }
  // A field that must be rejected: f = x t does not solve the heat equation.
  record(!is_symmetry(inf_generator(parse_expr("x*t"))), "rejects X_inf f = x*t");

  for (int i = 1; i <= 6; ++i) {
    for (int j = i + 1; j <= 6; ++j) {
      const auto bracket = commutator(named_generator(i), named_generator(j));
      const auto exp = expand_in_algebra(bracket);
      std::string terms;
      for (int k = 0; k < 6; ++k) {
        const auto& c = exp.coeffs[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        terms += (terms.empty() ? "" : " + ") + ("(" + to_string(c) + ")*X" + std::to_string(k + 1));
      }
      if (!exp.remainder.is_zero()) terms += (terms.empty() ? "" : " + ") + ("X_inf[" + to_string(exp.remainder) + "]");
      if (terms.empty()) terms = "0";
      record(exp.in_span, "[X" + std::to_string(i) + ", X" + std::to_string(j) + "] = " + terms +
                              (exp.in_span ? "" : " (" + exp.diagnostic + ")"));
    }
  }
  return v;
}

namespace {

Problem parse_problem(const std::string& s) {
  const auto p = problem_from_name(s);
  if (!p) throw ConfigError("unknown problem '" + s + "'");
  return *p;
}

void print_filter(const FilterReport& r, std::ostream& out) {
  out << "problem " << name(r.problem) << "\n";
  out << "general operator X = k1*X1 + k2*X2 + k3*X3 + k4*X4 + k5*X5 + k6*X6\n";
  for (const auto& d : r.boundaries) {
    out << d.label << ": ";
    if (!d.note.empty())
      out << d.note << "\n";
    else
      out << to_string(d.residual) << " = 0  =>  " << d.constraints.summary() << "\n";
  }
  out << "boundary constraints: " << r.boundary_rows.summary() << "\n";
  for (const auto& d : r.conditions) {
    out << d.label << ": " << to_string(d.condition);
    if (!(d.condition == d.residual)) out << "  ->  " << to_string(d.residual);
    out << " = 0  =>  " << (d.constraints.empty() ? "(none)" : d.constraints.summary());
    if (!d.note.empty()) out << "  [" << d.note << "]";
    out << "\n";
  }
  out << "condition constraints:\n";
  for (const auto& row : r.condition_rows.describe_rows()) out << "  " << row << "\n";
  out << "all constraints:\n";
  for (const auto& row : r.combined.describe_rows()) out << "  " << row << "\n";
  out << "admitted basis:";
  if (r.admitted.basis.empty()) out << " (trivial operator only)";
  out << "\n";
  for (const auto& b : r.admitted.basis) {
    out << "  " << describe_operator(b) << " = " << to_string(operator_from(b)) << "\n";
  }
}

RunConfig config_or_default(const std::string& path, Problem p) {
  return path.empty() ? default_run(p) : load_config(path);
}

}  // namespace

int cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry reduction and verification for transient conduction in a semi-infinite solid",
               "lieheat"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify-algebra", "check the symmetry algebra of T_t = alpha T_xx");

  std::string problem_name;
  auto* filter = app.add_subcommand("filter", "constraints from boundaries and boundary conditions");
  filter->add_option("--problem", problem_name, "ibvp1 or ibvp2")->required();

  std::string reduce_problem_name, reduce_config;
  auto* reduce = app.add_subcommand("reduce", "similarity reduction and closed-form solution");
  reduce->add_option("--problem", reduce_problem_name, "ibvp1 or ibvp2")->required();
  reduce->add_option("--config", reduce_config, "config supplying physical parameters");

  std::string config_path;
  auto* analytic = app.add_subcommand("solve-analytic", "write analytic profile CSVs");
  analytic->add_option("--config", config_path, "run configuration")->required();
  auto* fd = app.add_subcommand("solve-fd", "run the finite-difference solver");
  fd->add_option("--config", config_path, "run configuration")->required();
  auto* compare = app.add_subcommand("compare", "analytic versus finite-difference comparison");
  compare->add_option("--config", config_path, "run configuration")->required();

  std::vector<std::string> figure_configs;
  auto* figures = app.add_subcommand("reproduce-figures", "write the four figure datasets");
  figures->add_option("--config", figure_configs, "run configuration (at most one per problem)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }

  try {
    if (*verify) {
      const auto v = verify_algebra();
      for (const auto& line : v.lines) out << line << "\n";
      out << (v.ok ? "all checks passed" : "some checks failed") << "\n";
      return v.ok ? kExitOk : kExitNumerical;
    }
    if (*filter) {
      print_filter(filter_problem(parse_problem(problem_name)), out);
      return kExitOk;
    }
    if (*reduce) {
      const Problem p = parse_problem(reduce_problem_name);
      const RunConfig rc = config_or_default(reduce_config, p);
      if (rc.problem != p) throw ConfigError("config problem does not match --problem");
      const auto r = reduce_problem(p, rc.thermal);
      out << "problem " << name(p) << "\n";
      out << "admitted operator: " << describe_operator(r.chart.source) << "\n";
      out << "similarity chart: " << describe(r.chart) << "\n";
      out << "reduced ODE: " << to_string(r.ode) << "\n";
      out << "reduced ODE (divided): " << to_string_divided(r.ode) << "\n";
      out << "general solution: " << to_string(r.general) << "\n";
      out << "fitted constants: c1 = " << format_number(*r.fitted.c1)
          << ", c2 = " << format_number(*r.fitted.c2) << "\n";
      out << "fitted solution: " << to_string(r.fitted) << "\n";
      return kExitOk;
    }
    if (*analytic) {
      const RunConfig rc = load_config(config_path);
      for (const auto& path : write_analytic_profiles(rc)) out << "wrote " << path.string() << "\n";
      return kExitOk;
    }
    if (*fd) {
      const RunConfig rc = load_config(config_path);
      GridSpec grid = rc.grid;
      grid.snapshot_times.push_back(grid.t_end);
      FdSolution sol = solve_fd(rc.problem, rc.thermal, grid);
      const Field last = sol.snapshots.back();
      sol.snapshots.pop_back();
      for (const auto& path : write_fd_profiles(rc, sol)) out << "wrote " << path.string() << "\n";
      for (const auto& w : sol.warnings) err << "warning: " << w << "\n";
      const auto t = validate_truncation(last, rc.thermal, rc.problem);
      out << "truncation deviation " << format_number(t.deviation) << " K: " << (t.pass ? "PASS" : "FAIL")
          << "\n";
      return kExitOk;
    }
    if (*compare) {
      const RunConfig rc = load_config(config_path);
      out << format_report(run_compare(rc));
      return kExitOk;
    }
    if (*figures) {
      if (figure_configs.size() > 2) throw ConfigError("at most two configs");
      std::array<RunConfig, 2> runs{default_run(Problem::ibvp1), default_run(Problem::ibvp2)};
      std::array<bool, 2> given{false, false};
      for (const auto& path : figure_configs) {
        RunConfig rc = load_config(path);
        const auto slot = static_cast<std::size_t>(rc.problem == Problem::ibvp1 ? 0 : 1);
        if (given[slot]) throw ConfigError("two configs for " + std::string(name(rc.problem)));
        given[slot] = true;
        runs[slot] = rc;
      }
      // A problem without its own config borrows material data and the
      // output directory from the other one.
      for (std::size_t s = 0; s < 2; ++s) {
        if (given[s] || !given[1 - s]) continue;
        const auto& src = runs[1 - s];
        auto& dst = runs[s];
        dst.output_dir = src.output_dir;
        dst.thermal.alpha = src.thermal.alpha;
        dst.thermal.kcond = src.thermal.kcond;
        dst.thermal.rho = src.thermal.rho;
        dst.thermal.c_heat = src.thermal.c_heat;
      }
      for (const auto& path : reproduce_figures(runs[0], runs[1])) out << "wrote " << path.string() << "\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  err << app.help();
  return kExitUsage;
}

int cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("lieheat");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lieheat
