#pragma once

#include "lieheat/problem.hpp"

#include <functional>
#include <optional>

namespace lieheat {

/// Physical parameters in SI units.
struct ThermalConfig {
  double alpha = 0.0;   // m^2/s
  double kcond = 0.0;   // W/(m K)
  double rho = 0.0;     // kg/m^3
  double c_heat = 0.0;  // J/(kg K)
  double T_i = 0.0;     // K
  double T_s = 0.0;     // K
  double q0pp = 0.0;    // W/m^2
  double L = 0.0;       // m

  /// Builds a config; alpha defaults to kcond / (rho c_heat). Throws
  /// NonphysicalParams when alpha, kcond or L is not positive.
  static ThermalConfig make(std::optional<double> alpha, double kcond, double rho,
                            double c_heat, double T_i, double T_s, double q0pp, double L);

  /// AISI 304 steel: k = 18.2, rho = 7822, c = 536 J/(kg K), alpha = k/(rho c),
  /// with the surface-temperature problem's T_i = 300 K, T_s = 900 K and a
  /// 5 kW/m^2 flux. L defaults to 2 m.
  static ThermalConfig aisi304();

  void validate() const;
};

/// Error function with |err| <= 1e-12 (Maclaurin-type series for |y| <= 2.5,
/// continued fraction for erfc beyond).
double erf(double y);
/// Complementary error function, accurate in the tail.
double erfc(double y);

/// Surface temperature problem. Throws DomainError for x < 0 or t <= 0.
double temp_ibvp1(double x, double t, const ThermalConfig& cfg);
/// Surface flux problem, zero initial temperature.
double temp_ibvp2(double x, double t, const ThermalConfig& cfg);
double temperature(Problem p, double x, double t, const ThermalConfig& cfg);

/// Fourier-law heat flux -k dT/dx from the differentiated closed form.
double flux(double x, double t, const ThermalConfig& cfg, Problem p);

/// |T_t - alpha T_xx| by central differences with step h in both variables.
/// Throws DomainError when the stencil leaves x >= 0, t > 0.
double pde_residual(Problem p, double x, double t, double h, const ThermalConfig& cfg);
/// Same for an arbitrary T(x, t).
double pde_residual(const std::function<double(double, double)>& T, double alpha, double x, double t,
                    double h);

}  // namespace lieheat
