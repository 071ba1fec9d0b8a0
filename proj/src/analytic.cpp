#include "lieheat/analytic.hpp"

#include "lieheat/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lieheat {

namespace {

constexpr double kSeriesLimit = 2.5;

// erf(y) = 2/sqrt(pi) e^{-y^2} sum_n 2^n y^{2n+1} / (1*3*...*(2n+1)).
// All terms are positive, so there is no cancellation.
double erf_series(double y) {
  const double two_y2 = 2.0 * y * y;
  double term = y;
  double sum = y;
  for (int n = 1; n < 200; ++n) {
    term *= two_y2 / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-y * y) * sum;
}

// erfc(y) = e^{-y^2} / (sqrt(pi) f), f = y + (1/2)/(y + 1/(y + (3/2)/(y + ...))),
// evaluated with the modified Lentz method. Requires y > 0.
double erfc_continued_fraction(double y) {
  constexpr double tiny = 1e-300;
  double f = y;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = y + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = y + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-y * y) / (std::sqrt(std::numbers::pi) * f);
}

void check_point(double x, double t) {
  if (!(t > 0.0)) throw DomainError("t must be positive, got " + std::to_string(t));
  if (!(x >= 0.0)) throw DomainError("x must be nonnegative, got " + std::to_string(x));
}

double similarity_arg(double x, double t, double alpha) {
  return x / (2.0 * std::sqrt(alpha * t));
}

}  // namespace

ThermalConfig ThermalConfig::make(std::optional<double> alpha, double kcond, double rho,
                                  double c_heat, double T_i, double T_s, double q0pp,
                                  double L) {
  ThermalConfig cfg;
  cfg.kcond = kcond;
  cfg.rho = rho;
  cfg.c_heat = c_heat;
  cfg.T_i = T_i;
  cfg.T_s = T_s;
  cfg.q0pp = q0pp;
  cfg.L = L;
  if (alpha) {
    cfg.alpha = *alpha;
  } else {
    if (!(rho > 0.0) || !(c_heat > 0.0))
      throw NonphysicalParams("rho and c_heat must be positive to derive alpha");
    cfg.alpha = kcond / (rho * c_heat);
  }
  cfg.validate();
  return cfg;
}

ThermalConfig ThermalConfig::aisi304() {
  return make(std::nullopt, 18.2, 7822.0, 536.0, 300.0, 900.0, 5000.0, 2.0);
}

void ThermalConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw NonphysicalParams("alpha must be positive");
  if (!(kcond > 0.0) || !std::isfinite(kcond)) throw NonphysicalParams("kcond must be positive");
  if (!(L > 0.0) || !std::isfinite(L)) throw NonphysicalParams("L must be positive");
}

double erf(double y) {
  if (std::isnan(y)) return y;
  const double a = std::abs(y);
  const double v = a <= kSeriesLimit ? erf_series(a) : 1.0 - erfc_continued_fraction(a);
  return y < 0 ? -v : v;
}

double erfc(double y) {
  if (std::isnan(y)) return y;
  if (y > kSeriesLimit) return erfc_continued_fraction(y);
  if (y < -kSeriesLimit) return 2.0 - erfc_continued_fraction(-y);
  return 1.0 - erf(y);
}

double temp_ibvp1(double x, double t, const ThermalConfig& cfg) {
  check_point(x, t);
  return (cfg.T_i - cfg.T_s) * erf(similarity_arg(x, t, cfg.alpha)) + cfg.T_s;
}

double temp_ibvp2(double x, double t, const ThermalConfig& cfg) {
  check_point(x, t);
  const double eta = similarity_arg(x, t, cfg.alpha);
  const double scale = cfg.q0pp / cfg.kcond;
  // x (erf - 1) written as -x erfc to keep the far field accurate.
  return scale * (2.0 * std::sqrt(cfg.alpha * t / std::numbers::pi) * std::exp(-eta * eta) -
                  x * erfc(eta));
}

double temperature(Problem p, double x, double t, const ThermalConfig& cfg) {
  return p == Problem::ibvp1 ? temp_ibvp1(x, t, cfg) : temp_ibvp2(x, t, cfg);
}

double flux(double x, double t, const ThermalConfig& cfg, Problem p) {
  check_point(x, t);
  const double eta = similarity_arg(x, t, cfg.alpha);
  if (p == Problem::ibvp1) {
    return cfg.kcond * (cfg.T_s - cfg.T_i) * std::exp(-eta * eta) /
           std::sqrt(std::numbers::pi * cfg.alpha * t);
  }
  // dT/dx = -(q0pp / k) erfc(eta): the Gaussian terms cancel.
  return cfg.q0pp * erfc(eta);
}

double pde_residual(const std::function<double(double, double)>& T, double alpha, double x, double t,
                    double h) {
  if (!(h > 0.0)) throw DomainError("step must be positive");
  if (x - h < 0.0 || t - h <= 0.0) throw DomainError("stencil leaves the domain");
  const double c = T(x, t);
  const double dt = (T(x, t + h) - T(x, t - h)) / (2.0 * h);
  const double dxx = (T(x + h, t) - 2.0 * c + T(x - h, t)) / (h * h);
  return std::abs(dt - alpha * dxx);
}

double pde_residual(Problem p, double x, double t, double h, const ThermalConfig& cfg) {
  return pde_residual([&](double xx, double tt) { return temperature(p, xx, tt, cfg); }, cfg.alpha, x,
                      t, h);
}

}  // namespace lieheat
