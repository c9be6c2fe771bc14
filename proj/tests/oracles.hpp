#pragma once

#include <cmath>
#include <functional>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// Tanh-sinh quadrature of f on (0, 1). f receives (t, 1 - t) so endpoint
// singularities can be evaluated without cancellation.
inline double tanh_sinh_01(const std::function<double(double, double)>& f, double step = 1.0 / 64,
                           double range = 6.5) {
  double sum = 0.0;
  const int n = static_cast<int>(range / step);
  for (int k = -n; k <= n; ++k) {
    const double tau = k * step;
    const double u = 0.5 * kPi * std::sinh(tau);
    const double t = 1.0 / (1.0 + std::exp(-2.0 * u));
    const double s = 1.0 / (1.0 + std::exp(2.0 * u));
    if (t <= 0.0 || s <= 0.0) continue;
    const double w = kPi * std::cosh(tau) * t * s;  // dt/dtau
    sum += w * f(t, s);
  }
  return sum * step;
}

inline double beta_by_quadrature(double x, double y) {
  return tanh_sinh_01([&](double t, double s) { return std::pow(t, x - 1.0) * std::pow(s, y - 1.0); });
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Minimum of g over n equispaced points of [lo, hi].
inline double grid_min(const std::function<double(double)>& g, double lo, double hi, int n,
                       double* argmin = nullptr) {
  double best = g(lo), arg = lo;
  for (int i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    const double v = g(x);
    if (v < best) {
      best = v;
      arg = x;
    }
  }
  if (argmin) *argmin = arg;
  return best;
}

// Exact torsion function of the ellipse x^2/a^2 + y^2/b^2 < 1 with Delta u = 2.
struct EllipseTorsion {
  double a, b;
  double c() const { return a * a * b * b / (a * a + b * b); }
  double u(double x, double y) const { return c() * (x * x / (a * a) + y * y / (b * b) - 1.0); }
  // Frobenius norm of hess(|x|^2/2 - u), constant.
  double hess_h() const {
    return std::sqrt(2.0) * std::abs(a * a - b * b) / (a * a + b * b);
  }
};

}  // namespace oracle
