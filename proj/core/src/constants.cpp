#include "qsym/constants.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "qsym/errors.hpp"
#include "qsym/special.hpp"

namespace qsym {

std::string format_exponent(double p) {
  if (is_infinite(p)) return "inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), p);
  return std::string(buf, res.ptr);
}

void ConeSpec::validate() const {
  if (!(theta > 0.0) || theta > kPi / 2 + 1e-15) {
    throw DomainError("cone aperture must lie in (0, pi/2]");
  }
  if (!(height > 0.0) || !std::isfinite(height)) {
    throw DomainError("cone height must be positive");
  }
}

std::vector<std::string> DomainScalars::violations(double rel_tol) const {
  std::vector<std::string> out;
  const double B = unit_ball_volume(N);
  auto le = [&](double lhs, double rhs, const char* name) {
    if (lhs > rhs * (1.0 + rel_tol) + 1e-300) out.emplace_back(name);
  };
  le(B * std::pow(inradius, N), volume, "|B| r^N <= |Omega|");
  le(volume, B * std::pow(diameter, N), "|Omega| <= |B| d^N");
  le(N * B * std::pow(inradius, N - 1), surface, "N|B| r^(N-1) <= |Gamma|");
  le(surface, N * volume / r_interior, "|Gamma| <= N|Omega|/r_i");
  le(r_interior, inradius, "r_i <= r_Omega");
  le(inradius, diameter / 2, "r_Omega <= d/2");
  return out;
}

double unit_sphere_area(int N) {
  if (N < 1) throw DomainError("dimension must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N);
}

double unit_ball_volume(int N) { return unit_sphere_area(N) / N; }

double cap_measure(double theta, int N) {
  if (N < 2) throw DomainError("cap_measure: dimension must be >= 2");
  ConeSpec{theta, 1.0}.validate();
  // |S_theta| = |S^{N-2}| * int_0^theta sin^{N-2}(phi) dphi, the integral
  // by the standard reduction I_n = -sin^{n-1} cos / n + (n-1)/n I_{n-2}.
  const int n = N - 2;
  const double s = std::sin(theta), c = std::cos(theta);
  double prev = theta;     // I_0
  double cur = 1.0 - c;    // I_1
  double integral = (n % 2 == 0) ? prev : cur;
  for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) {
    const double base = (n % 2 == 0) ? prev : cur;
    const double next = -std::pow(s, k - 1) * c / k + (k - 1.0) / k * base;
    if (n % 2 == 0) prev = next; else cur = next;
    integral = next;
  }
  // |S^0| = 2 (two points)
  const double lower_sphere = (N == 2) ? 2.0 : unit_sphere_area(N - 1);
  return lower_sphere * integral;
}

double cone_measure(const ConeSpec& cone, int N) {
  cone.validate();
  return cap_measure(cone.theta, N) * std::pow(cone.height, N) / N;
}

double alpha_pq(const ExponentPair& pair) {
  if (!pair.admissible_for_interpolation()) {
    throw DomainError("alpha_pq requires 1 <= p <= N < q <= inf");
  }
  const double N = pair.N;
  if (is_infinite(pair.q)) return pair.p / N;
  return pair.p * (pair.q - N) / (N * (pair.q - pair.p));
}

namespace {

// B(1 - p'/N', p' + 1) and p' for N < p <= inf.
std::pair<double, double> morrey_beta(double p, int N) {
  if (N < 2) throw DomainError("dimension must be >= 2");
  if (!(p > N)) {
    throw DomainError("Morrey constant requires p > N (beta function pole at p = N)");
  }
  const double pc = conjugate(p);
  const double Nc = static_cast<double>(N) / (N - 1);
  return {euler_beta(1.0 - pc / Nc, pc + 1.0), pc};
}

}  // namespace

double morrey_cone_constant(double p, int N, double height) {
  if (!(height > 0.0)) throw DomainError("cone height must be positive");
  const auto [beta, pc] = morrey_beta(p, N);
  return height / N * std::pow(beta, 1.0 / pc);
}

double morrey_domain_constant(double p, int N, double theta) {
  const auto [beta, pc] = morrey_beta(p, N);
  const double cap = cap_measure(theta, N);
  return std::pow(beta, 1.0 / pc) /
         (std::pow(static_cast<double>(N), 1.0 / pc) * std::pow(cap, reciprocal(p)));
}

TwoTermMin two_term_minimize(double A, double B, double expA, double expB,
                             double a, TwoTermMode mode) {
  if (!(A >= 0.0) || !(B >= 0.0) || !std::isfinite(A) || !std::isfinite(B)) {
    throw DomainError("two_term_minimize: coefficients must be finite and >= 0");
  }
  if (!(a > 0.0)) throw DomainError("two_term_minimize: range bound must be > 0");
  if (!(expA > 0.0)) throw DomainError("two_term_minimize: expA must be > 0");
  if (mode == TwoTermMode::Power && !(expB < 0.0)) {
    throw DomainError("two_term_minimize: expB must be < 0 in power mode");
  }
  if (A == 0.0 && B == 0.0) return {a, 0.0};

  // Work in s = log(sigma/a); both objectives are convex in s.
  const double s_max = (mode == TwoTermMode::Power) ? 0.0 : -1.0;
  auto objective = [&](double s) {
    const double first = A * std::exp(expA * s);
    return mode == TwoTermMode::Power ? first + B * std::exp(expB * s)
                                      : first - B * s;
  };
  auto slope = [&](double s) {
    const double first = A * expA * std::exp(expA * s);
    return mode == TwoTermMode::Power ? first + B * expB * std::exp(expB * s)
                                      : first - B;
  };

  // Infimum approached as sigma -> 0+.
  if (B == 0.0) return {0.0, 0.0};

  if (slope(s_max) <= 0.0) return {a * std::exp(s_max), objective(s_max)};

  double hi = s_max;
  double lo = s_max - 1.0;
  while (slope(lo) > 0.0) {
    hi = lo;
    lo = s_max - 2.0 * (s_max - lo);
    if (lo < -1400.0) {
      // sigma underflows long before this; the objective is flat at 0 there
      return {0.0, objective(lo)};
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) > 0.0) hi = mid; else lo = mid;
  }
  const double s = 0.5 * (lo + hi);
  return {a * std::exp(s), objective(s)};
}

double interpolation_coef_q(int N, double q) {
  if (is_infinite(q)) return N;
  return std::pow(N * (q - 1.0) / (q - N), 1.0 - 1.0 / q);
}

double interpolation_coef_p(int N, double p) {
  // p = 1 is the limit: (N(p-1)/(N-p))^{(p-1)/p} -> 1
  if (p == 1.0) return 1.0;
  return std::pow(N * (p - 1.0) / (N - p), 1.0 - 1.0 / p);
}

double oscillation_bound(const GradientNorms& norms, const ExponentPair& pair,
                         double theta, double height, double volume) {
  const int N = pair.N;
  if (N < 2) throw DomainError("dimension must be >= 2");
  if (!(norms.p_norm >= 0.0) || !std::isfinite(norms.p_norm)) {
    throw DomainError("oscillation_bound: p-norm must be finite and >= 0");
  }
  if (!(volume > 0.0)) throw DomainError("oscillation_bound: volume must be > 0");
  const double p = pair.p;

  if (p > N) {
    // two applications of the pointwise domain bound (at the max and min)
    return 2.0 * morrey_domain_constant(p, N, theta) *
           std::pow(height, 1.0 - N * reciprocal(p)) *
           std::pow(volume, reciprocal(p)) * norms.p_norm;
  }
  if (!pair.admissible_for_interpolation()) {
    throw DomainError("oscillation_bound: (p, q, N) fits no regime");
  }
  if (!(norms.q_norm >= 0.0) || !std::isfinite(norms.q_norm)) {
    throw DomainError("oscillation_bound: q-norm must be finite and >= 0");
  }
  const double q = pair.q;
  const double ratio = volume / cone_measure(ConeSpec{theta, height}, N);
  const double expA = 1.0 - N * reciprocal(q);

  if (p < N) {
    const double A = interpolation_coef_q(N, q) * std::pow(ratio, reciprocal(q)) * norms.q_norm;
    const double B = interpolation_coef_p(N, p) * std::pow(ratio, 1.0 / p) * norms.p_norm;
    const auto best = two_term_minimize(A, B, expA, 1.0 - N / p, 1.0, TwoTermMode::Power);
    // |f(x) - f_C| <= (a^N/N) * plain integral = (a/N) * a^{N-1} * plain
    return 2.0 * (height / N) * best.value;
  }

  // p == N
  const double lead = is_infinite(q) ? 1.0 : (q - 1.0) / (q - N);
  const double A = lead * std::pow(ratio, reciprocal(q)) * norms.q_norm;
  const double B = std::pow(ratio, 1.0 / N) * norms.p_norm;
  const auto best = two_term_minimize(A, B, expA, 0.0, 1.0, TwoTermMode::Log);
  // (a^{N-1}/N) * plain <= min, and |f(x) - f_C| <= a * that
  return 2.0 * height * best.value;
}

double psi_profile(double sigma, int N, Regularity regularity, double q) {
  if (N < 2) throw DomainError("psi_profile: dimension must be >= 2");
  if (!(sigma >= 0.0)) throw DomainError("psi_profile: sigma must be >= 0");
  if (N <= 3) return sigma;
  if (sigma == 0.0) return 0.0;
  if (N == 4) return sigma * std::max(std::log(1.0 / sigma), 1.0);
  double tau = 4.0 / N;
  if (regularity == Regularity::C2 && !is_infinite(q)) {
    if (!(q > N)) throw DomainError("psi_profile: C2 profile needs q > N");
    tau -= 2.0 * (N - 4) / (N * (q - 2.0));
  }
  return std::pow(sigma, tau);
}

double serrin_profile_exponent(int N, double q, Regularity regularity) {
  if (N <= 3) throw DomainError("serrin_profile_exponent is defined for N >= 4");
  if (regularity == Regularity::C2Gamma || is_infinite(q)) return 4.0 / (N + 1.0);
  if (!(q > N)) throw DomainError("serrin_profile_exponent needs q > N");
  const double t = 2.0 * N / q;
  return (4.0 - t) / (N + 1.0 - t);
}

double gradient_bound_M(int N, double diameter, double r_exterior) {
  if (!(diameter > 0.0) || !(r_exterior > 0.0)) {
    throw DomainError("gradient_bound_M: diameter and r_e must be > 0");
  }
  return (N + 1.0) * diameter * (diameter + r_exterior) / (2.0 * r_exterior);
}

double min_depth_bound(int N, double inradius, double diameter,
                       double r_exterior, bool mean_convex) {
  if (!(inradius > 0.0)) throw DomainError("min_depth_bound: inradius must be > 0");
  const double base = inradius / std::sqrt(static_cast<double>(N));
  if (mean_convex) return base;
  if (!(diameter > 0.0) || !(r_exterior > 0.0)) {
    throw DomainError("min_depth_bound: diameter and r_e must be > 0");
  }
  const double t = diameter / r_exterior;
  const double bracket = 1.0 + (N * N - 1.0) / (2.0 * N) * t * (1.0 + t);
  return base / std::sqrt(bracket);
}

bool weighted_poincare_admissible(int N, double r, double p, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) return false;
  if (!(p >= 1.0) || !(r >= p)) return false;
  const double gap = N - p * (1.0 - alpha);
  if (!(gap > 0.0)) return false;
  return r <= N * p / gap * (1.0 + 1e-14);
}

double weighted_poincare_structural_constant(int N, double r, double p,
                                             double alpha,
                                             const DomainScalars& s,
                                             bool mean_convex,
                                             double calibration_k) {
  if (!weighted_poincare_admissible(N, r, p, alpha)) {
    throw DomainError("weighted Poincare exponents out of range: need "
                      "1 <= p <= r <= Np/(N - p(1-alpha)), p(1-alpha) < N, 0 <= alpha <= 1");
  }
  if (!(s.volume > 0.0) || !(s.diameter > 0.0) || !(s.r_interior > 0.0)) {
    throw DomainError("weighted Poincare constant needs positive domain scalars");
  }
  double value = calibration_k * std::pow(s.volume, (1.0 - alpha) / N) *
                 std::pow(s.diameter / s.r_interior, N);
  if (!mean_convex) {
    if (!(s.r_exterior > 0.0)) throw DomainError("r_e must be > 0");
    const double t = s.diameter / s.r_exterior;
    const double bracket = N + (N * N - 1.0) * (0.5 * t) * (1.0 + t);
    value *= std::pow(bracket, 0.5 * N);
  }
  return value;
}

namespace {

ConstantReport row(std::string name, double value,
                   std::vector<std::pair<std::string, double>> inputs,
                   std::string provenance) {
  return ConstantReport{std::move(name), value, std::move(inputs), std::move(provenance)};
}

}  // namespace

std::vector<ConstantReport> constant_table(int N, const DomainScalars& s,
                                           double calibration_k) {
  if (N < 2) throw DomainError("constant_table: dimension must be >= 2");
  const double dN = N;
  const double theta = kPi / 4;
  std::vector<ConstantReport> out;

  out.push_back(row("unit_ball_volume", unit_ball_volume(N), {{"N", dN}}, "volume of the unit ball"));
  out.push_back(row("cap_measure", cap_measure(theta, N), {{"theta", theta}, {"N", dN}},
                    "spherical cap of the cone aperture"));
  out.push_back(row("cone_measure", cone_measure({theta, s.r_interior}, N),
                    {{"theta", theta}, {"a", s.r_interior}, {"N", dN}},
                    "volume of the interior cone"));

  for (double p : {1.0, 0.5 * (1.0 + N), dN}) {
    for (double q : {2.0 * N, kInf}) {
      if (p < 1.0 || p > N) continue;
      out.push_back(row("alpha_pq", alpha_pq({p, q, N}), {{"p", p}, {"q", q}, {"N", dN}},
                        "interpolation exponent"));
    }
  }
  for (double p : {N + 1.0, 2.0 * N, kInf}) {
    out.push_back(row("morrey_cone_constant", morrey_cone_constant(p, N, 1.0),
                      {{"p", p}, {"N", dN}, {"a", 1.0}}, "cone Morrey-Sobolev bound"));
    out.push_back(row("morrey_domain_constant", morrey_domain_constant(p, N, theta),
                      {{"p", p}, {"N", dN}, {"theta", theta}},
                      "pointwise domain bound for p > N"));
  }
  {
    // unit-norm interpolation constant, i.e. the minimum of the two-term bound
    const double q = kInf;
    const auto best = two_term_minimize(interpolation_coef_q(N, q), interpolation_coef_p(N, 1.0),
                                        1.0, 1.0 - N, 1.0, TwoTermMode::Power);
    out.push_back(row("interpolation_constant", best.value, {{"p", 1.0}, {"q", q}, {"N", dN}},
                      "cone interpolation bound, unit norms"));
  }
  out.push_back(row("psi_profile_at_0.01", psi_profile(0.01, N, Regularity::C2Gamma),
                    {{"sigma", 0.01}, {"N", dN}}, "stability profile, umbilicity"));
  if (N >= 4) {
    out.push_back(row("serrin_profile_exponent", serrin_profile_exponent(N, kInf, Regularity::C2Gamma),
                      {{"N", dN}, {"q", kInf}}, "stability exponent, overdetermined problem, C2,gamma"));
    out.push_back(row("serrin_profile_exponent", serrin_profile_exponent(N, 2.0 * N, Regularity::C2),
                      {{"N", dN}, {"q", 2.0 * N}}, "stability exponent, overdetermined problem, C2"));
  }
  const double M = gradient_bound_M(N, s.diameter, s.r_exterior);
  out.push_back(row("gradient_bound_M", M, {{"N", dN}, {"d", s.diameter}, {"r_e", s.r_exterior}},
                    "bound for the torsion gradient"));
  out.push_back(row("grad_h_inf_bound", M + s.diameter, {{"M", M}, {"d", s.diameter}},
                    "bound for the gradient of the harmonic deviation"));
  out.push_back(row("min_depth_bound_mean_convex",
                    min_depth_bound(N, s.inradius, s.diameter, s.r_exterior, true),
                    {{"N", dN}, {"r_Omega", s.inradius}}, "depth of the torsion minimum"));
  out.push_back(row("min_depth_bound_general",
                    min_depth_bound(N, s.inradius, s.diameter, s.r_exterior, false),
                    {{"N", dN}, {"r_Omega", s.inradius}, {"d", s.diameter}, {"r_e", s.r_exterior}},
                    "depth of the torsion minimum"));
  {
    const double p = 2.0, r = 2.0, alpha = 0.5;
    out.push_back(row("weighted_poincare_structural",
                      weighted_poincare_structural_constant(N, r, p, alpha, s, false, calibration_k),
                      {{"r", r}, {"p", p}, {"alpha", alpha}, {"k", calibration_k}},
                      "weighted Poincare constant, calibrated"));
  }
  return out;
}

}  // namespace qsym
