#pragma once

// Explicit constants and exponents of the interpolating oscillation
// estimates and of the stability profiles built on top of them.

#include <string>
#include <utility>
#include <vector>

#include "qsym/exponent.hpp"

namespace qsym {

inline constexpr double kPi = 3.14159265358979323846;

// Finite right spherical cone {x + s w : w in S_theta, 0 < s < height}.
// The vertex and axis are only needed by the quadrature code; constants
// depend on (theta, height, N) alone.
struct ConeSpec {
  double theta = kPi / 4;
  double height = 1.0;

  void validate() const;
};

// Geometric scalars of a bounded domain in R^N.
struct DomainScalars {
  int N = 2;
  double volume = 0;
  double surface = 0;
  double diameter = 0;
  double r_interior = 0;  // uniform interior ball radius r_i
  double r_exterior = 0;  // uniform exterior ball radius r_e
  double inradius = 0;    // r_Omega

  // Names of the violated comparison inequalities between the scalars
  // (empty when consistent). `rel_tol` absorbs discretization error.
  std::vector<std::string> violations(double rel_tol = 1e-9) const;
};

struct ConstantReport {
  std::string name;
  double value = 0;
  std::vector<std::pair<std::string, double>> inputs;
  std::string provenance;
};

// Measure of the unit ball |B| and of the unit sphere |S^{N-1}| in R^N.
double unit_ball_volume(int N);
double unit_sphere_area(int N);

// (N-1)-measure of the cap {w in S^{N-1} : cos(theta) < <w, e>}.
double cap_measure(double theta, int N);

// |C| = |S_theta| a^N / N.
double cone_measure(const ConeSpec& cone, int N);

// alpha_{p,q} = p (q - N) / (N (q - p)), alpha_{p,inf} = p / N.
double alpha_pq(const ExponentPair& pair);

// (a/N) B(1 - p'/N', p' + 1)^{1/p'} for N < p <= inf.
double morrey_cone_constant(double p, int N, double height);

// k(N,p,theta) = B(1 - p'/N', p'+1)^{1/p'} / (N^{1/p'} |S_theta|^{1/p}),
// the factor in |f(x) - f_Omega| <= k a^{1-N/p} |Omega|^{1/p} ||grad f||_p.
double morrey_domain_constant(double p, int N, double theta);

enum class TwoTermMode { Power, Log };

struct TwoTermMin {
  double sigma = 0;  // minimizer in (0, a]
  double value = 0;  // minimum of the objective
};

// Minimizes over sigma the objective
//   Power: A (sigma/a)^expA + B (sigma/a)^expB,  0 < sigma <= a,
//   Log:   A (sigma/a)^expA + B log(a/sigma),    0 < sigma <= a/e,
// with expA > 0 and (Power) expB < 0. The search runs on the objective
// itself (convex in log sigma), so p = 1 needs no special case.
TwoTermMin two_term_minimize(double A, double B, double expA, double expB,
                             double a, TwoTermMode mode);

// Cone-level interpolation coefficients: a^{N-1} * (plain Riesz integral)
// <= coef_q ||grad f||_q t^{1-N/q} + coef_p ||grad f||_p t^{1-N/p}.
double interpolation_coef_q(int N, double q);
double interpolation_coef_p(int N, double p);

struct GradientNorms {
  double p_norm = 0;  // ||grad f||_{p,Omega}
  double q_norm = 0;  // ||grad f||_{q,Omega}, unused when p > N
};

// Right-hand side of the oscillation estimate
//   max f - min f <= bound
// on a domain with the (theta, a) uniform interior cone condition, for the
// regime selected by (p, q, N): p > N, p = N (log), or 1 <= p < N.
// The constant is assembled constructively, cone by cone, replaying the
// pointwise Riesz bound, Hoelder splitting at radius sigma, inclusion of
// cones in the domain, and minimization in sigma.
double oscillation_bound(const GradientNorms& norms, const ExponentPair& pair,
                         double theta, double height, double volume);

enum class Regularity { C2, C2Gamma };

// Stability profile Psi(sigma) of the constant mean curvature problem in dimension N.
double psi_profile(double sigma, int N, Regularity regularity, double q = kInf);

// (4 - 2N/q) / (N + 1 - 2N/q); 4/(N+1) for C^{2,gamma}. N >= 4.
double serrin_profile_exponent(int N, double q, Regularity regularity);

// M = (N+1) d (d + r_e) / (2 r_e), a bound for max |grad u|.
double gradient_bound_M(int N, double diameter, double r_exterior);

// Lower bound for the distance of the torsion minimum point to the boundary.
double min_depth_bound(int N, double inradius, double diameter,
                       double r_exterior, bool mean_convex);

// Structural part of the weighted Poincare constant; `calibration_k` stands
// in for the unspecified dimensional factor.
double weighted_poincare_structural_constant(int N, double r, double p,
                                             double alpha,
                                             const DomainScalars& scalars,
                                             bool mean_convex,
                                             double calibration_k = 1.0);

// True when (r, p, alpha) lies in the admissible range of the weighted
// Poincare inequality in dimension N.
bool weighted_poincare_admissible(int N, double r, double p, double alpha);

// The table emitted by `qsym constants`.
std::vector<ConstantReport> constant_table(int N, const DomainScalars& scalars,
                                           double calibration_k = 1.0);

}  // namespace qsym
