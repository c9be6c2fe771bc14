#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qsym/constants.hpp"
#include "qsym/fields.hpp"

namespace qsym {

// Right spherical cone with vertex, unit axis, aperture and height.
struct Cone {
  VecN vertex;
  VecN axis;
  ConeSpec spec;

  int dim() const { return static_cast<int>(vertex.size()); }
  void validate() const;
  double measure() const { return cone_measure(spec, dim()); }
};

// Tensor rule in vertex-polar coordinates y = vertex + s w: radial
// Gauss-Legendre on (0, a), angular Gauss-Legendre in the polar angle
// (and trapezoid in azimuth for N = 3). dS weights include sin(phi).
struct QuadratureRule {
  std::vector<double> radial_nodes, radial_weights;
  std::vector<VecN> directions;
  std::vector<double> direction_weights;

  std::size_t size() const { return radial_nodes.size() * directions.size(); }
};

QuadratureRule cone_rule(const Cone& cone, int radial_order, int angular_order);

// Integrates F(s, w) ds dS_w over (0, a) x S_theta, doubling orders until the
// relative change is <= rel_tol; NumericalError past the cap.
double integrate_polar(const Cone& cone,
                       const std::function<double(double, const VecN&)>& F,
                       double rel_tol = 1e-8);

// Mean over the cone (normalized measure) of |grad f(y)| |y - x|^{1-N} w(y),
// with w = (a^N - |y-x|^N)/N if `weighted`, else w = 1.
double riesz_potential(const Cone& cone, const AnalyticField& field, bool weighted);

double cone_average(const Cone& cone, const AnalyticField& field);

// Normalized L^p norm over the cone of |g|. p = inf: max over the nodes of a
// fixed rule, 10^4 Halton points, and rim samples.
double lp_norm_cone(const Cone& cone, const std::function<VecN(const VecN&)>& g, double p);

struct MarginReport {
  std::string check;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  bool ok = true;
};

inline constexpr double kInequalitySlack = 1e-9;

// |f(x) - f_C| against the weighted and plain Riesz bounds.
std::vector<MarginReport> verify_pointwise_cone(const Cone& cone, const AnalyticField& field);

MarginReport verify_morrey_cone(const Cone& cone, const AnalyticField& field, double p);

// a^{N-1} * plain integral against the interpolation bound. For p < N the
// bound is the sigma-minimized two-term estimate; for p = N two reports:
// the minimized log-mode estimate and the closed form
// N q/(q-N) ||.||_N log(e ||.||_q / (q' ||.||_N)).
std::vector<MarginReport> verify_interpolation_cone(const Cone& cone,
                                                    const AnalyticField& field,
                                                    const ExponentPair& pair);

}  // namespace qsym

namespace qsym {

struct ConeSweepRow {
  std::string field;
  double theta = 0, a = 0;
  double p = 0, q = 0;  // NaN where the check has no exponent
  MarginReport report;
};

// Every catalog field in R^N against cones with theta in {pi/8, pi/4, pi/2}
// and a in {0.5, 1, 2}: pointwise checks, Morrey for p > N, interpolation
// for 1 <= p <= N < q. Vertex at the origin, axis e_1.
std::vector<ConeSweepRow> cone_sweep(int N, int jobs = 1);

}  // namespace qsym
