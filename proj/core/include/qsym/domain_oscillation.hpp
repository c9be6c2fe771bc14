#pragma once

#include <string>
#include <vector>

#include "qsym/exponent.hpp"
#include "qsym/fields.hpp"
#include "qsym/star_domain.hpp"

namespace qsym {

// Normalized L^p norms of |grad f| over a star domain by polar quadrature
// (Gauss-Legendre in rho, trapezoid in phi); p = inf also scans the boundary.
std::vector<double> gradient_norms_on_domain(const StarDomain2D& domain, const AnalyticField& field,
                                             const std::vector<double>& ps);

// max f - min f over the closure: dense polar sampling plus local refinement.
double oscillation_on_domain(const StarDomain2D& domain, const AnalyticField& field);

struct OscillationRecord {
  std::string domain;
  std::string field;
  double p = 0, q = 0;
  double osc = 0;
  double bound = 0;
  double margin = 0;  // bound - osc
  bool ok = true;
};

// Domains used by the sweep: circle, two ellipses, two cosine perturbations
// and a mixed trigonometric boundary.
std::vector<StarDomain2D> oscillation_domains();

// Regimes p > N, p < N and p = N against every planar catalog field.
std::vector<OscillationRecord> oscillation_sweep(const std::vector<StarDomain2D>& domains,
                                                 int jobs = 1);

}  // namespace qsym
