#pragma once

#include <memory>
#include <vector>

#include "qsym/constants.hpp"
#include "qsym/grid.hpp"
#include "qsym/star_domain.hpp"
#include "qsym/torsion.hpp"

namespace qsym {

struct GradientField {
  DiscreteField x, y;
};

struct HessianField {
  DiscreteField xx, xy, yy;
};

// Centred differences at interior nodes; three-point nonuniform formulas
// through boundary cut values where available, one-sided second-order
// formulas otherwise.
GradientField gradient(const DiscreteField& f);

// Second differences where the 3x3 block is regular; elsewhere a
// least-squares quadratic through nodes of the 5x5 block and cut values.
HessianField hessian(const DiscreteField& f);

// Bicubic (tensor Lagrange) interpolation from a 4x4 block of interior
// nodes, shifted inward as needed; ok = false when no block fits.
double interpolate_bicubic(const DiscreteField& f, const Vec2& x, bool& ok);

struct BoundaryTrace {
  std::vector<BoundarySample> samples;
  std::vector<double> values;
  std::vector<char> valid;
  double excluded_fraction = 0;
};

// Outward normal derivative on Gamma by a third-order one-sided difference
// along -nu with points at 2h, 4h, 6h interpolated bicubically; the value
// on Gamma is `boundary_value` (0 for the torsion function).
BoundaryTrace normal_derivative(const DiscreteField& u, const StarDomain2D& domain,
                                int samples = 2048, double boundary_value = 0.0);

// Normalized (dS/|Gamma|) L^p norm of g over the valid samples of `trace`.
double boundary_lp_norm(const BoundaryTrace& trace, const std::vector<double>& g, double p);

// Unnormalized boundary integral of g over the valid samples.
double boundary_integral(const BoundaryTrace& trace, const std::vector<double>& g);

// R times the normalized L^2(Gamma) norm of nu - (x - z)/R.
double gauss_map_deviation(const StarDomain2D& domain, const Vec2& z, double R,
                           int samples = 4096);

// Everything the identity and stability checks consume for one domain.
struct PipelineData {
  StarDomain2D domain;
  double h = 0;
  DomainScalars scalars;
  double H0 = 0, R = 0;
  std::shared_ptr<const Grid> grid;
  DiscreteField u;
  SolveReport solve;
  Vec2 z;
  DiscreteField hf;
  GradientField grad_u;
  HessianField hess_u;
  std::vector<double> grad_h_norm;   // |grad h| at nodes
  std::vector<double> hess_h_norm;   // Frobenius |hess h| at nodes
  BoundaryTrace trace;               // u_nu
  std::vector<double> h_nu;          // on the trace samples
  std::vector<double> grad_h_gamma;  // |grad h| on the trace samples
  std::vector<double> unu_minus_R;
  std::vector<double> H_minus_H0;
  double rho_i = 0, rho_e = 0;
  double curvature_dev = 0;  // ||H - H0||_{2,Gamma}
  double gauss_dev = 0;      // R ||nu - grad Q^z / R||_{2,Gamma}
  double unu_dev = 0;        // ||u_nu - R||_{2,Gamma}
};

PipelineData run_pipeline(const StarDomain2D& domain, double h, int boundary_samples = 2048);

}  // namespace qsym
