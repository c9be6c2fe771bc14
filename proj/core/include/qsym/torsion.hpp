#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qsym/fields.hpp"
#include "qsym/grid.hpp"

namespace qsym {

struct SolveReport {
  double h = 0;
  double residual = 0;  // relative linear-solve residual
  double order = 0;     // observed convergence order, 0 when not measured
  std::size_t unknowns = 0;
  std::string method;
};

// Delta w = rhs in Omega, w = dirichlet on Gamma, by the five-point
// Laplacian with Shortley-Weller arms at irregular nodes.
std::pair<DiscreteField, SolveReport> solve_poisson(
    std::shared_ptr<const Grid> grid, const std::function<double(const Vec2&)>& rhs,
    const std::function<double(const Vec2&)>& dirichlet);

// Delta u = 2 in Omega, u = 0 on Gamma.
std::pair<DiscreteField, SolveReport> solve_torsion(const StarDomain2D& domain, double h);

// u = (a^2 b^2 / (a^2 + b^2)) (x^2/a^2 + y^2/b^2 - 1).
AnalyticField exact_ellipse_torsion(double a, double b);

// Grid argmin refined by a local quadratic fit. DegenerateGeometry when the
// argmin node touches the boundary.
Vec2 locate_min(const DiscreteField& u);

// h = |x - z|^2 / 2 - u, with boundary values.
DiscreteField h_field(const DiscreteField& u, const Vec2& z);

// Shortley-Weller Laplacian of a field carrying boundary values.
std::vector<double> discrete_laplacian(const DiscreteField& f);

double max_nodal_error(const DiscreteField& f, const std::function<double(const Vec2&)>& exact);

// log(e1/e2) / log(h1/h2).
double observed_order(double e1, double e2, double h1, double h2);

}  // namespace qsym
