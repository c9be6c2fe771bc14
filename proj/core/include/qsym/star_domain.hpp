#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "qsym/constants.hpp"

namespace qsym {

using Vec2 = Eigen::Vector2d;

struct RadialDerivatives {
  double r = 0, r1 = 0, r2 = 0;
};

// Planar star-shaped domain {rho < r(phi)} about the origin. The radial
// function is either a trigonometric polynomial or the polar form of an
// axis-aligned ellipse, optionally rotated by `rotation` and dilated.
class StarDomain2D {
 public:
  enum class Kind { Trigonometric, Ellipse };

  static StarDomain2D trigonometric(double c0, std::vector<double> cos_coef,
                                    std::vector<double> sin_coef);
  static StarDomain2D ellipse(double a, double b);
  static StarDomain2D circle(double R);
  // r = 1 + eps cos(k phi), divided by sqrt(1 + eps^2/2) when area_normalize.
  static StarDomain2D cosine(int k, double eps, bool area_normalize);

  StarDomain2D scaled(double lambda) const;
  StarDomain2D rotated(double angle) const;

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  RadialDerivatives radial(double phi) const;
  double r(double phi) const { return radial(phi).r; }
  Vec2 point(double phi) const;
  Vec2 tangent(double phi) const;  // d gamma / d phi
  Vec2 normal(double phi) const;   // outward unit normal
  double curvature(double phi) const;
  double speed(double phi) const;  // sqrt(r^2 + r'^2)

  // |x| - r(arg x); negative inside.
  double level(const Vec2& x) const;
  bool contains(const Vec2& x) const { return level(x) < 0.0; }

  // Sampled check of min r > 0 on 4096 points; DomainError otherwise.
  void validate() const;

  double max_radius() const;
  double min_radius() const;

  // Ellipse semi-axes (before rotation/scaling are folded in).
  double ellipse_a() const { return a_ * scale_; }
  double ellipse_b() const { return b_ * scale_; }
  double rotation() const { return rotation_; }

 private:
  Kind kind_ = Kind::Trigonometric;
  std::string label_;
  double c0_ = 1.0;
  std::vector<double> cos_, sin_;
  double a_ = 1.0, b_ = 1.0;
  double scale_ = 1.0;
  double rotation_ = 0.0;
};

struct BoundarySample {
  double phi = 0;
  Vec2 pos;
  Vec2 normal;
  double kappa = 0;
  double weight = 0;  // arclength weight sqrt(r^2 + r'^2) dphi
};

std::vector<BoundarySample> boundary_sample(const StarDomain2D& domain, int m);

double area(const StarDomain2D& domain);
double perimeter(const StarDomain2D& domain);
double diameter(const StarDomain2D& domain);

// (H0, R) with R = 2|Omega|/|Gamma|.
std::pair<double, double> H0_and_R(const StarDomain2D& domain);

// (rho_i, rho_e): min and max distance from z to the boundary curve.
std::pair<double, double> rho_bounds(const StarDomain2D& domain, const Vec2& z);

// Distance from x to the boundary curve.
double delta_gamma(const StarDomain2D& domain, const Vec2& x);

// Precomputed boundary polyline for repeated distance queries.
class BoundaryDistance {
 public:
  explicit BoundaryDistance(const StarDomain2D& domain, int samples = 1024);
  double operator()(const Vec2& x) const;

 private:
  const StarDomain2D* domain_;
  std::vector<double> phi_;
  std::vector<Vec2> pts_;
};

// (r_i, r_e); r_e capped at the diameter.
std::pair<double, double> ball_radii(const StarDomain2D& domain);

// Radius of the largest inscribed disk.
double inradius(const StarDomain2D& domain);

// (theta, a) = (pi/4, r_i).
std::pair<double, double> cone_params(const StarDomain2D& domain);

// Normalized L^2(Gamma) norm of kappa - H0.
double curvature_deviation(const StarDomain2D& domain);

double max_curvature(const StarDomain2D& domain);
bool is_convex(const StarDomain2D& domain);

DomainScalars domain_scalars(const StarDomain2D& domain);

}  // namespace qsym
