#include "qsym/star_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qsym/errors.hpp"

namespace qsym {
namespace {

constexpr double kTwoPi = 2.0 * kPi;

// Golden-section minimization of a unimodal function on [lo, hi].
template <class F>
double golden_min(F&& f, double lo, double hi, double tol = 1e-12) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

StarDomain2D StarDomain2D::trigonometric(double c0, std::vector<double> cos_coef,
                                         std::vector<double> sin_coef) {
  StarDomain2D d;
  d.kind_ = Kind::Trigonometric;
  d.c0_ = c0;
  const std::size_t n = std::max(cos_coef.size(), sin_coef.size());
  cos_coef.resize(n, 0.0);
  sin_coef.resize(n, 0.0);
  d.cos_ = std::move(cos_coef);
  d.sin_ = std::move(sin_coef);
  d.label_ = "trig(c0=" + fmt(c0);
  for (const auto* coef : {&d.cos_, &d.sin_}) {
    d.label_ += coef == &d.cos_ ? ";cos=" : ";sin=";
    for (std::size_t i = 0; i < n; ++i) d.label_ += (i ? " " : "") + fmt((*coef)[i]);
  }
  d.label_ += ")";
  d.validate();
  return d;
}

StarDomain2D StarDomain2D::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ellipse semi-axes must be > 0");
  StarDomain2D d;
  d.kind_ = Kind::Ellipse;
  d.a_ = a;
  d.b_ = b;
  d.label_ = "ellipse(a=" + fmt(a) + ";b=" + fmt(b) + ")";
  return d;
}

StarDomain2D StarDomain2D::circle(double R) {
  StarDomain2D d = trigonometric(R, {}, {});
  d.label_ = "circle(R=" + fmt(R) + ")";
  return d;
}

StarDomain2D StarDomain2D::cosine(int k, double eps, bool area_normalize) {
  if (k < 1) throw DomainError("cosine perturbation needs mode k >= 1");
  if (!(eps >= 0.0) || !(eps < 1.0)) throw DomainError("cosine perturbation needs 0 <= eps < 1");
  const double s = area_normalize ? 1.0 / std::sqrt(1.0 + 0.5 * eps * eps) : 1.0;
  std::vector<double> c(k, 0.0);
  c[k - 1] = eps * s;
  StarDomain2D d = trigonometric(s, c, {});
  d.label_ = "cosine(k=" + std::to_string(k) + ";eps=" + fmt(eps) + ")";
  return d;
}

StarDomain2D StarDomain2D::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("dilation factor must be > 0");
  StarDomain2D d = *this;
  d.scale_ *= lambda;
  d.label_ += "*" + fmt(lambda);
  return d;
}

StarDomain2D StarDomain2D::rotated(double angle) const {
  StarDomain2D d = *this;
  d.rotation_ += angle;
  d.label_ += "@" + fmt(angle);
  return d;
}

RadialDerivatives StarDomain2D::radial(double phi) const {
  const double t = phi - rotation_;
  RadialDerivatives out;
  if (kind_ == Kind::Ellipse) {
    const double a2 = a_ * a_, b2 = b_ * b_, ab = a_ * b_;
    const double s = std::sin(t), c = std::cos(t);
    const double D = b2 + (a2 - b2) * s * s;
    const double D1 = (a2 - b2) * 2.0 * s * c;
    const double D2 = 2.0 * (a2 - b2) * (c * c - s * s);
    const double Dm12 = 1.0 / std::sqrt(D);
    const double Dm32 = Dm12 / D;
    const double Dm52 = Dm32 / D;
    out.r = ab * Dm12;
    out.r1 = -0.5 * ab * Dm32 * D1;
    out.r2 = ab * (0.75 * Dm52 * D1 * D1 - 0.5 * Dm32 * D2);
  } else {
    out.r = c0_;
    for (std::size_t i = 0; i < cos_.size(); ++i) {
      const double k = static_cast<double>(i + 1);
      const double ck = std::cos(k * t), sk = std::sin(k * t);
      out.r += cos_[i] * ck + sin_[i] * sk;
      out.r1 += k * (-cos_[i] * sk + sin_[i] * ck);
      out.r2 += -k * k * (cos_[i] * ck + sin_[i] * sk);
    }
  }
  out.r *= scale_;
  out.r1 *= scale_;
  out.r2 *= scale_;
  return out;
}

Vec2 StarDomain2D::point(double phi) const {
  return r(phi) * Vec2(std::cos(phi), std::sin(phi));
}

Vec2 StarDomain2D::tangent(double phi) const {
  const RadialDerivatives d = radial(phi);
  const double c = std::cos(phi), s = std::sin(phi);
  return Vec2(d.r1 * c - d.r * s, d.r1 * s + d.r * c);
}

Vec2 StarDomain2D::normal(double phi) const {
  const Vec2 T = tangent(phi);
  return Vec2(T.y(), -T.x()) / T.norm();
}

double StarDomain2D::curvature(double phi) const {
  const RadialDerivatives d = radial(phi);
  const double q = d.r * d.r + d.r1 * d.r1;
  return (d.r * d.r + 2.0 * d.r1 * d.r1 - d.r * d.r2) / (q * std::sqrt(q));
}

double StarDomain2D::speed(double phi) const {
  const RadialDerivatives d = radial(phi);
  return std::sqrt(d.r * d.r + d.r1 * d.r1);
}

double StarDomain2D::level(const Vec2& x) const {
  return x.norm() - r(std::atan2(x.y(), x.x()));
}

void StarDomain2D::validate() const {
  if (min_radius() <= 0.0) {
    throw DomainError("radial function must stay positive; min r = " + fmt(min_radius()));
  }
}

double StarDomain2D::max_radius() const {
  double best = 0.0;
  for (int j = 0; j < 4096; ++j) best = std::max(best, r(kTwoPi * j / 4096));
  return best;
}

double StarDomain2D::min_radius() const {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 4096; ++j) best = std::min(best, r(kTwoPi * j / 4096));
  return best;
}

std::vector<BoundarySample> boundary_sample(const StarDomain2D& domain, int m) {
  if (m < 64) throw DomainError("boundary_sample: need at least 64 samples");
  domain.validate();
  std::vector<BoundarySample> out(m);
  const double dphi = kTwoPi / m;
  for (int j = 0; j < m; ++j) {
    BoundarySample& b = out[j];
    b.phi = dphi * j;
    b.pos = domain.point(b.phi);
    b.normal = domain.normal(b.phi);
    b.kappa = domain.curvature(b.phi);
    b.weight = domain.speed(b.phi) * dphi;
  }
  return out;
}

double area(const StarDomain2D& domain) {
  const int m = 8192;
  double s = 0.0;
  for (int j = 0; j < m; ++j) {
    const double r = domain.r(kTwoPi * j / m);
    s += r * r;
  }
  return 0.5 * s * kTwoPi / m;
}

double perimeter(const StarDomain2D& domain) {
  const int m = 8192;
  double s = 0.0;
  for (int j = 0; j < m; ++j) s += domain.speed(kTwoPi * j / m);
  return s * kTwoPi / m;
}

double diameter(const StarDomain2D& domain) {
  const int m = 1024;
  std::vector<Vec2> pts(m);
  for (int j = 0; j < m; ++j) pts[j] = domain.point(kTwoPi * j / m);
  double best = -1.0;
  int bi = 0, bj = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = (pts[i] - pts[j]).squaredNorm();
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  const double h = kTwoPi / m;
  double p1 = h * bi, p2 = h * bj;
  for (int sweep = 0; sweep < 40; ++sweep) {
    const Vec2 q2 = domain.point(p2);
    p1 = golden_min([&](double t) { return -(domain.point(t) - q2).squaredNorm(); }, p1 - h, p1 + h);
    const Vec2 q1 = domain.point(p1);
    p2 = golden_min([&](double t) { return -(domain.point(t) - q1).squaredNorm(); }, p2 - h, p2 + h);
  }
  return std::max(std::sqrt(best), (domain.point(p1) - domain.point(p2)).norm());
}

std::pair<double, double> H0_and_R(const StarDomain2D& domain) {
  const double R = 2.0 * area(domain) / perimeter(domain);
  return {1.0 / R, R};
}

std::pair<double, double> rho_bounds(const StarDomain2D& domain, const Vec2& z) {
  if (!domain.contains(z)) throw DomainError("rho_bounds: z must lie inside the domain");
  const int m = 4096;
  const double h = kTwoPi / m;
  int imin = 0, imax = 0;
  double dmin = std::numeric_limits<double>::infinity(), dmax = -1.0;
  for (int j = 0; j < m; ++j) {
    const double d = (domain.point(h * j) - z).squaredNorm();
    if (d < dmin) { dmin = d; imin = j; }
    if (d > dmax) { dmax = d; imax = j; }
  }
  auto dist2 = [&](double t) { return (domain.point(t) - z).squaredNorm(); };
  const double tmin = golden_min(dist2, h * (imin - 1), h * (imin + 1));
  const double tmax = golden_min([&](double t) { return -dist2(t); }, h * (imax - 1), h * (imax + 1));
  return {std::sqrt(std::min(dmin, dist2(tmin))), std::sqrt(std::max(dmax, dist2(tmax)))};
}

BoundaryDistance::BoundaryDistance(const StarDomain2D& domain, int samples)
    : domain_(&domain), phi_(samples), pts_(samples) {
  for (int j = 0; j < samples; ++j) {
    phi_[j] = kTwoPi * j / samples;
    pts_[j] = domain.point(phi_[j]);
  }
}

double BoundaryDistance::operator()(const Vec2& x) const {
  const int m = static_cast<int>(pts_.size());
  int best = 0;
  double dbest = std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j) {
    const double d = (pts_[j] - x).squaredNorm();
    if (d < dbest) {
      dbest = d;
      best = j;
    }
  }
  const double h = kTwoPi / m;
  auto dist2 = [&](double t) { return (domain_->point(t) - x).squaredNorm(); };
  const double t = golden_min(dist2, phi_[best] - h, phi_[best] + h, 1e-11);
  return std::sqrt(std::min(dbest, dist2(t)));
}

double delta_gamma(const StarDomain2D& domain, const Vec2& x) {
  return BoundaryDistance(domain, 4096)(x);
}

double max_curvature(const StarDomain2D& domain) {
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < 8192; ++j) best = std::max(best, domain.curvature(kTwoPi * j / 8192));
  return best;
}

namespace {

double min_curvature(const StarDomain2D& domain) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 8192; ++j) best = std::min(best, domain.curvature(kTwoPi * j / 8192));
  return best;
}

// Largest r in [0, hi] passing `test`, assuming the passing set is [0, r*].
template <class Test>
double bisect_radius(Test&& test, double hi) {
  if (test(hi)) return hi;
  double lo = 0.0;
  for (int it = 0; it < 60 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (test(mid)) lo = mid; else hi = mid;
  }
  return lo;
}

}  // namespace

bool is_convex(const StarDomain2D& domain) { return min_curvature(domain) >= 0.0; }

std::pair<double, double> ball_radii(const StarDomain2D& domain) {
  domain.validate();
  const auto samples = boundary_sample(domain, 512);
  const BoundaryDistance dist(domain, 1024);
  const double d = diameter(domain);
  const double tol = 1e-9;

  auto interior_ok = [&](double r) {
    for (const auto& b : samples) {
      const Vec2 c = b.pos - r * b.normal;
      if (!domain.contains(c) || dist(c) < r * (1.0 - tol)) return false;
    }
    return true;
  };
  auto exterior_ok = [&](double r) {
    for (const auto& b : samples) {
      const Vec2 c = b.pos + r * b.normal;
      if (domain.contains(c) || dist(c) < r * (1.0 - tol)) return false;
    }
    return true;
  };
  double ri = bisect_radius(interior_ok, domain.max_radius());
  const double kmax = max_curvature(domain);
  if (kmax > 0.0) ri = std::min(ri, 1.0 / kmax);
  double re = bisect_radius(exterior_ok, d);
  const double kmin = min_curvature(domain);
  if (kmin < 0.0) re = std::min(re, -1.0 / kmin);
  if (!(ri > 0.0) || !(re > 0.0)) throw NumericalError("ball_radii: bracketing failed");
  return {ri, std::min(re, d)};
}

double inradius(const StarDomain2D& domain) {
  const BoundaryDistance dist(domain, 2048);
  const double R = domain.max_radius();
  const int n = 48;
  Vec2 best(0.0, 0.0);
  double dbest = domain.contains(best) ? dist(best) : 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const Vec2 x(-R + 2.0 * R * i / n, -R + 2.0 * R * j / n);
      if (!domain.contains(x)) continue;
      const double v = dist(x);
      if (v > dbest) {
        dbest = v;
        best = x;
      }
    }
  }
  // compass search
  double step = 2.0 * R / n;
  const Vec2 dirs[8] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                        {M_SQRT1_2, M_SQRT1_2}, {-M_SQRT1_2, M_SQRT1_2},
                        {M_SQRT1_2, -M_SQRT1_2}, {-M_SQRT1_2, -M_SQRT1_2}};
  while (step > 1e-11) {
    bool moved = false;
    for (const Vec2& dir : dirs) {
      const Vec2 x = best + step * dir;
      if (!domain.contains(x)) continue;
      const double v = dist(x);
      if (v > dbest) {
        dbest = v;
        best = x;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return dbest;
}

std::pair<double, double> cone_params(const StarDomain2D& domain) {
  return {kPi / 4, ball_radii(domain).first};
}

double curvature_deviation(const StarDomain2D& domain) {
  const double H0 = H0_and_R(domain).first;
  const auto samples = boundary_sample(domain, 1 << 14);
  double num = 0.0, len = 0.0;
  for (const auto& b : samples) {
    num += (b.kappa - H0) * (b.kappa - H0) * b.weight;
    len += b.weight;
  }
  return std::sqrt(num / len);
}

DomainScalars domain_scalars(const StarDomain2D& domain) {
  DomainScalars s;
  s.N = 2;
  s.volume = area(domain);
  s.surface = perimeter(domain);
  s.diameter = diameter(domain);
  const auto radii = ball_radii(domain);
  s.r_interior = radii.first;
  s.r_exterior = radii.second;
  s.inradius = inradius(domain);
  return s;
}

}  // namespace qsym
