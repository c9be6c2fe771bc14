#include "qsym/fields.hpp"

#include <algorithm>
#include <Eigen/Geometry>
#include <cmath>
#include <random>

#include "qsym/errors.hpp"

namespace qsym {

double gradient_self_test(const AnalyticField& field, const VecN& center,
                          double extent, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int N = field.dim;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    VecN x(N);
    for (int i = 0; i < N; ++i) x(i) = center(i) + extent * unit(rng);
    const VecN g = field.gradient(x);
    VecN fd(N);
    for (int i = 0; i < N; ++i) {
      const double step = 1e-5 * (1.0 + std::abs(x(i)));
      VecN xp = x, xm = x;
      xp(i) += step;
      xm(i) -= step;
      fd(i) = (field.value(xp) - field.value(xm)) / (2.0 * step);
    }
    worst = std::max(worst, (fd - g).norm() / std::max(1.0, g.norm()));
  }
  return worst;
}

AnalyticField linear_field(const VecN& w, const VecN& anchor, std::string label) {
  const int N = static_cast<int>(w.size());
  AnalyticField f;
  f.label = std::move(label);
  f.dim = N;
  f.value = [w, anchor](const VecN& y) { return w.dot(y - anchor); };
  f.gradient = [w](const VecN&) { return w; };
  f.hessian = [N](const VecN&) { return MatN::Zero(N, N).eval(); };
  return f;
}

namespace {

VecN orthogonal_unit(const VecN& e) {
  const int N = static_cast<int>(e.size());
  VecN w(N);
  if (N == 2) {
    w << -e(1), e(0);
    return w;
  }
  Eigen::Vector3d a(e(0), e(1), e(2));
  Eigen::Vector3d t = std::abs(a(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  Eigen::Vector3d c = a.cross(t).normalized();
  w << c(0), c(1), c(2);
  return w;
}

VecN take(int N, std::initializer_list<double> xs) {
  VecN v(N);
  auto it = xs.begin();
  for (int i = 0; i < N; ++i, ++it) v(i) = *it;
  return v;
}

AnalyticField make(std::string label, int N, std::function<double(const VecN&)> value,
                   std::function<VecN(const VecN&)> gradient) {
  AnalyticField f;
  f.label = std::move(label);
  f.dim = N;
  f.value = std::move(value);
  f.gradient = std::move(gradient);
  return f;
}

AnalyticField with_hessian(AnalyticField f, std::function<MatN(const VecN&)> hess) {
  f.hessian = std::move(hess);
  return f;
}

}  // namespace

std::vector<AnalyticField> field_catalog(int N, const VecN& anchor, const VecN& axis) {
  if (N != 2 && N != 3) throw DomainError("field_catalog: N must be 2 or 3");
  if (anchor.size() != N || axis.size() != N) {
    throw DomainError("field_catalog: anchor/axis dimension mismatch");
  }
  const VecN e = axis.normalized();
  const VecN w = orthogonal_unit(e);
  const VecN x0 = anchor;
  const VecN c = x0 - e;  // behind the vertex, outside every cone on this axis
  const MatN I = MatN::Identity(N, N);
  const VecN v = take(N, {0.8, -0.5, 0.3});
  const VecN tilt = take(N, {2.5, 0.0, 0.0});
  MatN A = MatN::Zero(N, N);
  A(0, 0) = 1.0;
  A(1, 1) = 3.0;
  if (N == 3) A(2, 2) = 2.0;

  std::vector<AnalyticField> out;
  auto zeroN = [N](const VecN&) { return VecN::Zero(N).eval(); };

  out.push_back(with_hessian(make("const_zero", N, [](const VecN&) { return 0.0; }, zeroN),
                             [N](const VecN&) { return MatN::Zero(N, N).eval(); }));
  out.push_back(make("const_3.5", N, [](const VecN&) { return 3.5; }, zeroN));
  out.push_back(linear_field(e, x0, "linear_axis"));
  out.push_back(linear_field(w, x0, "linear_perp"));
  out.push_back(linear_field(v, x0, "linear_oblique"));
  out.push_back(with_hessian(
      make("radial_sq", N, [x0](const VecN& y) { return (y - x0).squaredNorm(); },
           [x0](const VecN& y) { return (2.0 * (y - x0)).eval(); }),
      [I](const VecN&) { return (2.0 * I).eval(); }));
  out.push_back(make(
      "axis_sq", N, [x0, e](const VecN& y) { const double t = e.dot(y - x0); return t * t; },
      [x0, e](const VecN& y) { return (2.0 * e.dot(y - x0) * e).eval(); }));
  out.push_back(make(
      "saddle_xy", N,
      [x0, N](const VecN& y) {
        const VecN d = y - x0;
        return N == 2 ? d(0) * d(1) : d(0) * d(1) + d(1) * d(2) + d(0) * d(2);
      },
      [x0, N](const VecN& y) {
        const VecN d = y - x0;
        VecN g = VecN::Zero(N);
        if (N == 2) {
          g(0) = d(1);
          g(1) = d(0);
        } else {
          g(0) = d(1) + d(2);
          g(1) = d(0) + d(2);
          g(2) = d(0) + d(1);
        }
        return g;
      }));
  out.push_back(with_hessian(
      make("aniso_quad", N, [x0, A](const VecN& y) { const VecN d = y - x0; return d.dot(A * d); },
           [x0, A](const VecN& y) { return (2.0 * A * (y - x0)).eval(); }),
      [A](const VecN&) { return (2.0 * A).eval(); }));
  out.push_back(make(
      "radial_cube", N, [x0](const VecN& y) { return std::pow((y - x0).norm(), 3); },
      [x0](const VecN& y) { const VecN d = y - x0; return (3.0 * d.norm() * d).eval(); }));
  out.push_back(make(
      "harmonic_cubic", N,
      [x0](const VecN& y) { const VecN d = y - x0; return d(0) * d(0) * d(0) - 3.0 * d(0) * d(1) * d(1); },
      [x0, N](const VecN& y) {
        const VecN d = y - x0;
        VecN g = VecN::Zero(N);
        g(0) = 3.0 * (d(0) * d(0) - d(1) * d(1));
        g(1) = -6.0 * d(0) * d(1);
        return g;
      }));
  out.push_back(make(
      "shifted_sq", N, [c](const VecN& y) { return (y - c).squaredNorm(); },
      [c](const VecN& y) { return (2.0 * (y - c)).eval(); }));
  out.push_back(make(
      "exp_oblique", N, [x0, v](const VecN& y) { return std::exp(v.dot(y - x0)); },
      [x0, v](const VecN& y) { return (std::exp(v.dot(y - x0)) * v).eval(); }));
  out.push_back(make(
      "exp_axis_decay", N, [x0, e](const VecN& y) { return std::exp(-e.dot(y - x0)); },
      [x0, e](const VecN& y) { return (-std::exp(-e.dot(y - x0)) * e).eval(); }));
  out.push_back(make(
      "sincos_tilt", N,
      [x0, tilt](const VecN& y) {
        const VecN d = y - x0;
        return std::sin(2.0 * d(0)) * std::cos(d(1)) + tilt.dot(d);
      },
      [x0, tilt](const VecN& y) {
        const VecN d = y - x0;
        VecN g = tilt;
        g(0) += 2.0 * std::cos(2.0 * d(0)) * std::cos(d(1));
        g(1) += -std::sin(2.0 * d(0)) * std::sin(d(1));
        return g;
      }));
  out.push_back(make(
      "sin_sum_tilt", N,
      [x0, tilt, N](const VecN& y) {
        const VecN d = y - x0;
        double s = tilt.dot(d);
        for (int i = 0; i < N; ++i) s += std::sin(d(i)) / (i + 1.0);
        return s;
      },
      [x0, tilt, N](const VecN& y) {
        const VecN d = y - x0;
        VecN g = tilt;
        for (int i = 0; i < N; ++i) g(i) += std::cos(d(i)) / (i + 1.0);
        return g;
      }));
  out.push_back(make(
      "cos_axis_tilt", N,
      [x0, e](const VecN& y) { const double t = e.dot(y - x0); return std::cos(3.0 * t) + 4.0 * t; },
      [x0, e](const VecN& y) {
        const double t = e.dot(y - x0);
        return ((4.0 - 3.0 * std::sin(3.0 * t)) * e).eval();
      }));
  out.push_back(make(
      "log_shift", N, [c](const VecN& y) { return std::log((y - c).norm()); },
      [c](const VecN& y) { const VecN d = y - c; return (d / d.squaredNorm()).eval(); }));
  out.push_back(make(
      "gauss_shift", N, [c](const VecN& y) { return std::exp(-0.5 * (y - c).squaredNorm()); },
      [c](const VecN& y) {
        const VecN d = y - c;
        return (-std::exp(-0.5 * d.squaredNorm()) * d).eval();
      }));
  out.push_back(make(
      "rational_shift", N, [c](const VecN& y) { return 1.0 / (1.0 + (y - c).squaredNorm()); },
      [c](const VecN& y) {
        const VecN d = y - c;
        const double q = 1.0 + d.squaredNorm();
        return (-2.0 * d / (q * q)).eval();
      }));
  out.push_back(make(
      "sqrt_shift", N, [c](const VecN& y) { return std::sqrt(1.0 + (y - c).squaredNorm()); },
      [c](const VecN& y) {
        const VecN d = y - c;
        return (d / std::sqrt(1.0 + d.squaredNorm())).eval();
      }));
  out.push_back(make(
      "atan_shift", N, [c, v](const VecN& y) { return std::atan(v.dot(y - c)); },
      [c, v](const VecN& y) {
        const double t = v.dot(y - c);
        return (v / (1.0 + t * t)).eval();
      }));
  return out;
}

std::vector<AnalyticField> planar_field_catalog() {
  VecN origin = VecN::Zero(2);
  std::vector<AnalyticField> out;
  out.push_back(linear_field(take(2, {1.0, 0.0}), origin, "x"));
  out.push_back(linear_field(take(2, {0.6, -0.8}), origin, "oblique"));
  out.push_back(with_hessian(
      make("radial_sq", 2, [](const VecN& y) { return y.squaredNorm(); },
           [](const VecN& y) { return (2.0 * y).eval(); }),
      [](const VecN&) { return (2.0 * MatN::Identity(2, 2)).eval(); }));
  out.push_back(make(
      "saddle", 2, [](const VecN& y) { return y(0) * y(0) - y(1) * y(1); },
      [](const VecN& y) { return take(2, {2.0 * y(0), -2.0 * y(1)}); }));
  out.push_back(make(
      "exp_mix", 2, [](const VecN& y) { return std::exp(0.7 * y(0) - 0.4 * y(1)); },
      [](const VecN& y) {
        const double ex = std::exp(0.7 * y(0) - 0.4 * y(1));
        return take(2, {0.7 * ex, -0.4 * ex});
      }));
  out.push_back(make(
      "sincos", 2, [](const VecN& y) { return std::sin(2.0 * y(0)) * std::cos(y(1)); },
      [](const VecN& y) {
        return take(2, {2.0 * std::cos(2.0 * y(0)) * std::cos(y(1)),
                        -std::sin(2.0 * y(0)) * std::sin(y(1))});
      }));
  out.push_back(make(
      "bump", 2, [](const VecN& y) { return std::exp(-4.0 * (y - take(2, {0.3, 0.2})).squaredNorm()); },
      [](const VecN& y) {
        const VecN d = y - take(2, {0.3, 0.2});
        return (-8.0 * std::exp(-4.0 * d.squaredNorm()) * d).eval();
      }));
  out.push_back(make(
      "cubic", 2, [](const VecN& y) { return y(0) * y(0) * y(0) - 3.0 * y(0) * y(1) * y(1); },
      [](const VecN& y) {
        return take(2, {3.0 * (y(0) * y(0) - y(1) * y(1)), -6.0 * y(0) * y(1)});
      }));
  return out;
}

}  // namespace qsym
