#include "qsym/cone.hpp"

#include <algorithm>
#include <Eigen/Geometry>
#include <cmath>
#include <limits>
#include <string>

#include "qsym/errors.hpp"
#include "qsym/parallel.hpp"
#include "qsym/quadrature.hpp"

namespace qsym {

void Cone::validate() const {
  const int N = dim();
  if (N != 2 && N != 3) throw DomainError("cone quadrature supports N = 2, 3");
  if (axis.size() != N) throw DomainError("cone axis dimension mismatch");
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw DomainError("cone axis must be a unit vector");
  spec.validate();
}

namespace {

struct Frame {
  VecN e, b1, b2;
};

Frame frame_for(const VecN& e) {
  const int N = static_cast<int>(e.size());
  Frame f;
  f.e = e;
  if (N == 2) {
    f.b1 = VecN(2);
    f.b1 << -e(1), e(0);
    return f;
  }
  Eigen::Vector3d a(e(0), e(1), e(2));
  Eigen::Vector3d t = std::abs(a(0)) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  Eigen::Vector3d u1 = a.cross(t).normalized();
  Eigen::Vector3d u2 = a.cross(u1);
  f.b1 = VecN(3);
  f.b2 = VecN(3);
  f.b1 << u1(0), u1(1), u1(2);
  f.b2 << u2(0), u2(1), u2(2);
  return f;
}

VecN direction(const Frame& f, double phi, double psi) {
  if (f.e.size() == 2) return (std::cos(phi) * f.e + std::sin(phi) * f.b1).eval();
  return (std::cos(phi) * f.e +
          std::sin(phi) * (std::cos(psi) * f.b1 + std::sin(psi) * f.b2)).eval();
}

}  // namespace

QuadratureRule cone_rule(const Cone& cone, int radial_order, int angular_order) {
  cone.validate();
  const int N = cone.dim();
  const double theta = cone.spec.theta;
  QuadratureRule rule;
  gauss_legendre_on(radial_order, 0.0, cone.spec.height, rule.radial_nodes, rule.radial_weights);
  const Frame fr = frame_for(cone.axis);
  std::vector<double> pn, pw;
  if (N == 2) {
    gauss_legendre_on(angular_order, -theta, theta, pn, pw);
    for (int i = 0; i < angular_order; ++i) {
      rule.directions.push_back(direction(fr, pn[i], 0.0));
      rule.direction_weights.push_back(pw[i]);
    }
  } else {
    gauss_legendre_on(angular_order, 0.0, theta, pn, pw);
    const int na = 2 * angular_order;
    const double dpsi = 2.0 * kPi / na;
    for (int i = 0; i < angular_order; ++i) {
      for (int j = 0; j < na; ++j) {
        rule.directions.push_back(direction(fr, pn[i], (j + 0.5) * dpsi));
        rule.direction_weights.push_back(pw[i] * std::sin(pn[i]) * dpsi);
      }
    }
  }
  return rule;
}

double integrate_polar(const Cone& cone,
                       const std::function<double(double, const VecN&)>& F,
                       double rel_tol) {
  const int N = cone.dim();
  const int cap = (N == 2) ? 512 : 128;
  auto evaluate = [&](int order, double& abs_total) {
    const QuadratureRule rule = cone_rule(cone, order, order);
    double total = 0.0;
    abs_total = 0.0;
    for (std::size_t d = 0; d < rule.directions.size(); ++d) {
      double inner = 0.0, inner_abs = 0.0;
      for (std::size_t r = 0; r < rule.radial_nodes.size(); ++r) {
        const double v = F(rule.radial_nodes[r], rule.directions[d]) * rule.radial_weights[r];
        inner += v;
        inner_abs += std::abs(v);
      }
      total += inner * rule.direction_weights[d];
      abs_total += inner_abs * rule.direction_weights[d];
    }
    return total;
  };
  double abs_prev = 0.0, abs_next = 0.0;
  int order = 16;
  double prev = evaluate(order, abs_prev);
  while (true) {
    const int next_order = 2 * order;
    const double next = evaluate(next_order, abs_next);
    if (std::abs(next - prev) <= rel_tol * std::abs(next) + 1e-13 * abs_next) return next;
    if (next_order >= cap) {
      throw NumericalError("cone quadrature did not converge: relative change " +
                           std::to_string(std::abs(next - prev) / std::max(std::abs(next), 1e-300)) +
                           " at order " + std::to_string(next_order));
    }
    prev = next;
    order = next_order;
  }
}

double riesz_potential(const Cone& cone, const AnalyticField& field, bool weighted) {
  const int N = cone.dim();
  const double a = cone.spec.height;
  const double aN = std::pow(a, N);
  const double inv_measure = 1.0 / cone.measure();
  const VecN x = cone.vertex;
  // the s^{N-1} Jacobian cancels the kernel |y - x|^{1-N}
  return integrate_polar(cone, [&](double s, const VecN& w) {
    const double g = field.gradient(x + s * w).norm();
    const double weight = weighted ? (aN - std::pow(s, N)) / N : 1.0;
    return g * weight * inv_measure;
  });
}

double cone_average(const Cone& cone, const AnalyticField& field) {
  const int N = cone.dim();
  const double inv_measure = 1.0 / cone.measure();
  const VecN x = cone.vertex;
  return integrate_polar(cone, [&](double s, const VecN& w) {
    return field.value(x + s * w) * std::pow(s, N - 1) * inv_measure;
  });
}

double lp_norm_cone(const Cone& cone, const std::function<VecN(const VecN&)>& g, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm_cone: p must be >= 1");
  cone.validate();
  const int N = cone.dim();
  const VecN x = cone.vertex;
  if (!is_infinite(p)) {
    const double inv_measure = 1.0 / cone.measure();
    const double integral = integrate_polar(cone, [&](double s, const VecN& w) {
      return std::pow(g(x + s * w).norm(), p) * std::pow(s, N - 1) * inv_measure;
    });
    return std::pow(integral, 1.0 / p);
  }
  double best = g(x).norm();
  const QuadratureRule rule = cone_rule(cone, 64, 64);
  const double a = cone.spec.height;
  for (const VecN& w : rule.directions) {
    for (double s : rule.radial_nodes) best = std::max(best, g(x + s * w).norm());
    best = std::max(best, g(x + a * w).norm());
  }
  const Frame fr = frame_for(cone.axis);
  const double theta = cone.spec.theta;
  for (std::size_t k = 1; k <= 10000; ++k) {
    const double s = a * std::pow(halton(k, 2), 1.0 / N);
    double phi, psi = 0.0;
    if (N == 2) {
      phi = theta * (2.0 * halton(k, 3) - 1.0);
    } else {
      phi = std::acos(1.0 - halton(k, 3) * (1.0 - std::cos(theta)));
      psi = 2.0 * kPi * halton(k, 5);
    }
    best = std::max(best, g(x + s * direction(fr, phi, psi)).norm());
  }
  // aperture edge
  for (int i = 0; i <= 256; ++i) {
    const double s = a * i / 256.0;
    const int edges = (N == 2) ? 2 : 32;
    for (int j = 0; j < edges; ++j) {
      const double phi = (N == 2) ? (j == 0 ? -theta : theta) : theta;
      const double psi = (N == 2) ? 0.0 : 2.0 * kPi * j / edges;
      best = std::max(best, g(x + s * direction(fr, phi, psi)).norm());
    }
  }
  return best;
}

namespace {

MarginReport report(std::string check, double lhs, double rhs) {
  MarginReport r;
  r.check = std::move(check);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.ok = r.margin >= -kInequalitySlack * std::max(1.0, std::abs(rhs));
  return r;
}

}  // namespace

std::vector<MarginReport> verify_pointwise_cone(const Cone& cone, const AnalyticField& field) {
  const int N = cone.dim();
  const double a = cone.spec.height;
  const double lhs = std::abs(field.value(cone.vertex) - cone_average(cone, field));
  const double weighted = riesz_potential(cone, field, true);
  const double plain = std::pow(a, N) / N * riesz_potential(cone, field, false);
  return {report("pointwise_weighted", lhs, weighted),
          report("pointwise_plain", lhs, plain),
          report("weighted_le_plain", weighted, plain)};
}

MarginReport verify_morrey_cone(const Cone& cone, const AnalyticField& field, double p) {
  const int N = cone.dim();
  const double lhs = std::abs(field.value(cone.vertex) - cone_average(cone, field));
  const double norm = lp_norm_cone(cone, field.gradient, p);
  return report("morrey", lhs, morrey_cone_constant(p, N, cone.spec.height) * norm);
}

std::vector<MarginReport> verify_interpolation_cone(const Cone& cone,
                                                    const AnalyticField& field,
                                                    const ExponentPair& pair) {
  const int N = cone.dim();
  if (pair.N != N || !pair.admissible_for_interpolation()) {
    throw DomainError("verify_interpolation_cone: need 1 <= p <= N < q");
  }
  const double a = cone.spec.height;
  const double lhs = std::pow(a, N - 1) * riesz_potential(cone, field, false);
  const double np = lp_norm_cone(cone, field.gradient, pair.p);
  const double nq = lp_norm_cone(cone, field.gradient, pair.q);
  const double expA = 1.0 - N * reciprocal(pair.q);
  if (pair.p < N) {
    const auto best = two_term_minimize(interpolation_coef_q(N, pair.q) * nq,
                                        interpolation_coef_p(N, pair.p) * np, expA,
                                        1.0 - N / pair.p, 1.0, TwoTermMode::Power);
    return {report("interp_p_lt_N", lhs, best.value)};
  }
  const double lead = is_infinite(pair.q) ? 1.0 : (pair.q - 1.0) / (pair.q - N);
  const auto best = two_term_minimize(lead * nq, np, expA, 0.0, 1.0, TwoTermMode::Log);
  double closed = 0.0;
  if (np > 0.0) {
    const double qq = is_infinite(pair.q) ? 1.0 : pair.q / (pair.q - N);
    closed = N * qq * np * std::log(std::exp(1.0) * nq / (conjugate(pair.q) * np));
  }
  return {report("interp_p_eq_N_min", lhs, N * best.value),
          report("interp_p_eq_N_closed", lhs, closed)};
}

}  // namespace qsym

namespace qsym {

std::vector<ConeSweepRow> cone_sweep(int N, int jobs) {
  if (N != 2 && N != 3) throw DomainError("cone_sweep: N must be 2 or 3");
  const VecN origin = VecN::Zero(N);
  VecN axis = VecN::Zero(N);
  axis(0) = 1.0;
  const auto fields = field_catalog(N, origin, axis);
  std::vector<Cone> cones;
  for (double theta : {kPi / 8, kPi / 4, kPi / 2}) {
    for (double a : {0.5, 1.0, 2.0}) cones.push_back(Cone{origin, axis, ConeSpec{theta, a}});
  }
  const std::vector<double> morrey_p =
      N == 2 ? std::vector<double>{2.5, 3.0, 4.0, 8.0, kInf} : std::vector<double>{4.0, 6.0, kInf};
  std::vector<ExponentPair> interp;
  const std::vector<double> ip = N == 2 ? std::vector<double>{1.0, 1.5, 2.0} : std::vector<double>{1.0, 2.0, 3.0};
  const std::vector<double> iq = N == 2 ? std::vector<double>{3.0, 4.0, 8.0, kInf} : std::vector<double>{4.0, 6.0, kInf};
  for (double p : ip) {
    for (double q : iq) interp.push_back({p, q, N});
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto parts = parallel_map<std::vector<ConeSweepRow>>(
      fields.size() * cones.size(), jobs, [&](std::size_t idx) {
        const AnalyticField& f = fields[idx / cones.size()];
        const Cone& c = cones[idx % cones.size()];
        std::vector<ConeSweepRow> rows;
        auto add = [&](double p, double q, MarginReport r) {
          rows.push_back({f.label, c.spec.theta, c.spec.height, p, q, std::move(r)});
        };
        for (auto& r : verify_pointwise_cone(c, f)) add(nan, nan, std::move(r));
        for (double p : morrey_p) add(p, nan, verify_morrey_cone(c, f, p));
        for (const auto& pr : interp) {
          for (auto& r : verify_interpolation_cone(c, f, pr)) add(pr.p, pr.q, std::move(r));
        }
        return rows;
      });
  std::vector<ConeSweepRow> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace qsym
