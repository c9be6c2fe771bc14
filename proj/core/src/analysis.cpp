#include "qsym/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qsym/errors.hpp"

namespace qsym {
namespace {

const int kDi[4] = {1, -1, 0, 0};
const int kDj[4] = {0, 0, 1, -1};

DiscreteField like(const DiscreteField& f) {
  DiscreteField out;
  out.grid = f.grid;
  out.provenance = Provenance::Derived;
  out.values.assign(f.values.size(), 0.0);
  return out;
}

// Derivative along one axis at unknown k; plus/minus are the arm directions.
double axis_derivative(const DiscreteField& f, int k, int plus, int minus) {
  const Grid& g = *f.grid;
  const Grid::Unknown& u = g.unknowns()[k];
  const double h = g.h();
  const double f0 = f.values[k];
  auto neighbor = [&](int d, int steps) {
    return g.index(u.i + steps * kDi[d], u.j + steps * kDj[d]);
  };
  const bool bp = !u.cut[plus], bm = !u.cut[minus];
  if (bp && bm) {
    return (f.values[neighbor(plus, 1)] - f.values[neighbor(minus, 1)]) / (2.0 * h);
  }
  if (f.has_boundary()) {
    const double hp = u.frac[plus] * h, hm = u.frac[minus] * h;
    const double fp = bp ? f.values[neighbor(plus, 1)] : f.boundary[k][plus];
    const double fm = bm ? f.values[neighbor(minus, 1)] : f.boundary[k][minus];
    return -hp / (hm * (hm + hp)) * fm + (hp - hm) / (hp * hm) * f0 + hm / (hp * (hm + hp)) * fp;
  }
  // one-sided from the interior side
  const int side = bp ? plus : (bm ? minus : -1);
  if (side < 0) return 0.0;
  const double sign = (side == plus) ? 1.0 : -1.0;
  const int n1 = neighbor(side, 1), n2 = neighbor(side, 2);
  if (n2 >= 0 && !g.unknowns()[n1].cut[side]) {
    return sign * (-3.0 * f0 + 4.0 * f.values[n1] - f.values[n2]) / (2.0 * h);
  }
  return sign * (f.values[n1] - f0) / h;
}

}  // namespace

GradientField gradient(const DiscreteField& f) {
  GradientField out{like(f), like(f)};
  for (int k = 0; k < static_cast<int>(f.values.size()); ++k) {
    out.x.values[k] = axis_derivative(f, k, East, West);
    out.y.values[k] = axis_derivative(f, k, North, South);
  }
  return out;
}

HessianField hessian(const DiscreteField& f) {
  const Grid& g = *f.grid;
  const auto& unk = g.unknowns();
  const double h = g.h();
  HessianField out{like(f), like(f), like(f)};
  for (int k = 0; k < static_cast<int>(unk.size()); ++k) {
    const Grid::Unknown& u = unk[k];
    bool regular = !u.irregular();
    int block[3][3];
    for (int dj = -1; dj <= 1 && regular; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        block[di + 1][dj + 1] = g.index(u.i + di, u.j + dj);
        if (block[di + 1][dj + 1] < 0) {
          regular = false;
          break;
        }
      }
    }
    if (regular) {
      auto v = [&](int di, int dj) { return f.values[block[di + 1][dj + 1]]; };
      const double h2 = h * h;
      out.xx.values[k] = (v(1, 0) - 2.0 * v(0, 0) + v(-1, 0)) / h2;
      out.yy.values[k] = (v(0, 1) - 2.0 * v(0, 0) + v(0, -1)) / h2;
      out.xy.values[k] = (v(1, 1) - v(-1, 1) - v(1, -1) + v(-1, -1)) / (4.0 * h2);
      continue;
    }
    // local quadratic least squares, coordinates in units of h
    std::vector<std::array<double, 6>> rows;
    std::vector<double> vals;
    const Vec2 c = g.position(k);
    auto add = [&](const Vec2& p, double value) {
      const double x = (p.x() - c.x()) / h, y = (p.y() - c.y()) / h;
      rows.push_back({1.0, x, y, 0.5 * x * x, x * y, 0.5 * y * y});
      vals.push_back(value);
    };
    for (int dj = -2; dj <= 2; ++dj) {
      for (int di = -2; di <= 2; ++di) {
        const int q = g.index(u.i + di, u.j + dj);
        if (q < 0) continue;
        add(g.position(q), f.values[q]);
        if (f.has_boundary() && std::abs(di) <= 1 && std::abs(dj) <= 1) {
          for (int d = 0; d < 4; ++d) {
            if (unk[q].cut[d]) add(unk[q].cut_point[d], f.boundary[q][d]);
          }
        }
      }
    }
    Eigen::MatrixXd M(rows.size(), 6);
    Eigen::VectorXd b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (int j = 0; j < 6; ++j) M(r, j) = rows[r][j];
      b(r) = vals[r];
    }
    const Eigen::VectorXd coef = M.colPivHouseholderQr().solve(b);
    const double h2 = h * h;
    out.xx.values[k] = coef(3) / h2;
    out.xy.values[k] = coef(4) / h2;
    out.yy.values[k] = coef(5) / h2;
  }
  return out;
}

double interpolate_bicubic(const DiscreteField& f, const Vec2& x, bool& ok) {
  const Grid& g = *f.grid;
  const double h = g.h();
  const double gx = x.x() / h, gy = x.y() / h;
  const int i0 = static_cast<int>(std::floor(gx)), j0 = static_cast<int>(std::floor(gy));
  int best_i = 0, best_j = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int sj = j0 - 4; sj <= j0 + 2; ++sj) {
    for (int si = i0 - 4; si <= i0 + 2; ++si) {
      const double d = std::hypot(si + 1.5 - gx, sj + 1.5 - gy);
      if (d >= best) continue;
      bool full = true;
      for (int b = 0; b < 4 && full; ++b)
        for (int a = 0; a < 4 && full; ++a) full = g.index(si + a, sj + b) >= 0;
      if (full) {
        best = d;
        best_i = si;
        best_j = sj;
      }
    }
  }
  if (!std::isfinite(best)) {
    ok = false;
    return 0.0;
  }
  ok = true;
  auto lagrange = [](double t, int start, double w[4]) {
    for (int a = 0; a < 4; ++a) {
      double v = 1.0;
      for (int b = 0; b < 4; ++b)
        if (b != a) v *= (t - (start + b)) / double(a - b);
      w[a] = v;
    }
  };
  double wx[4], wy[4];
  lagrange(gx, best_i, wx);
  lagrange(gy, best_j, wy);
  double v = 0.0;
  for (int b = 0; b < 4; ++b)
    for (int a = 0; a < 4; ++a) v += wx[a] * wy[b] * f.values[g.index(best_i + a, best_j + b)];
  return v;
}

BoundaryTrace normal_derivative(const DiscreteField& u, const StarDomain2D& domain, int samples,
                                double boundary_value) {
  BoundaryTrace t;
  t.samples = boundary_sample(domain, samples);
  t.values.assign(samples, 0.0);
  t.valid.assign(samples, 1);
  const double delta = 2.0 * u.grid->h();
  double excluded = 0.0, total = 0.0;
  for (int s = 0; s < samples; ++s) {
    const BoundarySample& b = t.samples[s];
    double g[4] = {boundary_value, 0, 0, 0};
    bool ok = true;
    for (int k = 1; k <= 3 && ok; ++k) g[k] = interpolate_bicubic(u, b.pos - k * delta * b.normal, ok);
    total += b.weight;
    if (!ok) {
      t.valid[s] = 0;
      excluded += b.weight;
      continue;
    }
    const double inward = (-11.0 * g[0] + 18.0 * g[1] - 9.0 * g[2] + 2.0 * g[3]) / (6.0 * delta);
    t.values[s] = -inward;
  }
  t.excluded_fraction = excluded / total;
  return t;
}

double boundary_lp_norm(const BoundaryTrace& trace, const std::vector<double>& g, double p) {
  if (!(p >= 1.0)) throw DomainError("boundary_lp_norm: p must be >= 1");
  double num = 0.0, len = 0.0, mx = 0.0;
  for (std::size_t s = 0; s < trace.samples.size(); ++s) {
    if (!trace.valid[s]) continue;
    const double v = std::abs(g[s]);
    mx = std::max(mx, v);
    if (!is_infinite(p)) num += std::pow(v, p) * trace.samples[s].weight;
    len += trace.samples[s].weight;
  }
  if (is_infinite(p)) return mx;
  return len > 0.0 ? std::pow(num / len, 1.0 / p) : 0.0;
}

double boundary_integral(const BoundaryTrace& trace, const std::vector<double>& g) {
  double s = 0.0;
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    if (trace.valid[k]) s += g[k] * trace.samples[k].weight;
  }
  return s;
}

double gauss_map_deviation(const StarDomain2D& domain, const Vec2& z, double R, int samples) {
  const auto bs = boundary_sample(domain, samples);
  double num = 0.0, len = 0.0;
  for (const auto& b : bs) {
    num += (b.normal - (b.pos - z) / R).squaredNorm() * b.weight;
    len += b.weight;
  }
  return R * std::sqrt(num / len);
}

PipelineData run_pipeline(const StarDomain2D& domain, double h, int boundary_samples) {
  PipelineData d;
  d.domain = domain;
  d.h = h;
  d.scalars = domain_scalars(domain);
  std::tie(d.H0, d.R) = H0_and_R(domain);
  auto solved = solve_torsion(domain, h);
  d.u = std::move(solved.first);
  d.solve = solved.second;
  d.grid = d.u.grid;
  d.z = locate_min(d.u);
  d.hf = h_field(d.u, d.z);
  d.grad_u = gradient(d.u);
  d.hess_u = hessian(d.u);

  const std::size_t n = d.u.values.size();
  d.grad_h_norm.resize(n);
  d.hess_h_norm.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 x = d.grid->position(static_cast<int>(k));
    const Vec2 gh = (x - d.z) - Vec2(d.grad_u.x.values[k], d.grad_u.y.values[k]);
    d.grad_h_norm[k] = gh.norm();
    const double hxx = 1.0 - d.hess_u.xx.values[k];
    const double hyy = 1.0 - d.hess_u.yy.values[k];
    const double hxy = -d.hess_u.xy.values[k];
    d.hess_h_norm[k] = std::sqrt(hxx * hxx + hyy * hyy + 2.0 * hxy * hxy);
  }

  d.trace = normal_derivative(d.u, domain, boundary_samples, 0.0);
  const std::size_t m = d.trace.samples.size();
  d.h_nu.resize(m);
  d.grad_h_gamma.resize(m);
  d.unu_minus_R.resize(m);
  d.H_minus_H0.resize(m);
  for (std::size_t s = 0; s < m; ++s) {
    const BoundarySample& b = d.trace.samples[s];
    // u = 0 on Gamma, so grad u = u_nu nu there
    const Vec2 gh = (b.pos - d.z) - d.trace.values[s] * b.normal;
    d.h_nu[s] = gh.dot(b.normal);
    d.grad_h_gamma[s] = gh.norm();
    d.unu_minus_R[s] = d.trace.values[s] - d.R;
    d.H_minus_H0[s] = b.kappa - d.H0;
  }
  std::tie(d.rho_i, d.rho_e) = rho_bounds(domain, d.z);
  d.curvature_dev = curvature_deviation(domain);
  d.gauss_dev = gauss_map_deviation(domain, d.z, d.R);
  d.unu_dev = boundary_lp_norm(d.trace, d.unu_minus_R, 2.0);
  return d;
}

}  // namespace qsym
