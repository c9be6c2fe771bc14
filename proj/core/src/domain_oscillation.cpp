#include "qsym/domain_oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsym/cone.hpp"
#include "qsym/constants.hpp"
#include "qsym/parallel.hpp"
#include "qsym/quadrature.hpp"

namespace qsym {

namespace {

constexpr int kRadialOrder = 64;
constexpr int kAngular = 256;

VecN polar(double rho, double phi) {
  VecN y(2);
  y << rho * std::cos(phi), rho * std::sin(phi);
  return y;
}

}  // namespace

std::vector<double> gradient_norms_on_domain(const StarDomain2D& domain, const AnalyticField& field,
                                             const std::vector<double>& ps) {
  const GaussRule& g = gauss_legendre(kRadialOrder);
  std::vector<double> sums(ps.size(), 0.0);
  double sup = 0.0, vol = 0.0;
  const double dphi = 2.0 * kPi / kAngular;
  for (int k = 0; k < kAngular; ++k) {
    const double phi = dphi * k;
    const double R = domain.r(phi);
    for (int i = 0; i < kRadialOrder; ++i) {
      const double rho = 0.5 * R * (g.nodes[i] + 1.0);
      const double w = 0.5 * R * g.weights[i] * rho * dphi;
      const double v = field.gradient(polar(rho, phi)).norm();
      vol += w;
      sup = std::max(sup, v);
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (!is_infinite(ps[j])) sums[j] += w * std::pow(v, ps[j]);
      }
    }
  }
  for (int k = 0; k < 4096; ++k) {
    const double phi = 2.0 * kPi * k / 4096;
    sup = std::max(sup, field.gradient(polar(domain.r(phi), phi)).norm());
  }
  std::vector<double> out(ps.size());
  for (std::size_t j = 0; j < ps.size(); ++j) {
    out[j] = is_infinite(ps[j]) ? sup : std::pow(sums[j] / vol, 1.0 / ps[j]);
  }
  return out;
}

double oscillation_on_domain(const StarDomain2D& domain, const AnalyticField& field) {
  // (t, phi) with rho = t r(phi), t in [0, 1]
  auto eval = [&](double t, double phi) {
    t = std::clamp(t, 0.0, 1.0);
    return field.value(polar(t * domain.r(phi), phi));
  };
  constexpr int nt = 64, np = 512;
  double best[2] = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  double arg[2][2] = {{0, 0}, {0, 0}};
  for (int a = 0; a <= nt; ++a) {
    for (int b = 0; b < np; ++b) {
      const double t = double(a) / nt, phi = 2.0 * kPi * b / np;
      const double v = eval(t, phi);
      if (v < best[0]) { best[0] = v; arg[0][0] = t; arg[0][1] = phi; }
      if (v > best[1]) { best[1] = v; arg[1][0] = t; arg[1][1] = phi; }
    }
  }
  for (int s = 0; s < 2; ++s) {
    const double sign = s == 0 ? 1.0 : -1.0;
    double t = arg[s][0], phi = arg[s][1];
    double f = sign * eval(t, phi);
    double st = 1.0 / nt, sp = 2.0 * kPi / np;
    while (st > 1e-13 || sp > 1e-13) {
      bool moved = false;
      const double cand[4][2] = {{t + st, phi}, {t - st, phi}, {t, phi + sp}, {t, phi - sp}};
      for (const auto& c : cand) {
        const double tc = std::clamp(c[0], 0.0, 1.0);
        const double fc = sign * eval(tc, c[1]);
        if (fc < f) { f = fc; t = tc; phi = c[1]; moved = true; }
      }
      if (!moved) { st *= 0.5; sp *= 0.5; }
    }
    best[s] = sign * f;
  }
  return best[1] - best[0];
}

std::vector<StarDomain2D> oscillation_domains() {
  return {StarDomain2D::circle(1.0),
          StarDomain2D::ellipse(1.2, 1.0 / 1.2),
          StarDomain2D::ellipse(2.0, 1.0),
          StarDomain2D::cosine(3, 0.1, false),
          StarDomain2D::cosine(2, 0.2, false),
          StarDomain2D::trigonometric(1.0, {0.0, 0.1}, {0.0, 0.0, 0.05})};
}

namespace {

std::vector<OscillationRecord> sweep_one(const StarDomain2D& domain) {
  const auto [theta, a] = cone_params(domain);
  const double vol = area(domain);
  const std::vector<ExponentPair> pairs = {
      {3.0, kInf, 2}, {4.0, kInf, 2}, {6.0, kInf, 2}, {8.0, kInf, 2}, {kInf, kInf, 2},
      {1.0, 4.0, 2},  {1.0, kInf, 2}, {1.5, 4.0, 2},  {1.5, kInf, 2},
      {2.0, 4.0, 2},  {2.0, kInf, 2}};
  const std::vector<double> ps = {1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, kInf};
  auto norm_of = [&](const std::vector<double>& norms, double p) {
    return norms[std::find(ps.begin(), ps.end(), p) - ps.begin()];
  };
  std::vector<OscillationRecord> out;
  for (const auto& field : planar_field_catalog()) {
    const auto norms = gradient_norms_on_domain(domain, field, ps);
    const double osc = oscillation_on_domain(domain, field);
    for (const auto& pr : pairs) {
      OscillationRecord r;
      r.domain = domain.label();
      r.field = field.label;
      r.p = pr.p;
      r.q = pr.p > 2.0 ? kInf : pr.q;
      r.osc = osc;
      const GradientNorms gn{norm_of(norms, pr.p), norm_of(norms, pr.q)};
      r.bound = oscillation_bound(gn, pr, theta, a, vol);
      r.margin = r.bound - r.osc;
      r.ok = r.margin >= -kInequalitySlack * std::max(1.0, std::abs(r.bound));
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

std::vector<OscillationRecord> oscillation_sweep(const std::vector<StarDomain2D>& domains, int jobs) {
  auto parts = parallel_map<std::vector<OscillationRecord>>(
      domains.size(), jobs, [&](std::size_t k) { return sweep_one(domains[k]); });
  std::vector<OscillationRecord> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace qsym
