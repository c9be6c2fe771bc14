#include "qsym/identity_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsym/cone.hpp"
#include "qsym/errors.hpp"

namespace qsym {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Monitored: return "monitored";
  }
  return "unknown";
}

namespace {

double safe_ratio(double a, double b) {
  return b != 0.0 ? a / b : (a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
}

}  // namespace

IdentityReport identity_report(std::string name, double lhs, double rhs, double tol) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = safe_ratio(lhs, rhs);
  const double scale = std::max({std::abs(lhs), std::abs(rhs), kResidualFloor});
  r.residual = std::abs(lhs - rhs) / scale;
  r.tolerance = tol;
  r.status = (std::isfinite(r.residual) && r.residual <= tol) ? Status::Pass : Status::Fail;
  return r;
}

IdentityReport inequality_report(std::string name, double lhs, double rhs, double slack) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = safe_ratio(lhs, rhs);
  r.residual = rhs - lhs;
  r.tolerance = slack;
  r.status = (std::isfinite(lhs) && std::isfinite(rhs) && r.residual >= -slack) ? Status::Pass
                                                                               : Status::Fail;
  return r;
}

IdentityReport monitored_report(std::string name, double lhs, double rhs) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = safe_ratio(lhs, rhs);
  r.residual = 0.0;
  r.status = Status::Monitored;
  return r;
}

IdentityReport check_divergence_identity(const PipelineData& d, const ToleranceModel& tm) {
  const double lhs = 2.0 * d.scalars.volume;
  const double rhs = boundary_integral(d.trace, d.trace.values);
  return identity_report("divergence", lhs, rhs, tm.divergence * d.h);
}

IdentityReport check_hopf_bound(const PipelineData& d, const ToleranceModel& tm) {
  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < d.trace.values.size(); ++s) {
    if (d.trace.valid[s]) mn = std::min(mn, d.trace.values[s]);
  }
  return inequality_report("hopf_r_i_le_min_unu", d.scalars.r_interior, mn, tm.hopf * d.h);
}

IdentityReport check_torsion_depth(const PipelineData& d, const ToleranceModel& tm) {
  const auto& dist = d.grid->boundary_distance();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dist.size(); ++k) {
    worst = std::max(worst, dist[k] + 2.0 * d.u.values[k] / d.scalars.r_interior);
  }
  return inequality_report("torsion_depth", worst, 0.0, tm.depth * d.h);
}

IdentityReport check_fundamental_identity(const PipelineData& d, const ToleranceModel& tm) {
  std::vector<double> hess2(d.hess_h_norm.size());
  for (std::size_t k = 0; k < hess2.size(); ++k) hess2[k] = d.hess_h_norm[k] * d.hess_h_norm[k];
  const std::size_t m = d.trace.values.size();
  std::vector<double> dev2(m), rhs_int(m);
  for (std::size_t s = 0; s < m; ++s) {
    dev2[s] = d.unu_minus_R[s] * d.unu_minus_R[s];
    rhs_int[s] = -d.H_minus_H0[s] * d.trace.values[s] * d.trace.values[s];
  }
  // 1/(N-1) = 1 in the plane
  const double lhs = integrate_nodal(*d.grid, hess2) + boundary_integral(d.trace, dev2) / d.R;
  const double rhs = boundary_integral(d.trace, rhs_int);
  return identity_report("fundamental", lhs, rhs, tm.fundamental * d.h);
}

IdentityReport check_identity_mp(const PipelineData& d, const ToleranceModel& tm) {
  std::vector<double> w(d.hess_h_norm.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = -d.u.values[k] * d.hess_h_norm[k] * d.hess_h_norm[k];
  const std::size_t m = d.trace.values.size();
  std::vector<double> b(m);
  for (std::size_t s = 0; s < m; ++s) {
    const double un = d.trace.values[s];
    // h = Q^z - u makes the boundary side carry the opposite sign
    b[s] = -0.5 * (un * un - d.R * d.R) * d.h_nu[s];
  }
  return identity_report("weighted_hessian", integrate_nodal(*d.grid, w), boundary_integral(d.trace, b),
                         tm.mp * d.h);
}

IdentityReport check_weighted_poincare(const PipelineData& d, double r, double p, double alpha,
                                       double calibration_k) {
  if (!weighted_poincare_admissible(2, r, p, alpha)) {
    throw DomainError("weighted Poincare exponents outside the admissible range");
  }
  const double lhs = lp_norm_domain(*d.grid, d.grad_h_norm, r);
  const double w = lp_norm_domain(*d.grid, d.hess_h_norm, p, Weight::DeltaGamma, alpha);
  const double c = weighted_poincare_structural_constant(2, r, p, alpha, d.scalars,
                                                         is_convex(d.domain), calibration_k);
  IdentityReport rep = monitored_report("weighted_poincare(r=" + format_exponent(r) + ";p=" +
                                            format_exponent(p) + ";alpha=" + format_exponent(alpha) + ")",
                                        lhs, c * w);
  if (lhs < 1e-10 && w < 1e-10) rep.status = Status::Pass;
  return rep;
}

namespace {

double grad_h_sup(const PipelineData& d) {
  double mx = 0.0;
  for (double v : d.grad_h_norm) mx = std::max(mx, v);
  for (std::size_t s = 0; s < d.grad_h_gamma.size(); ++s) {
    if (d.trace.valid[s]) mx = std::max(mx, d.grad_h_gamma[s]);
  }
  return mx;
}

}  // namespace

std::vector<IdentityReport> check_oscillation_chain(const PipelineData& d, double p, double q) {
  std::vector<IdentityReport> out;
  const double theta = kPi / 4, a = d.scalars.r_interior, vol = d.scalars.volume;
  const double lhs = d.rho_e - d.rho_i;
  const double factor = 2.0 * std::sqrt(unit_ball_volume(2) / vol);
  const double sup = grad_h_sup(d);
  auto bound = [&](double pp, double qq) {
    const GradientNorms norms{lp_norm_domain(*d.grid, d.grad_h_norm, pp),
                              is_infinite(qq) ? sup : lp_norm_domain(*d.grid, d.grad_h_norm, qq)};
    return factor * oscillation_bound(norms, ExponentPair{pp, qq, 2}, theta, a, vol);
  };
  const double ps[3] = {p, 2.0, 1.0};
  for (double pp : ps) {
    out.push_back(inequality_report("osc_chain(p=" + format_exponent(pp) + ";q=" + format_exponent(q) + ")",
                                    lhs, bound(pp, pp > 2.0 ? kInf : q), kInequalitySlack));
  }
  const double hess2 = lp_norm_domain(*d.grid, d.hess_h_norm, 2.0);
  out.push_back(monitored_report("hessian_chain_rho_over_hess", lhs, hess2));
  return out;
}

std::vector<IdentityReport> check_grad_infty_bound(const PipelineData& d, double p, double q) {
  std::vector<IdentityReport> out;
  if (!(p >= 1.0 && p < 2.0 && q > 2.0)) throw DomainError("grad_infty bound needs 1 <= p < N < q");
  const double sup = grad_h_sup(d);
  const double np = lp_norm_domain(*d.grid, d.hess_h_norm, p);
  const double nq = lp_norm_domain(*d.grid, d.hess_h_norm, q);
  const double rhs = oscillation_bound({np, nq}, ExponentPair{p, q, 2}, kPi / 4,
                                       d.scalars.r_interior, d.scalars.volume);
  out.push_back(inequality_report("grad_infty(p=" + format_exponent(p) + ";q=" + format_exponent(q) + ")",
                                  sup, rhs, kInequalitySlack));
  // weighted form with p = 2: E = 2N - p + 2p(1 - N/q)
  const double pw = 2.0;
  const double t = 1.0 - 2.0 * reciprocal(q);
  const double E = 4.0 - pw + 2.0 * pw * t;
  const double wq = nq;
  const double wp = lp_norm_domain(*d.grid, d.hess_h_norm, pw, Weight::DeltaGamma, 0.5);
  const double denom = std::pow(wq, (4.0 - pw) / E) * std::pow(wp, 2.0 * pw * t / E);
  out.push_back(monitored_report("grad_infty_weighted(p=2;q=" + format_exponent(q) + ")", sup, denom));
  return out;
}

std::vector<IdentityReport> check_sbt_chain(const PipelineData& d) {
  const double hess2 = lp_norm_domain(*d.grid, d.hess_h_norm, 2.0);
  const double whess2 = lp_norm_domain(*d.grid, d.hess_h_norm, 2.0, Weight::DeltaGamma, 0.5);
  const double gh = boundary_lp_norm(d.trace, d.grad_h_gamma, 2.0);
  const double hnu = boundary_lp_norm(d.trace, d.h_nu, 2.0);
  return {monitored_report("sbt_hess_over_curv", hess2, d.curvature_dev),
          monitored_report("sbt_hnu_over_unu", hnu, d.unu_dev),
          monitored_report("sbt_gradh_gamma_over_unu", gh, d.unu_dev),
          monitored_report("sbt_unu_over_curv", d.unu_dev, d.curvature_dev),
          monitored_report("serrin_whess_over_unu", whess2, d.unu_dev),
          monitored_report("gauss_over_curv", d.gauss_dev, d.curvature_dev),
          monitored_report("gauss_over_unu", d.gauss_dev, d.unu_dev)};
}

std::vector<IdentityReport> check_pipeline_invariants(const PipelineData& d) {
  std::vector<IdentityReport> out;
  double hmax = -std::numeric_limits<double>::infinity(), hmin = -hmax;
  for (const auto& b : d.trace.samples) {
    const double v = 0.5 * (b.pos - d.z).squaredNorm();
    hmax = std::max(hmax, v);
    hmin = std::min(hmin, v);
  }
  out.push_back(identity_report("boundary_osc_h", hmax - hmin,
                                0.5 * (d.rho_e * d.rho_e - d.rho_i * d.rho_i), 1e-4));
  double lap = 0.0;
  for (double v : discrete_laplacian(d.hf)) lap = std::max(lap, std::abs(v));
  out.push_back(inequality_report("harmonicity", lap, 0.0, d.h * d.h));
  const double M = gradient_bound_M(2, d.scalars.diameter, d.scalars.r_exterior);
  double unu_max = 0.0;
  for (std::size_t s = 0; s < d.trace.values.size(); ++s) {
    if (d.trace.valid[s]) unu_max = std::max(unu_max, d.trace.values[s]);
  }
  out.push_back(inequality_report("max_unu_le_M", unu_max, M, kInequalitySlack));
  out.push_back(inequality_report("grad_h_le_M_plus_d", grad_h_sup(d), M + d.scalars.diameter,
                                  kInequalitySlack));
  const double depth = delta_gamma(d.domain, d.z);
  const double lower = min_depth_bound(2, d.scalars.inradius, d.scalars.diameter, d.scalars.r_exterior,
                                       is_convex(d.domain));
  out.push_back(inequality_report("min_depth", lower, depth, d.h));
  return out;
}

std::vector<IdentityReport> run_identity_suite(const PipelineData& d, const LabOptions& opt) {
  std::vector<IdentityReport> out;
  out.push_back(check_divergence_identity(d, opt.tolerances));
  out.push_back(check_hopf_bound(d, opt.tolerances));
  out.push_back(check_torsion_depth(d, opt.tolerances));
  out.push_back(check_fundamental_identity(d, opt.tolerances));
  out.push_back(check_identity_mp(d, opt.tolerances));
  out.push_back(check_weighted_poincare(d, 4.0, 2.0, 0.5, opt.calibration_k));
  out.push_back(check_weighted_poincare(d, 6.0, 1.5, 0.0, opt.calibration_k));
  for (auto& r : check_oscillation_chain(d, opt.p_osc, kInf)) out.push_back(std::move(r));
  for (auto& r : check_grad_infty_bound(d, opt.p_grad, opt.q_grad)) out.push_back(std::move(r));
  for (auto& r : check_sbt_chain(d)) out.push_back(std::move(r));
  for (auto& r : check_pipeline_invariants(d)) out.push_back(std::move(r));
  return out;
}

IdentityReport family_boundedness(const std::string& name, const std::vector<double>& ratios,
                                  double bound) {
  double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
  bool finite = !ratios.empty();
  for (double r : ratios) {
    if (!std::isfinite(r) || !(r > 0.0)) finite = false;
    mn = std::min(mn, r);
    mx = std::max(mx, r);
  }
  IdentityReport rep;
  rep.name = "bounded:" + name;
  rep.lhs = mx;
  rep.rhs = mn;
  rep.ratio = finite ? mx / mn : std::numeric_limits<double>::infinity();
  rep.residual = rep.ratio;
  rep.tolerance = bound;
  rep.status = (finite && rep.ratio <= bound) ? Status::Pass : Status::Fail;
  return rep;
}

}  // namespace qsym
