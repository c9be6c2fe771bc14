#include "qsym/stability.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "qsym/errors.hpp"
#include "qsym/parallel.hpp"

namespace qsym {

void FamilySpec::validate() const {
  if (eps.empty()) throw DomainError("family needs at least one eps");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || !std::isfinite(eps[i])) throw DomainError("eps must be positive");
    if (i && !(eps[i] > eps[i - 1])) throw DomainError("eps must be strictly increasing");
  }
  if (kind == Kind::Cosine) {
    if (k < 1) throw DomainError("cosine mode number must be >= 1");
    if (eps.back() >= 1.0) throw DomainError("cosine eps must stay below 1");
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid spacing must be positive");
  if (refinements < 0) throw DomainError("refinements must be >= 0");
}

double FamilySpec::spacing() const { return std::ldexp(h, -refinements); }

std::string FamilySpec::name() const {
  return kind == Kind::Ellipse ? "ellipse" : "cosine_k" + std::to_string(k);
}

StarDomain2D family_member(const FamilySpec& spec, double eps) {
  if (spec.kind == FamilySpec::Kind::Ellipse) return StarDomain2D::ellipse(1.0 + eps, 1.0 / (1.0 + eps));
  return StarDomain2D::cosine(spec.k, eps, spec.area_normalize);
}

namespace {

StabilityRecord run_member(const FamilySpec& spec, double eps, const LabOptions& opt) {
  StabilityRecord r;
  r.eps = eps;
  r.h = spec.spacing();
  try {
    const PipelineData d = run_pipeline(family_member(spec, eps), r.h);
    r.H_dev = d.curvature_dev;
    r.rho_diff = d.rho_e - d.rho_i;
    r.gauss_dev = d.gauss_dev;
    r.unu_dev = d.unu_dev;
    r.hess_h_L2 = lp_norm_domain(*d.grid, d.hess_h_norm, 2.0);
    r.weighted_hess_h_L2 = lp_norm_domain(*d.grid, d.hess_h_norm, 2.0, Weight::DeltaGamma, 0.5);
    r.reports = run_identity_suite(d, opt);
    for (const auto& rep : r.reports) {
      if (rep.name == "fundamental") r.res_fundamental = rep.residual;
      if (rep.name == "weighted_hessian") r.res_mp = rep.residual;
      if (rep.name == "divergence") r.res_divergence = rep.residual;
    }
  } catch (const std::exception& e) {
    r.ok = false;
    r.message = e.what();
  }
  return r;
}

}  // namespace

std::vector<StabilityRecord> run_family(const FamilySpec& spec, int jobs, const LabOptions& opt) {
  spec.validate();
  return parallel_map<StabilityRecord>(spec.eps.size(), jobs,
                                       [&](std::size_t i) { return run_member(spec, spec.eps[i], opt); });
}

double record_value(const StabilityRecord& r, const std::string& field) {
  if (field == "eps") return r.eps;
  if (field == "H_dev") return r.H_dev;
  if (field == "rho_diff") return r.rho_diff;
  if (field == "gauss_dev") return r.gauss_dev;
  if (field == "unu_dev") return r.unu_dev;
  if (field == "hess_h_L2") return r.hess_h_L2;
  if (field == "weighted_hess_h_L2") return r.weighted_hess_h_L2;
  throw DomainError("unknown record field: " + field);
}

FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("fit needs equally many x and y");
  FitResult f;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    } else {
      ++f.excluded;
    }
  }
  if (f.excluded > 0) std::cerr << "warning: fit dropped " << f.excluded << " nonpositive pair(s)\n";
  f.n = static_cast<int>(lx.size());
  if (f.n < 4) throw FitError("log-log fit needs at least 4 positive pairs, got " + std::to_string(f.n));
  double mx = 0, my = 0;
  for (int i = 0; i < f.n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= f.n;
  my /= f.n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < f.n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("log-log fit needs distinct x values");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

FitResult fit_exponent(const std::vector<StabilityRecord>& records, const std::string& x_field,
                       const std::string& y_field) {
  std::vector<double> x, y;
  for (const auto& r : records) {
    if (!r.ok) continue;
    x.push_back(record_value(r, x_field));
    y.push_back(record_value(r, y_field));
  }
  return fit_loglog(x, y);
}

namespace {

ProfileVerdict check_profile(const std::vector<StabilityRecord>& records, const std::string& dev) {
  ProfileVerdict v;
  for (const auto& r : records) {
    if (!r.ok) v.failures.push_back("eps=" + std::to_string(r.eps) + ": " + r.message);
  }
  try {
    v.rho = fit_exponent(records, dev, "rho_diff");
    v.gauss = fit_exponent(records, dev, "gauss_dev");
  } catch (const FitError& e) {
    v.failures.push_back(e.what());
    return v;
  }
  for (const auto& r : records) {
    const double x = record_value(r, dev);
    if (r.ok && x > 0.0) v.c_emp = std::max(v.c_emp, r.rho_diff / x);
  }
  std::ostringstream msg;
  if (v.rho.slope < kSlopeLow || v.rho.slope > kSlopeHigh) {
    msg << "rho slope " << v.rho.slope << " outside [" << kSlopeLow << ", " << kSlopeHigh << "]";
    v.failures.push_back(msg.str());
  }
  if (v.rho.r2 < kMinR2) v.failures.push_back("rho fit R^2 " + std::to_string(v.rho.r2) + " below 0.98");
  if (v.gauss.slope < kSlopeLow) v.failures.push_back("gauss slope " + std::to_string(v.gauss.slope) + " below 0.9");
  v.pass = v.failures.empty();
  return v;
}

}  // namespace

ProfileVerdict check_sbt_profile(const std::vector<StabilityRecord>& records) {
  return check_profile(records, "H_dev");
}

ProfileVerdict check_serrin_profile(const std::vector<StabilityRecord>& records) {
  return check_profile(records, "unu_dev");
}

std::vector<std::string> non_monotone_columns(const std::vector<StabilityRecord>& records) {
  static const char* cols[] = {"H_dev", "rho_diff", "gauss_dev", "unu_dev", "hess_h_L2",
                               "weighted_hess_h_L2"};
  std::vector<std::string> bad;
  for (const char* c : cols) {
    for (std::size_t i = 1; i < records.size(); ++i) {
      if (!records[i].ok || !records[i - 1].ok) continue;
      const double lo = record_value(records[i - 1], c), hi = record_value(records[i], c);
      if (!(hi > lo) && hi > 1e-8) {
        bad.emplace_back(c);
        break;
      }
    }
  }
  return bad;
}

}  // namespace qsym
