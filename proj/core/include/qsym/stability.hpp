#pragma once

#include <string>
#include <vector>

#include "qsym/identity_lab.hpp"
#include "qsym/star_domain.hpp"

namespace qsym {

struct FamilySpec {
  enum class Kind { Ellipse, Cosine };
  Kind kind = Kind::Ellipse;
  int k = 2;  // mode number of the cosine kind
  std::vector<double> eps{0.02, 0.04, 0.07, 0.1, 0.14, 0.2};
  bool area_normalize = true;
  double h = 1.0 / 64;
  int refinements = 0;  // extra halvings of h

  // DomainError unless eps is positive, strictly increasing, and the
  // largest member keeps r > 0.
  void validate() const;
  double spacing() const;
  std::string name() const;
};

// a = 1 + eps, b = 1/(1 + eps), or r = 1 + eps cos(k phi).
StarDomain2D family_member(const FamilySpec& spec, double eps);

struct StabilityRecord {
  double eps = 0;
  double h = 0;
  double H_dev = 0;      // ||H - H0||_{2,Gamma}
  double rho_diff = 0;   // rho_e - rho_i
  double gauss_dev = 0;  // R ||nu - (x - z)/R||_{2,Gamma}
  double unu_dev = 0;    // ||u_nu - R||_{2,Gamma}
  double hess_h_L2 = 0;
  double weighted_hess_h_L2 = 0;  // ||delta^{1/2} hess h||_{2,Omega}
  double res_fundamental = 0;
  double res_mp = 0;
  double res_divergence = 0;
  bool ok = true;
  std::string message;  // failure reason when !ok
  std::vector<IdentityReport> reports;
};

// One record per eps in ascending order; a pipeline error turns that eps
// into a failure row instead of aborting the family.
std::vector<StabilityRecord> run_family(const FamilySpec& spec, int jobs = 0,
                                        const LabOptions& opt = {});

// Record columns addressable by name: H_dev, rho_diff, gauss_dev, unu_dev,
// hess_h_L2, weighted_hess_h_L2, eps.
double record_value(const StabilityRecord& r, const std::string& field);

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  int n = 0;
  int excluded = 0;  // nonpositive pairs dropped
};

// Least squares of log y on log x; FitError when fewer than 4 usable pairs.
FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y);
FitResult fit_exponent(const std::vector<StabilityRecord>& records, const std::string& x_field,
                       const std::string& y_field);

struct ProfileVerdict {
  bool pass = false;
  FitResult rho;    // rho_e - rho_i against the deviation
  FitResult gauss;  // Gauss-map deviation against the deviation
  double c_emp = 0; // max ratio (rho_e - rho_i) / deviation
  std::vector<std::string> failures;
};

inline constexpr double kSlopeLow = 0.9;
inline constexpr double kSlopeHigh = 1.1;
inline constexpr double kMinR2 = 0.98;

// Deviation ||H - H0||_{2,Gamma}.
ProfileVerdict check_sbt_profile(const std::vector<StabilityRecord>& records);
// Deviation ||u_nu - R||_{2,Gamma}.
ProfileVerdict check_serrin_profile(const std::vector<StabilityRecord>& records);

// Columns that fail to decrease strictly with eps (floor 1e-8).
std::vector<std::string> non_monotone_columns(const std::vector<StabilityRecord>& records);

}  // namespace qsym
