#pragma once

#include <string>
#include <vector>

#include "qsym/analysis.hpp"

namespace qsym {

enum class Status { Pass, Fail, Monitored };

std::string to_string(Status s);

struct IdentityReport {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;     // lhs / rhs when meaningful
  double residual = 0;  // relative residual (identities) or signed margin (inequalities)
  double tolerance = 0;
  Status status = Status::Monitored;
};

inline constexpr double kResidualFloor = 1e-12;

// Identity check: pass iff |lhs - rhs| <= tol * max(|lhs|, |rhs|, floor).
IdentityReport identity_report(std::string name, double lhs, double rhs, double tol);

// Inequality lhs <= rhs with absolute slack.
IdentityReport inequality_report(std::string name, double lhs, double rhs, double slack);

IdentityReport monitored_report(std::string name, double lhs, double rhs);

// Discretization-limited tolerances are C h.
struct ToleranceModel {
  double divergence = 1.28;
  double fundamental = 2.56;
  double mp = 2.56;
  double hopf = 1.0;
  double depth = 2.0;
};

IdentityReport check_divergence_identity(const PipelineData& d, const ToleranceModel& tm = {});
IdentityReport check_hopf_bound(const PipelineData& d, const ToleranceModel& tm = {});
IdentityReport check_torsion_depth(const PipelineData& d, const ToleranceModel& tm = {});
IdentityReport check_fundamental_identity(const PipelineData& d, const ToleranceModel& tm = {});
IdentityReport check_identity_mp(const PipelineData& d, const ToleranceModel& tm = {});
IdentityReport check_weighted_poincare(const PipelineData& d, double r, double p, double alpha,
                                       double calibration_k = 1.0);
std::vector<IdentityReport> check_oscillation_chain(const PipelineData& d, double p, double q);
std::vector<IdentityReport> check_grad_infty_bound(const PipelineData& d, double p, double q);
std::vector<IdentityReport> check_sbt_chain(const PipelineData& d);

// Consistency checks of the pipeline itself: boundary oscillation of h,
// discrete harmonicity, the gradient bound M + d, and the minimum depth.
std::vector<IdentityReport> check_pipeline_invariants(const PipelineData& d);

struct LabOptions {
  double p_osc = 6.0;
  double p_grad = 1.0;
  double q_grad = kInf;
  double calibration_k = 1.0;
  ToleranceModel tolerances;
};

// Every check above, in a fixed order.
std::vector<IdentityReport> run_identity_suite(const PipelineData& d, const LabOptions& opt = {});

// For ratio series along a family ordered by eps: pass iff max/min <= bound
// and every series is finite.
IdentityReport family_boundedness(const std::string& name, const std::vector<double>& ratios,
                                  double bound = 10.0);

}  // namespace qsym
