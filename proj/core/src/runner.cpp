#include "qsym/runner.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>

#include "qsym/cone.hpp"
#include "qsym/csv.hpp"
#include "qsym/domain_oscillation.hpp"
#include "qsym/errors.hpp"
#include "qsym/parallel.hpp"

namespace qsym {

namespace fs = std::filesystem;

bool is_command(const std::string& name) {
  for (const char* c : kCommands) {
    if (name == c) return true;
  }
  return false;
}

namespace {

std::string path_in(const RunConfig& cfg, const std::string& file) {
  return (fs::path(cfg.out) / file).string();
}

std::string opt_exponent(double p) { return std::isnan(p) ? "" : format_exponent(p); }

std::string eps_label(double eps) { return fmt(eps); }

DomainScalars scalars_for(const RunConfig& cfg) {
  if (cfg.N == 2) return domain_scalars(family_member(cfg.family, cfg.family.eps.front()));
  DomainScalars s;  // unit ball in R^3
  s.N = 3;
  s.volume = unit_ball_volume(3);
  s.surface = unit_sphere_area(3);
  s.diameter = 2.0;
  s.r_interior = s.r_exterior = s.inradius = 1.0;
  return s;
}

int run_constants(const RunConfig& cfg) {
  const auto table = constant_table(cfg.N, scalars_for(cfg), cfg.calibration_k);
  CsvWriter w(path_in(cfg, "constants.csv"), {"name", "value", "inputs", "provenance"});
  bool ok = true;
  for (const auto& r : table) {
    std::string inputs;
    for (const auto& [k, v] : r.inputs) {
      if (!inputs.empty()) inputs += ';';
      inputs += k + "=" + fmt(v);
    }
    w.row({r.name, fmt(r.value), inputs, r.provenance});
    ok = ok && std::isfinite(r.value);
  }
  std::cerr << "constants: " << table.size() << " rows\n";
  return ok ? kExitPass : kExitFail;
}

int run_cone_verify(const RunConfig& cfg) {
  const auto rows = cone_sweep(cfg.N, cfg.jobs);
  CsvWriter w(path_in(cfg, "cone_verify.csv"),
              {"field", "theta", "a", "p", "q", "check", "lhs", "rhs", "margin"});
  std::size_t bad = 0;
  for (const auto& r : rows) {
    w.row({r.field, fmt(r.theta), fmt(r.a), opt_exponent(r.p), opt_exponent(r.q), r.report.check,
           fmt(r.report.lhs), fmt(r.report.rhs), fmt(r.report.margin)});
    if (!r.report.ok) ++bad;
  }
  std::cerr << "cone-verify: " << rows.size() << " checks, " << bad << " violations\n";
  return bad ? kExitFail : kExitPass;
}

void write_reports(CsvWriter& w, const std::string& domain, const std::string& eps,
                   const std::vector<IdentityReport>& reps, std::size_t& bad) {
  for (const auto& r : reps) {
    w.row({domain, eps, r.name, fmt(r.lhs), fmt(r.rhs), fmt(r.ratio), fmt(r.residual), to_string(r.status)});
    if (r.status == Status::Fail) ++bad;
  }
}

int run_domain_verify(const RunConfig& cfg) {
  LabOptions opt;
  opt.p_osc = cfg.p;
  opt.q_grad = cfg.q;
  opt.calibration_k = cfg.calibration_k;
  const double h = cfg.family.spacing();
  // GridTooCoarse and friends propagate: an unresolvable grid is an infrastructure error
  auto members = parallel_map<std::vector<IdentityReport>>(cfg.family.eps.size(), cfg.jobs, [&](std::size_t i) {
    const double eps = cfg.family.eps[i];
    const PipelineData d = run_pipeline(family_member(cfg.family, eps), h);
    auto reps = run_identity_suite(d, opt);
    if (!(cfg.r == 4.0 && cfg.alpha == 0.5)) {
      reps.push_back(check_weighted_poincare(d, cfg.r, 2.0, cfg.alpha, cfg.calibration_k));
    }
    if (cfg.dump_fields) {
      dump_field_csv(d.u, path_in(cfg, "field_u_eps" + eps_label(eps) + ".csv"));
      dump_field_csv(d.hf, path_in(cfg, "field_h_eps" + eps_label(eps) + ".csv"));
    }
    return reps;
  });

  const std::string family = cfg.family.name();
  CsvWriter w(path_in(cfg, "domain_verify.csv"),
              {"domain", "eps", "check", "lhs", "rhs", "ratio", "residual", "status"});
  std::size_t bad = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    write_reports(w, family, eps_label(cfg.family.eps[i]), members[i], bad);
  }
  if (members.size() >= 2) {
    std::vector<IdentityReport> fam;
    for (std::size_t c = 0; c < members.front().size(); ++c) {
      if (members.front()[c].status != Status::Monitored) continue;
      std::vector<double> ratios;
      for (const auto& m : members) ratios.push_back(m[c].ratio);
      fam.push_back(family_boundedness(members.front()[c].name, ratios));
    }
    write_reports(w, family, "family", fam, bad);
  }

  const auto osc = oscillation_sweep(oscillation_domains(), cfg.jobs);
  CsvWriter wo(path_in(cfg, "domain_oscillation.csv"),
               {"domain", "field", "p", "q", "osc", "bound", "margin", "status"});
  std::size_t osc_bad = 0;
  for (const auto& r : osc) {
    wo.row({r.domain, r.field, format_exponent(r.p), format_exponent(r.q), fmt(r.osc), fmt(r.bound),
            fmt(r.margin), r.ok ? "pass" : "fail"});
    if (!r.ok) ++osc_bad;
  }
  std::cerr << "domain-verify: " << bad << " failed identity checks, " << osc_bad << " of " << osc.size()
            << " oscillation bounds violated\n";
  return (bad || osc_bad) ? kExitFail : kExitPass;
}

const std::vector<std::string> kStabilityHeader = {
    "family", "mode", "eps", "h", "H_dev", "rho_diff", "gauss_dev", "unu_dev", "hess_h_L2",
    "weighted_hess_h_L2", "res_fundamental", "res_mp", "res_divergence", "status"};

int run_stability(const RunConfig& cfg, bool serrin) {
  const auto records = run_family(cfg.family, cfg.jobs);
  const std::string stem = serrin ? "serrin_run" : "sbt_run";
  CsvWriter w(path_in(cfg, stem + ".csv"), kStabilityHeader);
  const std::string mode = cfg.family.kind == FamilySpec::Kind::Cosine ? std::to_string(cfg.family.k) : "";
  bool infra = false;
  for (const auto& r : records) {
    w.row({cfg.family.name(), mode, fmt(r.eps), fmt(r.h), fmt(r.H_dev), fmt(r.rho_diff), fmt(r.gauss_dev),
           fmt(r.unu_dev), fmt(r.hess_h_L2), fmt(r.weighted_hess_h_L2), fmt(r.res_fundamental),
           fmt(r.res_mp), fmt(r.res_divergence), r.ok ? "ok" : "error: " + r.message});
    if (!r.ok) {
      infra = true;
      std::cerr << stem << ": eps=" << r.eps << " failed: " << r.message << "\n";
    }
  }
  const ProfileVerdict v = serrin ? check_serrin_profile(records) : check_sbt_profile(records);
  const std::string dev = serrin ? "unu_dev" : "H_dev";
  CsvWriter f(path_in(cfg, stem + "_fit.csv"), {"family", "x", "y", "slope", "intercept", "r2", "n", "c_emp", "status"});
  auto fit_row = [&](const std::string& y, const FitResult& fr) {
    f.row({cfg.family.name(), dev, y, fmt(fr.slope), fmt(fr.intercept), fmt(fr.r2), std::to_string(fr.n),
           fmt(v.c_emp), v.pass ? "pass" : "fail"});
  };
  fit_row("rho_diff", v.rho);
  fit_row("gauss_dev", v.gauss);
  for (const auto& msg : v.failures) std::cerr << stem << ": " << msg << "\n";
  std::cerr << stem << ": rho slope " << v.rho.slope << " (R^2 " << v.rho.r2 << "), gauss slope "
            << v.gauss.slope << "\n";
  if (infra) return kExitInfra;
  return v.pass ? kExitPass : kExitFail;
}

std::vector<double> column_values(const CsvTable& t, const std::string& name) {
  const int c = t.column(name);
  std::vector<double> v;
  for (const auto& row : t.rows) {
    double x = std::numeric_limits<double>::quiet_NaN();
    try {
      x = std::stod(row.at(c));
    } catch (const std::exception&) {
    }
    v.push_back(x);
  }
  return v;
}

int run_report(const RunConfig& cfg) {
  std::vector<std::string> inputs = cfg.report_inputs;
  if (inputs.empty()) {
    for (const char* f : {"constants.csv", "cone_verify.csv", "domain_verify.csv", "domain_oscillation.csv",
                          "sbt_run.csv", "serrin_run.csv"}) {
      if (fs::exists(path_in(cfg, f))) inputs.push_back(path_in(cfg, f));
    }
  }
  if (inputs.empty()) {
    std::cerr << "report: no input CSVs found in " << cfg.out << "\n";
    return kExitInfra;
  }
  CsvWriter w(path_in(cfg, "report.csv"), {"source", "metric", "value", "status"});
  bool ok = true;
  for (const auto& in : inputs) {
    const CsvTable t = read_csv(in);
    const std::string src = fs::path(in).filename().string();
    w.row({src, "rows", std::to_string(t.rows.size()), "info"});
    if (t.column("rho_diff") >= 0) {
      const auto rho = column_values(t, "rho_diff"), gauss = column_values(t, "gauss_dev");
      for (const char* dev : {"H_dev", "unu_dev"}) {
        const auto x = column_values(t, dev);
        for (const auto& [yname, y] : {std::pair{"rho_diff", rho}, std::pair{"gauss_dev", gauss}}) {
          const std::string metric = std::string("slope:") + yname + "/" + dev;
          try {
            const FitResult fr = fit_loglog(x, y);
            bool pass = fr.slope >= kSlopeLow;
            if (std::string(yname) == "rho_diff") pass = pass && fr.slope <= kSlopeHigh && fr.r2 >= kMinR2;
            w.row({src, metric, fmt(fr.slope), pass ? "pass" : "fail"});
            w.row({src, std::string("r2:") + yname + "/" + dev, fmt(fr.r2), "info"});
            ok = ok && pass;
          } catch (const FitError& e) {
            w.row({src, metric, "nan", "fail"});
            ok = false;
          }
        }
      }
    }
    const int sc = t.column("status");
    const int mc = t.column("margin");
    std::size_t fails = 0;
    for (const auto& row : t.rows) {
      if (sc >= 0 && (row.at(sc) == "fail" || row.at(sc).rfind("error", 0) == 0)) ++fails;
      if (sc < 0 && mc >= 0) {
        const double m = std::stod(row.at(mc));
        const int rc = t.column("rhs");
        const double rhs = rc >= 0 ? std::abs(std::stod(row.at(rc))) : 1.0;
        if (!(m >= -kInequalitySlack * std::max(1.0, rhs))) ++fails;
      }
    }
    if (sc >= 0 || mc >= 0) {
      w.row({src, "failures", std::to_string(fails), fails ? "fail" : "pass"});
      ok = ok && fails == 0;
    }
  }
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int execute(const RunConfig& cfg) {
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    fs::create_directories(cfg.out);
    if (cfg.command == "constants") return run_constants(cfg);
    if (cfg.command == "cone-verify") return run_cone_verify(cfg);
    if (cfg.command == "domain-verify") return run_domain_verify(cfg);
    if (cfg.command == "sbt-run") return run_stability(cfg, false);
    if (cfg.command == "serrin-run") return run_stability(cfg, true);
    if (cfg.command == "report") return run_report(cfg);
    std::cerr << "config error: unknown command '" << cfg.command << "'\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GridTooCoarse& e) {
    std::cerr << "grid too coarse: " << e.what() << "\n";
    return kExitInfra;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfra;
  }
}

}  // namespace qsym
