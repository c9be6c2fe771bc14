#include "qsym/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qsym/errors.hpp"

namespace qsym {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "inf" || v == "infinity") return kInf;
  const auto slash = v.find('/');
  if (slash != std::string::npos) {
    return parse_number(key, v.substr(0, slash)) / parse_number(key, v.substr(slash + 1));
  }
  double x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError(key + ": expected a number, got '" + raw + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  int x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError(key + ": expected an integer, got '" + raw + "'");
  }
  return x;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError(key + ": expected true/false, got '" + raw + "'");
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& config_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"family", "ellipse | cosine"},
      {"k", "mode number of the cosine family"},
      {"eps", "comma-separated increasing list of family parameters"},
      {"area_normalize", "divide the cosine radius by sqrt(1 + eps^2/2)"},
      {"grid.h", "grid spacing (a/b fractions allowed)"},
      {"grid.refinements", "extra halvings of grid.h"},
      {"p", "oscillation-chain exponent (domain-verify)"},
      {"q", "second exponent of the gradient bound, inf allowed"},
      {"alpha", "weight exponent of the weighted Poincare check"},
      {"r", "target exponent of the weighted Poincare check"},
      {"N", "dimension for constants and cone-verify (2 or 3)"},
      {"calibration_k", "dimensional factor of the weighted Poincare constant"},
      {"jobs", "worker threads, 0 = hardware concurrency"},
      {"out", "output directory"},
      {"dump_fields", "write x,y,value dumps of u and h"},
      {"report.inputs", "comma-separated CSV files for the report command"},
  };
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key_raw, const std::string& value) {
  const std::string key = trim(key_raw);
  if (key == "family") {
    const std::string v = trim(value);
    if (v == "ellipse") cfg.family.kind = FamilySpec::Kind::Ellipse;
    else if (v == "cosine") cfg.family.kind = FamilySpec::Kind::Cosine;
    else throw ConfigError("family: expected ellipse or cosine, got '" + value + "'");
  } else if (key == "k") {
    cfg.family.k = parse_int(key, value);
  } else if (key == "eps") {
    std::vector<double> eps;
    for (const auto& item : split_list(value)) eps.push_back(parse_number(key, item));
    cfg.family.eps = eps;
  } else if (key == "area_normalize") {
    cfg.family.area_normalize = parse_bool(key, value);
  } else if (key == "grid.h") {
    cfg.family.h = parse_number(key, value);
  } else if (key == "grid.refinements") {
    cfg.family.refinements = parse_int(key, value);
  } else if (key == "p") {
    cfg.p = parse_number(key, value);
  } else if (key == "q") {
    cfg.q = parse_number(key, value);
  } else if (key == "alpha") {
    cfg.alpha = parse_number(key, value);
  } else if (key == "r") {
    cfg.r = parse_number(key, value);
  } else if (key == "N") {
    cfg.N = parse_int(key, value);
  } else if (key == "calibration_k") {
    cfg.calibration_k = parse_number(key, value);
  } else if (key == "jobs") {
    cfg.jobs = parse_int(key, value);
  } else if (key == "out") {
    cfg.out = trim(value);
  } else if (key == "dump_fields") {
    cfg.dump_fields = parse_bool(key, value);
  } else if (key == "report.inputs") {
    cfg.report_inputs = split_list(value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    }
    try {
      apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str(), path);
}

void validate(const RunConfig& cfg) {
  try {
    cfg.family.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (cfg.N < 2 || cfg.N > 3) throw ConfigError("N must be 2 or 3");
  if (!(cfg.p > 2.0)) throw ConfigError("p must exceed N = 2 for the oscillation chain");
  if (!(cfg.q > 2.0)) throw ConfigError("q must exceed N = 2");
  if (!weighted_poincare_admissible(2, cfg.r, 2.0, cfg.alpha)) {
    throw ConfigError("(r, alpha) outside the admissible weighted Poincare range");
  }
  if (!(cfg.calibration_k > 0.0)) throw ConfigError("calibration_k must be positive");
  if (cfg.jobs < 0) throw ConfigError("jobs must be >= 0");
  if (cfg.out.empty()) throw ConfigError("out must not be empty");
}

}  // namespace qsym
