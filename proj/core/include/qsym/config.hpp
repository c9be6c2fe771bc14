#pragma once

#include <string>
#include <vector>

#include "qsym/stability.hpp"

namespace qsym {

struct RunConfig {
  std::string command;
  FamilySpec family;
  double p = 6.0;
  double q = kInf;
  double alpha = 0.5;
  double r = 4.0;
  int N = 2;
  double calibration_k = 1.0;
  int jobs = 0;  // 0: hardware concurrency
  std::string out = ".";
  bool dump_fields = false;
  std::vector<std::string> report_inputs;
};

// Recognized keys with a one-line description each, in help order.
const std::vector<std::pair<std::string, std::string>>& config_keys();

// Sets one key; ConfigError on unknown keys or malformed values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// "key=value" per line, '#' starts a comment, blank lines ignored.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin = "config");
void apply_config_file(RunConfig& cfg, const std::string& path);

// Cross-key invariants; ConfigError on violation.
void validate(const RunConfig& cfg);

}  // namespace qsym
