#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qsym/config.hpp"
#include "qsym/errors.hpp"
#include "qsym/runner.hpp"

namespace {

std::string keys_help() {
  std::string s = "\nConfig keys (file lines or key=value arguments):\n";
  for (const auto& [k, d] : qsym::config_keys()) s += "  " + k + std::string(20 - std::min<std::size_t>(19, k.size()), ' ') + d + "\n";
  s += "\nExit codes: 0 pass, 1 assertion failed, 2 config error, 3 infrastructure error.\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative symmetry experiments for the torsion problem"};
  app.footer(keys_help());
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<int> jobs, dim;
  bool dump = false;
  std::vector<std::string> overrides;

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"constants", "table of explicit constants"},
      {"cone-verify", "inequality sweep over catalog fields and cones"},
      {"domain-verify", "identity suite on a family of domains plus oscillation bounds"},
      {"sbt-run", "curvature stability profile of a domain family"},
      {"serrin-run", "normal-derivative stability profile of a domain family"},
      {"report", "summary of previously written CSVs"}};
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--jobs", jobs, "worker threads (0 = all cores)");
    sub->add_option("--N", dim, "dimension for constants and cone-verify");
    sub->add_flag("--dump-fields", dump, "write x,y,value dumps of u and h");
    sub->add_option("overrides", overrides, "key=value settings applied after the config file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qsym::kExitConfig;
  }

  qsym::RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (!config_path.empty()) qsym::apply_config_file(cfg, config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw qsym::ConfigError("expected key=value, got '" + kv + "'");
      qsym::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
  } catch (const qsym::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return qsym::kExitConfig;
  }
  if (!out_dir.empty()) cfg.out = out_dir;
  if (jobs) cfg.jobs = *jobs;
  if (dim) cfg.N = *dim;
  if (dump) cfg.dump_fields = true;
  return qsym::execute(cfg);
}
