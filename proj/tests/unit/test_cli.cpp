#include <doctest.h>

#include <filesystem>

#include "qsym/config.hpp"
#include "qsym/csv.hpp"
#include "qsym/errors.hpp"
#include "qsym/runner.hpp"

using namespace qsym;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qsym_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing") {
  RunConfig empty;
  apply_config_text(empty, "");
  CHECK(empty.family.eps.size() == 6);
  CHECK_NOTHROW(validate(empty));

  RunConfig c;
  apply_config_text(c, "# comment\nfamily = cosine\nk=3\neps=0.1\n\ngrid.h=1/128  # inline\nq=inf\n");
  CHECK(c.family.kind == FamilySpec::Kind::Cosine);
  CHECK(c.family.k == 3);
  CHECK(c.family.eps == std::vector<double>{0.1});
  CHECK(c.family.h == 1.0 / 128);
  CHECK(is_infinite(c.q));

  RunConfig d;
  CHECK_THROWS_AS(apply_config_text(d, "eps=0.1,abc"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(d, "colour=red"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(d, "jobs=two"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(d, "no equals sign"), ConfigError);
  CHECK_THROWS_AS(apply_config_file(d, "/nonexistent/qsym.cfg"), ConfigError);
  apply_setting(d, "eps", "0.2,0.1");
  CHECK_THROWS_AS(validate(d), ConfigError);
  CHECK(config_keys().size() >= 10);
}

TEST_CASE("csv formatting round-trips") {
  CHECK(fmt(0.1) == "0.10000000000000001");
  CHECK(fmt(kInf) == "inf");
  const auto dir = scratch("csv");
  fs::create_directories(dir);
  {
    CsvWriter w((dir / "t.csv").string(), {"a", "b"});
    w.row({"x,y", fmt(2.5)});
    CHECK_THROWS(w.row({"only one"}));
  }
  const auto t = read_csv((dir / "t.csv").string());
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  CHECK(t.rows.at(0).at(0) == "x,y");
  CHECK(t.column("b") == 1);
  fs::remove_all(dir);
}

TEST_CASE("exit-code contract") {
  RunConfig cfg;
  cfg.out = scratch("exit").string();
  cfg.jobs = 1;

  cfg.command = "constants";
  CHECK(execute(cfg) == kExitPass);
  const auto t = read_csv((fs::path(cfg.out) / "constants.csv").string());
  CHECK(t.rows.size() >= 10);

  cfg.command = "frobnicate";
  CHECK(execute(cfg) == kExitConfig);

  cfg.command = "sbt-run";
  cfg.family.eps = {0.2, 0.1};
  CHECK(execute(cfg) == kExitConfig);

  cfg.command = "domain-verify";
  cfg.family.eps = {0.2};
  cfg.family.h = 0.6;
  CHECK(execute(cfg) == kExitInfra);

  cfg.command = "report";
  cfg.report_inputs = {(fs::path(cfg.out) / "missing.csv").string()};
  CHECK(execute(cfg) == kExitInfra);

  cfg.command = "sbt-run";
  cfg.family = FamilySpec{};
  cfg.family.eps = {0.05, 0.1, 0.15, 0.2};
  cfg.family.h = 1.0 / 32;
  CHECK(execute(cfg) == kExitPass);
  cfg.command = "report";
  cfg.report_inputs = {(fs::path(cfg.out) / "sbt_run.csv").string()};
  CHECK(execute(cfg) == kExitPass);
  fs::remove_all(cfg.out);
}
