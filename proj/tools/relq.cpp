// relq — derives likely PK/FK relationships from a SQL query log plus the
// table data it references, and benchmarks that against exhaustive
// cross-join-style discovery.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "relq/relq.hpp"

namespace {

struct ThresholdFlags {
  std::string delta_sel = "0.05";
  std::string eps_rhr = "0.05";
  std::string tau_pk = "0.90";
  std::string rho_count = "0.10";
  std::string min_containment = "0.5";

  bool delta_set = false, eps_set = false, tau_set = false, rho_set = false,
       containment_set = false;
};

// Precedence: built-in defaults < config file (RELQ_THRESHOLDS or --config)
// < explicit flags.
void apply_config_file(const std::string& path, ThresholdFlags& flags) {
  auto values = relq::parse_config_file(path);
  auto use = [&](const char* key, std::string& slot, bool explicitly_set) {
    auto it = values.find(key);
    if (it != values.end() && !explicitly_set) slot = it->second;
  };
  use("delta-sel", flags.delta_sel, flags.delta_set);
  use("eps-rhr", flags.eps_rhr, flags.eps_set);
  use("tau-pk", flags.tau_pk, flags.tau_set);
  use("rho-count", flags.rho_count, flags.rho_set);
  use("min-containment", flags.min_containment, flags.containment_set);
}

relq::RunConfig make_run_config(const ThresholdFlags& flags) {
  relq::RunConfig config;
  config.thresholds.delta_sel = relq::parse_threshold("delta-sel", flags.delta_sel);
  config.thresholds.eps_rhr = relq::parse_threshold("eps-rhr", flags.eps_rhr);
  config.thresholds.tau_pk = relq::parse_threshold("tau-pk", flags.tau_pk);
  config.thresholds.rho_count = relq::parse_threshold("rho-count", flags.rho_count);
  config.min_containment =
      relq::parse_threshold("min-containment", flags.min_containment);
  return config;
}

// Report goes to a file, or to stdout with `-`.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw relq::IoError("cannot write " + path);
    }
  }

  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PK/FK relationship discovery from SQL query logs"};
  app.require_subcommand(1);

  ThresholdFlags flags;
  std::string queries, data_dir, out = "-", config_path;
  std::string table, column;
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "more diagnostics on stderr");

  auto add_threshold_opts = [&](CLI::App* cmd) {
    cmd->add_option("--delta-sel", flags.delta_sel,
                    "min selectivity gap for the selectivity rule")
        ->each([&](const std::string&) { flags.delta_set = true; });
    cmd->add_option("--eps-rhr", flags.eps_rhr,
                    "min hit-rate gap for the tiebreak rule")
        ->each([&](const std::string&) { flags.eps_set = true; });
    cmd->add_option("--tau-pk", flags.tau_pk,
                    "min selectivity required of the PK end")
        ->each([&](const std::string&) { flags.tau_set = true; });
    cmd->add_option("--rho-count", flags.rho_count,
                    "small-side guard ratio")
        ->each([&](const std::string&) { flags.rho_set = true; });
    cmd->add_option("--config", config_path, "key=value config file");
  };

  CLI::App* discover = app.add_subcommand(
      "discover", "analyze a query log and write the relationship report");
  discover->add_option("--queries", queries, "query log file")->required();
  discover->add_option("--data-dir", data_dir, "directory of <table>.csv files")
      ->required();
  discover->add_option("--out", out, "report file, or - for stdout");
  add_threshold_opts(discover);

  CLI::App* baseline = app.add_subcommand(
      "baseline", "exhaustive cross-table column-overlap discovery");
  baseline->add_option("--data-dir", data_dir, "directory of <table>.csv files")
      ->required();
  baseline->add_option("--out", out, "output file, or - for stdout");
  baseline->add_option("--min-containment", flags.min_containment,
                       "keep pairs with max containment >= this")
      ->each([&](const std::string&) { flags.containment_set = true; });
  baseline->add_option("--config", config_path, "key=value config file");

  CLI::App* bench = app.add_subcommand(
      "bench", "guided-vs-baseline cost rows over query-log prefixes");
  bench->add_option("--queries", queries, "query log file")->required();
  bench->add_option("--data-dir", data_dir, "directory of <table>.csv files")
      ->required();
  bench->add_option("--out", out, "output file, or - for stdout");
  add_threshold_opts(bench);

  CLI::App* profile = app.add_subcommand("profile", "profile one column");
  profile->add_option("--data-dir", data_dir, "directory of <table>.csv files")
      ->required();
  profile->add_option("--table", table, "table name")->required();
  profile->add_option("--column", column, "column name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv("RELQ_THRESHOLDS")) config_path = env;
    }
    if (!config_path.empty()) apply_config_file(config_path, flags);

    relq::RunConfig config = make_run_config(flags);
    config.queries_path = queries;
    config.data_dir = data_dir;
    config.verbosity = verbosity;

    if (discover->parsed()) {
      OutputTarget target(out);
      relq::DiscoverResult result =
          relq::run_discover(config, target.stream(), std::cerr);
      if (!result.ok()) {
        std::cerr << "no statement parsed from " << queries << "\n";
        return 1;
      }
      return 0;
    }
    if (baseline->parsed()) {
      OutputTarget target(out);
      relq::run_baseline(config, target.stream(), std::cerr);
      return 0;
    }
    if (bench->parsed()) {
      OutputTarget target(out);
      relq::run_bench(config, target.stream(), std::cerr);
      return 0;
    }
    if (profile->parsed()) {
      relq::run_profile(config, table, column, std::cout);
      return 0;
    }
  } catch (const relq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const relq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
