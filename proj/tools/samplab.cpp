// Config-driven runner: sampling, the discrete operator lab, the two-step
// representation checks and the statistical comparison suites.
//
// Exit codes: 0 success, 2 config error, 3 runtime error, 4 verification FAIL.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "samplab/config.hpp"
#include "samplab/diagnostics.hpp"
#include "samplab/errors.hpp"
#include "samplab/io.hpp"
#include "samplab/report.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace samplab;

struct CliOverrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
};

ExperimentConfig load_with_overrides(const CliOverrides& cli) {
  ExperimentConfig config = load_config(cli.config_path);
  if (cli.seed) config.seed = *cli.seed;
  if (cli.out_dir) config.output.directory = *cli.out_dir;
  if (cli.format) {
    config.output.csv = *cli.format == "csv" || *cli.format == "both";
    config.output.json = *cli.format == "json" || *cli.format == "both";
    if (!config.output.csv && !config.output.json)
      throw ConfigError("--format must be csv, json or both");
  }
  return config;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

void write_manifest(const ExperimentConfig& config, const std::string& command) {
  nlohmann::json manifest;
  manifest["command"] = command;
  manifest["config_hash"] = hash_hex(config_hash(config));
  manifest["seed"] = config.seed;
  manifest["tool"] = "samplab";
  manifest["version"] = kVersion;
  atomic_write(std::filesystem::path(config.output.directory) / "manifest.json",
               manifest.dump(2) + "\n");
}

TargetDensity target_of(const ExperimentConfig& config) {
  if (config.target.bbox)
    return make_target(config.target.name, config.target.dim, *config.target.bbox);
  return make_target(config.target.name, config.target.dim);
}

int run_sample(const ExperimentConfig& config) {
  if (config.kernels.size() != 1)
    throw ConfigError("sample: exactly one kernel must be configured");
  const TargetDensity target = target_of(config);
  Point x0;
  if (config.x0) {
    x0 = *config.x0;
    if (static_cast<int>(x0.size()) != target.dim || !target.support_test(x0))
      throw ConfigError("experiment.x0: not a point of the target support");
  } else {
    RngStream rng = RngStream(config.seed).derive(999);
    x0 = sample_pi(target, rng, config.kernels.front().attempt_cap);
  }
  const ChainTrace trace =
      run_chain(target, config.kernels.front(), std::move(x0), config.steps, config.seed);
  std::ostringstream csv;
  write_trace_csv(trace, csv);
  atomic_write(std::filesystem::path(config.output.directory) / "trace.csv", csv.str());
  write_manifest(config, "sample");
  return 0;
}

int run_lab(const ExperimentConfig& config) {
  if (!config.grid) throw ConfigError("lab: experiment.grid is required");
  const GridSpec grid = make_grid(config.grid->weights, config.grid->dim, config.grid->n);
  KernelSet kernels = build_discrete_kernels(grid, config.grid->w);
  if (config.swap_labels) std::swap(kernels.M.P, kernels.H.P);
  const LabReport report = verify_ordering(kernels, config.num_f, config.seed);
  const ConsequenceReport consequences = ordering_consequences(kernels);
  const std::filesystem::path dir(config.output.directory);
  if (config.output.csv) atomic_write(dir / "ordering.csv", ordering_csv(report));
  if (config.output.json)
    atomic_write(dir / "lab_summary.json",
                 lab_summary_json(report, consequences, grid, config.grid->w).dump(2) + "\n");
  write_manifest(config, "lab");
  if (!report.pass || !consequences.pass) {
    std::cerr << "lab: ordering verification FAILED (min margins " << report.min_margin_MU
              << ", " << report.min_margin_UH << ", " << report.min_margin_US << ")\n";
    return 4;
  }
  return 0;
}

int run_check_representation(const ExperimentConfig& config) {
  if (!config.grid) throw ConfigError("check-representation: experiment.grid is required");
  if (config.pair.empty())
    throw ConfigError("check-representation: experiment.pair is required");
  const RepresentationPair pair = representation_pair_from_name(config.pair);
  const GridSpec grid = make_grid(config.grid->weights, config.grid->dim, config.grid->n);
  auto [rep1, rep2] = build_representation(pair, grid, config.grid->w);
  if (config.corrupt_fixture && !rep1.fiber_kernel.empty()) {
    // Asymmetric mass shift inside the first fiber kernel.
    Eigen::MatrixXd& P = rep1.fiber_kernel.front();
    if (P.rows() >= 2) {
      P(0, 1) += 1e-6;
      P(0, 0) -= 1e-6;
    }
  }
  std::vector<CheckReport> checks;
  CheckReport rev1 = check_fiber_reversibility(rep1);
  rev1.check = "fiber_reversibility_" + rep1.label;
  checks.push_back(std::move(rev1));
  CheckReport rev2 = check_fiber_reversibility(rep2);
  rev2.check = "fiber_reversibility_" + rep2.label;
  checks.push_back(std::move(rev2));
  try {
    CheckReport pos = check_fiber_positivity(rep1);
    pos.check = "fiber_positivity_" + rep1.label;
    checks.push_back(std::move(pos));
  } catch (const ArgumentError&) {
    CheckReport pos;
    pos.check = "fiber_positivity_" + rep1.label;
    pos.pass = false;
    pos.worst = -1.0;
    checks.push_back(std::move(pos));
  }
  checks.push_back(check_interweaving(rep1, rep2));
  bool all = true;
  for (const CheckReport& check : checks) all = all && check.pass;
  if (config.output.json)
    atomic_write(std::filesystem::path(config.output.directory) / "representation_checks.json",
                 representation_checks_json(config.pair, grid, checks).dump(2) + "\n");
  write_manifest(config, "check-representation");
  if (!all) {
    std::cerr << "check-representation: hypothesis checks FAILED for " << config.pair << "\n";
    return 4;
  }
  return 0;
}

int run_compare(const ExperimentConfig& config) {
  bool have[4] = {false, false, false, false};
  for (const KernelSpec& spec : config.kernels) have[static_cast<int>(spec.kind)] = true;
  for (int k = 0; k < 4; ++k)
    if (!have[k])
      throw ConfigError("compare: kernel '" +
                        kernel_kind_name(static_cast<KernelKind>(k)) +
                        "' missing from the config");
  const TargetDensity target = target_of(config);
  std::vector<std::string> ids = config.functions;
  if (ids.empty()) {
    for (int k = 1; k <= target.dim; ++k) ids.push_back("coord" + std::to_string(k));
    ids.push_back("radius_sq");
    ids.push_back("halfspace");
  }
  std::vector<TestFunction> fs;
  for (const std::string& id : ids) fs.push_back(make_test_function(target, id));
  MseParams mse;
  mse.chain_length = config.chain_length;
  mse.replications = config.replications;
  const CompareReport report =
      compare_kernels(target, config.kernels, fs, config.n_pairs, mse, config.seed);
  const std::filesystem::path dir(config.output.directory);
  if (config.output.csv) atomic_write(dir / "compare.csv", compare_csv(report));
  if (config.output.json)
    atomic_write(dir / "compare_summary.json",
                 compare_summary_json(report).dump(2) + "\n");
  write_manifest(config, "compare");
  if (report.any_fail) {
    std::cerr << "compare: ordering verification FAILED\n";
    return 4;
  }
  return 0;
}

int dispatch(const std::string& command, const CliOverrides& cli) {
  ExperimentConfig config;
  try {
    config = load_with_overrides(cli);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  const auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (command == "sample")
      code = run_sample(config);
    else if (command == "lab")
      code = run_lab(config);
    else if (command == "check-representation")
      code = run_check_representation(config);
    else
      code = run_compare(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cerr << command << ": done in " << elapsed.count() << " ms, outputs in '"
            << config.output.directory << "'\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"samplab: sampler kernels, operator lab and ordering checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CliOverrides cli;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", cli.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", cli.seed, "override the config seed");
    sub->add_option("--out", cli.out_dir, "override the output directory");
    sub->add_option("--format", cli.format, "csv|json|both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
  };
  add_common(app.add_subcommand("sample", "run one kernel and write the chain trace"));
  add_common(app.add_subcommand("lab", "discrete ordering oracle and consequences"));
  add_common(app.add_subcommand("check-representation",
                                "two-step representation hypothesis checks"));
  add_common(app.add_subcommand("compare", "statistical kernel comparison suites"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }
  return dispatch(app.get_subcommands().front()->get_name(), cli);
}
