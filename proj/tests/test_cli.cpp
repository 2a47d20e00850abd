#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "samplab/config.hpp"
#include "samplab/errors.hpp"

using namespace samplab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cmd(const std::string& cmd) {
  RunResult result;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) result.output += buf.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "samplab_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_json(const std::string& name, const json& doc) {
  const fs::path path = scratch_dir() / name;
  std::ofstream os(path);
  os << doc.dump(2);
  return path;
}

json base_sample_config() {
  json doc;
  doc["target"] = {{"name", "cone"}, {"dim", 1}};
  doc["kernels"] = json::array({{{"kind", "hit_and_run"}, {"inner_grid", 256}}});
  doc["experiment"] = {{"seed", 7}, {"steps", 50}};
  doc["output"] = {{"directory", (scratch_dir() / "out_sample").string()}};
  return doc;
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

const std::string kBin = SAMPLAB_BIN;

}  // namespace

TEST_CASE("config parser: strict keys, mandatory seed, catalog names") {
  json doc = base_sample_config();
  CHECK_NOTHROW((void)parse_config(doc));

  json unknown = doc;
  unknown["experiment"]["stepz"] = 3;
  CHECK_THROWS_AS((void)parse_config(unknown), ConfigError);
  try {
    (void)parse_config(unknown);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("stepz") != std::string::npos);
  }

  json no_seed = doc;
  no_seed["experiment"].erase("seed");
  CHECK_THROWS_AS((void)parse_config(no_seed), ConfigError);

  json bad_target = doc;
  bad_target["target"]["name"] = "mystery";
  CHECK_THROWS_AS((void)parse_config(bad_target), ConfigError);

  json bad_kernel = doc;
  bad_kernel["kernels"][0]["kind"] = "rotor";
  CHECK_THROWS_AS((void)parse_config(bad_kernel), ConfigError);
}

TEST_CASE("config hash tracks semantic fields only") {
  const ExperimentConfig a = parse_config(base_sample_config());
  ExperimentConfig b = a;
  CHECK(config_hash(a) == config_hash(b));
  b.seed += 1;
  CHECK(config_hash(a) != config_hash(b));
  ExperimentConfig c = a;
  c.output.directory = "elsewhere";
  CHECK(config_hash(a) == config_hash(c));
  ExperimentConfig d = a;
  d.steps += 1;
  CHECK(config_hash(a) != config_hash(d));
}

TEST_CASE("cli: sample with zero steps writes header plus one row") {
  json doc = base_sample_config();
  doc["experiment"]["steps"] = 0;
  doc["experiment"]["x0"] = {0.25};
  doc["output"]["directory"] = (scratch_dir() / "out_zero").string();
  const fs::path config = write_json("zero.json", doc);
  const RunResult r = run_cmd(kBin + " sample --config " + config.string());
  CHECK(r.exit_code == 0);
  const std::string csv = read_file(scratch_dir() / "out_zero" / "trace.csv");
  CHECK(csv == "step,x_1,accepted\r\n0,0.25,1\r\n");
}

TEST_CASE("cli: reruns are byte identical") {
  json doc = base_sample_config();
  doc["output"]["directory"] = (scratch_dir() / "out_det_a").string();
  const fs::path config_a = write_json("det_a.json", doc);
  doc["output"]["directory"] = (scratch_dir() / "out_det_b").string();
  const fs::path config_b = write_json("det_b.json", doc);
  CHECK(run_cmd(kBin + " sample --config " + config_a.string()).exit_code == 0);
  CHECK(run_cmd(kBin + " sample --config " + config_b.string()).exit_code == 0);
  CHECK(read_file(scratch_dir() / "out_det_a" / "trace.csv") ==
        read_file(scratch_dir() / "out_det_b" / "trace.csv"));
  CHECK(read_file(scratch_dir() / "out_det_a" / "manifest.json") ==
        read_file(scratch_dir() / "out_det_b" / "manifest.json"));
}

TEST_CASE("cli: seed override changes the trace and the manifest hash") {
  json doc = base_sample_config();
  doc["output"]["directory"] = (scratch_dir() / "out_seed_a").string();
  const fs::path config = write_json("seed.json", doc);
  CHECK(run_cmd(kBin + " sample --config " + config.string()).exit_code == 0);
  CHECK(run_cmd(kBin + " sample --config " + config.string() + " --seed 8 --out " +
                (scratch_dir() / "out_seed_b").string())
            .exit_code == 0);
  CHECK(read_file(scratch_dir() / "out_seed_a" / "trace.csv") !=
        read_file(scratch_dir() / "out_seed_b" / "trace.csv"));
  CHECK(read_file(scratch_dir() / "out_seed_a" / "manifest.json") !=
        read_file(scratch_dir() / "out_seed_b" / "manifest.json"));
}

TEST_CASE("cli: config errors exit with code 2 and name the key") {
  json doc = base_sample_config();
  doc["experiment"]["unknown_knob"] = 1;
  const fs::path config = write_json("bad_key.json", doc);
  const RunResult r = run_cmd(kBin + " sample --config " + config.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("unknown_knob") != std::string::npos);

  json two_kernels = base_sample_config();
  two_kernels["kernels"].push_back({{"kind", "simple_slice"}});
  const fs::path config2 = write_json("two_kernels.json", two_kernels);
  CHECK(run_cmd(kBin + " sample --config " + config2.string()).exit_code == 2);
}

TEST_CASE("cli: lab fixture passes and the label swap fails with exit 4") {
  json doc;
  doc["target"] = {{"name", "cone"}, {"dim", 1}};
  doc["experiment"] = {{"seed", 11},
                       {"num_f", 100},
                       {"grid", {{"dim", 1}, {"n", 8}, {"weights", "cone"}, {"w", 1}}}};
  doc["output"] = {{"directory", (scratch_dir() / "out_lab").string()}};
  const fs::path config = write_json("lab.json", doc);
  const RunResult ok = run_cmd(kBin + " lab --config " + config.string());
  CHECK(ok.exit_code == 0);
  CHECK(fs::exists(scratch_dir() / "out_lab" / "ordering.csv"));
  CHECK(fs::exists(scratch_dir() / "out_lab" / "lab_summary.json"));

  doc["experiment"]["swap_labels"] = true;
  doc["output"]["directory"] = (scratch_dir() / "out_lab_swap").string();
  const fs::path config_swap = write_json("lab_swap.json", doc);
  CHECK(run_cmd(kBin + " lab --config " + config_swap.string()).exit_code == 4);
}

TEST_CASE("cli: representation checks pass and the corrupted fixture fails") {
  json doc;
  doc["target"] = {{"name", "cone"}, {"dim", 1}};
  doc["experiment"] = {{"seed", 13},
                       {"pair", "simple_vs_hybrid"},
                       {"grid", {{"dim", 1}, {"n", 8}, {"weights", "cone"}, {"w", 1}}}};
  doc["output"] = {{"directory", (scratch_dir() / "out_check").string()}};
  const fs::path config = write_json("check.json", doc);
  CHECK(run_cmd(kBin + " check-representation --config " + config.string()).exit_code == 0);
  CHECK(fs::exists(scratch_dir() / "out_check" / "representation_checks.json"));

  doc["experiment"]["corrupt_fixture"] = true;
  doc["output"]["directory"] = (scratch_dir() / "out_check_bad").string();
  const fs::path config_bad = write_json("check_bad.json", doc);
  const RunResult bad = run_cmd(kBin + " check-representation --config " + config_bad.string());
  CHECK(bad.exit_code == 4);
}

TEST_CASE("cli: compare requires all four kernels") {
  json doc;
  doc["target"] = {{"name", "uniform_box"}, {"dim", 2}};
  doc["kernels"] = json::array({{{"kind", "hit_and_run"}},
                                {{"kind", "simple_slice"}},
                                {{"kind", "hybrid_slice"}}});
  doc["experiment"] = {{"seed", 17}, {"n_pairs", 500}};
  doc["output"] = {{"directory", (scratch_dir() / "out_cmp_missing").string()}};
  const fs::path config = write_json("cmp_missing.json", doc);
  CHECK(run_cmd(kBin + " compare --config " + config.string()).exit_code == 2);
}

TEST_CASE("cli: small inconclusive compare still exits zero") {
  json doc;
  doc["target"] = {{"name", "uniform_box"}, {"dim", 2}};
  doc["kernels"] = json::array(
      {{{"kind", "hit_and_run"}, {"inner_grid", 256}},
       {{"kind", "simple_slice"}},
       {{"kind", "hybrid_slice"}},
       {{"kind", "rwm"}, {"proposal", {{"kind", "ball_walk"}, {"delta", 0.5}}}}});
  doc["experiment"] = {{"seed", 19},
                       {"n_pairs", 100},
                       {"replications", 20},
                       {"chain_length", 10},
                       {"functions", {"coord1"}}};
  doc["output"] = {{"directory", (scratch_dir() / "out_cmp_small").string()}};
  const fs::path config = write_json("cmp_small.json", doc);
  const RunResult r = run_cmd(kBin + " compare --config " + config.string());
  CHECK(r.exit_code == 0);
  const std::string summary = read_file(scratch_dir() / "out_cmp_small" / "compare_summary.json");
  CHECK(summary.find("\"verdict\": \"PASS\"") != std::string::npos);
}

TEST_CASE("cli: shipped default configs run clean") {
  const fs::path configs = SAMPLAB_CONFIG_DIR;
  for (const auto& [command, name] :
       {std::pair{"lab", "lab_d1_cone.json"}, std::pair{"lab", "lab_d2_gaussian.json"},
        std::pair{"check-representation", "check_har_vs_hybrid_d1.json"},
        std::pair{"check-representation", "check_simple_vs_hybrid_d1.json"},
        std::pair{"check-representation", "check_rwm_vs_hybrid_d2.json"},
        std::pair{"sample", "sample_cone_d1.json"}}) {
    const fs::path out = scratch_dir() / (std::string("shipped_") + name);
    const RunResult r = run_cmd(kBin + " " + command + " --config " +
                                (configs / name).string() + " --out " + out.string());
    INFO(name, ": ", r.output);
    CHECK(r.exit_code == 0);
  }
  // The heavyweight compare configs must at least parse.
  for (const char* name : {"compare_uniform_d2.json", "compare_gaussian_d2.json"})
    CHECK_NOTHROW((void)load_config(configs / name));
}

TEST_CASE("cli: unknown flags and missing config are usage errors") {
  CHECK(run_cmd(kBin + " sample --config /nonexistent.json").exit_code == 2);
  CHECK(run_cmd(kBin + " frobnicate").exit_code == 2);
}
