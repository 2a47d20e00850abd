#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "samplab/geometry.hpp"
#include "samplab/kernels.hpp"

namespace samplab {

struct TargetConfig {
  std::string name;
  int dim = 1;
  std::optional<BoundingBox> bbox;
};

struct GridConfig {
  int dim = 1;
  int n = 8;
  std::string weights = "cone";
  int w = 1;
};

struct OutputConfig {
  std::string directory = "out";
  bool csv = true;
  bool json = true;
};

struct ExperimentConfig {
  TargetConfig target;
  std::vector<KernelSpec> kernels;
  std::uint64_t seed = 0;

  long steps = 1000;                       // sample
  std::optional<Point> x0;                 // sample
  long n_pairs = 100000;                   // compare
  int replications = 500;                  // compare (MSE)
  long chain_length = 100;                 // compare (MSE)
  std::vector<std::string> functions;      // compare
  std::optional<GridConfig> grid;          // lab / check-representation
  int num_f = 1000;                        // lab
  std::string pair;                        // check-representation
  bool swap_labels = false;                // lab negative control
  bool corrupt_fixture = false;            // check-representation negative control

  OutputConfig output;

  // Canonical JSON of the semantic fields (seed included, output excluded).
  nlohmann::json semantic_json() const;
};

// Strict parse: unknown keys are rejected with their path, the seed is
// mandatory, and every referenced catalog name must exist.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const nlohmann::json& doc);

// FNV-1a over the canonical semantic dump.
std::uint64_t config_hash(const ExperimentConfig& config);

}  // namespace samplab
