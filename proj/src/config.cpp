#include "samplab/config.hpp"

#include <fstream>
#include <set>

#include "samplab/errors.hpp"
#include "samplab/grid.hpp"
#include "samplab/representation.hpp"
#include "samplab/target.hpp"

namespace samplab {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key))
      throw ConfigError(path + ": unknown key '" + key + "'");
  }
}

template <class T>
T get_or(const json& obj, const std::string& key, const std::string& path, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key + ": wrong type");
  }
}

template <class T>
T get_required(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) throw ConfigError(path + ": missing key '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key + ": wrong type");
  }
}

BoundingBox parse_bbox(const json& obj, const std::string& path) {
  require_keys(obj, path, {"lo", "hi"});
  BoundingBox box;
  box.lo = get_required<std::vector<double>>(obj, "lo", path);
  box.hi = get_required<std::vector<double>>(obj, "hi", path);
  try {
    box.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return box;
}

KernelSpec parse_kernel(const json& obj, const std::string& path) {
  require_keys(obj, path, {"kind", "inner_grid", "attempt_cap", "proposal"});
  KernelSpec spec;
  const std::string kind = get_required<std::string>(obj, "kind", path);
  try {
    spec.kind = kernel_kind_from_name(kind);
  } catch (const ArgumentError& e) {
    throw ConfigError(path + ".kind: " + e.what());
  }
  if (obj.contains("inner_grid"))
    spec.inner_grid = get_required<int>(obj, "inner_grid", path);
  else if (spec.kind == KernelKind::hit_and_run)
    spec.inner_grid = 4096;
  spec.attempt_cap = get_or<long>(obj, "attempt_cap", path, 1'000'000);
  if (obj.contains("proposal")) {
    const json& p = obj.at("proposal");
    require_keys(p, path + ".proposal", {"kind", "delta"});
    ProposalSpec proposal;
    const std::string pk = get_required<std::string>(p, "kind", path + ".proposal");
    if (pk == "ball_walk")
      proposal.kind = ProposalSpec::Kind::ball_walk;
    else if (pk == "gaussian")
      proposal.kind = ProposalSpec::Kind::gaussian;
    else
      throw ConfigError(path + ".proposal.kind: unknown proposal '" + pk + "'");
    proposal.delta = get_or<double>(p, "delta", path + ".proposal", 1.0);
    if (!(proposal.delta > 0.0))
      throw ConfigError(path + ".proposal.delta: must be positive");
    spec.proposal = proposal;
  } else if (spec.kind == KernelKind::rwm) {
    throw ConfigError(path + ": rwm kernel requires a proposal");
  }
  try {
    spec.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return spec;
}

GridConfig parse_grid(const json& obj, const std::string& path) {
  require_keys(obj, path, {"dim", "n", "weights", "w"});
  GridConfig grid;
  grid.dim = get_required<int>(obj, "dim", path);
  grid.n = get_required<int>(obj, "n", path);
  grid.weights = get_required<std::string>(obj, "weights", path);
  grid.w = get_or<int>(obj, "w", path, 1);
  if (grid.dim != 1 && grid.dim != 2) throw ConfigError(path + ".dim: must be 1 or 2");
  if (grid.n < 2) throw ConfigError(path + ".n: must be at least 2");
  if (grid.w < 1) throw ConfigError(path + ".w: must be positive");
  try {
    make_grid(grid.weights, grid.dim, 2);
  } catch (const ArgumentError& e) {
    throw ConfigError(path + ".weights: " + e.what());
  }
  return grid;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  require_keys(doc, "config", {"target", "kernels", "experiment", "output"});
  ExperimentConfig config;

  const json& target = doc.contains("target") ? doc.at("target") : json::object();
  require_keys(target, "target", {"name", "dim", "bbox"});
  config.target.name = get_required<std::string>(target, "name", "target");
  config.target.dim = get_or<int>(target, "dim", "target", 1);
  if (target.contains("bbox"))
    config.target.bbox = parse_bbox(target.at("bbox"), "target.bbox");
  try {
    if (config.target.bbox)
      make_target(config.target.name, config.target.dim, *config.target.bbox);
    else
      make_target(config.target.name, config.target.dim);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("target: ") + e.what());
  }

  if (doc.contains("kernels")) {
    const json& kernels = doc.at("kernels");
    if (!kernels.is_array()) throw ConfigError("kernels: expected an array");
    for (std::size_t k = 0; k < kernels.size(); ++k)
      config.kernels.push_back(
          parse_kernel(kernels.at(k), "kernels[" + std::to_string(k) + "]"));
  }

  if (!doc.contains("experiment")) throw ConfigError("config: missing key 'experiment'");
  const json& exp = doc.at("experiment");
  require_keys(exp, "experiment",
               {"seed", "steps", "x0", "n_pairs", "replications", "chain_length",
                "functions", "grid", "num_f", "pair", "swap_labels", "corrupt_fixture"});
  config.seed = get_required<std::uint64_t>(exp, "seed", "experiment");
  config.steps = get_or<long>(exp, "steps", "experiment", 1000);
  if (config.steps < 0) throw ConfigError("experiment.steps: must be nonnegative");
  if (exp.contains("x0"))
    config.x0 = get_required<std::vector<double>>(exp, "x0", "experiment");
  config.n_pairs = get_or<long>(exp, "n_pairs", "experiment", 100000);
  if (config.n_pairs < 2) throw ConfigError("experiment.n_pairs: must be at least 2");
  config.replications = get_or<int>(exp, "replications", "experiment", 500);
  config.chain_length = get_or<long>(exp, "chain_length", "experiment", 100);
  if (config.replications < 2 || config.chain_length < 1)
    throw ConfigError("experiment: replications must be >= 2 and chain_length >= 1");
  config.functions =
      get_or<std::vector<std::string>>(exp, "functions", "experiment", {});
  if (exp.contains("grid")) config.grid = parse_grid(exp.at("grid"), "experiment.grid");
  config.num_f = get_or<int>(exp, "num_f", "experiment", 1000);
  if (config.num_f < 0) throw ConfigError("experiment.num_f: must be nonnegative");
  config.pair = get_or<std::string>(exp, "pair", "experiment", "");
  if (!config.pair.empty()) {
    try {
      representation_pair_from_name(config.pair);
    } catch (const ArgumentError& e) {
      throw ConfigError(std::string("experiment.pair: ") + e.what());
    }
  }
  config.swap_labels = get_or<bool>(exp, "swap_labels", "experiment", false);
  config.corrupt_fixture = get_or<bool>(exp, "corrupt_fixture", "experiment", false);

  if (doc.contains("output")) {
    const json& output = doc.at("output");
    require_keys(output, "output", {"directory", "formats"});
    config.output.directory = get_or<std::string>(output, "directory", "output", "out");
    if (output.contains("formats")) {
      config.output.csv = false;
      config.output.json = false;
      for (const auto& fmt : get_required<std::vector<std::string>>(output, "formats", "output")) {
        if (fmt == "csv")
          config.output.csv = true;
        else if (fmt == "json")
          config.output.json = true;
        else
          throw ConfigError("output.formats: unknown format '" + fmt + "'");
      }
    }
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  return parse_config(doc);
}

nlohmann::json ExperimentConfig::semantic_json() const {
  json doc;
  doc["target"]["name"] = target.name;
  doc["target"]["dim"] = target.dim;
  if (target.bbox) {
    doc["target"]["bbox"]["lo"] = target.bbox->lo;
    doc["target"]["bbox"]["hi"] = target.bbox->hi;
  }
  doc["kernels"] = json::array();
  for (const KernelSpec& spec : kernels) {
    json k;
    k["kind"] = spec.name();
    if (spec.inner_grid) k["inner_grid"] = *spec.inner_grid;
    k["attempt_cap"] = spec.attempt_cap;
    if (spec.proposal) {
      k["proposal"]["kind"] = spec.proposal->name();
      k["proposal"]["delta"] = spec.proposal->delta;
    }
    doc["kernels"].push_back(std::move(k));
  }
  json& exp = doc["experiment"];
  exp["seed"] = seed;
  exp["steps"] = steps;
  if (x0) exp["x0"] = *x0;
  exp["n_pairs"] = n_pairs;
  exp["replications"] = replications;
  exp["chain_length"] = chain_length;
  exp["functions"] = functions;
  if (grid) {
    exp["grid"]["dim"] = grid->dim;
    exp["grid"]["n"] = grid->n;
    exp["grid"]["weights"] = grid->weights;
    exp["grid"]["w"] = grid->w;
  }
  exp["num_f"] = num_f;
  exp["pair"] = pair;
  exp["swap_labels"] = swap_labels;
  exp["corrupt_fixture"] = corrupt_fixture;
  return doc;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  const std::string canonical = config.semantic_json().dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace samplab
