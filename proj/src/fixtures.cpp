#include "mrm3/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "mrm3/error.hpp"
#include "mrm3/ontology.hpp"

namespace mrm3::fixtures {

namespace {

// Portable uniform draws; std::uniform_*_distribution differs across
// standard libraries, which would break byte-identical corpora.
class Draw {
public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    double unit = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }
  double rounded(double lo, double hi, int decimals = 3) {
    double scale = std::pow(10.0, decimals);
    return std::round(uniform(lo, hi) * scale) / scale;
  }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::mt19937_64 rng_;
};

std::string slug(const std::string &name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else if (!out.empty() && out.back() != '-')
      out += '-';
  }
  while (!out.empty() && out.back() == '-')
    out.pop_back();
  return out;
}

std::string two_digits(std::size_t n) {
  std::ostringstream s;
  s << std::setw(2) << std::setfill('0') << n;
  return s.str();
}

std::map<std::string, Scalar> hyperparameter_set(const std::string &architecture, std::size_t k) {
  auto i = static_cast<std::int64_t>(k);
  if (architecture == "Random Forest")
    return {{"n_estimators", 100 + 50 * i}, {"max_depth", 10 + 2 * i}, {"criterion", std::string("squared_error")},
            {"bootstrap", true}};
  if (architecture == "KNeighbors")
    return {{"n_neighbors", 3 + 2 * i}, {"weights", std::string(k % 2 ? "distance" : "uniform")},
            {"p", std::int64_t{2}}};
  if (architecture == "XGBoost")
    return {{"n_estimators", 200 + 100 * i}, {"learning_rate", 0.1}, {"max_depth", 6 + i}};
  if (architecture == "MLP")
    return {{"hidden_layer_sizes", std::string("128,64")}, {"max_iter", 200 + 100 * i},
            {"learning_rate_init", 0.001}};
  return {{"architecture", architecture}, {"variant", i}};
}

std::string optimizer_for(const std::string &architecture) {
  if (architecture == "MLP")
    return "Adam";
  if (architecture == "XGBoost")
    return "gradient boosting";
  if (architecture == "KNeighbors")
    return "none";
  return "bagging";
}

schema::DeviceInfo device(std::size_t index) {
  schema::DeviceInfo d{"Intel Xeon Gold 6248R", "none", 256.0};
  if (index > 0)
    d.cpu += " node " + std::to_string(index);
  return d;
}

// Distinct hyperparameter sets per architecture, summing to `target`
// (clamped to what the model counts allow).
std::map<std::string, std::size_t> allocate_sets(const std::vector<std::string> &arch_order,
                                                 const std::map<std::string, std::size_t> &models_per_arch,
                                                 std::size_t target) {
  std::map<std::string, std::size_t> sets;
  std::size_t total = 0;
  for (const auto &a : arch_order)
    if (models_per_arch.count(a)) {
      sets[a] = 1;
      ++total;
    }
  bool grew = true;
  while (total < target && grew) {
    grew = false;
    for (const auto &a : arch_order) {
      if (total >= target)
        break;
      auto it = sets.find(a);
      if (it != sets.end() && it->second < models_per_arch.at(a)) {
        ++it->second;
        ++total;
        grew = true;
      }
    }
  }
  return sets;
}

} // namespace

void FixtureConfig::check() const {
  if (modelCount == 0 || datasetNames.empty() || architectureNames.empty() || deviceCount == 0 ||
      hyperparameterSetCount == 0)
    throw ContractError("fixture counts must be positive");
  std::set<std::string> ds(datasetNames.begin(), datasetNames.end());
  std::set<std::string> as(architectureNames.begin(), architectureNames.end());
  if (ds.size() != datasetNames.size() || as.size() != architectureNames.size())
    throw ContractError("fixture dataset and architecture names must be unique");
}

const std::vector<GoldenRow> &golden_rows() {
  static const std::vector<GoldenRow> rows = {
      {"Random Forest", "UMU", 0.072, 249},
      {"Random Forest", "Lumos5G", 0.132, 263},
      {"XGBoost", "LOG-a-TEC Winter", 0.284, 140},
      {"KNeighbors", "UMU", 0.326, 134},
      {"Random Forest", "LOG-a-TEC Spring", 0.370, 246},
  };
  return rows;
}

std::vector<schema::ModelMetadataDocument> generate(const FixtureConfig &config) {
  config.check();
  const auto datasets = config.datasetNames.size();
  const auto archs = config.architectureNames.size();

  // Model i trains architecture (i / D) mod A on dataset i mod D, so the
  // first D*A models cover every combination once.
  std::vector<std::pair<std::string, std::string>> combo(config.modelCount);
  std::map<std::string, std::size_t> per_arch;
  for (std::size_t i = 0; i < config.modelCount; ++i) {
    combo[i] = {config.architectureNames[(i / datasets) % archs], config.datasetNames[i % datasets]};
    ++per_arch[combo[i].first];
  }
  auto sets = allocate_sets(config.architectureNames, per_arch, config.hyperparameterSetCount);

  std::map<std::size_t, const GoldenRow *> golden;
  for (const auto &g : golden_rows())
    for (std::size_t i = 0; i < config.modelCount; ++i)
      if (!golden.count(i) && combo[i] == std::make_pair(g.architecture, g.dataset)) {
        golden[i] = &g;
        break;
      }

  Draw draw(config.randomSeed);
  std::map<std::string, std::size_t> seen_arch;
  std::map<std::pair<std::string, std::string>, std::size_t> seen_combo;
  std::vector<schema::ModelMetadataDocument> docs;
  docs.reserve(config.modelCount);

  for (std::size_t i = 0; i < config.modelCount; ++i) {
    const auto &[arch, dataset] = combo[i];
    std::size_t repeat = seen_combo[combo[i]]++;
    std::size_t arch_index = seen_arch[arch]++;

    schema::ModelMetadataDocument d;
    d.basic.name = "loc-" + slug(arch) + "-" + slug(dataset) + (repeat ? "-r" + std::to_string(repeat + 1) : "");
    d.basic.version = "1.0.0";
    d.basic.date = "2025-03-" + two_digits(1 + i % 28);
    d.basic.description = arch + " localization model trained on " + dataset + ".";
    d.basic.authors = {"SensorLab"};

    d.general.sizeMB = draw.rounded(0.5, 120.0);
    d.general.architecture = arch;
    d.general.modelType = arch == "MLP" ? "neural network" : "classical";
    d.general.explainability = arch == "MLP" ? "low" : "medium";
    d.general.service = "localization";
    d.general.problemType = "regression";

    d.dataset.name = dataset;
    d.dataset.version = "1.0";
    d.dataset.date = "2024-0" + std::to_string(1 + (i % datasets) % 9) + "-15";
    d.dataset.sizeMB = 50.0 + 25.0 * static_cast<double>(i % datasets);

    d.training.splitType = "80/20 holdout";
    d.training.optimizer = optimizer_for(arch);
    d.training.hyperparameters = hyperparameter_set(arch, arch_index % sets.at(arch));
    d.training.evaluation = {{"MAE", draw.rounded(0.5, 5.0)},
                             {"MEDE", draw.rounded(0.3, 4.0)},
                             {"RMSE", draw.rounded(0.8, 7.0)},
                             {"R_squared", draw.rounded(0.5, 0.99)}};
    double train_energy = draw.rounded(500.0, 50000.0, 1);
    d.training.sustainability = {train_energy, std::round(train_energy * 250.0 / 3.6e6 * 1e6) / 1e6};
    d.training.device = device(i % config.deviceCount);

    double energy = draw.rounded(kMinOtherEnergy, kMaxOtherEnergy);
    std::int64_t flops = draw.integer(100, 400);
    if (auto g = golden.find(i); g != golden.end()) {
      energy = g->second->energyConsumption;
      flops = g->second->flops;
    }
    d.inference.latencyMs = draw.rounded(0.2, 15.0);
    d.inference.flops = flops;
    d.inference.accuracy = draw.rounded(0.7, 0.98);
    d.inference.sustainability = {energy, std::round(energy * 250.0 / 3.6e6 * 1e9) / 1e9};
    d.inference.device = device(i % config.deviceCount);
    docs.push_back(std::move(d));
  }
  return docs;
}

PropertyGraph build_graph(const std::vector<schema::ModelMetadataDocument> &docs) {
  PropertyGraph graph;
  ontology::prepare(graph);
  for (const auto &d : docs)
    ontology::ingest(graph, d);
  return graph;
}

nlohmann::json CalibrationReport::to_json() const {
  return {{"targetNodes", targetNodes},
          {"targetRelationships", targetRelationships},
          {"hyperparameterSetCount", hyperparameterSetCount},
          {"matched", matched},
          {"stats", stats.to_json()}};
}

CalibrationReport calibrate(FixtureConfig config, std::size_t targetNodes, std::size_t targetRelationships) {
  CalibrationReport report{targetNodes, targetRelationships, 0, {}, false};
  std::size_t best_gap = std::numeric_limits<std::size_t>::max();
  for (std::size_t h = 1; h <= config.modelCount; ++h) {
    config.hyperparameterSetCount = h;
    auto stats = build_graph(generate(config)).stats();
    auto gap = static_cast<std::size_t>(std::llabs(static_cast<long long>(stats.totalNodes) -
                                                   static_cast<long long>(targetNodes))) +
               static_cast<std::size_t>(std::llabs(static_cast<long long>(stats.totalRelationships) -
                                                   static_cast<long long>(targetRelationships)));
    if (gap < best_gap) {
      best_gap = gap;
      report.hyperparameterSetCount = h;
      report.stats = stats;
      report.matched = gap == 0;
    }
    if (gap == 0)
      break;
  }
  return report;
}

std::vector<std::filesystem::path> write_corpus(const std::vector<schema::ModelMetadataDocument> &docs,
                                                const std::filesystem::path &directory) {
  std::filesystem::create_directories(directory);
  std::vector<std::filesystem::path> paths;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto path = directory / ("model_" + two_digits(i) + ".json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
      throw StorageError("cannot write " + path.string());
    out << schema::serialize(docs[i]);
    paths.push_back(path);
  }
  return paths;
}

} // namespace mrm3::fixtures
