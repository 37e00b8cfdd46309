#include "mrm3/ontology.hpp"

#include <cctype>
#include <map>

#include "mrm3/error.hpp"

namespace mrm3::ontology {

namespace {

std::string canonical_number(double value) {
  // Integral values print without a fraction so that 16 and 16.0 share a key.
  if (value == static_cast<double>(static_cast<std::int64_t>(value)) && std::abs(value) < 1e15)
    return std::to_string(static_cast<std::int64_t>(value));
  return format_double(value);
}

IdentityKey make_key(NodeLabel label, std::initializer_list<std::pair<std::string, std::string>> parts) {
  IdentityKey key{label, {}};
  for (const auto &[name, value] : parts)
    key.keyProperties.emplace_back(name, canonicalize(value));
  return key;
}

// Text key properties are stored in canonical form so identical keys hit the
// same index bucket. Numeric key properties keep their typed value.
PropertyMap with_key(const IdentityKey &key, PropertyMap properties) {
  for (const auto &[name, value] : key.keyProperties)
    properties.try_emplace(name, value);
  return properties;
}

IdentityKey device_key(const schema::DeviceInfo &device) {
  return make_key(NodeLabel::Device,
                  {{"cpu", device.cpu}, {"gpu", device.gpu}, {"memoryGB", canonical_number(device.memoryGB)}});
}

PropertyMap device_properties(const schema::DeviceInfo &device) {
  return {{"memoryGB", device.memoryGB}};
}

} // namespace

std::string IdentityKey::to_string() const {
  std::string out(mrm3::to_string(label));
  out += "(";
  for (std::size_t i = 0; i < keyProperties.size(); ++i) {
    if (i)
      out += ", ";
    out += keyProperties[i].first + "=" + keyProperties[i].second;
  }
  return out + ")";
}

nlohmann::json IngestReport::to_json() const {
  return {{"nodesCreated", nodesCreated},
          {"nodesMatched", nodesMatched},
          {"relationshipsCreated", relationshipsCreated},
          {"relationshipsMatched", relationshipsMatched},
          {"modelNodeId", modelNodeId}};
}

std::string canonicalize(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space)
      out += ' ';
    pending_space = false;
    out += static_cast<char>(c);
  }
  return out;
}

const std::vector<std::string> &identity_properties(NodeLabel label) {
  static const std::map<NodeLabel, std::vector<std::string>> table = {
      {NodeLabel::Model, {"name", "version"}},
      {NodeLabel::Dataset, {"name", "version"}},
      {NodeLabel::Service, {"name"}},
      {NodeLabel::ProblemType, {"name"}},
      {NodeLabel::ModelArchitecture, {"type"}},
      {NodeLabel::ModelTraining, {"modelName", "modelVersion"}},
      {NodeLabel::ModelInference, {"modelName", "modelVersion"}},
      {NodeLabel::Parameters, {"modelName", "modelVersion"}},
      {NodeLabel::Hyperparameters, {kHyperparameterKey}},
      {NodeLabel::Device, {"cpu", "gpu", "memoryGB"}},
  };
  return table.at(label);
}

std::string hyperparameter_signature(const std::map<std::string, Scalar> &hyperparameters) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto &[k, v] : hyperparameters)
    obj[k] = to_json(PropertyValue(v));
  return obj.dump();
}

MappedDocument map_document(const schema::ModelMetadataDocument &doc) {
  MappedDocument m;
  const auto &name = doc.basic.name;
  const auto &version = doc.basic.version;

  auto model = make_key(NodeLabel::Model, {{"name", name}, {"version", version}});
  auto dataset = make_key(NodeLabel::Dataset, {{"name", doc.dataset.name}, {"version", doc.dataset.version}});
  auto service = make_key(NodeLabel::Service, {{"name", doc.general.service}});
  auto problem = make_key(NodeLabel::ProblemType, {{"name", doc.general.problemType}});
  auto architecture = make_key(NodeLabel::ModelArchitecture, {{"type", doc.general.architecture}});
  auto training = make_key(NodeLabel::ModelTraining, {{"modelName", name}, {"modelVersion", version}});
  auto inference = make_key(NodeLabel::ModelInference, {{"modelName", name}, {"modelVersion", version}});
  auto parameters = make_key(NodeLabel::Parameters, {{"modelName", name}, {"modelVersion", version}});
  auto hyper_sig = hyperparameter_signature(doc.training.hyperparameters);
  IdentityKey hyper{NodeLabel::Hyperparameters, {{kHyperparameterKey, hyper_sig}}};
  auto train_device = device_key(doc.training.device);
  auto infer_device = device_key(doc.inference.device);

  ScalarList authors(doc.basic.authors.begin(), doc.basic.authors.end());
  m.nodes.push_back({model, with_key(model, {{"date", doc.basic.date},
                                             {"description", doc.basic.description},
                                             {"authors", authors},
                                             {"sizeMB", doc.general.sizeMB},
                                             {"modelType", doc.general.modelType},
                                             {"explainability", doc.general.explainability}})});
  m.nodes.push_back({dataset, with_key(dataset, {{"date", doc.dataset.date}, {"sizeMB", doc.dataset.sizeMB}})});
  m.nodes.push_back({service, with_key(service, {})});
  m.nodes.push_back({problem, with_key(problem, {})});
  m.nodes.push_back({architecture, with_key(architecture, {})});

  PropertyMap train_props = {{"splitType", doc.training.splitType},
                             {"optimizer", doc.training.optimizer},
                             {"energyConsumption", doc.training.sustainability.energyConsumption},
                             {"carbonFootprint", doc.training.sustainability.carbonFootprint}};
  for (const auto &[metric, value] : doc.training.evaluation)
    train_props[metric] = value;
  m.nodes.push_back({training, with_key(training, std::move(train_props))});

  PropertyMap infer_props = {{"latencyMs", doc.inference.latencyMs},
                             {"flops", doc.inference.flops},
                             {"energyConsumption", doc.inference.sustainability.energyConsumption},
                             {"carbonFootprint", doc.inference.sustainability.carbonFootprint}};
  if (doc.inference.accuracy)
    infer_props["accuracy"] = *doc.inference.accuracy;
  m.nodes.push_back({inference, with_key(inference, std::move(infer_props))});

  m.nodes.push_back({parameters, with_key(parameters, {})});

  PropertyMap hyper_props;
  for (const auto &[k, v] : doc.training.hyperparameters)
    hyper_props[k] = PropertyValue(v);
  hyper_props[kHyperparameterKey] = hyper_sig;
  m.nodes.push_back({hyper, std::move(hyper_props)});

  m.nodes.push_back({train_device, with_key(train_device, device_properties(doc.training.device))});
  if (infer_device != train_device)
    m.nodes.push_back({infer_device, with_key(infer_device, device_properties(doc.inference.device))});

  using R = RelationType;
  m.relationships = {
      {R::TRAINED_ON, model, dataset},      {R::PROVIDES, model, service},
      {R::SOLUTION_FOR, service, problem},  {R::UTILIZES, model, architecture},
      {R::TRAINS_ON, model, training},      {R::INFERENCE_ON, inference, model},
      {R::RUNS_ON, training, train_device}, {R::RUNS_ON, inference, infer_device},
      {R::CONFIGURED_WITH, training, parameters}, {R::TUNED_WITH, parameters, hyper},
  };
  return m;
}

void prepare(PropertyGraph &graph) {
  for (auto label : kAllLabels)
    for (const auto &prop : identity_properties(label))
      graph.create_index(label, prop);
}

IngestReport merge_into(PropertyGraph &graph, const MappedDocument &mapped) {
  prepare(graph);
  for (const auto &rel : mapped.relationships)
    if (!signature_allows(rel.type, rel.source.label, rel.target.label))
      throw ContractError("relationship " + std::string(to_string(rel.type)) + " from " +
                          rel.source.to_string() + " to " + rel.target.to_string() +
                          " violates the ontology signature");

  IngestReport report;
  std::map<IdentityKey, NodeId> resolved;
  bool own_batch = !graph.in_batch();
  if (own_batch)
    graph.begin_batch();
  try {
    for (const auto &slot : mapped.nodes) {
      if (resolved.contains(slot.key))
        continue;
      PropertyMap filter;
      for (const auto &[name, value] : slot.key.keyProperties)
        filter[name] = slot.properties.at(name);
      auto found = graph.find_nodes(slot.key.label, filter);
      if (found.empty()) {
        resolved[slot.key] = graph.create_node(slot.key.label, slot.properties);
        ++report.nodesCreated;
      } else {
        resolved[slot.key] = found.front()->id;
        graph.update_properties(found.front()->id, slot.properties);
        ++report.nodesMatched;
      }
    }
    for (const auto &rel : mapped.relationships) {
      auto source = resolved.find(rel.source);
      auto target = resolved.find(rel.target);
      if (source == resolved.end() || target == resolved.end())
        throw ContractError("relationship endpoint is not among the mapped nodes");
      if (graph.find_relationship(rel.type, source->second, target->second)) {
        ++report.relationshipsMatched;
      } else {
        graph.create_relationship(rel.type, source->second, target->second);
        ++report.relationshipsCreated;
      }
    }
  } catch (...) {
    if (own_batch)
      graph.rollback_batch();
    throw;
  }
  if (own_batch)
    graph.commit_batch();

  for (const auto &slot : mapped.nodes)
    if (slot.key.label == NodeLabel::Model)
      report.modelNodeId = resolved.at(slot.key);
  return report;
}

} // namespace mrm3::ontology
