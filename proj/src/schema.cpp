#include "mrm3/schema.hpp"

#include <chrono>
#include <cmath>
#include <regex>

#include "mrm3/error.hpp"

namespace mrm3::schema {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

ojson text_field(const std::string &description, bool nonblank = false) {
  ojson f = {{"type", "string"}, {"description", description}};
  if (nonblank) {
    f["minLength"] = 1;
    f["pattern"] = "\\S";
  }
  return f;
}

ojson quantity(const std::string &description) {
  return {{"type", "number"}, {"minimum", 0}, {"description", description}};
}

ojson date_field(const std::string &description) {
  return {{"type", "string"}, {"format", "date"}, {"description", description}};
}

ojson section(const std::string &description, ojson properties, std::vector<std::string> required) {
  return {{"type", "object"},
          {"description", description},
          {"properties", std::move(properties)},
          {"required", std::move(required)},
          {"additionalProperties", false}};
}

ojson sustainability(const std::string &phase) {
  return section("Environmental impact of " + phase + ".",
                 {{"energyConsumption", quantity("Energy consumed by " + phase + ", in joules (J).")},
                  {"carbonFootprint",
                   quantity("Carbon emitted by " + phase + ", in grams of CO2-equivalent (gCO2eq).")}},
                 {"energyConsumption", "carbonFootprint"});
}

ojson device(const std::string &phase) {
  return section("Hardware used for " + phase + ".",
                 {{"cpu", text_field("CPU model.", true)},
                  {"gpu", text_field("GPU model, or \"none\".")},
                  {"memoryGB", quantity("Device memory, in gigabytes (GB).")}},
                 {"cpu", "gpu", "memoryGB"});
}

ojson build_schema() {
  ojson basic = section(
      "Identification of the model release.",
      {{"name", text_field("Model name.", true)},
       {"version", text_field("Model version.", true)},
       {"date", date_field("Release date, ISO-8601 calendar date (YYYY-MM-DD).")},
       {"description", text_field("Free-text description of the model.")},
       {"authors", {{"type", "array"}, {"items", {{"type", "string"}}}, {"description", "Model authors."}}}},
      {"name", "version", "date", "description", "authors"});

  ojson general = section(
      "General information about the model.",
      {{"sizeMB", quantity("Serialized model size, in megabytes (MB).")},
       {"architecture", text_field("Model architecture, e.g. \"Random Forest\".", true)},
       {"modelType", text_field("Model family or type.")},
       {"explainability", text_field("Explainability of the architecture.")},
       {"service", text_field("Service the model is intended for, e.g. \"localization\".", true)},
       {"problemType", text_field("Type of ML problem, e.g. \"regression\".", true)}},
      {"sizeMB", "architecture", "modelType", "explainability", "service", "problemType"});

  ojson dataset = section("Dataset the model was trained on; name and version identify it.",
                          {{"name", text_field("Dataset name.", true)},
                           {"version", text_field("Dataset version.")},
                           {"date", date_field("Dataset date (YYYY-MM-DD).")},
                           {"sizeMB", quantity("Dataset size, in megabytes (MB).")}},
                          {"name", "version", "date", "sizeMB"});

  ojson metrics = {{"type", "object"},
                   {"description",
                    "Evaluation metrics by name. MAE, MEDE, RMSE and R_squared are recognized; "
                    "other metric names are allowed."},
                   {"properties",
                    {{"MAE", {{"type", "number"}, {"description", "Mean absolute error."}}},
                     {"MEDE", {{"type", "number"}, {"description", "Median error."}}},
                     {"RMSE", {{"type", "number"}, {"description", "Root mean squared error."}}},
                     {"R_squared", {{"type", "number"}, {"description", "Coefficient of determination."}}}}},
                   {"additionalProperties", {{"type", "number"}}}};

  ojson hyper = {{"type", "object"},
                 {"description", "Hyperparameters by name; values are scalars."},
                 {"additionalProperties", {{"type", {"string", "number", "boolean"}}}}};

  ojson training = section(
      "How and where the model was trained.",
      {{"splitType", text_field("Train/test split, e.g. \"80/20 holdout\".")},
       {"optimizer", text_field("Optimizer or training algorithm.")},
       {"hyperparameters", hyper},
       {"evaluation", metrics},
       {"sustainability", sustainability("training")},
       {"device", device("training")}},
      {"splitType", "optimizer", "hyperparameters", "evaluation", "sustainability", "device"});

  ojson inference = section(
      "Behaviour of the model when serving a single input sample.",
      {{"latencyMs", quantity("End-to-end inference latency, in milliseconds (ms).")},
       {"flops",
        {{"type", "integer"}, {"minimum", 0}, {"description", "Floating-point operations per inference."}}},
       {"accuracy", {{"type", "number"}, {"description", "Accuracy, when the task reports one."}}},
       {"sustainability", sustainability("inference on one sample")},
       {"device", device("inference")}},
      {"latencyMs", "flops", "sustainability", "device"});

  ojson root = {{"$schema", "https://json-schema.org/draft/2020-12/schema"},
                {"$id", "https://mrm3.invalid/schema/model-metadata.json"},
                {"title", "ML model metadata"},
                {"description", "Machine-readable metadata for one trained ML model."},
                {"type", "object"},
                {"properties",
                 {{"basic", basic},
                  {"general", general},
                  {"dataset", dataset},
                  {"training", training},
                  {"inference", inference}}},
                {"required", {"basic", "general", "dataset", "training", "inference"}},
                {"additionalProperties", false}};
  return root;
}

bool is_identifier(const std::string &key) {
  static const std::regex re("^[A-Za-z_][A-Za-z0-9_]*$");
  return std::regex_match(key, re);
}

std::string child_path(const std::string &parent, const std::string &key) {
  if (is_identifier(key))
    return parent + "." + key;
  std::string escaped;
  for (char c : key) {
    if (c == '\'' || c == '\\')
      escaped += '\\';
    escaped += c;
  }
  return parent + "['" + escaped + "']";
}

bool valid_calendar_date(const std::string &s) {
  static const std::regex re("^(\\d{4})-(\\d{2})-(\\d{2})$");
  std::smatch m;
  if (!std::regex_match(s, m, re))
    return false;
  std::chrono::year_month_day ymd{std::chrono::year(std::stoi(m[1])),
                                  std::chrono::month(static_cast<unsigned>(std::stoi(m[2]))),
                                  std::chrono::day(static_cast<unsigned>(std::stoi(m[3])))};
  return ymd.ok();
}

std::string type_name(const json &v) {
  switch (v.type()) {
  case json::value_t::null: return "null";
  case json::value_t::boolean: return "boolean";
  case json::value_t::string: return "string";
  case json::value_t::array: return "array";
  case json::value_t::object: return "object";
  case json::value_t::number_float: return "number";
  default: return "integer";
  }
}

bool matches_type(const std::string &type, const json &v) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_unsigned())
      return v.get<std::uint64_t>() <= static_cast<std::uint64_t>(INT64_MAX);
    if (v.is_number_integer())
      return true;
    if (v.is_number_float()) {
      double d = v.get<double>();
      return std::floor(d) == d && std::fabs(d) < 9.2e18;
    }
  }
  return false;
}

class Validator {
public:
  std::vector<Violation> violations;

  void check(const ojson &schema, const json &instance, const std::string &path) {
    if (auto t = schema.find("type"); t != schema.end()) {
      std::vector<std::string> allowed;
      if (t->is_array())
        for (const auto &e : *t)
          allowed.push_back(e.get<std::string>());
      else
        allowed.push_back(t->get<std::string>());
      bool ok = false;
      for (const auto &a : allowed)
        ok = ok || matches_type(a, instance);
      if (!ok) {
        std::string expected;
        for (std::size_t i = 0; i < allowed.size(); ++i)
          expected += (i ? " or " : "") + allowed[i];
        add(path, "type", "expected " + expected + ", found " + type_name(instance));
        return;
      }
    }

    if (instance.is_number()) {
      if (auto m = schema.find("minimum"); m != schema.end() && instance.get<double>() < m->get<double>())
        add(path, "minimum", "value must be >= " + m->dump());
    }

    if (instance.is_string()) {
      const auto &s = instance.get_ref<const std::string &>();
      if (auto m = schema.find("minLength"); m != schema.end() && s.size() < m->get<std::size_t>())
        add(path, "minLength", "string must have at least " + m->dump() + " character(s)");
      else if (auto p = schema.find("pattern");
               p != schema.end() && !std::regex_search(s, std::regex(p->get<std::string>())))
        add(path, "pattern", "string must match " + p->dump());
      if (auto f = schema.find("format"); f != schema.end() && *f == "date" && !valid_calendar_date(s))
        add(path, "format", "'" + s + "' is not a calendar date (YYYY-MM-DD)");
    }

    if (instance.is_array()) {
      if (auto items = schema.find("items"); items != schema.end())
        for (std::size_t i = 0; i < instance.size(); ++i)
          check(*items, instance[i], path + "[" + std::to_string(i) + "]");
    }

    if (instance.is_object())
      check_object(schema, instance, path);
  }

private:
  void add(const std::string &path, std::string rule, std::string message) {
    violations.push_back({path, std::move(rule), std::move(message)});
  }

  void check_object(const ojson &schema, const json &instance, const std::string &path) {
    static const ojson kNoProperties = ojson::object();
    auto props_it = schema.find("properties");
    const ojson &props = props_it == schema.end() ? kNoProperties : *props_it;

    if (auto req = schema.find("required"); req != schema.end())
      for (const auto &name : *req)
        if (!instance.contains(name.get<std::string>()))
          add(child_path(path, name), "required", "required property is missing");

    for (const auto &[key, sub] : props.items())
      if (auto v = instance.find(key); v != instance.end())
        check(sub, *v, child_path(path, key));

    auto additional = schema.find("additionalProperties");
    for (const auto &[key, value] : instance.items()) {
      if (props.contains(key) || additional == schema.end())
        continue;
      if (additional->is_boolean()) {
        if (!additional->get<bool>())
          add(child_path(path, key), "additionalProperties", "property is not allowed here");
      } else {
        check(*additional, value, child_path(path, key));
      }
    }
  }
};

std::map<std::string, Scalar> hyperparameters_from(const json &obj) {
  std::map<std::string, Scalar> out;
  for (const auto &[k, v] : obj.items()) {
    if (v.is_string())
      out.emplace(k, v.get<std::string>());
    else if (v.is_boolean())
      out.emplace(k, v.get<bool>());
    else if (v.is_number_integer())
      out.emplace(k, v.get<std::int64_t>());
    else
      out.emplace(k, v.get<double>());
  }
  return out;
}

std::int64_t integer_from(const json &v) {
  if (v.is_number_float())
    return static_cast<std::int64_t>(v.get<double>());
  return v.get<std::int64_t>();
}

SustainabilityRecord sustainability_from(const json &j) {
  return {j.at("energyConsumption").get<double>(), j.at("carbonFootprint").get<double>()};
}

DeviceInfo device_from(const json &j) {
  return {j.at("cpu").get<std::string>(), j.at("gpu").get<std::string>(), j.at("memoryGB").get<double>()};
}

json sustainability_json(const SustainabilityRecord &s) {
  return {{"energyConsumption", s.energyConsumption}, {"carbonFootprint", s.carbonFootprint}};
}

json device_json(const DeviceInfo &d) {
  return {{"cpu", d.cpu}, {"gpu", d.gpu}, {"memoryGB", d.memoryGB}};
}

} // namespace

json ValidationReport::to_json() const {
  json list = json::array();
  for (const auto &v : violations)
    list.push_back({{"jsonPath", v.jsonPath}, {"rule", v.rule}, {"message", v.message}});
  return {{"valid", valid}, {"violations", list}};
}

std::vector<std::string> SchemaDefinition::sections() const {
  std::vector<std::string> out;
  for (const auto &[key, value] : document.at("properties").items())
    out.push_back(key);
  return out;
}

const SchemaDefinition &load_schema() {
  static const SchemaDefinition definition{build_schema()};
  return definition;
}

ValidationReport validate_json(const json &document) {
  Validator v;
  v.check(load_schema().document, document, "$");
  ValidationReport report;
  report.violations = std::move(v.violations);
  report.valid = report.violations.empty();
  return report;
}

ValidationReport validate_document(std::string_view raw) {
  json document;
  try {
    document = json::parse(raw);
  } catch (const json::parse_error &e) {
    ValidationReport report;
    report.valid = false;
    report.violations.push_back({"$", "parse", e.what()});
    return report;
  }
  return validate_json(document);
}

ModelMetadataDocument from_json(const json &j) {
  auto report = validate_json(j);
  if (!report.valid) {
    std::string msg = "document does not satisfy the metadata schema:";
    for (const auto &v : report.violations)
      msg += " " + v.jsonPath + " (" + v.rule + ")";
    throw ContractError(msg);
  }

  ModelMetadataDocument d;
  const auto &b = j.at("basic");
  d.basic = {b.at("name"), b.at("version"), b.at("date"), b.at("description"),
             b.at("authors").get<std::vector<std::string>>()};
  const auto &g = j.at("general");
  d.general = {g.at("sizeMB"),        g.at("architecture"), g.at("modelType"),
               g.at("explainability"), g.at("service"),      g.at("problemType")};
  const auto &ds = j.at("dataset");
  d.dataset = {ds.at("name"), ds.at("version"), ds.at("date"), ds.at("sizeMB")};
  const auto &t = j.at("training");
  d.training.splitType = t.at("splitType");
  d.training.optimizer = t.at("optimizer");
  d.training.hyperparameters = hyperparameters_from(t.at("hyperparameters"));
  for (const auto &[k, v] : t.at("evaluation").items())
    d.training.evaluation.emplace(k, v.get<double>());
  d.training.sustainability = sustainability_from(t.at("sustainability"));
  d.training.device = device_from(t.at("device"));
  const auto &i = j.at("inference");
  d.inference.latencyMs = i.at("latencyMs");
  d.inference.flops = integer_from(i.at("flops"));
  if (i.contains("accuracy"))
    d.inference.accuracy = i.at("accuracy").get<double>();
  d.inference.sustainability = sustainability_from(i.at("sustainability"));
  d.inference.device = device_from(i.at("device"));
  return d;
}

ModelMetadataDocument parse_document(std::string_view raw) {
  json document;
  try {
    document = json::parse(raw);
  } catch (const json::parse_error &e) {
    throw ContractError(std::string("document is not valid JSON: ") + e.what());
  }
  return from_json(document);
}

json to_json(const ModelMetadataDocument &d) {
  json hyper = json::object();
  for (const auto &[k, v] : d.training.hyperparameters)
    hyper[k] = mrm3::to_json(PropertyValue(v));
  json evaluation = json::object();
  for (const auto &[k, v] : d.training.evaluation)
    evaluation[k] = v;

  json inference = {{"latencyMs", d.inference.latencyMs},
                    {"flops", d.inference.flops},
                    {"sustainability", sustainability_json(d.inference.sustainability)},
                    {"device", device_json(d.inference.device)}};
  if (d.inference.accuracy)
    inference["accuracy"] = *d.inference.accuracy;

  return {{"basic",
           {{"name", d.basic.name},
            {"version", d.basic.version},
            {"date", d.basic.date},
            {"description", d.basic.description},
            {"authors", d.basic.authors}}},
          {"general",
           {{"sizeMB", d.general.sizeMB},
            {"architecture", d.general.architecture},
            {"modelType", d.general.modelType},
            {"explainability", d.general.explainability},
            {"service", d.general.service},
            {"problemType", d.general.problemType}}},
          {"dataset",
           {{"name", d.dataset.name},
            {"version", d.dataset.version},
            {"date", d.dataset.date},
            {"sizeMB", d.dataset.sizeMB}}},
          {"training",
           {{"splitType", d.training.splitType},
            {"optimizer", d.training.optimizer},
            {"hyperparameters", hyper},
            {"evaluation", evaluation},
            {"sustainability", sustainability_json(d.training.sustainability)},
            {"device", device_json(d.training.device)}}},
          {"inference", inference}};
}

std::string serialize(const ModelMetadataDocument &doc) { return to_json(doc).dump(2) + "\n"; }

} // namespace mrm3::schema
