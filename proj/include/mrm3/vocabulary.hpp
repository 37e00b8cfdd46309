#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace mrm3 {

enum class NodeLabel {
  Model,
  Dataset,
  Service,
  ProblemType,
  ModelArchitecture,
  ModelTraining,
  ModelInference,
  Parameters,
  Hyperparameters,
  Device,
};

enum class RelationType {
  TRAINED_ON,
  PROVIDES,
  SOLUTION_FOR,
  UTILIZES,
  TRAINS_ON,
  INFERENCE_ON,
  RUNS_ON,
  CONFIGURED_WITH,
  TUNED_WITH,
};

inline constexpr std::array kAllLabels = {
    NodeLabel::Model,           NodeLabel::Dataset,        NodeLabel::Service,
    NodeLabel::ProblemType,     NodeLabel::ModelArchitecture, NodeLabel::ModelTraining,
    NodeLabel::ModelInference,  NodeLabel::Parameters,     NodeLabel::Hyperparameters,
    NodeLabel::Device,
};

inline constexpr std::array kAllRelationTypes = {
    RelationType::TRAINED_ON,   RelationType::PROVIDES,     RelationType::SOLUTION_FOR,
    RelationType::UTILIZES,     RelationType::TRAINS_ON,    RelationType::INFERENCE_ON,
    RelationType::RUNS_ON,      RelationType::CONFIGURED_WITH, RelationType::TUNED_WITH,
};

std::string_view to_string(NodeLabel label) noexcept;
std::string_view to_string(RelationType type) noexcept;

// Case-sensitive lookup; nullopt for names outside the closed vocabulary.
std::optional<NodeLabel> parse_label(std::string_view name) noexcept;
std::optional<RelationType> parse_relation_type(std::string_view name) noexcept;

/// Whether a relationship of `type` may connect `source` to `target`.
/// RUNS_ON is the only type with two admissible source labels.
bool signature_allows(RelationType type, NodeLabel source, NodeLabel target) noexcept;

} // namespace mrm3
