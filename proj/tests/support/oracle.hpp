#pragma once

#include <vector>

#include "mrm3/query/executor.hpp"
#include "mrm3/schema.hpp"

namespace mrm3::testing {

// Reference evaluator: tries every assignment of graph nodes and
// relationships to the query's variables and keeps the ones satisfying the
// patterns. Returns all rows (LIMIT not applied), sorted when the query has
// ORDER BY, in unspecified order otherwise.
std::vector<std::vector<query::Value>> oracle_rows(const PropertyGraph &graph, const query::QueryAst &ast);

// Multiset equality of rows.
bool same_bag(std::vector<std::vector<query::Value>> a, std::vector<std::vector<query::Value>> b);

// Per-label and per-type counts computed from the documents' identity keys
// alone, without touching the store.
GraphStats expected_stats(const std::vector<schema::ModelMetadataDocument> &docs);

} // namespace mrm3::testing
