#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hyperquot/hyperspace.hpp"
#include "hyperquot/metric.hpp"
#include "hyperquot/topology.hpp"

namespace hyperquot {

using Json = nlohmann::json;

// Space: {"labels": ["a","b"], "opens": [[],[0],[0,1]]}. Opens are index
// lists; the set must be a topology (validated, canonicalized).
FiniteSpace space_from_json(const Json& j);
Json space_to_json(const FiniteSpace& s);

// Exported topologies carry "min_nbhd" always and "opens" when materialized.
Json topology_to_json(const Topology& t);
Topology topology_from_json(const Json& j);

// {"space": <space>, "y_size": 2, "tuples": [[0,1],[1,0]], "all": false}.
// "all": true requests F = X^Y and ignores "tuples".
FunctionFamily family_from_json(const Json& j);
Json family_to_json(const FunctionFamily& fam);

// {"labels":[...], "dist":[[...]]} or {"coords":[[...],...],
// "metric":"euclidean"} with optional labels.
FiniteMetricSpace metric_from_json(const Json& j);

// {"prefix": [[0],[0,1]], "cycle": [[1]]}: terms are point-index lists.
SubsetSequence sequence_from_json(const Json& j, int carrier_size);

// Point sets serialize as sorted index lists.
Mask point_set_from_json(const Json& j, int carrier_size);
Json mask_to_json(Mask m);

// Parses a file, mapping I/O and syntax errors to InvalidInput.
Json load_json_file(const std::string& path);

}  // namespace hyperquot
