#pragma once

#include <optional>
#include <string>

#include "hyperquot/json_io.hpp"

namespace hyperquot {

// Outcome of re-running a report row against the core computations.
//
// sides_differ deserializes the witness's "left"/"right" topologies and
// compares them; recomputed_violation rebuilds the instance from the
// witness's family and recomputes the claimed violation from scratch.
// replayed_status is "counterexample" when either reproduces the claim,
// "not-reproduced" when the witness fails to replay, and otherwise echoes
// the row's own status.
struct ReplayOutcome {
    std::string replayed_status;
    bool sides_differ = false;
    std::optional<bool> recomputed_violation;
};

ReplayOutcome replay_witness(const Json& result_row);

}  // namespace hyperquot
