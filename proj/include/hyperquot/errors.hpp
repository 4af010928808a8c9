#pragma once

#include <stdexcept>
#include <string>

namespace hyperquot {

// Malformed or inconsistent caller input (bad masks, non-topologies,
// non-surjective quotient maps, broken metric matrices, ...).
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that exceeds a documented size cap.
struct InstanceTooLarge : std::runtime_error {
    explicit InstanceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

// Valid request outside the implemented range (e.g. exhaustive enumeration
// beyond the supported carrier size).
struct Unsupported : std::runtime_error {
    explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hyperquot
