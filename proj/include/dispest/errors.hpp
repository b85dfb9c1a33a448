#pragma once

#include <stdexcept>
#include <string>

namespace dispest {

/// Requested operation exceeds what the closed-form algebra supports
/// (Fock number above the supported range, polynomial degree above the cap).
struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The posterior normalizer vanished numerically for the observed outcome.
struct DegeneratePosteriorError : std::runtime_error {
    explicit DegeneratePosteriorError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The post-selection region carries no probability mass.
struct DegenerateSelectionError : std::runtime_error {
    explicit DegenerateSelectionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An averaging operation received an empty selection.
struct NoEventsError : std::runtime_error {
    explicit NoEventsError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Variance retargeting was requested in the unsupported (upward) direction.
struct RetargetDirectionError : std::domain_error {
    explicit RetargetDirectionError(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace dispest
