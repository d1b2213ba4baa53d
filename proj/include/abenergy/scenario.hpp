#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "abenergy/model.hpp"
#include "abenergy/quadrature.hpp"
#include "abenergy/shielding.hpp"

namespace abenergy {

using Experiment = std::variant<TwoPathExperiment, SquidExperiment>;

/// Test hooks for the verification suite.
struct VerifyOptions {
    /// When set, the energy-identity check uses A + grad(c·x) with this c.
    std::optional<Vec3> gauge_shift;

    friend bool operator==(const VerifyOptions&, const VerifyOptions&) = default;
};

/// Everything one CLI run needs: the source, an optional shield, the
/// experiment, which hypotheses to evaluate (both when unset), and the
/// quadrature budget.
struct Scenario {
    FluxSource source;
    std::optional<ShieldSpec> shield;
    Experiment experiment;
    std::optional<Hypothesis> hypothesis;
    QuadratureConfig quadrature;
    std::optional<WavePacketSpec> wave_packet;
    VerifyOptions verify;

    std::vector<Hypothesis> hypotheses() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ValidatedScenario {
    std::optional<Scenario> scenario;  ///< set iff issues is empty
    ValidationIssues issues;

    bool ok() const { return issues.empty(); }
};

/// Checks every invariant of the scenario and its parts; all violations are
/// reported, each with its field path.
ValidatedScenario validate_scenario(const Scenario& s);

/// The scenario's shield with its transmission resolved against the wave
/// packet (if any); nullopt when unshielded.
std::optional<ShieldSpec> effective_shield(const Scenario& s);

}  // namespace abenergy
