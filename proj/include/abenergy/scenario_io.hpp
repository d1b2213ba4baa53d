#pragma once

#include <stdexcept>
#include <string>

#include "abenergy/scenario.hpp"

namespace abenergy {

/// Unreadable, malformed or invalid scenario input.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a scenario document (JSON; `//` and `/* */` comments allowed).
/// Unknown keys are rejected. The result has passed validate_scenario.
///
///   source      {kind, center, axis, radius, length, minor_radius, B0}
///   shield      {geometry, energy_gap, transmission}              (optional)
///   experiment  {kind: "two_path", path_C, path_D, charge_q}
///             | {kind: "squid", loop_current_I0, flux_sweep, quantize_flux}
///   hypothesis  "vector_potential" | "superimposed_energy" | "both" (optional)
///   quadrature  {rel_tol, abs_tol, max_subdivisions}               (optional)
///   wave_packet {coherence_length, speed}                          (optional)
///   verify      {gauge_shift}                                      (optional)
///
/// Vectors are [x, y, z] arrays; paths are {vertices: [...], speed}.
Scenario parse_scenario(const std::string& text);

Scenario load_scenario(const std::string& path);

/// Serializes every field at round-trip precision; parse_scenario of the
/// result compares equal to `s`.
std::string dump_scenario(const Scenario& s);

}  // namespace abenergy
