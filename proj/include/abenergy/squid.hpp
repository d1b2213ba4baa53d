#pragma once

#include <vector>

#include "abenergy/model.hpp"

namespace abenergy {

/// Critical-current predictions of both hypotheses at one enclosed flux.
struct SquidPrediction {
    double flux{0.0};                    ///< Wb
    double ic_vector_potential{0.0};     ///< A
    double ic_superimposed_energy{0.0};  ///< A
    bool discriminating{false};          ///< predictions differ by more than 1e-9 I0
};

/// Two-junction SQUID critical current with half of the loop's field overlap
/// removed by a half-space shield:
///   vector_potential:    I0 |cos(pi Phi / Phi0)|
///   superimposed_energy: I0 |cos(pi (Phi/2) / Phi0)|
/// with Phi0 = h/2e.
double critical_current(double flux, double I0, Hypothesis hypothesis);

/// One prediction per flux value; throws std::invalid_argument on an empty sweep
/// or non-positive I0.
std::vector<SquidPrediction> discrimination_table(const std::vector<double>& flux_sweep, double I0);

}  // namespace abenergy
