#pragma once

#include <string>
#include <vector>

#include "abenergy/scenario.hpp"

namespace abenergy {

struct CheckResult {
    std::string name;
    double measured{0.0};   ///< discrepancy, in the check's natural units
    double tolerance{0.0};  ///< same units; measured <= tolerance passes
    bool passed{false};
};

/// Fraction of the source flux missing from the circulation of the Coulomb
/// gauge A around a midplane circle of radius rho about a finite solenoid:
/// the end faces act as poles whose flux partly returns through the circle.
/// Zero for other kinds.
double end_face_flux_deficit(const FluxSource& src, double rho);

/// The gauge suite for the scenario's source: curl and divergence of A,
/// circulation around enclosing and non-enclosing loops, mirror symmetry,
/// rotation covariance, the direct-overlap identity (honouring the
/// scenario's gauge_shift hook) and detection of a gauge-shifted A.
std::vector<CheckResult> run_verification(const Scenario& s);

}  // namespace abenergy
