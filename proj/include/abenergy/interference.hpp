#pragma once

#include <optional>

#include "abenergy/model.hpp"
#include "abenergy/quadrature.hpp"
#include "abenergy/scenario.hpp"

namespace abenergy {

struct PhasePrediction {
    double delta_phi{0.0};  ///< rad
    Hypothesis hypothesis{Hypothesis::vector_potential};
    double flux_used{0.0};     ///< Wb, signed flux linked by the C - reverse(D) loop
    double shield_factor{1.0};
};

enum class FringeAlignment { aligned, interleaved, intermediate };

std::string to_string(FringeAlignment a);

struct FringePattern {
    double period{1.0};  ///< fringe spacing; 1 means offsets are in units of one period
    double offset_fraction{0.0};
    FringeAlignment alignment{FringeAlignment::aligned};
};

/// 2 pi flux / (h/e).
double ab_phase_from_flux(double flux);

/// Linking number of the closed loop C followed by D reversed with the
/// source: winding about the axis for solenoids (counterclockwise about +axis
/// is positive), linking with the core circle for toroids (positive when
/// circulating right-handed about the interior field).
int loop_linking_number(const FluxSource& src, const BeamPath& path_C, const BeamPath& path_D);

/// Linking number times the source flux.
double enclosed_flux(const FluxSource& src, const BeamPath& path_C, const BeamPath& path_D);

/// Energy-accumulation phase. Each path is traversed at its constant speed and
/// accumulates the dynamical phase -(1/hbar) ∫ W'(t) dt with W' = A(x)·q v;
/// the result is (phi_C - phi_D) times the shield factor. For an electron and
/// an unshielded source this equals ab_phase_from_flux(enclosed_flux).
/// `shield` must carry an already resolved transmission.
PhasePrediction phase_from_energy(const FluxSource& src, const TwoPathExperiment& exp,
                                  const std::optional<ShieldSpec>& shield, const QuadratureConfig& cfg);

/// offset = (delta_phi / 2 pi) mod 1; aligned/interleaved within 1e-6 of a period.
FringePattern fringe_pattern(const PhasePrediction& p, double period = 1.0);

/// vector_potential: ab_phase_from_flux(enclosed flux), shields ignored.
/// superimposed_energy: phase_from_energy with the resolved shield.
PhasePrediction predict(const Scenario& s, Hypothesis hypothesis);

}  // namespace abenergy
