#pragma once

#include <optional>
#include <vector>

#include "abenergy/fields.hpp"
#include "abenergy/model.hpp"
#include "abenergy/quadrature.hpp"

namespace abenergy {

enum class EnergyMethod { direct_overlap, via_potential, via_current };

std::string to_string(EnergyMethod method);

/// Superimposed (cross-term) energy between the source field B0 and an
/// external field B1, in joules.
struct EnergyResult {
    double value{0.0};
    EnergyMethod method{EnergyMethod::direct_overlap};
    /// Nominal fraction of B1 admitted into Ω: the transmission for a full
    /// shield, (1 + transmission)/2 for a half-space shield, 1 when unshielded.
    double shield_factor_applied{1.0};
    double error_estimate{0.0};
};

/// A current element I·dl (A·m) at a position; a distribution is a
/// discretized J(x) d^3x.
struct CurrentElement {
    Vec3 position;
    Vec3 moment;
};

using CurrentDistribution = std::vector<CurrentElement>;

/// Current elements of a circular loop of current I approximated by `segments`
/// chords, centred on `center` in the plane normal to `normal`, circulating
/// counterclockwise about `normal`. Elements sit at chord midpoints.
CurrentDistribution circular_current_loop(const Vec3& center, const Vec3& normal, double radius, double current,
                                          int segments);

/// Nominal shield factor (see EnergyResult::shield_factor_applied).
double nominal_shield_factor(const std::optional<ShieldSpec>& shield);

/// W' = ∫_Ω B0·B1 / mu0 d^3r with B1 from the point-charge field. A shield
/// scales B1 inside Ω by its transmission (everywhere for a full cylinder,
/// only above the mid-plane for a half-space cylinder). The shield's
/// transmission must already be resolved for the relevant frequency.
EnergyResult energy_direct(const FluxSource& src, const PointCharge& c, const std::optional<ShieldSpec>& shield,
                           const QuadratureConfig& cfg);

/// W' = A(x)·q v, with the analytic (infinite solenoid only) or numeric A.
EnergyResult energy_via_potential(const FluxSource& src, const PointCharge& c, bool use_numeric_A,
                                  const QuadratureConfig& cfg);

/// Outcome of substituting a gauge-shifted potential into the W' = A·qv identity.
struct GaugeBreach {
    bool identity_holds{true};
    double discrepancy{0.0};      ///< |A'(x)·qv - W'_direct|, J
    double tolerance{0.0};        ///< 10x the quadrature tolerance, J
    double direct{0.0};           ///< W'_direct, J
    double gauge_shifted{0.0};    ///< A'(x)·qv, J
};

/// Compares A'(x)·qv (A' = A + grad chi) against the direct overlap energy.
/// A is analytic for infinite solenoids and numeric otherwise.
GaugeBreach energy_gauge_breach(const FluxSource& src, const PointCharge& c, const GaugeFunction& chi,
                                const QuadratureConfig& cfg);

/// W' = Σ A0(x_i)·(I dl)_i. With a full shield the sum is scaled by the
/// transmission; with a half-space shield each element's energy is computed
/// by direct overlap restricted according to the shield. Throws on an empty
/// distribution.
EnergyResult energy_of_current(const FluxSource& src, const CurrentDistribution& dist,
                               const std::optional<ShieldSpec>& shield, const QuadratureConfig& cfg);

/// Direct overlap energy of a single current element (moment = q v or I dl).
EnergyResult energy_direct_element(const FluxSource& src, const Vec3& position, const Vec3& moment,
                                   const std::optional<ShieldSpec>& shield, const QuadratureConfig& cfg);

}  // namespace abenergy
