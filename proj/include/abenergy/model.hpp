#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "abenergy/vec3.hpp"

namespace abenergy {

// -----------------------------------------------------------------------------
// Physical constants
// -----------------------------------------------------------------------------

/// SI constants used by every computation. Values are CODATA 2018; h and e are
/// exact in the 2019 SI, mu0 is the recommended measured value.
struct Constants {
    double mu0;                  ///< T·m/A
    double h;                    ///< J·s
    double hbar;                 ///< J·s, h / 2π
    double e;                    ///< C, elementary charge (positive)
    double flux_quantum_pair;    ///< Wb, h / 2e (Cooper pairs)
    double flux_quantum_single;  ///< Wb, h / e
};

namespace detail {
inline constexpr double kPlanck = 6.62607015e-34;
inline constexpr double kElementaryCharge = 1.602176634e-19;
inline constexpr double kMu0 = 1.25663706212e-6;
}  // namespace detail

inline constexpr Constants kConstants{
    detail::kMu0,
    detail::kPlanck,
    detail::kPlanck / (2.0 * std::numbers::pi),
    detail::kElementaryCharge,
    detail::kPlanck / (2.0 * detail::kElementaryCharge),
    detail::kPlanck / detail::kElementaryCharge,
};

/// Upper bound on charge speed; the point-charge field is non-relativistic.
inline constexpr double kMaxChargeSpeed = 3.0e8;

/// Charge of an electron, q = -e.
inline constexpr double kElectronCharge = -detail::kElementaryCharge;

// -----------------------------------------------------------------------------
// Domain types
// -----------------------------------------------------------------------------

enum class SourceKind { infinite_solenoid, finite_solenoid, toroid };

/// A confined static field region Ω with uniform interior field magnitude B0.
///
/// Solenoids: Ω is the cylinder of `radius` about `axis` through `center`
/// (length `length`, centred on `center`, for the finite kind) and the
/// interior field is B0·axis.
/// Toroid: `radius` is the major radius, `minor_radius` the tube radius, the
/// torus lies in the plane through `center` normal to `axis`, and the interior
/// field is B0 along the azimuthal direction (right-handed about `axis`).
struct FluxSource {
    SourceKind kind{SourceKind::infinite_solenoid};
    Vec3 center{};
    Vec3 axis{0.0, 0.0, 1.0};
    double radius{0.0};
    double length{0.0};
    double minor_radius{0.0};
    double B0{0.0};

    friend bool operator==(const FluxSource&, const FluxSource&) = default;
};

/// A moving point charge: charge q (C, signed), position x (m), velocity v (m/s).
struct PointCharge {
    double q{0.0};
    Vec3 x{};
    Vec3 v{};

    friend bool operator==(const PointCharge&, const PointCharge&) = default;
};

enum class ShieldGeometry {
    full_cylinder,       ///< encloses all of Ω
    half_space_cylinder  ///< covers the part of Ω above the source midplane (axial z > 0)
};

/// Superconducting enclosure around Ω. `transmission` is the fraction of the
/// external field B1 that reaches Ω (0 = perfect Meissner shield).
struct ShieldSpec {
    ShieldGeometry geometry{ShieldGeometry::full_cylinder};
    double energy_gap{0.0};  ///< eV
    double transmission{0.0};

    friend bool operator==(const ShieldSpec&, const ShieldSpec&) = default;
};

/// The two competing accounts of the phase: the vector potential itself, or
/// the superimposed field energy between B0 and the charge's own field.
enum class Hypothesis { vector_potential, superimposed_energy };

/// Polyline trajectory traversed at constant speed.
struct BeamPath {
    std::vector<Vec3> vertices;
    double speed{0.0};  ///< m/s

    friend bool operator==(const BeamPath&, const BeamPath&) = default;
};

/// Two-beam interferometer: the beams split at a common first vertex and
/// recombine at a common last vertex.
struct TwoPathExperiment {
    BeamPath path_C;
    BeamPath path_D;
    double charge_q{kElectronCharge};

    friend bool operator==(const TwoPathExperiment&, const TwoPathExperiment&) = default;
};

/// Two-junction SQUID around the source, swept over enclosed flux values.
struct SquidExperiment {
    double loop_current_I0{0.0};     ///< A
    std::vector<double> flux_sweep;  ///< Wb
    bool quantize_flux{false};       ///< snap each value to the nearest h/2e first

    friend bool operator==(const SquidExperiment&, const SquidExperiment&) = default;
};

/// One violated invariant, addressed by a dotted field path.
struct ValidationIssue {
    std::string field;
    std::string message;

    std::string to_string() const { return field + " " + message; }
    friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

using ValidationIssues = std::vector<ValidationIssue>;

// -----------------------------------------------------------------------------
// Operations
// -----------------------------------------------------------------------------

std::string to_string(SourceKind kind);
std::string to_string(ShieldGeometry geometry);
std::string to_string(Hypothesis hypothesis);

ValidationIssues validate_source(const FluxSource& src, const std::string& prefix = "source");
ValidationIssues validate_charge(const PointCharge& c, const std::string& prefix = "charge");
ValidationIssues validate_shield(const ShieldSpec& shield, const std::string& prefix = "shield");
ValidationIssues validate_path(const BeamPath& path, const std::string& prefix = "path");

/// Throws std::invalid_argument listing every issue when the list is non-empty.
void throw_if_invalid(const ValidationIssues& issues);

/// Magnetic flux carried by the source: B0·πR² for solenoids, B0·π·a² through
/// the tube cross-section of a toroid.
double flux_of_source(const FluxSource& src);

// -----------------------------------------------------------------------------
// Geometry of Ω
// -----------------------------------------------------------------------------

/// Length scale of Ω's cross-section: R for solenoids, the tube radius for toroids.
double cross_section_radius(const FluxSource& src);

/// Minimum clearance between Ω and points where A or W' is evaluated numerically.
double exclusion_margin(const FluxSource& src);

/// Signed distance from p to the boundary of Ω (negative inside).
double signed_distance(const FluxSource& src, const Vec3& p);

inline bool inside_region(const FluxSource& src, const Vec3& p) { return signed_distance(src, p) < 0.0; }

/// Interior field B0 at p, assuming p lies in Ω (no containment test).
Vec3 interior_field(const FluxSource& src, const Vec3& p);

/// The idealized source field: interior_field inside Ω, zero outside.
Vec3 source_field(const FluxSource& src, const Vec3& p);

/// True when the straight segment a→b passes through Ω (or within `margin` of it).
bool segment_hits_region(const FluxSource& src, const Vec3& a, const Vec3& b, double margin = 0.0);

}  // namespace abenergy
