#pragma once

#include <functional>
#include <string>

#include "abenergy/model.hpp"
#include "abenergy/quadrature.hpp"

namespace abenergy {

enum class FieldUnits { tesla, tesla_meter, other };
enum class FieldProvenance { analytic, numeric, gauge_shifted };

/// A pure point-wise vector field with bookkeeping about where it came from.
struct VectorField {
    std::function<Vec3(const Vec3&)> eval;
    FieldUnits units{FieldUnits::other};
    FieldProvenance provenance{FieldProvenance::analytic};
    std::string description;

    Vec3 operator()(const Vec3& p) const { return eval(p); }
};

/// Scalar gauge function chi (T·m²) together with its analytic gradient.
struct GaugeFunction {
    std::function<double(const Vec3&)> chi;
    std::function<Vec3(const Vec3&)> gradient;
    std::string description;

    static GaugeFunction zero();
    /// chi(x) = c·x, gradient c everywhere.
    static GaugeFunction linear(const Vec3& c);
};

/// Checks the supplied gradient against central differences of chi at `x`.
bool gauge_gradient_consistent(const GaugeFunction& g, const Vec3& x, double h, double rel_tol = 1e-6);

/// Magnetic field of a moving point charge, (mu0/4pi) q v x (r - x)/|r - x|^3.
/// Throws std::domain_error at r == c.x.
Vec3 b1_point_charge(const PointCharge& c, const Vec3& r);

/// Same kernel for a current element with moment I·dl (A·m) at `position`.
Vec3 b1_current_element(const Vec3& position, const Vec3& moment, const Vec3& r);

/// Coulomb-gauge vector potential of an infinite solenoid: azimuthal with
/// |A| = B0 rho / 2 inside and B0 R^2 / (2 rho) outside.
Vec3 vector_potential_analytic(const FluxSource& src, const Vec3& x);

/// (1/4pi) ∫_Ω B0(r) x (x - r) / |x - r|^3 d^3r, by adaptive cubature.
/// Requires x outside Ω by at least exclusion_margin(src); throws
/// std::domain_error otherwise and std::runtime_error on non-convergence.
Vec3 vector_potential_numeric(const FluxSource& src, const Vec3& x, const QuadratureConfig& cfg);

/// As above, returning the raw cubature result.
VectorIntegralResult vector_potential_integral(const FluxSource& src, const Vec3& x, const QuadratureConfig& cfg);

/// Throws std::domain_error if x is inside Ω or closer than the exclusion margin.
void require_clear_of_region(const FluxSource& src, const Vec3& x, const char* what);

VectorField analytic_potential_field(const FluxSource& src);
VectorField numeric_potential_field(const FluxSource& src, const QuadratureConfig& cfg);

/// Analytic potential for infinite solenoids, numeric otherwise.
VectorField potential_field(const FluxSource& src, const QuadratureConfig& cfg);

/// Central-difference curl with step h (six field evaluations).
Vec3 curl_fd(const VectorField& F, const Vec3& x, double h);

/// Central-difference divergence with step h.
double div_fd(const VectorField& F, const Vec3& x, double h);

/// Default finite-difference step, 1e-4 R.
double default_fd_step(const FluxSource& src);

/// Circulation of F around a closed polyline; throws std::invalid_argument
/// when the first and last vertices differ.
double loop_integral_A(const VectorField& F, const BeamPath& loop, const QuadratureConfig& cfg);

/// F'(x) = F(x) + grad chi(x).
VectorField apply_gauge(const VectorField& F, const GaugeFunction& chi);

/// Regular polygon with `sides` edges approximating a circle of `radius`
/// about `center` in the plane normal to `normal`, traversed counterclockwise
/// about `normal`. First and last vertices coincide.
BeamPath circle_loop(const Vec3& center, const Vec3& normal, double radius, int sides, double speed = 1.0);

}  // namespace abenergy
