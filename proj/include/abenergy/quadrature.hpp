#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <numbers>
#include <type_traits>
#include <utility>
#include <vector>

#include "abenergy/model.hpp"
#include "abenergy/vec3.hpp"

namespace abenergy {

struct QuadratureConfig {
    double rel_tol{1e-6};
    double abs_tol{1e-14};  ///< in units of the integral being computed
    std::size_t max_subdivisions{1'000'000};

    friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

ValidationIssues validate_quadrature(const QuadratureConfig& cfg, const std::string& prefix = "quadrature");

template <class T>
struct IntegralResultT {
    T value{};
    double error_estimate{0.0};
    std::size_t subdivisions_used{0};
    bool converged{false};
};

using IntegralResult = IntegralResultT<double>;
using VectorIntegralResult = IntegralResultT<Vec3>;

/// Parametrized integration domain: a solid cylinder or a solid torus.
///
/// Cylinder parameters are (u, rho, theta) with the axial coordinate
/// z = axial_anchor + axial_scale * tan(u); the tangent map clusters nodes near
/// the anchor and lets either axial bound be infinite.
/// Torus parameters are (phi, s, psi): major angle, tube radius, poloidal angle
/// measured from the outward radial direction (psi in (0, pi) is above the
/// mid-plane).
/// Angles are measured from `e1` towards `e2 = axis x e1`.
struct Region3 {
    enum class Shape { cylinder, torus };

    Shape shape{Shape::cylinder};
    Vec3 center{};
    Vec3 axis{0.0, 0.0, 1.0};
    Vec3 e1{1.0, 0.0, 0.0};
    Vec3 e2{0.0, 1.0, 0.0};
    double radius{0.0};        ///< cylinder radius or torus major radius
    double minor_radius{0.0};  ///< torus tube radius
    double axial_lo{0.0};      ///< cylinder only; may be -infinity
    double axial_hi{0.0};      ///< cylinder only; may be +infinity
    double axial_anchor{0.0};
    double axial_scale{1.0};
    double angle_lo{-std::numbers::pi};  ///< theta (cylinder) or psi (torus)
    double angle_hi{std::numbers::pi};

    static Region3 cylinder(const Vec3& center, const Vec3& axis, double radius, double axial_lo, double axial_hi);
    static Region3 torus(const Vec3& center, const Vec3& axis, double major_radius, double minor_radius);

    /// Rotates the angular origin towards `p` and anchors the axial map at p's
    /// axial coordinate. Mirror-image reference points yield mirror-image node sets.
    Region3 oriented_toward(const Vec3& p) const;

    /// Splits at the source mid-plane: {part with axial z <= 0, part with z >= 0}.
    std::pair<Region3, Region3> split_at_midplane() const;

    /// Exact volume (infinite for an unbounded cylinder).
    double volume() const;

    struct Sample {
        Vec3 point;
        double jacobian;
    };

    std::array<double, 3> parameter_lo() const;
    std::array<double, 3> parameter_hi() const;
    std::array<int, 3> initial_divisions() const;
    Sample map(const std::array<double, 3>& u) const;
};

/// Ω of a source as a Region3, oriented toward `reference` (the field point).
Region3 region_of(const FluxSource& src, const Vec3& reference);

namespace detail {

template <std::size_t D>
struct Box {
    std::array<double, D> lo;
    std::array<double, D> hi;
};

template <std::size_t D, class T>
using ParamIntegrand = std::function<T(const std::array<double, D>&)>;

/// Globally adaptive tensor Gauss-Legendre cubature over a union of boxes.
/// Each cell carries a coarse value and the value of its 2^D children; the
/// difference is the cell's error estimate. The cell with the largest
/// estimate (lowest creation index on ties) is split next.
template <std::size_t D, class T>
IntegralResultT<T> adaptive_integrate(const ParamIntegrand<D, T>& g, const std::vector<Box<D>>& boxes,
                                      const QuadratureConfig& cfg);

extern template IntegralResultT<double> adaptive_integrate<1, double>(const ParamIntegrand<1, double>&,
                                                                      const std::vector<Box<1>>&,
                                                                      const QuadratureConfig&);
extern template IntegralResultT<Vec3> adaptive_integrate<1, Vec3>(const ParamIntegrand<1, Vec3>&,
                                                                  const std::vector<Box<1>>&,
                                                                  const QuadratureConfig&);
extern template IntegralResultT<double> adaptive_integrate<3, double>(const ParamIntegrand<3, double>&,
                                                                      const std::vector<Box<3>>&,
                                                                      const QuadratureConfig&);
extern template IntegralResultT<Vec3> adaptive_integrate<3, Vec3>(const ParamIntegrand<3, Vec3>&,
                                                                  const std::vector<Box<3>>&,
                                                                  const QuadratureConfig&);

std::vector<Box<3>> initial_boxes(const Region3& region);

}  // namespace detail

/// Integrates a scalar- or Vec3-valued field over a region.
template <class F>
auto integrate_region(F&& f, const Region3& region, const QuadratureConfig& cfg) {
    using T = std::decay_t<std::invoke_result_t<F&, const Vec3&>>;
    static_assert(std::is_same_v<T, double> || std::is_same_v<T, Vec3>, "integrand must return double or Vec3");
    detail::ParamIntegrand<3, T> g = [&f, &region](const std::array<double, 3>& u) -> T {
        const Region3::Sample s = region.map(u);
        return f(s.point) * s.jacobian;
    };
    return detail::adaptive_integrate<3, T>(g, detail::initial_boxes(region), cfg);
}

/// Line integral of f·dl along the polyline, each segment refined independently
/// under one global error budget.
IntegralResult integrate_polyline(const std::function<Vec3(const Vec3&)>& f, const BeamPath& path,
                                  const QuadratureConfig& cfg);

/// Adaptive integral of g over [t0, t1].
IntegralResult integrate_time(const std::function<double(double)>& g, double t0, double t1,
                              const QuadratureConfig& cfg);

/// Adaptive integral over consecutive intervals [b0,b1], [b1,b2], ... with no
/// cell straddling a breakpoint; for integrands with kinks at known points.
IntegralResult integrate_piecewise(const std::function<double(double)>& g, const std::vector<double>& breakpoints,
                                   const QuadratureConfig& cfg);

}  // namespace abenergy
