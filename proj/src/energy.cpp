#include "abenergy/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace abenergy {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

IntegralResult overlap_integral(const FluxSource& src, const Region3& region, const Vec3& position,
                                const Vec3& moment, double normalization, const QuadratureConfig& cfg) {
    auto integrand = [&](const Vec3& r) {
        const Vec3 b1 = b1_current_element(position, moment, r);
        return dot(interior_field(src, r), b1) / kConstants.mu0 / normalization;
    };
    IntegralResult res = integrate_region(integrand, region, cfg);
    if (!res.converged) {
        throw std::runtime_error("direct overlap cubature did not converge");
    }
    return res;
}

}  // namespace

std::string to_string(EnergyMethod method) {
    switch (method) {
        case EnergyMethod::direct_overlap: return "direct_overlap";
        case EnergyMethod::via_potential: return "via_potential";
        case EnergyMethod::via_current: return "via_current";
    }
    return "unknown";
}

CurrentDistribution circular_current_loop(const Vec3& center, const Vec3& normal, double radius, double current,
                                          int segments) {
    const BeamPath loop = circle_loop(center, normal, radius, segments);
    CurrentDistribution dist;
    dist.reserve(static_cast<std::size_t>(segments));
    for (std::size_t i = 0; i + 1 < loop.vertices.size(); ++i) {
        const Vec3& a = loop.vertices[i];
        const Vec3& b = loop.vertices[i + 1];
        dist.push_back({(a + b) * 0.5, (b - a) * current});
    }
    return dist;
}

double nominal_shield_factor(const std::optional<ShieldSpec>& shield) {
    if (!shield) {
        return 1.0;
    }
    return shield->geometry == ShieldGeometry::full_cylinder ? shield->transmission
                                                             : 0.5 * (1.0 + shield->transmission);
}

EnergyResult energy_direct_element(const FluxSource& src, const Vec3& position, const Vec3& moment,
                                   const std::optional<ShieldSpec>& shield, const QuadratureConfig& cfg) {
    throw_if_invalid(validate_source(src));
    if (shield) {
        throw_if_invalid(validate_shield(*shield));
    }
    require_clear_of_region(src, position, "charge");

    EnergyResult out;
    out.method = EnergyMethod::direct_overlap;
    out.shield_factor_applied = nominal_shield_factor(shield);

    const double m = norm(moment);
    if (m == 0.0) {
        return out;
    }
    // The cubature runs on the geometric kernel B0·(m^ x d)/|d|^3 (T/m^2), so
    // abs_tol is in T·m; W' = (|m|/4pi) * integral.
    const double normalization = m / kFourPi;
    const Region3 region = region_of(src, position);

    if (!shield) {
        const IntegralResult res = overlap_integral(src, region, position, moment, normalization, cfg);
        out.value = normalization * res.value;
        out.error_estimate = normalization * res.error_estimate;
        return out;
    }

    const double t = shield->transmission;
    if (shield->geometry == ShieldGeometry::full_cylinder) {
        if (t == 0.0) {
            return out;
        }
        const IntegralResult res = overlap_integral(src, region, position, moment, normalization, cfg);
        out.value = t * (normalization * res.value);
        out.error_estimate = t * normalization * res.error_estimate;
        return out;
    }

    const auto [lower, upper] = region.split_at_midplane();
    const IntegralResult naked = overlap_integral(src, lower, position, moment, normalization, cfg);
    double value = normalization * naked.value;
    double err = normalization * naked.error_estimate;
    if (t != 0.0) {
        const IntegralResult covered = overlap_integral(src, upper, position, moment, normalization, cfg);
        value += t * (normalization * covered.value);
        err += t * normalization * covered.error_estimate;
    }
    out.value = value;
    out.error_estimate = err;
    return out;
}

EnergyResult energy_direct(const FluxSource& src, const PointCharge& c, const std::optional<ShieldSpec>& shield,
                           const QuadratureConfig& cfg) {
    throw_if_invalid(validate_charge(c));
    return energy_direct_element(src, c.x, c.v * c.q, shield, cfg);
}

EnergyResult energy_via_potential(const FluxSource& src, const PointCharge& c, bool use_numeric_A,
                                  const QuadratureConfig& cfg) {
    throw_if_invalid(validate_source(src));
    throw_if_invalid(validate_charge(c));
    EnergyResult out;
    out.method = EnergyMethod::via_potential;
    Vec3 a;
    if (use_numeric_A) {
        const VectorIntegralResult res = vector_potential_integral(src, c.x, cfg);
        if (!res.converged) {
            throw std::runtime_error("vector potential cubature did not converge");
        }
        a = res.value;
        out.error_estimate = res.error_estimate * std::abs(c.q) * norm(c.v);
    } else {
        if (inside_region(src, c.x)) {
            throw std::domain_error("charge lies inside the flux region");
        }
        a = vector_potential_analytic(src, c.x);
    }
    out.value = dot(a, c.v * c.q);
    return out;
}

GaugeBreach energy_gauge_breach(const FluxSource& src, const PointCharge& c, const GaugeFunction& chi,
                                const QuadratureConfig& cfg) {
    const EnergyResult direct = energy_direct(src, c, std::nullopt, cfg);
    const VectorField shifted = apply_gauge(potential_field(src, cfg), chi);
    GaugeBreach out;
    out.direct = direct.value;
    out.gauge_shifted = dot(shifted(c.x), c.v * c.q);
    out.discrepancy = std::abs(out.gauge_shifted - out.direct);
    const double quad_tol =
        std::max(cfg.rel_tol * std::abs(direct.value), cfg.abs_tol * std::abs(c.q) * norm(c.v));
    out.tolerance = 10.0 * quad_tol;
    out.identity_holds = out.discrepancy <= out.tolerance;
    return out;
}

EnergyResult energy_of_current(const FluxSource& src, const CurrentDistribution& dist,
                               const std::optional<ShieldSpec>& shield, const QuadratureConfig& cfg) {
    if (dist.empty()) {
        throw std::invalid_argument("current distribution is empty");
    }
    throw_if_invalid(validate_source(src));
    if (shield) {
        throw_if_invalid(validate_shield(*shield));
    }
    for (const auto& el : dist) {
        if (!is_finite(el.position) || !is_finite(el.moment)) {
            throw std::invalid_argument("current distribution has non-finite elements");
        }
        if (inside_region(src, el.position)) {
            throw std::domain_error("current element lies inside the flux region");
        }
    }

    EnergyResult out;
    out.method = EnergyMethod::via_current;
    out.shield_factor_applied = nominal_shield_factor(shield);

    if (shield && shield->geometry == ShieldGeometry::half_space_cylinder) {
        double sum = 0.0;
        double err = 0.0;
        for (const auto& el : dist) {
            const EnergyResult e = energy_direct_element(src, el.position, el.moment, shield, cfg);
            sum += e.value;
            err += e.error_estimate;
        }
        out.value = sum;
        out.error_estimate = err;
        return out;
    }
    if (shield && shield->transmission == 0.0) {
        return out;
    }

    const VectorField a = potential_field(src, cfg);
    double sum = 0.0;
    for (const auto& el : dist) {
        if (el.moment == Vec3{}) {
            continue;
        }
        sum += dot(a(el.position), el.moment);
    }
    out.value = shield ? shield->transmission * sum : sum;
    return out;
}

}  // namespace abenergy
