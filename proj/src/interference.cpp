#include "abenergy/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "abenergy/energy.hpp"
#include "abenergy/fields.hpp"

namespace abenergy {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFringeTolerance = 1e-6;

std::vector<Vec3> closed_loop(const BeamPath& c, const BeamPath& d) {
    std::vector<Vec3> loop = c.vertices;
    for (auto it = d.vertices.rbegin() + 1; it != d.vertices.rend(); ++it) {
        loop.push_back(*it);
    }
    return loop;
}

void require_shared_endpoints(const TwoPathExperiment& exp) {
    throw_if_invalid(validate_path(exp.path_C, "path_C"));
    throw_if_invalid(validate_path(exp.path_D, "path_D"));
    if (!(exp.path_C.vertices.front() == exp.path_D.vertices.front()) ||
        !(exp.path_C.vertices.back() == exp.path_D.vertices.back())) {
        throw std::invalid_argument("path_C and path_D must share their first and last vertices");
    }
}

void require_path_clear(const FluxSource& src, const BeamPath& path, const char* name) {
    const double margin = src.kind == SourceKind::infinite_solenoid ? 0.0 : exclusion_margin(src);
    for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
        if (segment_hits_region(src, path.vertices[k], path.vertices[k + 1], margin)) {
            throw std::domain_error(std::string(name) + " segment " + std::to_string(k) +
                                    " intersects (or grazes) the flux region");
        }
    }
}

/// (1/hbar) ∫ W'(t) dt along the path.
double energy_action(const FluxSource& src, const BeamPath& path, double q, const QuadratureConfig& cfg) {
    const auto& v = path.vertices;
    const bool numeric = src.kind != SourceKind::infinite_solenoid;
    std::vector<double> breaks{0.0};
    std::vector<Vec3> velocity;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const Vec3 seg = v[k + 1] - v[k];
        const double len = norm(seg);
        breaks.push_back(breaks.back() + len / path.speed);
        velocity.push_back(seg * (path.speed / len));
    }
    auto g = [&](double t) {
        const auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
        const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - breaks.begin()) - 1, velocity.size() - 1);
        const PointCharge c{q, v[k] + velocity[k] * (t - breaks[k]), velocity[k]};
        return energy_via_potential(src, c, numeric, cfg).value / kConstants.hbar;
    };
    const IntegralResult res = integrate_piecewise(g, breaks, cfg);
    if (!res.converged) {
        throw std::runtime_error("phase time integral did not converge");
    }
    return res.value;
}

}  // namespace

std::string to_string(FringeAlignment a) {
    switch (a) {
        case FringeAlignment::aligned: return "aligned";
        case FringeAlignment::interleaved: return "interleaved";
        case FringeAlignment::intermediate: return "intermediate";
    }
    return "unknown";
}

double ab_phase_from_flux(double flux) { return kTwoPi * flux / kConstants.flux_quantum_single; }

int loop_linking_number(const FluxSource& src, const BeamPath& path_C, const BeamPath& path_D) {
    const std::vector<Vec3> loop = closed_loop(path_C, path_D);
    if (src.kind == SourceKind::toroid) {
        int crossings = 0;
        for (std::size_t k = 0; k + 1 < loop.size(); ++k) {
            const Vec3 a = loop[k] - src.center;
            const Vec3 b = loop[k + 1] - src.center;
            const double za = dot(a, src.axis);
            const double zb = dot(b, src.axis);
            if ((za < 0.0) == (zb < 0.0)) {
                continue;
            }
            const double t = za / (za - zb);
            const Vec3 p = a + (b - a) * t;
            if (norm(reject(p, src.axis)) < src.radius) {
                crossings += zb > za ? 1 : -1;
            }
        }
        return crossings;
    }
    const Vec3 e1 = any_perpendicular(src.axis);
    const Vec3 e2 = cross(src.axis, e1);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < loop.size(); ++k) {
        const Vec3 a = loop[k] - src.center;
        const Vec3 b = loop[k + 1] - src.center;
        const double ax = dot(a, e1), ay = dot(a, e2);
        const double bx = dot(b, e1), by = dot(b, e2);
        total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

double enclosed_flux(const FluxSource& src, const BeamPath& path_C, const BeamPath& path_D) {
    return loop_linking_number(src, path_C, path_D) * flux_of_source(src);
}

PhasePrediction phase_from_energy(const FluxSource& src, const TwoPathExperiment& exp,
                                  const std::optional<ShieldSpec>& shield, const QuadratureConfig& cfg) {
    throw_if_invalid(validate_source(src));
    require_shared_endpoints(exp);
    require_path_clear(src, exp.path_C, "path_C");
    require_path_clear(src, exp.path_D, "path_D");

    PhasePrediction out;
    out.hypothesis = Hypothesis::superimposed_energy;
    out.flux_used = enclosed_flux(src, exp.path_C, exp.path_D);
    out.shield_factor = nominal_shield_factor(shield);
    if (out.shield_factor == 0.0 || exp.charge_q == 0.0) {
        return out;
    }
    const double phi_C = -energy_action(src, exp.path_C, exp.charge_q, cfg);
    const double phi_D = -energy_action(src, exp.path_D, exp.charge_q, cfg);
    out.delta_phi = out.shield_factor * (phi_C - phi_D);
    return out;
}

FringePattern fringe_pattern(const PhasePrediction& p, double period) {
    FringePattern f;
    f.period = period;
    double offset = std::fmod(p.delta_phi / kTwoPi, 1.0);
    if (offset < 0.0) {
        offset += 1.0;
    }
    // fmod leaves 1 - ulp for whole turns that lost their last bit.
    if (offset >= 1.0 - 4.0 * std::numeric_limits<double>::epsilon()) {
        offset = 0.0;
    }
    f.offset_fraction = offset;
    if (offset < kFringeTolerance || offset > 1.0 - kFringeTolerance) {
        f.alignment = FringeAlignment::aligned;
    } else if (std::abs(offset - 0.5) < kFringeTolerance) {
        f.alignment = FringeAlignment::interleaved;
    } else {
        f.alignment = FringeAlignment::intermediate;
    }
    return f;
}

PhasePrediction predict(const Scenario& s, Hypothesis hypothesis) {
    const auto* exp = std::get_if<TwoPathExperiment>(&s.experiment);
    if (exp == nullptr) {
        throw std::invalid_argument("phase prediction requires a two_path experiment");
    }
    if (hypothesis == Hypothesis::vector_potential) {
        require_shared_endpoints(*exp);
        PhasePrediction out;
        out.hypothesis = Hypothesis::vector_potential;
        out.flux_used = enclosed_flux(s.source, exp->path_C, exp->path_D);
        out.delta_phi = ab_phase_from_flux(out.flux_used);
        out.shield_factor = 1.0;
        return out;
    }
    return phase_from_energy(s.source, *exp, effective_shield(s), s.quadrature);
}

}  // namespace abenergy
