#include "abenergy/scenario.hpp"

#include <cmath>
#include <sstream>

namespace abenergy {
namespace {

std::string format_vec(const Vec3& v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void append(ValidationIssues& into, const ValidationIssues& more) { into.insert(into.end(), more.begin(), more.end()); }

}  // namespace

std::vector<Hypothesis> Scenario::hypotheses() const {
    if (hypothesis) {
        return {*hypothesis};
    }
    return {Hypothesis::vector_potential, Hypothesis::superimposed_energy};
}

ValidatedScenario validate_scenario(const Scenario& s) {
    ValidatedScenario out;
    ValidationIssues& issues = out.issues;
    append(issues, validate_source(s.source, "source"));
    if (s.shield) {
        append(issues, validate_shield(*s.shield, "shield"));
    }
    append(issues, validate_quadrature(s.quadrature, "quadrature"));
    if (s.wave_packet) {
        append(issues, validate_wave_packet(*s.wave_packet, "wave_packet"));
    }
    if (s.verify.gauge_shift && !is_finite(*s.verify.gauge_shift)) {
        issues.push_back({"verify.gauge_shift", "must be finite"});
    }

    if (const auto* tp = std::get_if<TwoPathExperiment>(&s.experiment)) {
        append(issues, validate_path(tp->path_C, "experiment.path_C"));
        append(issues, validate_path(tp->path_D, "experiment.path_D"));
        if (!std::isfinite(tp->charge_q)) {
            issues.push_back({"experiment.charge_q", "must be finite"});
        }
        const auto& c = tp->path_C.vertices;
        const auto& d = tp->path_D.vertices;
        if (!c.empty() && !d.empty()) {
            if (!(c.front() == d.front())) {
                issues.push_back({"experiment.path_C.vertices[0]",
                                  "must equal experiment.path_D.vertices[0] (split point): " + format_vec(c.front()) +
                                      " vs " + format_vec(d.front())});
            }
            if (!(c.back() == d.back())) {
                issues.push_back({"experiment.path_C.vertices[last]",
                                  "must equal experiment.path_D.vertices[last] (recombination point): " +
                                      format_vec(c.back()) + " vs " + format_vec(d.back())});
            }
        }
    } else {
        const auto& sq = std::get<SquidExperiment>(s.experiment);
        if (!(sq.loop_current_I0 > 0.0) || !std::isfinite(sq.loop_current_I0)) {
            issues.push_back({"experiment.loop_current_I0", "must be > 0"});
        }
        if (sq.flux_sweep.empty()) {
            issues.push_back({"experiment.flux_sweep", "must not be empty"});
        }
        for (std::size_t i = 0; i < sq.flux_sweep.size(); ++i) {
            if (!std::isfinite(sq.flux_sweep[i])) {
                issues.push_back({"experiment.flux_sweep[" + std::to_string(i) + "]", "must be finite"});
            }
        }
    }

    if (issues.empty()) {
        out.scenario = s;
    }
    return out;
}

std::optional<ShieldSpec> effective_shield(const Scenario& s) {
    if (!s.shield) {
        return std::nullopt;
    }
    ShieldSpec resolved = *s.shield;
    resolved.transmission = resolve_transmission(*s.shield, s.wave_packet);
    return resolved;
}

}  // namespace abenergy
