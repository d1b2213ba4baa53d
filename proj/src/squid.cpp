#include "abenergy/squid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace abenergy {
namespace {

/// |cos(pi x)| with exact reduction, so half-integers give exactly 0.
double abs_cos_pi(double x) {
    const double r = std::fmod(std::abs(x), 1.0);
    if (r == 0.5) {
        return 0.0;
    }
    return std::abs(std::cos(std::numbers::pi * r));
}

}  // namespace

double critical_current(double flux, double I0, Hypothesis hypothesis) {
    if (!(I0 > 0.0)) {
        throw std::invalid_argument("I0 must be > 0");
    }
    const double phi0 = kConstants.flux_quantum_pair;
    const double effective = hypothesis == Hypothesis::vector_potential ? flux : 0.5 * flux;
    return I0 * abs_cos_pi(effective / phi0);
}

std::vector<SquidPrediction> discrimination_table(const std::vector<double>& flux_sweep, double I0) {
    if (flux_sweep.empty()) {
        throw std::invalid_argument("flux sweep is empty");
    }
    if (!(I0 > 0.0)) {
        throw std::invalid_argument("I0 must be > 0");
    }
    std::vector<SquidPrediction> table;
    table.reserve(flux_sweep.size());
    for (double flux : flux_sweep) {
        if (!std::isfinite(flux)) {
            throw std::invalid_argument("flux sweep values must be finite");
        }
        SquidPrediction p;
        p.flux = flux;
        p.ic_vector_potential = critical_current(flux, I0, Hypothesis::vector_potential);
        p.ic_superimposed_energy = critical_current(flux, I0, Hypothesis::superimposed_energy);
        p.discriminating = std::abs(p.ic_vector_potential - p.ic_superimposed_energy) > 1e-9 * I0;
        table.push_back(p);
    }
    return table;
}

}  // namespace abenergy
