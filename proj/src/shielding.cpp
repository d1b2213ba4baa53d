#include "abenergy/shielding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "abenergy/fields.hpp"

namespace abenergy {

ValidationIssues validate_wave_packet(const WavePacketSpec& wp, const std::string& prefix) {
    ValidationIssues issues;
    if (!(wp.coherence_length > 0.0) || !std::isfinite(wp.coherence_length)) {
        issues.push_back({prefix + ".coherence_length", "must be > 0"});
    }
    if (!(wp.speed > 0.0) || !std::isfinite(wp.speed)) {
        issues.push_back({prefix + ".speed", "must be > 0"});
    } else if (!(wp.speed < kMaxChargeSpeed)) {
        issues.push_back({prefix + ".speed", "must be < 3e8 m/s"});
    }
    return issues;
}

PulseReport pulse_report(const WavePacketSpec& wp, double gap_eV) {
    throw_if_invalid(validate_wave_packet(wp));
    if (!(gap_eV > 0.0)) {
        throw std::invalid_argument("energy gap must be > 0");
    }
    PulseReport r;
    r.dt = wp.coherence_length / wp.speed;
    r.nu = 1.0 / r.dt;
    r.photon_energy = kConstants.h * r.nu / kConstants.e;
    r.gap = gap_eV;
    r.shielded = r.photon_energy < gap_eV;
    return r;
}

std::vector<PulseSample> bfield_pulse_profile(const PulseGeometry& g, const std::vector<double>& t_grid) {
    if (!(g.impact > 0.0)) {
        throw std::invalid_argument("impact parameter must be > 0");
    }
    if (!(std::abs(g.speed) < kMaxChargeSpeed)) {
        throw std::invalid_argument("speed must be < 3e8 m/s");
    }
    const Vec3 observer{};
    std::vector<PulseSample> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        const PointCharge c{g.q, {g.speed * t, g.impact, 0.0}, {g.speed, 0.0, 0.0}};
        out.push_back({t, norm(b1_point_charge(c, observer))});
    }
    return out;
}

QuantizedFlux flux_quantize(double applied_flux) {
    if (!std::isfinite(applied_flux)) {
        throw std::invalid_argument("applied flux must be finite");
    }
    const double ratio = applied_flux / kConstants.flux_quantum_pair;
    const double fl = std::floor(ratio);
    double n = std::nearbyint(ratio);
    // Treat values within a few ulps of a half-integer as exact ties, so that
    // e.g. 2.5 * Phi0 rounds to 2 regardless of the division's last bit.
    const double tie = fl + 0.5;
    if (std::abs(ratio - tie) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(ratio))) {
        n = std::fmod(fl, 2.0) == 0.0 ? fl : fl + 1.0;
    }
    QuantizedFlux q;
    q.n = static_cast<std::int64_t>(n);
    q.flux = static_cast<double>(q.n) * kConstants.flux_quantum_pair;
    return q;
}

double resolve_transmission(const ShieldSpec& shield, const std::optional<WavePacketSpec>& wp) {
    throw_if_invalid(validate_shield(shield));
    if (!wp) {
        return shield.transmission;
    }
    return pulse_report(*wp, shield.energy_gap).shielded ? shield.transmission : 1.0;
}

std::optional<std::string> quoted_estimate_note(const PulseReport& report) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1e", report.dt);
    if (std::string(buf) != "2.0e-14") {
        return std::nullopt;
    }
    const double ratio = report.photon_energy / kQuotedPulsePhotonEnergy;
    if (std::abs(ratio - 1.0) <= 0.1) {
        return std::nullopt;
    }
    const bool quoted_shielded = kQuotedPulsePhotonEnergy < report.gap;
    char note[256];
    std::snprintf(note, sizeof note,
                  "computed h*nu = %.6g eV differs from the quoted estimate %.1g eV by a factor %.3g; "
                  "shielding verdict against the gap is %s",
                  report.photon_energy, kQuotedPulsePhotonEnergy, ratio,
                  quoted_shielded == report.shielded ? "unchanged" : "different");
    return std::string(note);
}

}  // namespace abenergy
