#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abenergy/model.hpp"

namespace abenergy {

/// Electron wave packet: coherence length (m) and speed (m/s).
struct WavePacketSpec {
    double coherence_length{0.0};
    double speed{0.0};

    friend bool operator==(const WavePacketSpec&, const WavePacketSpec&) = default;
};

ValidationIssues validate_wave_packet(const WavePacketSpec& wp, const std::string& prefix = "wave_packet");

/// Timescale and spectrum of the magnetic pulse a passing packet produces at
/// the shield, compared against the superconducting gap.
struct PulseReport {
    double dt{0.0};              ///< s, pulse width coherence_length / speed
    double nu{0.0};              ///< Hz, 1 / dt
    double photon_energy{0.0};   ///< eV, h nu / e
    double gap{0.0};             ///< eV
    bool shielded{false};        ///< photon_energy < gap
};

PulseReport pulse_report(const WavePacketSpec& wp, double gap_eV);

/// Uniform straight-line pass of a charge q at `speed` with impact parameter
/// `impact` past the observation point; closest approach at t = 0.
struct PulseGeometry {
    double q{kElectronCharge};
    double speed{0.0};
    double impact{0.0};
};

struct PulseSample {
    double t;
    double b;  ///< |B1| at the observation point, T
};

/// |B1|(t) at the observation point, evaluated from the point-charge field.
std::vector<PulseSample> bfield_pulse_profile(const PulseGeometry& g, const std::vector<double>& t_grid);

struct QuantizedFlux {
    std::int64_t n{0};
    double flux{0.0};  ///< Wb, n h / 2e
};

/// Nearest multiple of h/2e, ties to even.
QuantizedFlux flux_quantize(double applied_flux);

/// Transmission actually seen by the charge system: the configured value when
/// no packet is given or its pulse lies below the gap, 1 otherwise.
double resolve_transmission(const ShieldSpec& shield, const std::optional<WavePacketSpec>& wp);

/// The oft-quoted pulse estimate for a 4 µm packet at 2e8 m/s: h nu ≈ 2e-2 eV.
inline constexpr double kQuotedPulsePhotonEnergy = 2e-2;

/// When the report corresponds to dt ≈ 2e-14 s (2 significant figures) and
/// the computed photon energy disagrees with the quoted 2e-2 eV by more than
/// 10 %, returns a note stating both values.
std::optional<std::string> quoted_estimate_note(const PulseReport& report);

}  // namespace abenergy
