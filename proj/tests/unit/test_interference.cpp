#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "abenergy/fields.hpp"
#include "abenergy/interference.hpp"
#include "test_support.hpp"

using namespace abenergy;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using abenergy::testing::Gen;

namespace {

constexpr double R = 1e-3;
constexpr double kPi = std::numbers::pi;
const double kHalfFluxB0 = kConstants.flux_quantum_pair / (kPi * R * R);

FluxSource solenoid(double B0) {
    FluxSource s;
    s.radius = R;
    s.B0 = B0;
    return s;
}

// C passes below the axis, D above; C - reverse(D) runs counterclockwise.
TwoPathExperiment two_path(double half_width = 3.0 * R) {
    const double w = half_width;
    TwoPathExperiment e;
    e.path_C = {{{-5 * R, 0, 0}, {-w, -w, 0}, {w, -w, 0}, {5 * R, 0, 0}}, 1e6};
    e.path_D = {{{-5 * R, 0, 0}, {-w, w, 0}, {w, w, 0}, {5 * R, 0, 0}}, 1e6};
    return e;
}

Scenario scenario(double B0, std::optional<ShieldSpec> shield = std::nullopt) {
    Scenario s;
    s.source = solenoid(B0);
    s.shield = shield;
    s.experiment = two_path();
    return s;
}

const ShieldSpec kPerfect{ShieldGeometry::full_cylinder, 3e-3, 0.0};

BeamPath closed_loop(const TwoPathExperiment& e) {
    BeamPath loop = e.path_C;
    for (auto it = e.path_D.vertices.rbegin() + 1; it != e.path_D.vertices.rend(); ++it) {
        loop.vertices.push_back(*it);
    }
    return loop;
}

}  // namespace

TEST_CASE("ab_phase_from_flux examples", "[interference]") {
    CHECK_THAT(ab_phase_from_flux(kConstants.flux_quantum_pair), WithinRel(kPi, 1e-15));
    CHECK(ab_phase_from_flux(0.0) == 0.0);
    CHECK_THAT(ab_phase_from_flux(kConstants.flux_quantum_single), WithinRel(2.0 * kPi, 1e-15));
}

TEST_CASE("phase_from_energy examples", "[interference]") {
    const QuadratureConfig cfg;
    const FluxSource s = solenoid(kHalfFluxB0);
    const PhasePrediction p = phase_from_energy(s, two_path(), std::nullopt, cfg);
    CHECK(p.hypothesis == Hypothesis::superimposed_energy);
    CHECK(p.shield_factor == 1.0);
    CHECK_THAT(p.delta_phi, WithinRel(kPi, 1e-3));
    CHECK_THAT(p.flux_used, WithinRel(kConstants.flux_quantum_pair, 1e-12));

    const PhasePrediction shielded = phase_from_energy(s, two_path(), kPerfect, cfg);
    CHECK(shielded.delta_phi == 0.0);
    CHECK(shielded.shield_factor == 0.0);

    TwoPathExperiment same = two_path();
    same.path_D = same.path_C;
    CHECK(phase_from_energy(s, same, std::nullopt, cfg).delta_phi == 0.0);

    // Reversing the sense of the loop flips the sign.
    TwoPathExperiment swapped = two_path();
    std::swap(swapped.path_C, swapped.path_D);
    CHECK_THAT(phase_from_energy(s, swapped, std::nullopt, cfg).delta_phi, WithinRel(-kPi, 1e-3));

    // A positive charge reverses it as well.
    TwoPathExperiment positron = two_path();
    positron.charge_q = kConstants.e;
    CHECK_THAT(phase_from_energy(s, positron, std::nullopt, cfg).delta_phi, WithinRel(-kPi, 1e-3));
}

TEST_CASE("phase_from_energy errors", "[interference]") {
    const QuadratureConfig cfg;
    const FluxSource s = solenoid(kHalfFluxB0);

    TwoPathExperiment open = two_path();
    open.path_D.vertices.back() = {5 * R, R, 0};
    CHECK_THROWS_AS(phase_from_energy(s, open, std::nullopt, cfg), std::invalid_argument);

    TwoPathExperiment through = two_path();
    through.path_C.vertices = {{-5 * R, 0, 0}, {5 * R, 0, 0}};
    CHECK_THROWS_AS(phase_from_energy(s, through, std::nullopt, cfg), std::domain_error);

    TwoPathExperiment slow = two_path();
    slow.path_C.speed = 0.0;
    CHECK_THROWS_AS(phase_from_energy(s, slow, std::nullopt, cfg), std::invalid_argument);

    FluxSource bad = s;
    bad.radius = 0.0;
    CHECK_THROWS_AS(phase_from_energy(bad, two_path(), std::nullopt, cfg), std::invalid_argument);

    const QuadratureConfig starved{1e-12, 0.0, 1};
    FluxSource finite = s;
    finite.kind = SourceKind::finite_solenoid;
    finite.length = 100 * R;
    CHECK_THROWS_AS(phase_from_energy(finite, two_path(), std::nullopt, starved), std::runtime_error);
}

TEST_CASE("fringe_pattern", "[interference]") {
    auto pattern = [](double phi) {
        PhasePrediction p;
        p.delta_phi = phi;
        return fringe_pattern(p);
    };
    for (int n = -3; n <= 3; ++n) {
        const FringePattern odd = pattern((2 * n + 1) * kPi);
        CHECK(odd.alignment == FringeAlignment::interleaved);
        CHECK_THAT(odd.offset_fraction, WithinAbs(0.5, 1e-12));
        const FringePattern even = pattern(2 * n * kPi);
        CHECK(even.alignment == FringeAlignment::aligned);
        CHECK(even.offset_fraction >= 0.0);
        CHECK(even.offset_fraction < 1.0);
        CHECK_THAT(even.offset_fraction, WithinAbs(0.0, 1e-12));
    }
    const FringePattern third = pattern(kPi / 3.0);
    CHECK(third.alignment == FringeAlignment::intermediate);
    CHECK_THAT(third.offset_fraction, WithinRel(1.0 / 6.0, 1e-12));
    CHECK(third.period == 1.0);

    CHECK(pattern(-kPi / 3.0).offset_fraction == Catch::Approx(5.0 / 6.0));
    CHECK(pattern(2.0 * kPi * (1.0 - 1e-7)).alignment == FringeAlignment::aligned);
    CHECK(pattern(2.0 * kPi * 1e-5).alignment == FringeAlignment::intermediate);
    CHECK(pattern(kPi * (1.0 + 1e-7)).alignment == FringeAlignment::interleaved);

    CHECK(to_string(FringeAlignment::aligned) == "aligned");
    CHECK(to_string(FringeAlignment::interleaved) == "interleaved");
    CHECK(to_string(FringeAlignment::intermediate) == "intermediate");
}

TEST_CASE("predict examples", "[interference]") {
    const Scenario open = scenario(kHalfFluxB0);
    CHECK_THAT(predict(open, Hypothesis::vector_potential).delta_phi, WithinRel(kPi, 1e-12));
    CHECK_THAT(predict(open, Hypothesis::superimposed_energy).delta_phi, WithinRel(kPi, 1e-3));

    const Scenario shielded = scenario(kHalfFluxB0, kPerfect);
    const PhasePrediction vp = predict(shielded, Hypothesis::vector_potential);
    CHECK_THAT(vp.delta_phi, WithinRel(kPi, 1e-12));
    CHECK(vp.shield_factor == 1.0);
    CHECK(predict(shielded, Hypothesis::superimposed_energy).delta_phi == 0.0);

    const Scenario zero = scenario(0.0);
    CHECK(predict(zero, Hypothesis::vector_potential).delta_phi == 0.0);
    CHECK(predict(zero, Hypothesis::superimposed_energy).delta_phi == 0.0);

    // A fast packet defeats the shield, so both hypotheses agree again.
    Scenario fast = shielded;
    fast.wave_packet = WavePacketSpec{4e-6, 2e8};
    CHECK_THAT(predict(fast, Hypothesis::superimposed_energy).delta_phi, WithinRel(kPi, 1e-3));

    Scenario squid = open;
    squid.experiment = SquidExperiment{1e-6, {0.0}, false};
    CHECK_THROWS_AS(predict(squid, Hypothesis::vector_potential), std::invalid_argument);
}

TEST_CASE("loop linking numbers", "[interference]") {
    const FluxSource s = solenoid(1.0);
    const TwoPathExperiment e = two_path();
    CHECK(loop_linking_number(s, e.path_C, e.path_D) == 1);
    CHECK(loop_linking_number(s, e.path_D, e.path_C) == -1);

    // Both paths on the same side: nothing enclosed.
    TwoPathExperiment side = two_path();
    side.path_D.vertices = {{-5 * R, 0, 0}, {-4 * R, -2 * R, 0}, {4 * R, -2 * R, 0}, {5 * R, 0, 0}};
    side.path_C.vertices = {{-5 * R, 0, 0}, {-4 * R, -8 * R, 0}, {4 * R, -8 * R, 0}, {5 * R, 0, 0}};
    CHECK(loop_linking_number(s, side.path_C, side.path_D) == 0);
    CHECK(enclosed_flux(s, side.path_C, side.path_D) == 0.0);

    // C winds once fully around before heading to E.
    BeamPath twice = e.path_C;
    twice.vertices = {{-5 * R, 0, 0},     {-3 * R, -3 * R, 0}, {3 * R, -3 * R, 0}, {3 * R, 3 * R, 0},
                      {-3 * R, 3 * R, 0}, {-3 * R, -3 * R, 0}, {3 * R, -3 * R, 0}, {5 * R, 0, 0}};
    CHECK(loop_linking_number(s, twice, e.path_D) == 2);
    CHECK_THAT(enclosed_flux(s, twice, e.path_D), WithinRel(2.0 * flux_of_source(s), 1e-15));

    // Toroid: a loop through the hole around the tube.
    FluxSource t;
    t.kind = SourceKind::toroid;
    t.radius = 0.01;
    t.minor_radius = 0.003;
    t.B0 = 1.0;
    const double a = 0.006;
    BeamPath up{{{0.01, 0, -a}, {0.01 + a, 0, 0}, {0.01, 0, a}}, 1e6};
    BeamPath down{{{0.01, 0, -a}, {0.01 - a, 0, 0}, {0.01, 0, a}}, 1e6};
    const int link = loop_linking_number(t, up, down);
    CHECK(std::abs(link) == 1);
    CHECK(loop_linking_number(t, down, up) == -link);
}

TEST_CASE("hypotheses agree without shields", "[interference][property]") {
    Gen g(41);
    for (int i = 0; i < 8; ++i) {
        const Scenario s = scenario(g.uniform(0.05, 3.0) * kHalfFluxB0);
        const double vp = predict(s, Hypothesis::vector_potential).delta_phi;
        const double se = predict(s, Hypothesis::superimposed_energy).delta_phi;
        CHECK(std::abs(vp - se) <= 1e-3 * std::abs(vp));
    }
}

TEST_CASE("phase is linear in B0", "[interference][property]") {
    const Scenario one = scenario(kHalfFluxB0);
    const Scenario three = scenario(3.0 * kHalfFluxB0);
    for (Hypothesis h : {Hypothesis::vector_potential, Hypothesis::superimposed_energy}) {
        const double p1 = predict(one, h).delta_phi;
        const double p3 = predict(three, h).delta_phi;
        CHECK_THAT(p3, WithinRel(3.0 * p1, 1e-9));
    }
}

TEST_CASE("deforming a path without changing its winding keeps the phase", "[interference][property]") {
    Gen g(8);
    const QuadratureConfig cfg;
    const FluxSource s = solenoid(kHalfFluxB0);
    const double base = phase_from_energy(s, two_path(), std::nullopt, cfg).delta_phi;
    for (int i = 0; i < 6; ++i) {
        TwoPathExperiment e = two_path();
        e.path_C.vertices = {{-5 * R, 0, 0},
                             {g.uniform(-6, -2) * R, g.uniform(-6, -2) * R, g.uniform(-2, 2) * R},
                             {g.uniform(-1, 1) * R, g.uniform(-6, -2) * R, g.uniform(-2, 2) * R},
                             {g.uniform(2, 6) * R, g.uniform(-6, -2) * R, g.uniform(-2, 2) * R},
                             {5 * R, 0, 0}};
        e.path_C.speed = g.uniform(1e5, 1e7);
        const double p = phase_from_energy(s, e, std::nullopt, cfg).delta_phi;
        CHECK(std::abs(p - base) <= 1e-3 * std::abs(base));
    }
}

TEST_CASE("shield transmission scales the energy phase", "[interference][property]") {
    const QuadratureConfig cfg;
    const FluxSource s = solenoid(kHalfFluxB0);
    const double open = phase_from_energy(s, two_path(), std::nullopt, cfg).delta_phi;
    for (double t : {0.0, 0.2, 0.5, 0.75, 1.0}) {
        const PhasePrediction p = phase_from_energy(s, two_path(), ShieldSpec{ShieldGeometry::full_cylinder, 3e-3, t}, cfg);
        CHECK(p.shield_factor == t);
        CHECK(std::abs(p.delta_phi - t * open) <= 1e-12 * std::abs(open));
    }
}

TEST_CASE("finite solenoid: energy phase equals the loop integral of numeric A", "[interference]") {
    const QuadratureConfig cfg;
    FluxSource s = solenoid(kHalfFluxB0);
    s.kind = SourceKind::finite_solenoid;
    s.length = 100 * R;
    const TwoPathExperiment e = two_path(2.5 * R);
    const double phase = phase_from_energy(s, e, std::nullopt, cfg).delta_phi;
    const double circulation = loop_integral_A(numeric_potential_field(s, cfg), closed_loop(e), cfg);
    CHECK_THAT(phase, WithinRel(2.0 * kPi * circulation / kConstants.flux_quantum_single, 1e-6));
    // Truncation leaks a little of the circulation past the end faces.
    CHECK(phase < kPi);
    CHECK(phase > 0.99 * kPi);
}
