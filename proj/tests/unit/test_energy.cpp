#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "abenergy/energy.hpp"
#include "test_support.hpp"

using namespace abenergy;
using Catch::Matchers::WithinRel;
using abenergy::testing::Gen;
using abenergy::testing::rel_diff;

namespace {

constexpr double R = 0.01;

FluxSource long_solenoid(double B0 = 1.0) {
    FluxSource s;
    s.kind = SourceKind::finite_solenoid;
    s.radius = R;
    s.length = 100.0 * R;
    s.B0 = B0;
    return s;
}

FluxSource ideal_solenoid(double B0 = 1.0) {
    FluxSource s = long_solenoid(B0);
    s.kind = SourceKind::infinite_solenoid;
    return s;
}

const ShieldSpec kPerfectShield{ShieldGeometry::full_cylinder, 3e-3, 0.0};
const ShieldSpec kHalfShield{ShieldGeometry::half_space_cylinder, 3e-3, 0.0};

}  // namespace

TEST_CASE("energy_direct examples", "[energy]") {
    const QuadratureConfig cfg;
    const FluxSource s = long_solenoid();
    CHECK(energy_direct(s, {kElectronCharge, {3 * R, 0, 0}, {}}, std::nullopt, cfg).value == 0.0);

    const PointCharge c{kElectronCharge, {3 * R, 0, 0}, {0, 1e6, 0}};
    const EnergyResult direct = energy_direct(s, c, std::nullopt, cfg);
    const EnergyResult via = energy_via_potential(s, c, true, cfg);
    CHECK(direct.method == EnergyMethod::direct_overlap);
    CHECK(via.method == EnergyMethod::via_potential);
    CHECK(direct.value != 0.0);
    CHECK(rel_diff(direct.value, via.value) <= 1e-4);

    const EnergyResult shielded = energy_direct(s, c, kPerfectShield, cfg);
    CHECK(shielded.value == 0.0);
    CHECK(shielded.shield_factor_applied == 0.0);

    CHECK_THROWS_AS(energy_direct(s, {kElectronCharge, {0.5 * R, 0, 0}, {0, 1e6, 0}}, std::nullopt, cfg),
                    std::domain_error);
}

TEST_CASE("energy_via_potential examples", "[energy]") {
    const QuadratureConfig cfg;
    const FluxSource s = ideal_solenoid(2.0);
    const Vec3 v{0.0, 1e6, 0.0};
    const double wc = energy_via_potential(s, {kElectronCharge, {3 * R, 0, 0}, v}, false, cfg).value;
    const double wd = energy_via_potential(s, {kElectronCharge, {-3 * R, 0, 0}, v}, false, cfg).value;
    CHECK(wc != 0.0);
    CHECK(wc == -wd);

    CHECK(energy_via_potential(s, {0.0, {3 * R, 0, 0}, v}, false, cfg).value == 0.0);
    // A is azimuthal; a velocity along the axis has no component along it.
    CHECK(energy_via_potential(s, {kElectronCharge, {3 * R, 0, 0}, {0, 0, 1e6}}, false, cfg).value == 0.0);

    // Numeric A: mirror relation within quadrature tolerance.
    const FluxSource f = long_solenoid();
    const double nc = energy_via_potential(f, {kElectronCharge, {3 * R, 0, 0}, v}, true, cfg).value;
    const double nd = energy_via_potential(f, {kElectronCharge, {-3 * R, 0, 0}, v}, true, cfg).value;
    CHECK(std::abs(nc + nd) <= 1e-6 * std::abs(nc));
}

TEST_CASE("energy is linear in q and v", "[energy][property]") {
    Gen g(3);
    const QuadratureConfig cfg;
    const FluxSource s = long_solenoid();
    const FluxSource ideal = ideal_solenoid();
    for (int i = 0; i < 3; ++i) {
        const double rho = g.uniform(2.0 * R, 6.0 * R);
        const double th = g.uniform(0.0, 2.0 * std::numbers::pi);
        const Vec3 x{rho * std::cos(th), rho * std::sin(th), g.uniform(-R, R)};
        const Vec3 v = g.unit() * 1e6;
        const PointCharge c{kElectronCharge, x, v};
        const PointCharge c2q{2.0 * kElectronCharge, x, v};
        const PointCharge c2v{kElectronCharge, x, v * 2.0};

        const double w = energy_via_potential(ideal, c, false, cfg).value;
        CHECK(energy_via_potential(ideal, c2q, false, cfg).value == 2.0 * w);
        CHECK(energy_via_potential(ideal, c2v, false, cfg).value == 2.0 * w);

        const double d = energy_direct(s, c, std::nullopt, cfg).value;
        CHECK(rel_diff(energy_direct(s, c2q, std::nullopt, cfg).value, 2.0 * d) <= 1e-6);
        CHECK(rel_diff(energy_direct(s, c2v, std::nullopt, cfg).value, 2.0 * d) <= 1e-6);
    }
}

TEST_CASE("direct overlap matches A·qv on random configurations", "[energy][property]") {
    Gen g(17);
    const QuadratureConfig cfg;
    for (int i = 0; i < 6; ++i) {
        const bool finite = i % 2 == 0;
        const FluxSource s = finite ? long_solenoid(g.uniform(0.1, 2.0)) : ideal_solenoid(g.uniform(0.1, 2.0));
        const double rho = g.uniform(2.0 * R, 10.0 * R);
        const double th = g.uniform(0.0, 2.0 * std::numbers::pi);
        const PointCharge c{kElectronCharge, {rho * std::cos(th), rho * std::sin(th), g.uniform(-2 * R, 2 * R)},
                            g.unit() * g.uniform(1e5, 1e7)};
        const double direct = energy_direct(s, c, std::nullopt, cfg).value;
        const double via = energy_via_potential(s, c, finite, cfg).value;
        INFO("configuration " << i);
        CHECK(std::abs(direct - via) <= std::max(1e-4 * std::abs(via), 10.0 * cfg.abs_tol * std::abs(c.q) * norm(c.v)));
    }
}

TEST_CASE("full shield scales the energy by its transmission exactly", "[energy][property]") {
    const QuadratureConfig cfg;
    const FluxSource s = long_solenoid();
    const PointCharge c{kElectronCharge, {0.0, 2.5 * R, 0.3 * R}, {1e6, 2e5, -3e5}};
    const double open = energy_direct(s, c, ShieldSpec{ShieldGeometry::full_cylinder, 3e-3, 1.0}, cfg).value;
    CHECK(open == energy_direct(s, c, std::nullopt, cfg).value);
    for (double t : {0.0, 0.1, 0.25, 0.5, 0.9}) {
        const EnergyResult r = energy_direct(s, c, ShieldSpec{ShieldGeometry::full_cylinder, 3e-3, t}, cfg);
        CHECK(r.value == t * open);
        CHECK(r.shield_factor_applied == t);
    }
}

TEST_CASE("energy_gauge_breach", "[energy]") {
    const QuadratureConfig cfg;
    const FluxSource s = long_solenoid();
    const PointCharge c{kElectronCharge, {3 * R, 0, 0}, {0, 1e6, 0}};

    const GaugeBreach none = energy_gauge_breach(s, c, GaugeFunction::zero(), cfg);
    CHECK(none.identity_holds);
    CHECK(none.discrepancy <= none.tolerance);

    const Vec3 shift{0.0, 2e-3, 1e-3};
    const GaugeBreach broken = energy_gauge_breach(s, c, GaugeFunction::linear(shift), cfg);
    const double expected = std::abs(c.q * dot(shift, c.v));
    CHECK_FALSE(broken.identity_holds);
    CHECK(std::abs(broken.discrepancy - expected) <= broken.tolerance);

    const GaugeBreach orthogonal = energy_gauge_breach(s, c, GaugeFunction::linear({0.0, 0.0, 5e-3}), cfg);
    CHECK(orthogonal.identity_holds);
}

TEST_CASE("energy_of_current: loop around the solenoid", "[energy]") {
    const QuadratureConfig cfg;
    const double I = 2.0;
    const CurrentDistribution loop = circular_current_loop({}, {0, 0, 1}, 3.0 * R, I, 16);

    // Ideal solenoid: Σ A·I dl is I times the circulation, i.e. I Φ.
    const FluxSource ideal = ideal_solenoid();
    const EnergyResult w = energy_of_current(ideal, loop, std::nullopt, cfg);
    CHECK(w.method == EnergyMethod::via_current);
    // Elements sit at chord midpoints, where |A| is larger than on the circle
    // by 1/cos(pi/16); the chord length is 2 r sin(pi/16).
    const double n = 16.0;
    const double expected = I * flux_of_source(ideal) * std::tan(std::numbers::pi / n) / (std::numbers::pi / n);
    CHECK_THAT(w.value, WithinRel(expected, 1e-12));

    // Long finite solenoid: cross-check against the summed direct overlaps.
    const FluxSource s = long_solenoid();
    const double via = energy_of_current(s, loop, std::nullopt, cfg).value;
    double direct = 0.0;
    for (const auto& el : loop) {
        direct += energy_direct_element(s, el.position, el.moment, std::nullopt, cfg).value;
    }
    CHECK(rel_diff(via, direct) <= 1e-4);

    // Half-space shield, nothing transmitted above the midplane: exactly half.
    const QuadratureConfig tight{1e-9, 0.0, 1'000'000};
    double unshielded = 0.0;
    for (const auto& el : loop) {
        unshielded += energy_direct_element(s, el.position, el.moment, std::nullopt, tight).value;
    }
    const EnergyResult half = energy_of_current(s, loop, kHalfShield, tight);
    CHECK(half.shield_factor_applied == 0.5);
    CHECK(rel_diff(half.value, 0.5 * unshielded) <= 1e-6);

    CHECK(energy_of_current(s, loop, kPerfectShield, cfg).value == 0.0);

    CurrentDistribution idle = loop;
    for (auto& el : idle) {
        el.moment = {};
    }
    CHECK(energy_of_current(s, idle, std::nullopt, cfg).value == 0.0);
    CHECK_THROWS_AS(energy_of_current(s, {}, std::nullopt, cfg), std::invalid_argument);
    CHECK_THROWS_AS(energy_of_current(s, {{{0, 0, 0}, {1, 0, 0}}}, std::nullopt, cfg), std::domain_error);
}

TEST_CASE("half-space shield on a single charge", "[energy]") {
    const QuadratureConfig cfg;
    const FluxSource s = long_solenoid();
    const PointCharge c{kElectronCharge, {3 * R, 0, 0}, {0, 1e6, 0}};
    const double open = energy_direct(s, c, std::nullopt, cfg).value;
    const EnergyResult half = energy_direct(s, c, kHalfShield, cfg);
    CHECK(rel_diff(half.value, 0.5 * open) <= 1e-6);

    const EnergyResult partly = energy_direct(s, c, ShieldSpec{ShieldGeometry::half_space_cylinder, 3e-3, 0.4}, cfg);
    CHECK(partly.shield_factor_applied == 0.7);
    CHECK(rel_diff(partly.value, 0.7 * open) <= 1e-6);
}

TEST_CASE("toroid: direct overlap matches A·qv", "[energy]") {
    FluxSource t;
    t.kind = SourceKind::toroid;
    t.radius = 0.01;
    t.minor_radius = 0.003;
    t.B0 = 1.0;
    const QuadratureConfig cfg;
    const PointCharge c{kElectronCharge, {0.01, 0.0, 0.009}, {3e5, 1e6, -2e5}};
    const double direct = energy_direct(t, c, std::nullopt, cfg).value;
    const double via = energy_via_potential(t, c, true, cfg).value;
    CHECK(direct != 0.0);
    CHECK(rel_diff(direct, via) <= 1e-4);
}
