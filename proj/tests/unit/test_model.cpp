#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "abenergy/model.hpp"
#include "test_support.hpp"

using namespace abenergy;
using Catch::Matchers::WithinRel;
using abenergy::testing::Gen;

namespace {

FluxSource solenoid(double R, double B0) {
    FluxSource s;
    s.kind = SourceKind::infinite_solenoid;
    s.radius = R;
    s.B0 = B0;
    return s;
}

bool mentions(const ValidationIssues& issues, const std::string& text) {
    for (const auto& i : issues) {
        if (i.to_string() == text) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("constants are internally consistent", "[model]") {
    const Constants& c = kConstants;
    CHECK(c.hbar == c.h / (2.0 * std::numbers::pi));
    CHECK(c.flux_quantum_pair == c.h / (2.0 * c.e));
    CHECK(c.flux_quantum_single == c.h / c.e);
    CHECK(c.flux_quantum_single == 2.0 * c.flux_quantum_pair);
    CHECK(c.e > 0.0);
    CHECK(kElectronCharge == -c.e);
}

TEST_CASE("flux_of_source examples", "[model]") {
    CHECK_THAT(flux_of_source(solenoid(0.01, 1.0)), WithinRel(3.14159265e-4, 1e-8));
    CHECK(flux_of_source(solenoid(0.01, 0.0)) == 0.0);

    FluxSource t;
    t.kind = SourceKind::toroid;
    t.radius = 0.01;
    t.minor_radius = 0.001;
    t.B0 = 1.0;
    CHECK_THAT(flux_of_source(t), WithinRel(3.14159265e-6, 1e-8));

    FluxSource f = solenoid(0.02, 0.5);
    f.kind = SourceKind::finite_solenoid;
    f.length = 1.0;
    CHECK_THAT(flux_of_source(f), WithinRel(0.5 * std::numbers::pi * 4e-4, 1e-15));
}

TEST_CASE("flux_of_source is linear in B0 and quadratic in R", "[model][property]") {
    Gen g(101);
    for (int i = 0; i < 200; ++i) {
        const double R = g.uniform(1e-4, 1.0);
        const double B0 = g.uniform(0.0, 10.0);
        const double k = g.uniform(0.1, 10.0);
        const double base = flux_of_source(solenoid(R, B0));
        CHECK_THAT(flux_of_source(solenoid(R, k * B0)), WithinRel(k * base, 1e-14));
        CHECK_THAT(flux_of_source(solenoid(k * R, B0)), WithinRel(k * k * base, 1e-14));
    }
}

TEST_CASE("validate_source reports each violated invariant", "[model]") {
    CHECK(validate_source(solenoid(0.01, 1.0)).empty());
    CHECK(mentions(validate_source(solenoid(0.0, 1.0)), "source.radius must be > 0"));
    CHECK(mentions(validate_source(solenoid(-1.0, 1.0)), "source.radius must be > 0"));
    CHECK(mentions(validate_source(solenoid(0.01, -1.0)), "source.B0 must be finite and >= 0"));

    FluxSource tilted = solenoid(0.01, 1.0);
    tilted.axis = {0.0, 0.0, 1.0 + 1e-9};
    CHECK(validate_source(tilted).size() == 1);
    tilted.axis = {0.0, 0.0, 1.0 + 1e-13};
    CHECK(validate_source(tilted).empty());

    FluxSource finite = solenoid(0.01, 1.0);
    finite.kind = SourceKind::finite_solenoid;
    CHECK(mentions(validate_source(finite), "source.length must be > 0"));

    FluxSource torus = solenoid(0.01, 1.0);
    torus.kind = SourceKind::toroid;
    CHECK(mentions(validate_source(torus), "source.minor_radius must be > 0"));
    torus.minor_radius = 0.02;
    CHECK(validate_source(torus).size() == 1);

    FluxSource everything = solenoid(0.0, -2.0);
    everything.axis = {1.0, 1.0, 0.0};
    CHECK(validate_source(everything).size() == 3);
}

TEST_CASE("validate_charge, validate_shield and validate_path", "[model]") {
    CHECK(validate_charge({kElectronCharge, {}, {1e6, 0, 0}}).empty());
    CHECK(mentions(validate_charge({kElectronCharge, {}, {3e8, 0, 0}}), "charge.v speed must be < 3e8 m/s"));

    CHECK(validate_shield({ShieldGeometry::full_cylinder, 3e-3, 0.0}).empty());
    CHECK(mentions(validate_shield({ShieldGeometry::full_cylinder, 0.0, 0.0}), "shield.energy_gap must be > 0"));
    CHECK(mentions(validate_shield({ShieldGeometry::full_cylinder, 3e-3, 1.5}),
                   "shield.transmission must lie in [0, 1]"));
    CHECK(mentions(validate_shield({ShieldGeometry::full_cylinder, 3e-3, -0.1}),
                   "shield.transmission must lie in [0, 1]"));

    BeamPath p{{{0, 0, 0}, {1, 0, 0}}, 1e6};
    CHECK(validate_path(p).empty());
    CHECK(mentions(validate_path({{{0, 0, 0}}, 1e6}), "path.vertices must contain at least 2 vertices"));
    CHECK(validate_path({{{0, 0, 0}, {0, 0, 0}}, 1e6}).size() == 1);
    CHECK(mentions(validate_path({p.vertices, 0.0}), "path.speed must be > 0"));
    CHECK(mentions(validate_path({p.vertices, 3e8}), "path.speed must be < 3e8 m/s"));
}

TEST_CASE("throw_if_invalid lists every issue", "[model]") {
    CHECK_NOTHROW(throw_if_invalid({}));
    try {
        throw_if_invalid(validate_source(solenoid(0.0, -1.0)));
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("source.radius") != std::string::npos);
        CHECK(msg.find("source.B0") != std::string::npos);
    }
}

TEST_CASE("region geometry", "[model]") {
    FluxSource s = solenoid(1.0, 2.0);
    CHECK(inside_region(s, {0.5, 0, 100}));
    CHECK_FALSE(inside_region(s, {1.5, 0, 0}));
    CHECK(signed_distance(s, {3, 0, 0}) == 2.0);
    CHECK(source_field(s, {0.1, 0.2, 0.3}) == Vec3{0, 0, 2.0});
    CHECK(source_field(s, {2, 0, 0}) == Vec3{});

    s.kind = SourceKind::finite_solenoid;
    s.length = 4.0;
    CHECK(inside_region(s, {0, 0, 1.9}));
    CHECK_FALSE(inside_region(s, {0, 0, 2.1}));
    CHECK_THAT(signed_distance(s, {2, 0, 3}), WithinRel(std::sqrt(2.0), 1e-15));

    FluxSource t;
    t.kind = SourceKind::toroid;
    t.radius = 2.0;
    t.minor_radius = 0.5;
    t.B0 = 1.0;
    CHECK(inside_region(t, {2.2, 0, 0.1}));
    CHECK_FALSE(inside_region(t, {0, 0, 0}));
    const Vec3 b = interior_field(t, {2.0, 0.0, 0.0});
    CHECK(b.x == 0.0);
    CHECK(b.y == 1.0);
    CHECK(b.z == 0.0);
    CHECK(cross_section_radius(t) == 0.5);
    CHECK(exclusion_margin(t) == 0.05 * 0.5);
}

TEST_CASE("segment_hits_region", "[model]") {
    const FluxSource s = solenoid(1.0, 1.0);
    CHECK(segment_hits_region(s, {-3, 0.5, 0}, {3, 0.5, 0}));
    CHECK_FALSE(segment_hits_region(s, {-3, 1.5, 0}, {3, 1.5, 0}));
    CHECK_FALSE(segment_hits_region(s, {-3, 1.04, 0}, {3, 1.04, 0}));
    CHECK(segment_hits_region(s, {-3, 1.04, 0}, {3, 1.04, 0}, 0.05));
    // Endpoints clear of Ω on both sides, midpoint inside.
    CHECK(segment_hits_region(s, {-5, -5, 0}, {5, 5, 0}));
}
