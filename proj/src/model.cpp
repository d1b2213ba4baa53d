#include "abenergy/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace abenergy {
namespace {

constexpr double kAxisUnitTolerance = 1e-12;

bool finite(const Vec3& v) { return is_finite(v); }

std::string format_vec(const Vec3& v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

struct AxialCoords {
    double rho;
    double z;
    Vec3 perp;
};

AxialCoords axial_coords(const FluxSource& src, const Vec3& p) {
    const Vec3 d = p - src.center;
    const double z = dot(d, src.axis);
    const Vec3 perp = d - src.axis * z;
    return {norm(perp), z, perp};
}

}  // namespace

std::string to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::infinite_solenoid: return "infinite_solenoid";
        case SourceKind::finite_solenoid: return "finite_solenoid";
        case SourceKind::toroid: return "toroid";
    }
    return "unknown";
}

std::string to_string(ShieldGeometry geometry) {
    switch (geometry) {
        case ShieldGeometry::full_cylinder: return "full_cylinder";
        case ShieldGeometry::half_space_cylinder: return "half_space_cylinder";
    }
    return "unknown";
}

std::string to_string(Hypothesis hypothesis) {
    return hypothesis == Hypothesis::vector_potential ? "vector_potential" : "superimposed_energy";
}

ValidationIssues validate_source(const FluxSource& src, const std::string& prefix) {
    ValidationIssues issues;
    if (!finite(src.center)) {
        issues.push_back({prefix + ".center", "must be finite"});
    }
    if (!finite(src.axis) || std::abs(norm(src.axis) - 1.0) > kAxisUnitTolerance) {
        issues.push_back({prefix + ".axis", "must be a unit vector (|axis| = 1 within 1e-12)"});
    }
    if (!(src.radius > 0.0) || !std::isfinite(src.radius)) {
        issues.push_back({prefix + ".radius", "must be > 0"});
    }
    if (src.kind == SourceKind::finite_solenoid && (!(src.length > 0.0) || !std::isfinite(src.length))) {
        issues.push_back({prefix + ".length", "must be > 0"});
    }
    if (src.kind == SourceKind::toroid) {
        if (!(src.minor_radius > 0.0) || !std::isfinite(src.minor_radius)) {
            issues.push_back({prefix + ".minor_radius", "must be > 0"});
        } else if (src.minor_radius >= src.radius) {
            issues.push_back({prefix + ".minor_radius", "must be smaller than radius (the major radius)"});
        }
    }
    if (!(src.B0 >= 0.0) || !std::isfinite(src.B0)) {
        issues.push_back({prefix + ".B0", "must be finite and >= 0"});
    }
    return issues;
}

ValidationIssues validate_charge(const PointCharge& c, const std::string& prefix) {
    ValidationIssues issues;
    if (!std::isfinite(c.q)) {
        issues.push_back({prefix + ".q", "must be finite"});
    }
    if (!finite(c.x)) {
        issues.push_back({prefix + ".x", "must be finite"});
    }
    if (!finite(c.v)) {
        issues.push_back({prefix + ".v", "must be finite"});
    } else if (!(norm(c.v) < kMaxChargeSpeed)) {
        issues.push_back({prefix + ".v", "speed must be < 3e8 m/s"});
    }
    return issues;
}

ValidationIssues validate_shield(const ShieldSpec& shield, const std::string& prefix) {
    ValidationIssues issues;
    if (!(shield.energy_gap > 0.0) || !std::isfinite(shield.energy_gap)) {
        issues.push_back({prefix + ".energy_gap", "must be > 0"});
    }
    if (!(shield.transmission >= 0.0 && shield.transmission <= 1.0)) {
        issues.push_back({prefix + ".transmission", "must lie in [0, 1]"});
    }
    return issues;
}

ValidationIssues validate_path(const BeamPath& path, const std::string& prefix) {
    ValidationIssues issues;
    if (path.vertices.size() < 2) {
        issues.push_back({prefix + ".vertices", "must contain at least 2 vertices"});
    }
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        if (!finite(path.vertices[i])) {
            issues.push_back({prefix + ".vertices[" + std::to_string(i) + "]", "must be finite"});
        }
    }
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
        if (path.vertices[i] == path.vertices[i - 1]) {
            issues.push_back({prefix + ".vertices[" + std::to_string(i) + "]",
                              "must differ from the previous vertex " + format_vec(path.vertices[i - 1])});
        }
    }
    if (!(path.speed > 0.0) || !std::isfinite(path.speed)) {
        issues.push_back({prefix + ".speed", "must be > 0"});
    } else if (!(path.speed < kMaxChargeSpeed)) {
        issues.push_back({prefix + ".speed", "must be < 3e8 m/s"});
    }
    return issues;
}

void throw_if_invalid(const ValidationIssues& issues) {
    if (issues.empty()) {
        return;
    }
    std::string msg;
    for (const auto& issue : issues) {
        if (!msg.empty()) {
            msg += "; ";
        }
        msg += issue.to_string();
    }
    throw std::invalid_argument(msg);
}

double flux_of_source(const FluxSource& src) {
    const double r = cross_section_radius(src);
    return src.B0 * std::numbers::pi * r * r;
}

double cross_section_radius(const FluxSource& src) {
    return src.kind == SourceKind::toroid ? src.minor_radius : src.radius;
}

double exclusion_margin(const FluxSource& src) { return 0.05 * cross_section_radius(src); }

double signed_distance(const FluxSource& src, const Vec3& p) {
    const AxialCoords c = axial_coords(src, p);
    switch (src.kind) {
        case SourceKind::infinite_solenoid:
            return c.rho - src.radius;
        case SourceKind::finite_solenoid: {
            const double dr = c.rho - src.radius;
            const double dz = std::abs(c.z) - 0.5 * src.length;
            if (dr <= 0.0 && dz <= 0.0) {
                return std::max(dr, dz);
            }
            return std::hypot(std::max(dr, 0.0), std::max(dz, 0.0));
        }
        case SourceKind::toroid:
            return std::hypot(c.rho - src.radius, c.z) - src.minor_radius;
    }
    return 0.0;
}

Vec3 interior_field(const FluxSource& src, const Vec3& p) {
    if (src.kind != SourceKind::toroid) {
        return src.axis * src.B0;
    }
    const AxialCoords c = axial_coords(src, p);
    if (c.rho == 0.0) {
        return {};
    }
    return cross(src.axis, c.perp) * (src.B0 / c.rho);
}

Vec3 source_field(const FluxSource& src, const Vec3& p) {
    return inside_region(src, p) ? interior_field(src, p) : Vec3{};
}

bool segment_hits_region(const FluxSource& src, const Vec3& a, const Vec3& b, double margin) {
    // Dense scan, then golden-section refinement around the best sample.
    constexpr int kSamples = 512;
    auto dist = [&](double t) { return signed_distance(src, a + (b - a) * t); };
    int best = 0;
    double best_d = dist(0.0);
    for (int i = 1; i <= kSamples; ++i) {
        const double d = dist(static_cast<double>(i) / kSamples);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    if (best_d <= margin) {
        return true;
    }
    double lo = std::max(0, best - 1) / static_cast<double>(kSamples);
    double hi = std::min(kSamples, best + 1) / static_cast<double>(kSamples);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = dist(x1);
    double f2 = dist(x2);
    for (int it = 0; it < 100; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = dist(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = dist(x2);
        }
    }
    return std::min({f1, f2, best_d}) <= margin;
}

}  // namespace abenergy
