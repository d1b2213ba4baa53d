#include "abenergy/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace abenergy {
namespace {

constexpr double kInvFourPi = 1.0 / (4.0 * std::numbers::pi);

}  // namespace

GaugeFunction GaugeFunction::zero() {
    return {[](const Vec3&) { return 0.0; }, [](const Vec3&) { return Vec3{}; }, "chi = 0"};
}

GaugeFunction GaugeFunction::linear(const Vec3& c) {
    std::ostringstream os;
    os.precision(12);
    os << "chi = c.x, c = " << c;
    return {[c](const Vec3& x) { return dot(c, x); }, [c](const Vec3&) { return c; }, os.str()};
}

bool gauge_gradient_consistent(const GaugeFunction& g, const Vec3& x, double h, double rel_tol) {
    const Vec3 ex{h, 0.0, 0.0};
    const Vec3 ey{0.0, h, 0.0};
    const Vec3 ez{0.0, 0.0, h};
    const Vec3 fd{(g.chi(x + ex) - g.chi(x - ex)) / (2.0 * h), (g.chi(x + ey) - g.chi(x - ey)) / (2.0 * h),
                  (g.chi(x + ez) - g.chi(x - ez)) / (2.0 * h)};
    const Vec3 supplied = g.gradient(x);
    const double scale = std::max(norm(supplied), norm(fd));
    return norm(fd - supplied) <= rel_tol * scale || scale == 0.0;
}

Vec3 b1_current_element(const Vec3& position, const Vec3& moment, const Vec3& r) {
    const Vec3 d = r - position;
    const double dist2 = dot(d, d);
    if (dist2 == 0.0) {
        throw std::domain_error("field of a moving charge is singular at the charge position");
    }
    const double inv = 1.0 / (dist2 * std::sqrt(dist2));
    return cross(moment, d) * (kConstants.mu0 * kInvFourPi * inv);
}

Vec3 b1_point_charge(const PointCharge& c, const Vec3& r) { return b1_current_element(c.x, c.v * c.q, r); }

Vec3 vector_potential_analytic(const FluxSource& src, const Vec3& x) {
    if (src.kind != SourceKind::infinite_solenoid) {
        throw std::invalid_argument("analytic vector potential is only available for infinite_solenoid sources");
    }
    const Vec3 d = x - src.center;
    const Vec3 perp = d - src.axis * dot(d, src.axis);
    const double rho2 = dot(perp, perp);
    if (rho2 == 0.0) {
        return {};
    }
    const double r2 = src.radius * src.radius;
    const double factor = rho2 <= r2 ? 0.5 * src.B0 : 0.5 * src.B0 * r2 / rho2;
    return cross(src.axis, perp) * factor;
}

void require_clear_of_region(const FluxSource& src, const Vec3& x, const char* what) {
    const double d = signed_distance(src, x);
    if (!(d > exclusion_margin(src))) {
        std::ostringstream os;
        os.precision(12);
        os << what << " at " << x << " is inside or within " << exclusion_margin(src)
           << " m of the flux region (distance " << d << " m)";
        throw std::domain_error(os.str());
    }
}

VectorIntegralResult vector_potential_integral(const FluxSource& src, const Vec3& x, const QuadratureConfig& cfg) {
    require_clear_of_region(src, x, "vector potential evaluation point");
    const Region3 region = region_of(src, x);
    auto kernel = [&src, &x](const Vec3& r) {
        const Vec3 d = x - r;
        const double dist2 = dot(d, d);
        return cross(interior_field(src, r), d) * (1.0 / (dist2 * std::sqrt(dist2)));
    };
    VectorIntegralResult res = integrate_region(kernel, region, cfg);
    res.value *= kInvFourPi;
    res.error_estimate *= kInvFourPi;
    return res;
}

Vec3 vector_potential_numeric(const FluxSource& src, const Vec3& x, const QuadratureConfig& cfg) {
    const VectorIntegralResult res = vector_potential_integral(src, x, cfg);
    if (!res.converged) {
        std::ostringstream os;
        os.precision(6);
        os << "vector potential cubature did not converge at " << x << " (error estimate " << res.error_estimate
           << ", " << res.subdivisions_used << " subdivisions)";
        throw std::runtime_error(os.str());
    }
    return res.value;
}

VectorField analytic_potential_field(const FluxSource& src) {
    return {[src](const Vec3& x) { return vector_potential_analytic(src, x); }, FieldUnits::tesla_meter,
            FieldProvenance::analytic, "analytic A of " + to_string(src.kind)};
}

VectorField numeric_potential_field(const FluxSource& src, const QuadratureConfig& cfg) {
    return {[src, cfg](const Vec3& x) { return vector_potential_numeric(src, x, cfg); }, FieldUnits::tesla_meter,
            FieldProvenance::numeric, "numeric A of " + to_string(src.kind)};
}

VectorField potential_field(const FluxSource& src, const QuadratureConfig& cfg) {
    return src.kind == SourceKind::infinite_solenoid ? analytic_potential_field(src)
                                                     : numeric_potential_field(src, cfg);
}

Vec3 curl_fd(const VectorField& F, const Vec3& x, double h) {
    const double inv = 1.0 / (2.0 * h);
    const Vec3 dx = (F(x + Vec3{h, 0.0, 0.0}) - F(x - Vec3{h, 0.0, 0.0})) * inv;
    const Vec3 dy = (F(x + Vec3{0.0, h, 0.0}) - F(x - Vec3{0.0, h, 0.0})) * inv;
    const Vec3 dz = (F(x + Vec3{0.0, 0.0, h}) - F(x - Vec3{0.0, 0.0, h})) * inv;
    return {dy.z - dz.y, dz.x - dx.z, dx.y - dy.x};
}

double div_fd(const VectorField& F, const Vec3& x, double h) {
    const double inv = 1.0 / (2.0 * h);
    const double dxx = (F(x + Vec3{h, 0.0, 0.0}).x - F(x - Vec3{h, 0.0, 0.0}).x) * inv;
    const double dyy = (F(x + Vec3{0.0, h, 0.0}).y - F(x - Vec3{0.0, h, 0.0}).y) * inv;
    const double dzz = (F(x + Vec3{0.0, 0.0, h}).z - F(x - Vec3{0.0, 0.0, h}).z) * inv;
    return dxx + dyy + dzz;
}

double default_fd_step(const FluxSource& src) { return 1e-4 * cross_section_radius(src); }

double loop_integral_A(const VectorField& F, const BeamPath& loop, const QuadratureConfig& cfg) {
    if (loop.vertices.empty() || !(loop.vertices.front() == loop.vertices.back())) {
        throw std::invalid_argument("loop_integral_A requires a closed path (first vertex == last vertex)");
    }
    const IntegralResult res = integrate_polyline(F.eval, loop, cfg);
    if (!res.converged) {
        throw std::runtime_error("loop integral did not converge");
    }
    return res.value;
}

VectorField apply_gauge(const VectorField& F, const GaugeFunction& chi) {
    VectorField out;
    out.eval = [base = F.eval, grad = chi.gradient](const Vec3& x) { return base(x) + grad(x); };
    out.units = F.units;
    out.provenance = FieldProvenance::gauge_shifted;
    out.description = F.description + " + grad(" + chi.description + ")";
    return out;
}

BeamPath circle_loop(const Vec3& center, const Vec3& normal, double radius, int sides, double speed) {
    if (sides < 3) {
        throw std::invalid_argument("circle_loop needs at least 3 sides");
    }
    const Vec3 n = normalized(normal);
    const Vec3 e1 = any_perpendicular(n);
    const Vec3 e2 = cross(n, e1);
    BeamPath path;
    path.speed = speed;
    for (int k = 0; k < sides; ++k) {
        const double a = 2.0 * std::numbers::pi * k / sides;
        path.vertices.push_back(center + (e1 * std::cos(a) + e2 * std::sin(a)) * radius);
    }
    path.vertices.push_back(path.vertices.front());
    return path;
}

}  // namespace abenergy
