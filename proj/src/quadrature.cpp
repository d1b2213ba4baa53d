#include "abenergy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace abenergy {
namespace {

constexpr double kPi = std::numbers::pi;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule make_gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

template <std::size_t D>
const GaussRule& rule_for_dimension() {
    // Order 8 in 1D, order 5 per axis in 3D (125 nodes per cell).
    static const GaussRule rule = make_gauss_legendre(D == 1 ? 8 : 5);
    return rule;
}

double magnitude(double v) { return std::abs(v); }
double magnitude(const Vec3& v) { return norm(v); }
bool finite_value(double v) { return std::isfinite(v); }
bool finite_value(const Vec3& v) { return is_finite(v); }

}  // namespace

ValidationIssues validate_quadrature(const QuadratureConfig& cfg, const std::string& prefix) {
    ValidationIssues issues;
    if (!(cfg.rel_tol > 0.0) || !std::isfinite(cfg.rel_tol)) {
        issues.push_back({prefix + ".rel_tol", "must be > 0"});
    }
    if (!(cfg.abs_tol >= 0.0) || !std::isfinite(cfg.abs_tol)) {
        issues.push_back({prefix + ".abs_tol", "must be >= 0"});
    }
    if (cfg.max_subdivisions < 1) {
        issues.push_back({prefix + ".max_subdivisions", "must be >= 1"});
    }
    return issues;
}

// -----------------------------------------------------------------------------
// Region3
// -----------------------------------------------------------------------------

Region3 Region3::cylinder(const Vec3& center, const Vec3& axis, double radius, double axial_lo, double axial_hi) {
    Region3 r;
    r.shape = Shape::cylinder;
    r.center = center;
    r.axis = axis;
    r.e1 = any_perpendicular(axis);
    r.e2 = cross(axis, r.e1);
    r.radius = radius;
    r.axial_lo = axial_lo;
    r.axial_hi = axial_hi;
    r.axial_anchor = std::isfinite(axial_lo) && std::isfinite(axial_hi) ? 0.5 * (axial_lo + axial_hi) : 0.0;
    r.axial_scale = radius;
    return r;
}

Region3 Region3::torus(const Vec3& center, const Vec3& axis, double major_radius, double minor_radius) {
    Region3 r;
    r.shape = Shape::torus;
    r.center = center;
    r.axis = axis;
    r.e1 = any_perpendicular(axis);
    r.e2 = cross(axis, r.e1);
    r.radius = major_radius;
    r.minor_radius = minor_radius;
    return r;
}

Region3 Region3::oriented_toward(const Vec3& p) const {
    Region3 r = *this;
    const Vec3 d = p - center;
    const double z = dot(d, axis);
    const Vec3 perp = d - axis * z;
    const double rho = norm(perp);
    if (rho > 0.0) {
        r.e1 = perp / rho;
        r.e2 = cross(axis, r.e1);
    }
    if (shape == Shape::cylinder) {
        r.axial_anchor = z;
        r.axial_scale = std::max(radius, rho);
    }
    return r;
}

std::pair<Region3, Region3> Region3::split_at_midplane() const {
    Region3 lower = *this;
    Region3 upper = *this;
    if (shape == Shape::cylinder) {
        lower.axial_hi = std::min(axial_hi, 0.0);
        upper.axial_lo = std::max(axial_lo, 0.0);
    } else {
        lower.angle_lo = -kPi;
        lower.angle_hi = 0.0;
        upper.angle_lo = 0.0;
        upper.angle_hi = kPi;
    }
    return {lower, upper};
}

double Region3::volume() const {
    const double angle_fraction = (angle_hi - angle_lo) / (2.0 * kPi);
    if (shape == Shape::cylinder) {
        return kPi * radius * radius * (axial_hi - axial_lo) * angle_fraction;
    }
    return 2.0 * kPi * kPi * radius * minor_radius * minor_radius * angle_fraction;
}

std::array<double, 3> Region3::parameter_lo() const {
    if (shape == Shape::cylinder) {
        return {std::atan((axial_lo - axial_anchor) / axial_scale), 0.0, angle_lo};
    }
    return {-kPi, 0.0, angle_lo};
}

std::array<double, 3> Region3::parameter_hi() const {
    if (shape == Shape::cylinder) {
        return {std::atan((axial_hi - axial_anchor) / axial_scale), radius, angle_hi};
    }
    return {kPi, minor_radius, angle_hi};
}

std::array<int, 3> Region3::initial_divisions() const { return {8, 1, 4}; }

Region3::Sample Region3::map(const std::array<double, 3>& u) const {
    if (shape == Shape::cylinder) {
        const double t = std::tan(u[0]);
        const double z = axial_anchor + axial_scale * t;
        const double rho = u[1];
        const Vec3 radial = e1 * std::cos(u[2]) + e2 * std::sin(u[2]);
        return {center + axis * z + radial * rho, axial_scale * (1.0 + t * t) * rho};
    }
    const double s = u[1];
    const double ring = radius + s * std::cos(u[2]);
    const Vec3 radial = e1 * std::cos(u[0]) + e2 * std::sin(u[0]);
    return {center + radial * ring + axis * (s * std::sin(u[2])), s * ring};
}

Region3 region_of(const FluxSource& src, const Vec3& reference) {
    Region3 base;
    switch (src.kind) {
        case SourceKind::infinite_solenoid:
            base = Region3::cylinder(src.center, src.axis, src.radius, -std::numeric_limits<double>::infinity(),
                                     std::numeric_limits<double>::infinity());
            break;
        case SourceKind::finite_solenoid:
            base = Region3::cylinder(src.center, src.axis, src.radius, -0.5 * src.length, 0.5 * src.length);
            break;
        case SourceKind::toroid:
            base = Region3::torus(src.center, src.axis, src.radius, src.minor_radius);
            break;
    }
    return base.oriented_toward(reference);
}

// -----------------------------------------------------------------------------
// Adaptive engine
// -----------------------------------------------------------------------------

namespace detail {

std::vector<Box<3>> initial_boxes(const Region3& region) {
    const auto lo = region.parameter_lo();
    const auto hi = region.parameter_hi();
    const auto div = region.initial_divisions();
    std::vector<Box<3>> boxes;
    for (int i = 0; i < div[0]; ++i) {
        for (int j = 0; j < div[1]; ++j) {
            for (int k = 0; k < div[2]; ++k) {
                const std::array<int, 3> idx{i, j, k};
                Box<3> b{};
                for (int d = 0; d < 3; ++d) {
                    const double w = (hi[d] - lo[d]) / div[d];
                    b.lo[d] = lo[d] + w * idx[d];
                    b.hi[d] = idx[d] + 1 == div[d] ? hi[d] : lo[d] + w * (idx[d] + 1);
                }
                if (b.hi[0] > b.lo[0] && b.hi[1] > b.lo[1] && b.hi[2] > b.lo[2]) {
                    boxes.push_back(b);
                }
            }
        }
    }
    return boxes;
}

template <std::size_t D, class T>
IntegralResultT<T> adaptive_integrate(const ParamIntegrand<D, T>& g, const std::vector<Box<D>>& boxes,
                                      const QuadratureConfig& cfg) {
    constexpr std::size_t kChildren = std::size_t{1} << D;
    const GaussRule& rule = rule_for_dimension<D>();
    const std::size_t n = rule.nodes.size();
    std::size_t total_nodes = 1;
    for (std::size_t d = 0; d < D; ++d) {
        total_nodes *= n;
    }

    auto rule_value = [&](const Box<D>& b) -> T {
        std::array<double, D> mid{};
        std::array<double, D> half{};
        double volume = 1.0;
        for (std::size_t d = 0; d < D; ++d) {
            mid[d] = 0.5 * (b.lo[d] + b.hi[d]);
            half[d] = 0.5 * (b.hi[d] - b.lo[d]);
            volume *= half[d];
        }
        T sum{};
        std::array<double, D> u{};
        for (std::size_t flat = 0; flat < total_nodes; ++flat) {
            std::size_t rest = flat;
            double w = 1.0;
            for (std::size_t d = 0; d < D; ++d) {
                const std::size_t k = rest % n;
                rest /= n;
                u[d] = mid[d] + half[d] * rule.nodes[k];
                w *= rule.weights[k];
            }
            sum += g(u) * w;
        }
        return sum * volume;
    };

    auto child_box = [](const Box<D>& b, std::size_t which) {
        Box<D> c = b;
        for (std::size_t d = 0; d < D; ++d) {
            const double mid = 0.5 * (b.lo[d] + b.hi[d]);
            if ((which >> d) & 1U) {
                c.lo[d] = mid;
            } else {
                c.hi[d] = mid;
            }
        }
        return c;
    };

    struct Cell {
        Box<D> box;
        std::array<T, kChildren> child{};
        T fine{};
        double err{0.0};
        bool leaf{true};
    };

    std::vector<Cell> cells;
    auto make_cell = [&](const Box<D>& b, const T& coarse) {
        Cell c{};
        c.box = b;
        for (std::size_t k = 0; k < kChildren; ++k) {
            c.child[k] = rule_value(child_box(b, k));
            c.fine += c.child[k];
        }
        c.err = magnitude(c.fine - coarse);
        cells.push_back(c);
    };

    for (const auto& b : boxes) {
        make_cell(b, rule_value(b));
    }

    // Max error first; on ties the lower creation index wins.
    auto cmp = [&cells](std::size_t a, std::size_t b) {
        if (cells[a].err != cells[b].err) {
            return cells[a].err < cells[b].err;
        }
        return a > b;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);

    auto exact_totals = [&cells](T& value, double& err) {
        value = T{};
        err = 0.0;
        for (const auto& c : cells) {
            if (c.leaf) {
                value += c.fine;
                err += c.err;
            }
        }
    };

    IntegralResultT<T> result;
    T total{};
    double total_err = 0.0;
    exact_totals(total, total_err);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        heap.push(i);
    }

    std::size_t splits = 0;
    while (true) {
        if (!finite_value(total) || !std::isfinite(total_err)) {
            break;
        }
        if (total_err <= std::max(cfg.rel_tol * magnitude(total), cfg.abs_tol)) {
            exact_totals(total, total_err);
            if (total_err <= std::max(cfg.rel_tol * magnitude(total), cfg.abs_tol)) {
                result.converged = true;
                break;
            }
        }
        if (splits >= cfg.max_subdivisions || heap.empty()) {
            break;
        }
        const std::size_t idx = heap.top();
        heap.pop();
        cells[idx].leaf = false;
        const Box<D> parent_box = cells[idx].box;
        const std::array<T, kChildren> child_values = cells[idx].child;
        T delta = T{} - cells[idx].fine;
        double delta_err = -cells[idx].err;
        for (std::size_t k = 0; k < kChildren; ++k) {
            make_cell(child_box(parent_box, k), child_values[k]);
            delta += cells.back().fine;
            delta_err += cells.back().err;
            heap.push(cells.size() - 1);
        }
        total += delta;
        total_err = std::max(0.0, total_err + delta_err);
        ++splits;
    }

    exact_totals(total, total_err);
    result.value = total;
    result.error_estimate = total_err;
    result.subdivisions_used = splits;
    if (!finite_value(total)) {
        result.converged = false;
    }
    return result;
}

template IntegralResultT<double> adaptive_integrate<1, double>(const ParamIntegrand<1, double>&,
                                                               const std::vector<Box<1>>&, const QuadratureConfig&);
template IntegralResultT<Vec3> adaptive_integrate<1, Vec3>(const ParamIntegrand<1, Vec3>&, const std::vector<Box<1>>&,
                                                           const QuadratureConfig&);
template IntegralResultT<double> adaptive_integrate<3, double>(const ParamIntegrand<3, double>&,
                                                               const std::vector<Box<3>>&, const QuadratureConfig&);
template IntegralResultT<Vec3> adaptive_integrate<3, Vec3>(const ParamIntegrand<3, Vec3>&, const std::vector<Box<3>>&,
                                                           const QuadratureConfig&);

}  // namespace detail

// -----------------------------------------------------------------------------
// One-dimensional front ends
// -----------------------------------------------------------------------------

IntegralResult integrate_polyline(const std::function<Vec3(const Vec3&)>& f, const BeamPath& path,
                                  const QuadratureConfig& cfg) {
    throw_if_invalid(validate_path(path));
    const auto& v = path.vertices;
    const std::size_t segments = v.size() - 1;
    std::vector<detail::Box<1>> boxes;
    boxes.reserve(segments);
    for (std::size_t s = 0; s < segments; ++s) {
        boxes.push_back({{static_cast<double>(s)}, {static_cast<double>(s + 1)}});
    }
    // Gauss nodes are interior, so floor() always lands in the owning segment.
    detail::ParamIntegrand<1, double> g = [&](const std::array<double, 1>& s) {
        const auto k = std::min(static_cast<std::size_t>(std::floor(s[0])), segments - 1);
        const double t = s[0] - static_cast<double>(k);
        const Vec3 dl = v[k + 1] - v[k];
        return dot(f(v[k] + dl * t), dl);
    };
    return detail::adaptive_integrate<1, double>(g, boxes, cfg);
}

IntegralResult integrate_time(const std::function<double(double)>& g, double t0, double t1,
                              const QuadratureConfig& cfg) {
    if (!(t0 < t1)) {
        throw std::invalid_argument("integrate_time requires t0 < t1");
    }
    return integrate_piecewise(g, {t0, t1}, cfg);
}

IntegralResult integrate_piecewise(const std::function<double(double)>& g, const std::vector<double>& breakpoints,
                                   const QuadratureConfig& cfg) {
    if (breakpoints.size() < 2) {
        throw std::invalid_argument("integrate_piecewise needs at least two breakpoints");
    }
    std::vector<detail::Box<1>> boxes;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i - 1] < breakpoints[i])) {
            throw std::invalid_argument("integrate_piecewise breakpoints must be strictly increasing");
        }
        boxes.push_back({{breakpoints[i - 1]}, {breakpoints[i]}});
    }
    detail::ParamIntegrand<1, double> h = [&g](const std::array<double, 1>& t) { return g(t[0]); };
    return detail::adaptive_integrate<1, double>(h, boxes, cfg);
}

}  // namespace abenergy
