#pragma once

// Result types shared by the scalar and vector solvers, the Kirszbraun
// residual of a vertex function, and the verification report.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipext/error.hpp"
#include "lipext/geometry.hpp"
#include "lipext/graph.hpp"
#include "lipext/kpoint.hpp"

namespace lipext {

struct IterationReport {
    std::size_t sweeps = 0;
    double final_residual = 0.0;
    /// Largest displacement |K(u, S(x))(x) - u(x)| met during each sweep.
    std::vector<double> residual_history;
    bool converged = false;
};

struct ExtensionResult {
    VertexFunction values;
    double residual = 0.0;
    bool converged = true;
    std::optional<std::vector<double>> stage_slopes;  ///< connecting-path method only
    std::optional<IterationReport> iteration;         ///< iterative methods only
};

/// Diameter of the boundary values, or 1 when they all coincide.
inline double value_scale(const Graph& g) {
    double best = 0.0;
    const auto omega = g.boundary();
    for (std::size_t i = 0; i < omega.size(); ++i)
        for (std::size_t j = i + 1; j < omega.size(); ++j)
            best = std::max(best, distance(g.boundary_value(omega[i]), g.boundary_value(omega[j])));
    return best > 0.0 ? best : 1.0;
}

struct ResidualWitness {
    double value = 0.0;
    std::optional<std::size_t> vertex;  ///< interior vertex attaining the maximum
};

inline ResidualWitness residual_with_witness(const Graph& g, const VertexFunction& u) {
    check_function(g, u);
    ResidualWitness out;
    for (std::size_t x : g.interior()) {
        const double r = distance(u[x], neighborhood_kpoint(g, u, x).point);
        if (!out.vertex || r > out.value) {
            out.value = r;
            out.vertex = x;
        }
    }
    return out;
}

/// max over interior x of |u(x) - K(u, S(x))(x)|; 0 when every vertex is on the boundary.
inline double residual(const Graph& g, const VertexFunction& u) { return residual_with_witness(g, u).value; }

/// Membership of y in the convex hull of a finite point cloud, decided by
/// searching for a simplex of at most m + 1 cloud points containing y.
inline bool in_hull_of(std::span<const Point> cloud, const Point& y, double tol) {
    std::vector<Point> distinct;
    for (const auto& p : cloud)
        if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
    if (distinct.empty()) return false;
    const std::size_t max_size = std::min(distinct.size(), y.size() + 1);
    for (std::size_t k = 1; k <= max_size; ++k) {
        const bool hit = detail::for_each_combination(distinct.size(), k, [&](std::span<const std::size_t> subset) {
            const auto vertices = detail::gather<Point>(distinct, subset);
            if (k == 1) {
                double scale = 1.0;
                for (const auto& p : distinct) scale = std::max(scale, norm(p));
                return distance(vertices[0], y) <= tol * scale;
            }
            if (!is_simplex(vertices)) return false;
            return in_convex_hull(vertices, y, tol);
        });
        if (hit) return true;
    }
    return false;
}

struct CheckOutcome {
    bool pass = true;
    double value = 0.0;                ///< measured quantity
    double bound = 0.0;                ///< threshold it was compared against
    std::vector<std::string> witness;  ///< offending vertex ids (first failure)
};

struct VerificationReport {
    CheckOutcome boundary;                      ///< u = f on Omega
    CheckOutcome residual;                      ///< Kirszbraun equation at interior vertices
    std::optional<CheckOutcome> max_principle;  ///< scalar data only
    CheckOutcome geodesic;                      ///< value: sup ratio over V x V, bound: over Omega x Omega
    std::optional<CheckOutcome> hull;           ///< vector data only

    bool pass() const {
        return boundary.pass && residual.pass && (!max_principle || max_principle->pass) && geodesic.pass &&
               (!hull || hull->pass);
    }
};

/// Tolerance used by verify_extension for the boundary-hull check on vector data.
inline constexpr double kHullCheckTol = 1e-8;

/// Checks u against the extension properties. Scalar data: residual, maximum
/// principle and the geodesic Lipschitz bound. Vector data: residual and
/// membership of every value in the convex hull of the boundary values (the
/// geodesic ratio is reported but not asserted). Residual and bounds use `tol`
/// relative to the boundary value diameter.
inline VerificationReport verify_extension(const Graph& g, const VertexFunction& u, double tol = kCertificateTol) {
    check_function(g, u);
    VerificationReport report;
    const double scale = value_scale(g);
    const bool scalar = g.value_dim() == 1;

    for (std::size_t b : g.boundary())
        if (u[b] != g.boundary_value(b)) {
            report.boundary.pass = false;
            report.boundary.value = std::max(report.boundary.value, distance(u[b], g.boundary_value(b)));
            if (report.boundary.witness.empty()) report.boundary.witness.push_back(g.id(b));
        }

    const auto res = residual_with_witness(g, u);
    report.residual.value = res.value;
    report.residual.bound = tol * scale;
    report.residual.pass = res.value <= report.residual.bound;
    if (!report.residual.pass) report.residual.witness.push_back(g.id(*res.vertex));

    if (scalar) {
        double lo = g.boundary_value(g.boundary().front())[0];
        double hi = lo;
        for (std::size_t b : g.boundary()) {
            lo = std::min(lo, g.boundary_value(b)[0]);
            hi = std::max(hi, g.boundary_value(b)[0]);
        }
        CheckOutcome mp;
        mp.bound = tol * scale;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            const double excess = std::max(lo - u[v][0], u[v][0] - hi);
            if (excess > mp.value || v == 0) mp.value = excess;
            if (excess > mp.bound) {
                mp.pass = false;
                if (mp.witness.empty()) mp.witness.push_back(g.id(v));
            }
        }
        report.max_principle = mp;
    }

    double ratio_all = 0.0;
    double ratio_omega = 0.0;
    std::vector<std::string> worst_pair;
    for (std::size_t x = 0; x < g.vertex_count(); ++x) {
        const auto dist = geodesic_distances_from(g, x);
        for (std::size_t y = x + 1; y < g.vertex_count(); ++y) {
            const double ratio = distance(u[x], u[y]) / dist[y];
            if (ratio > ratio_all) {
                ratio_all = ratio;
                worst_pair = {g.id(x), g.id(y)};
            }
            if (g.is_boundary(x) && g.is_boundary(y))
                ratio_omega = std::max(ratio_omega, distance(g.boundary_value(x), g.boundary_value(y)) / dist[y]);
        }
    }
    report.geodesic.value = ratio_all;
    report.geodesic.bound = ratio_omega + tol * std::max(1.0, ratio_omega);
    if (scalar && ratio_all > report.geodesic.bound) {
        report.geodesic.pass = false;
        report.geodesic.witness = worst_pair;
    }

    if (!scalar) {
        std::vector<Point> cloud;
        for (std::size_t b : g.boundary()) cloud.push_back(g.boundary_value(b));
        CheckOutcome hull;
        hull.bound = kHullCheckTol;
        for (std::size_t v = 0; v < g.vertex_count(); ++v)
            if (!in_hull_of(cloud, u[v], kHullCheckTol)) {
                hull.pass = false;
                hull.value += 1.0;
                if (hull.witness.empty()) hull.witness.push_back(g.id(v));
            }
        report.hull = hull;
    }
    return report;
}

} // namespace lipext
