#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "lipext/error.hpp"
#include "lipext/extension.hpp"
#include "lipext/graph.hpp"
#include "lipext/kpoint.hpp"

namespace lipext {

inline constexpr double kDefaultIterateTol = 1e-10;
inline constexpr std::size_t kDefaultMaxSweeps = 100000;

/// Centroid of the boundary values.
inline Point boundary_centroid(const Graph& g) {
    Point c(g.value_dim(), 0.0);
    for (std::size_t b : g.boundary())
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += g.boundary_value(b)[k];
    for (double& v : c) v /= static_cast<double>(g.boundary().size());
    return c;
}

/// Repeated local replacement u(x) <- K(u, S(x))(x), sweeping interior
/// vertices in id order from the boundary centroid. Stops once a sweep moves
/// no value by `tol` or more; converged additionally requires the final
/// residual to be within 10 * tol.
inline ExtensionResult iterate_tight(const Graph& g, double tol = kDefaultIterateTol,
                                     std::size_t max_iter = kDefaultMaxSweeps) {
    ExtensionResult result;
    result.values = extend_with(g, boundary_centroid(g));
    auto& u = result.values;
    IterationReport report;
    bool settled = false;
    while (report.sweeps < max_iter) {
        double moved = 0.0;
        for (std::size_t x : g.interior()) {
            const auto [values, dists] = neighborhood_samples(g, u, x);
            auto next = kpoint_vector(values, dists).point;
            moved = std::max(moved, distance(next, u[x]));
            u[x] = std::move(next);
        }
        ++report.sweeps;
        report.residual_history.push_back(moved);
        if (moved < tol) {
            settled = true;
            break;
        }
    }
    report.final_residual = residual(g, u);
    report.converged = settled && report.final_residual <= 10.0 * tol;
    result.residual = report.final_residual;
    result.converged = report.converged;
    result.iteration = std::move(report);
    return result;
}

/// Replaces u(x) by K(u, S(x))(x) and reports whether the result is tighter
/// than u. Requires the replacement to move u(x) by more than `tol` relative
/// to the boundary value diameter.
inline bool local_replacement_tightens(const Graph& g, const VertexFunction& u, std::size_t x, double tol = 1e-12) {
    check_function(g, u);
    if (x >= g.vertex_count()) throw Error(ErrorCode::UnknownVertex, "vertex index " + std::to_string(x));
    if (g.is_boundary(x)) throw Error(ErrorCode::BoundaryVertex, g.id(x));
    const auto k = neighborhood_kpoint(g, u, x);
    if (distance(k.point, u[x]) <= tol * value_scale(g))
        throw Error(ErrorCode::InvalidArgument, "u is already optimal at " + g.id(x));
    VertexFunction v = u;
    v[x] = k.point;
    return is_tighter(g, v, u);
}

} // namespace lipext
