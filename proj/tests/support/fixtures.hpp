#pragma once

// Seeded random corpora and brute-force oracles shared by the unit tests and
// the acceptance binary. Nothing here is used by the library itself.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "lipext/lipext.hpp"

namespace lipext::fixtures {

inline double uniform(std::mt19937_64& rng) { return detail::unit_real(rng); }

inline Point random_point(std::mt19937_64& rng, std::size_t dim) {
    Point p(dim);
    for (double& c : p) c = uniform(rng);
    return p;
}

/// Random connected graph with |V| in [2, max_vertices], unit-square positions,
/// |Omega| in [1, |V| / 2] and boundary values uniform in [0, 1]^m.
inline Graph random_graph(std::uint64_t seed, std::size_t value_dim, std::size_t max_vertices = 60) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 2 + detail::below(rng, max_vertices - 1);
    const std::size_t extra = detail::below(rng, n + 1);
    BoundaryFunction f;
    f.kind = BoundaryFunction::Kind::Uniform;
    f.dim = value_dim;
    return Graph::build(make_random(n, rng(), extra, f));
}

/// Random K-point instance: N samples in [0,1]^n with values in [0,1]^m and a
/// query point away from every sample.
struct KPointInstance {
    LabeledPointSet samples;
    Point query;
};

inline KPointInstance random_kpoint_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t count) {
    KPointInstance inst;
    for (std::size_t i = 0; i < count; ++i) {
        inst.samples.points.push_back(random_point(rng, n));
        inst.samples.values.push_back(random_point(rng, m));
    }
    for (;;) {
        inst.query = random_point(rng, n);
        const auto d = sample_distances(inst.samples, inst.query);
        if (*std::min_element(d.begin(), d.end()) > 1e-3) break;
    }
    return inst;
}

/// Scalar Kirszbraun value by enumerating every sample pair: the largest pair
/// slope is lambda and its weighted midpoint is the value.
inline std::pair<double, double> pair_enumeration(std::span<const Point> values, std::span<const double> dists) {
    if (values.size() == 1) return {0.0, values[0][0]};
    double lambda = -1.0;
    double value = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            const double fi = values[i][0];
            const double fj = values[j][0];
            const double slope = std::abs(fi - fj) / (dists[i] + dists[j]);
            if (slope > lambda) {
                lambda = slope;
                value = (dists[j] * fi + dists[i] * fj) / (dists[i] + dists[j]);
            }
        }
    return {lambda, value};
}

/// Max over interior vertices of |u(x) - pair_enumeration(S(x))|.
inline double pair_enumeration_residual(const Graph& g, const VertexFunction& u) {
    double worst = 0.0;
    for (std::size_t x : g.interior()) {
        const auto [values, dists] = neighborhood_samples(g, u, x);
        worst = std::max(worst, std::abs(u[x][0] - pair_enumeration(values, dists).second));
    }
    return worst;
}

/// All-pairs geodesic distances by Floyd-Warshall, independent of the Dijkstra code.
inline std::vector<std::vector<double>> floyd_warshall(const Graph& g) {
    const std::size_t n = g.vertex_count();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& e : g.edges()) {
        d[e.a][e.b] = std::min(d[e.a][e.b], e.length);
        d[e.b][e.a] = std::min(d[e.b][e.a], e.length);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

/// A labeled vertex set produced by random interior values in [0, 1]^m.
inline VertexFunction random_function(const Graph& g, std::mt19937_64& rng) {
    VertexFunction u(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        u[v] = g.is_boundary(v) ? g.boundary_value(v) : random_point(rng, g.value_dim());
    return u;
}

} // namespace lipext::fixtures
