#pragma once

// Exact scalar Kirszbraun extension on a graph by repeatedly labelling the
// connecting path of largest slope, followed by flooding the dead-end
// components. Also a Gauss-Seidel fixed-point solver used as a cross-check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "lipext/error.hpp"
#include "lipext/extension.hpp"
#include "lipext/graph.hpp"
#include "lipext/kpoint.hpp"

namespace lipext {

/// The growing labelled subgraph: labelled vertices with their values, the
/// edges consumed so far, and the slope chosen at each stage.
struct SubgraphState {
    std::vector<std::optional<double>> labeled;  ///< by vertex index
    std::vector<bool> used_edges;                ///< by edge index
    std::vector<double> stage_slopes;

    static SubgraphState initial(const Graph& g) {
        if (g.value_dim() != 1) throw Error(ErrorCode::MethodUnavailable, "connecting-path method needs scalar data");
        SubgraphState s;
        s.labeled.resize(g.vertex_count());
        s.used_edges.assign(g.edge_count(), false);
        for (std::size_t b : g.boundary()) s.labeled[b] = g.boundary_value(b)[0];
        return s;
    }

    bool is_labeled(std::size_t v) const { return labeled[v].has_value(); }
};

struct ConnectingPath {
    std::vector<std::size_t> vertices;  ///< v_0 .. v_k
    std::vector<std::size_t> edges;     ///< e_1 .. e_k
    double length = 0.0;
    double slope = 0.0;
};

namespace detail {

// Shortest distances from a labelled source along unused edges, passing only
// through unlabelled vertices. Labelled vertices are reached but not expanded.
inline std::vector<double> restricted_distances(const Graph& g, const SubgraphState& state, std::size_t source) {
    std::vector<double> dist(g.vertex_count(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v]) continue;
        if (v != source && state.is_labeled(v)) continue;
        for (const auto& n : g.neighbors(v)) {
            if (state.used_edges[n.edge] || n.vertex == source) continue;
            const double candidate = d + n.length;
            if (candidate < dist[n.vertex]) {
                dist[n.vertex] = candidate;
                queue.emplace(candidate, n.vertex);
            }
        }
    }
    return dist;
}

inline bool has_unused_edge(const Graph& g, const SubgraphState& state, std::size_t v) {
    return std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                       [&](const Graph::Neighbor& n) { return !state.used_edges[n.edge]; });
}

// Among shortest s-t connecting paths, the one whose vertex sequence is
// lexicographically smallest: walk from s, always taking the smallest vertex
// that still lies on a shortest path to t.
inline std::optional<ConnectingPath> smallest_shortest_path(const Graph& g, const SubgraphState& state, std::size_t s,
                                                            std::size_t t, const std::vector<double>& to_t,
                                                            double total) {
    const double slack = 1e-12 * total;
    ConnectingPath path;
    path.vertices.push_back(s);
    std::vector<bool> on_path(g.vertex_count(), false);
    on_path[s] = true;
    double walked = 0.0;
    std::size_t cur = s;
    while (cur != t) {
        std::optional<Graph::Neighbor> next;
        for (const auto& n : g.neighbors(cur)) {
            if (state.used_edges[n.edge] || on_path[n.vertex]) continue;
            if (n.vertex != t && state.is_labeled(n.vertex)) continue;
            const double rest = n.vertex == t ? 0.0 : to_t[n.vertex];
            if (walked + n.length + rest <= total + slack) {
                next = n;
                break;
            }
        }
        if (!next) return std::nullopt;
        walked += next->length;
        cur = next->vertex;
        on_path[cur] = true;
        path.vertices.push_back(cur);
        path.edges.push_back(next->edge);
    }
    path.length = walked;
    return path;
}

// Shortest s-t connecting path recovered from Dijkstra predecessors; used only
// if the greedy walk above is defeated by rounding.
inline ConnectingPath predecessor_path(const Graph& g, const SubgraphState& state, std::size_t s, std::size_t t) {
    std::vector<double> dist(g.vertex_count(), std::numeric_limits<double>::infinity());
    std::vector<std::optional<Graph::Neighbor>> via(g.vertex_count());
    std::vector<std::size_t> parent(g.vertex_count(), s);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[s] = 0.0;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v] || (v != s && state.is_labeled(v))) continue;
        for (const auto& n : g.neighbors(v)) {
            if (state.used_edges[n.edge] || n.vertex == s) continue;
            if (d + n.length < dist[n.vertex]) {
                dist[n.vertex] = d + n.length;
                via[n.vertex] = n;
                parent[n.vertex] = v;
                queue.emplace(dist[n.vertex], n.vertex);
            }
        }
    }
    ConnectingPath path;
    for (std::size_t v = t; v != s; v = parent[v]) {
        path.vertices.push_back(v);
        path.edges.push_back(via[v]->edge);
    }
    path.vertices.push_back(s);
    std::reverse(path.vertices.begin(), path.vertices.end());
    std::reverse(path.edges.begin(), path.edges.end());
    path.length = dist[t];
    return path;
}

} // namespace detail

/// The connecting path of largest slope, or nullopt if none exists. Every pair
/// of labelled vertices is joined by its shortest connecting path; ties in
/// slope go to the smaller endpoint pair, then the smaller vertex sequence.
inline std::optional<ConnectingPath> find_max_slope_connecting_path(const Graph& g, const SubgraphState& state) {
    std::vector<std::size_t> sources;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (state.is_labeled(v) && detail::has_unused_edge(g, state, v)) sources.push_back(v);

    std::vector<std::vector<double>> dist(g.vertex_count());
    for (std::size_t s : sources) dist[s] = detail::restricted_distances(g, state, s);

    std::optional<std::pair<std::size_t, std::size_t>> best;
    double best_slope = -1.0;
    for (std::size_t s : sources)
        for (std::size_t t : sources) {
            if (t <= s || !std::isfinite(dist[s][t])) continue;
            const double slope = std::abs(*state.labeled[t] - *state.labeled[s]) / dist[s][t];
            if (slope > best_slope) {
                best_slope = slope;
                best = {s, t};
            }
        }
    if (!best) return std::nullopt;

    const auto [s, t] = *best;
    auto path = detail::smallest_shortest_path(g, state, s, t, dist[t], dist[s][t]);
    if (!path) path = detail::predecessor_path(g, state, s, t);
    path->slope = best_slope;
    return path;
}

/// Labels the interior of `path` linearly in arc length between its
/// endpoint values and marks its edges used.
inline SubgraphState apply_path(const Graph& g, SubgraphState state, ConnectingPath path) {
    const auto invalid = [](const std::string& why) { return Error(ErrorCode::InvalidPath, why); };
    if (path.vertices.size() < 2 || path.edges.size() + 1 != path.vertices.size())
        throw invalid("a path needs k >= 1 edges joining k + 1 vertices");
    const std::size_t first = path.vertices.front();
    const std::size_t last = path.vertices.back();
    if (first == last) throw invalid("endpoints must differ");
    if (!state.is_labeled(first) || !state.is_labeled(last)) throw invalid("endpoints must be labelled");

    std::vector<bool> seen(g.vertex_count(), false);
    double length = 0.0;
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        const std::size_t v = path.vertices[i];
        if (v >= g.vertex_count() || seen[v]) throw invalid("vertices must be distinct graph vertices");
        seen[v] = true;
        if (i > 0 && i + 1 < path.vertices.size() && state.is_labeled(v))
            throw invalid("interior vertex " + g.id(v) + " is already labelled");
        if (i == 0) continue;
        const std::size_t e = path.edges[i - 1];
        if (e >= g.edge_count() || state.used_edges[e]) throw invalid("edges must be unused graph edges");
        const auto& edge = g.edges()[e];
        if (std::minmax(edge.a, edge.b) != std::minmax(path.vertices[i - 1], v))
            throw invalid("edge does not join consecutive path vertices");
        length += edge.length;
    }

    if (*state.labeled[last] < *state.labeled[first]) {
        std::reverse(path.vertices.begin(), path.vertices.end());
        std::reverse(path.edges.begin(), path.edges.end());
    }
    const double start = *state.labeled[path.vertices.front()];
    const double slope = (*state.labeled[path.vertices.back()] - start) / length;
    double walked = 0.0;
    for (std::size_t i = 1; i + 1 < path.vertices.size(); ++i) {
        walked += g.edges()[path.edges[i - 1]].length;
        state.labeled[path.vertices[i]] = start + slope * walked;
    }
    for (std::size_t e : path.edges) state.used_edges[e] = true;
    state.stage_slopes.push_back(slope);
    return state;
}

/// Every unlabelled component (joined by unused edges) hangs off exactly one
/// labelled vertex and takes that vertex's value.
inline VertexFunction finalize_components(const Graph& g, const SubgraphState& state) {
    VertexFunction u(g.vertex_count());
    std::vector<bool> done(g.vertex_count(), false);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (state.is_labeled(v)) {
            u[v] = {*state.labeled[v]};
            done[v] = true;
        }

    for (std::size_t root = 0; root < g.vertex_count(); ++root) {
        if (done[root]) continue;
        std::vector<std::size_t> component{root};
        std::vector<std::size_t> attachments;
        done[root] = true;
        for (std::size_t head = 0; head < component.size(); ++head)
            for (const auto& n : g.neighbors(component[head])) {
                if (state.is_labeled(n.vertex)) {
                    if (std::find(attachments.begin(), attachments.end(), n.vertex) == attachments.end())
                        attachments.push_back(n.vertex);
                } else if (!done[n.vertex]) {
                    done[n.vertex] = true;
                    component.push_back(n.vertex);
                }
            }
        if (attachments.size() > 1)
            throw Error(ErrorCode::MultipleAttachments,
                        "component of " + g.id(root) + " touches " + g.id(attachments[0]) + " and " + g.id(attachments[1]));
        if (attachments.empty())
            throw Error(ErrorCode::InvalidArgument, "component of " + g.id(root) + " touches no labelled vertex");
        for (std::size_t v : component) u[v] = {*state.labeled[attachments.front()]};
    }
    return u;
}

/// Exact scalar extension: label connecting paths of largest slope until none
/// remain, then fill the dead-end components.
inline ExtensionResult solve_scalar(const Graph& g) {
    auto state = SubgraphState::initial(g);
    while (auto path = find_max_slope_connecting_path(g, state)) state = apply_path(g, std::move(state), std::move(*path));
    ExtensionResult result;
    result.values = finalize_components(g, state);
    result.residual = residual(g, result.values);
    result.converged = true;
    result.stage_slopes = std::move(state.stage_slopes);
    return result;
}

/// Gauss-Seidel sweeps u(x) <- K(u, S(x))(x) in id order from the boundary
/// mean, until a sweep moves no value by `tol` or more. A run that hits
/// `max_iter` sweeps comes back with converged = false.
inline ExtensionResult gauss_seidel_scalar(const Graph& g, double tol = 1e-12, std::size_t max_iter = 100000) {
    if (g.value_dim() != 1) throw Error(ErrorCode::DimensionMismatch, "scalar solver needs m = 1");
    double mean = 0.0;
    for (std::size_t b : g.boundary()) mean += g.boundary_value(b)[0];
    mean /= static_cast<double>(g.boundary().size());

    ExtensionResult result;
    result.values = extend_with(g, {mean});
    IterationReport report;
    auto& u = result.values;
    while (report.sweeps < max_iter) {
        double moved = 0.0;
        for (std::size_t x : g.interior()) {
            const auto [values, dists] = neighborhood_samples(g, u, x);
            const double next = kpoint_scalar(values, dists).point[0];
            moved = std::max(moved, std::abs(next - u[x][0]));
            u[x][0] = next;
        }
        ++report.sweeps;
        report.residual_history.push_back(moved);
        if (moved < tol) {
            report.converged = true;
            break;
        }
    }
    report.final_residual = residual(g, u);
    result.residual = report.final_residual;
    result.converged = report.converged;
    result.iteration = std::move(report);
    return result;
}

} // namespace lipext
