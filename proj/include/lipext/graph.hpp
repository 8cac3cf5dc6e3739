#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "lipext/error.hpp"
#include "lipext/geometry.hpp"
#include "lipext/kpoint.hpp"

namespace lipext {

struct VertexSpec {
    std::string id;
    Point pos;
};

struct EdgeSpec {
    std::string a;
    std::string b;
    std::optional<double> length;  ///< overrides the Euclidean length when set
};

/// Unvalidated graph description, as read from a graph file or built by a generator.
struct GraphData {
    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;
    std::map<std::string, Point> boundary;
};

enum class Violation {
    EmptyGraph,
    DuplicateId,
    UnknownVertex,
    SelfLoop,
    DuplicateEdge,
    NonPositiveLength,
    Disconnected,
    EmptyBoundary,
    DimensionMismatch,
};

inline std::string_view to_string(Violation v) {
    switch (v) {
        case Violation::EmptyGraph: return "EmptyGraph";
        case Violation::DuplicateId: return "DuplicateId";
        case Violation::UnknownVertex: return "UnknownVertex";
        case Violation::SelfLoop: return "SelfLoop";
        case Violation::DuplicateEdge: return "DuplicateEdge";
        case Violation::NonPositiveLength: return "NonPositiveLength";
        case Violation::Disconnected: return "Disconnected";
        case Violation::EmptyBoundary: return "EmptyBoundary";
        case Violation::DimensionMismatch: return "DimensionMismatch";
    }
    return "Unknown";
}

struct ValidationIssue {
    Violation kind;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const noexcept { return issues.empty(); }
    bool has(Violation kind) const {
        return std::any_of(issues.begin(), issues.end(), [kind](const auto& i) { return i.kind == kind; });
    }
    std::string summary() const {
        std::string out;
        for (const auto& issue : issues) {
            if (!out.empty()) out += "; ";
            out += std::string(to_string(issue.kind)) + " (" + issue.detail + ")";
        }
        return out;
    }
};

/// Lists everything that keeps `data` from being a valid graph: connected,
/// nonempty boundary, no self-loops or repeated edges, positive lengths,
/// uniform position and value dimensions.
inline ValidationReport validate(const GraphData& data) {
    ValidationReport report;
    auto add = [&](Violation kind, std::string detail) { report.issues.push_back({kind, std::move(detail)}); };

    if (data.vertices.empty()) {
        add(Violation::EmptyGraph, "no vertices");
        if (data.boundary.empty()) add(Violation::EmptyBoundary, "boundary set is empty");
        return report;
    }

    std::map<std::string, std::size_t> index;
    const std::size_t pos_dim = data.vertices.front().pos.size();
    for (std::size_t i = 0; i < data.vertices.size(); ++i) {
        const auto& v = data.vertices[i];
        if (!index.emplace(v.id, i).second) add(Violation::DuplicateId, v.id);
        if (v.pos.size() != pos_dim) add(Violation::DimensionMismatch, "position of " + v.id);
    }

    std::vector<std::vector<std::size_t>> adjacency(data.vertices.size());
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : data.edges) {
        const auto ia = index.find(e.a);
        const auto ib = index.find(e.b);
        if (ia == index.end() || ib == index.end()) {
            add(Violation::UnknownVertex, "edge " + e.a + "-" + e.b);
            continue;
        }
        if (e.a == e.b) {
            add(Violation::SelfLoop, e.a);
            continue;
        }
        if (!seen.insert(std::minmax(e.a, e.b)).second) add(Violation::DuplicateEdge, e.a + "-" + e.b);
        double length = 0.0;
        if (e.length) {
            length = *e.length;
        } else if (data.vertices[ia->second].pos.size() == data.vertices[ib->second].pos.size()) {
            length = distance(data.vertices[ia->second].pos, data.vertices[ib->second].pos);
        }
        if (!(length > 0.0) || !std::isfinite(length)) add(Violation::NonPositiveLength, e.a + "-" + e.b);
        adjacency[ia->second].push_back(ib->second);
        adjacency[ib->second].push_back(ia->second);
    }

    std::vector<bool> reached(data.vertices.size(), false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adjacency[v])
            if (!reached[w]) {
                reached[w] = true;
                stack.push_back(w);
            }
    }
    for (std::size_t i = 0; i < reached.size(); ++i)
        if (!reached[i]) {
            add(Violation::Disconnected, "vertex " + data.vertices[i].id + " is unreachable from " +
                                             data.vertices.front().id);
            break;
        }

    if (data.boundary.empty()) add(Violation::EmptyBoundary, "boundary set is empty");
    const std::size_t value_dim = data.boundary.empty() ? 0 : data.boundary.begin()->second.size();
    for (const auto& [id, value] : data.boundary) {
        if (!index.count(id)) add(Violation::UnknownVertex, "boundary vertex " + id);
        if (value.size() != value_dim || value.empty()) add(Violation::DimensionMismatch, "boundary value of " + id);
        for (double c : value)
            if (!std::isfinite(c)) add(Violation::DimensionMismatch, "non-finite boundary value at " + id);
    }
    return report;
}

/// Values on every vertex, indexed like Graph vertices (ascending id order).
using VertexFunction = std::vector<Point>;

/// Immutable connected graph with boundary data. Vertices are stored in
/// ascending id order, so vertex indices double as the deterministic
/// tie-break order.
class Graph {
public:
    struct Neighbor {
        std::size_t vertex;
        std::size_t edge;
        double length;
    };
    struct Edge {
        std::size_t a;  ///< a < b
        std::size_t b;
        double length;
    };

    /// Throws Error(ValidationError) when validate(data) reports any issue.
    static Graph build(GraphData data) {
        const auto report = validate(data);
        if (!report.ok()) throw Error(ErrorCode::ValidationError, report.summary());

        Graph g;
        std::sort(data.vertices.begin(), data.vertices.end(),
                  [](const VertexSpec& x, const VertexSpec& y) { return x.id < y.id; });
        for (auto& v : data.vertices) {
            g.index_.emplace(v.id, g.ids_.size());
            g.ids_.push_back(std::move(v.id));
            g.positions_.push_back(std::move(v.pos));
        }
        for (const auto& e : data.edges) {
            std::size_t a = g.index_.at(e.a);
            std::size_t b = g.index_.at(e.b);
            if (a > b) std::swap(a, b);
            const double length = e.length ? *e.length : distance(g.positions_[a], g.positions_[b]);
            g.edges_.push_back({a, b, length});
        }
        std::sort(g.edges_.begin(), g.edges_.end(),
                  [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
        g.adjacency_.resize(g.ids_.size());
        for (std::size_t k = 0; k < g.edges_.size(); ++k) {
            const auto& e = g.edges_[k];
            g.adjacency_[e.a].push_back({e.b, k, e.length});
            g.adjacency_[e.b].push_back({e.a, k, e.length});
        }
        for (auto& list : g.adjacency_)
            std::sort(list.begin(), list.end(), [](const Neighbor& x, const Neighbor& y) { return x.vertex < y.vertex; });

        g.boundary_value_.resize(g.ids_.size());
        for (auto& [id, value] : data.boundary) g.boundary_value_[g.index_.at(id)] = std::move(value);
        for (std::size_t v = 0; v < g.ids_.size(); ++v) {
            if (g.boundary_value_[v])
                g.boundary_.push_back(v);
            else
                g.interior_.push_back(v);
        }
        g.value_dim_ = g.boundary_value_[g.boundary_.front()]->size();
        return g;
    }

    std::size_t vertex_count() const noexcept { return ids_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t value_dim() const noexcept { return value_dim_; }

    const std::string& id(std::size_t v) const { return ids_.at(v); }
    const Point& position(std::size_t v) const { return positions_.at(v); }

    std::optional<std::size_t> find(std::string_view id) const {
        const auto it = index_.find(std::string(id));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index(std::string_view id) const {
        const auto found = find(id);
        if (!found) throw Error(ErrorCode::UnknownVertex, std::string(id));
        return *found;
    }

    std::span<const Neighbor> neighbors(std::size_t v) const { return adjacency_.at(v); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    bool is_boundary(std::size_t v) const { return boundary_value_.at(v).has_value(); }
    const Point& boundary_value(std::size_t v) const {
        if (!is_boundary(v)) throw Error(ErrorCode::InvalidArgument, ids_.at(v) + " is not a boundary vertex");
        return *boundary_value_[v];
    }
    std::span<const std::size_t> boundary() const noexcept { return boundary_; }
    std::span<const std::size_t> interior() const noexcept { return interior_; }

    /// Back to the raw description (vertices in id order).
    GraphData data() const {
        GraphData out;
        for (std::size_t v = 0; v < ids_.size(); ++v) out.vertices.push_back({ids_[v], positions_[v]});
        for (const auto& e : edges_) out.edges.push_back({ids_[e.a], ids_[e.b], e.length});
        for (std::size_t v : boundary_) out.boundary.emplace(ids_[v], *boundary_value_[v]);
        return out;
    }

private:
    Graph() = default;

    std::vector<std::string> ids_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<Point> positions_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<std::optional<Point>> boundary_value_;
    std::vector<std::size_t> boundary_;
    std::vector<std::size_t> interior_;
    std::size_t value_dim_ = 0;
};

/// S(x): ids adjacent to x, in ascending order.
inline std::vector<std::string> neighborhood(const Graph& g, std::string_view x) {
    std::vector<std::string> out;
    for (const auto& n : g.neighbors(g.index(x))) out.push_back(g.id(n.vertex));
    return out;
}

/// Shortest-path lengths from `source` to every vertex (Dijkstra).
inline std::vector<double> geodesic_distances_from(const Graph& g, std::size_t source) {
    std::vector<double> dist(g.vertex_count(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist.at(source) = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v]) continue;
        for (const auto& n : g.neighbors(v)) {
            const double candidate = d + n.length;
            if (candidate < dist[n.vertex]) {
                dist[n.vertex] = candidate;
                queue.emplace(candidate, n.vertex);
            }
        }
    }
    return dist;
}

inline double geodesic_distance(const Graph& g, std::string_view x, std::string_view y) {
    const std::size_t target = g.index(y);
    return geodesic_distances_from(g, g.index(x))[target];
}

/// Boundary data on Omega, `fill` elsewhere.
inline VertexFunction extend_with(const Graph& g, const Point& fill) {
    VertexFunction u(g.vertex_count(), fill);
    for (std::size_t v : g.boundary()) u[v] = g.boundary_value(v);
    return u;
}

inline void check_function(const Graph& g, const VertexFunction& u) {
    if (u.size() != g.vertex_count())
        throw Error(ErrorCode::DimensionMismatch, "vertex function does not cover every vertex");
    for (const auto& value : u)
        if (value.size() != g.value_dim()) throw Error(ErrorCode::DimensionMismatch, "value dimension differs from boundary data");
}

/// L u(x) = max over neighbours y of |u(y) - u(x)| / length(x, y).
inline double local_lipschitz(const Graph& g, const VertexFunction& u, std::size_t x) {
    if (x >= g.vertex_count()) throw Error(ErrorCode::UnknownVertex, "vertex index " + std::to_string(x));
    if (g.is_boundary(x)) throw Error(ErrorCode::BoundaryVertex, g.id(x));
    double best = 0.0;
    for (const auto& n : g.neighbors(x)) best = std::max(best, distance(u[n.vertex], u[x]) / n.length);
    return best;
}

inline double local_lipschitz(const Graph& g, const VertexFunction& u, std::string_view x) {
    return local_lipschitz(g, u, g.index(x));
}

/// v is tighter than u when the largest local constant where u is worse
/// exceeds the largest local constant where v is worse (max of nothing = 0).
inline bool is_tighter(const Graph& g, const VertexFunction& v, const VertexFunction& u) {
    check_function(g, u);
    check_function(g, v);
    for (std::size_t b : g.boundary())
        if (u[b] != v[b]) throw Error(ErrorCode::BoundaryMismatch, "functions differ at boundary vertex " + g.id(b));
    double u_worse = 0.0;
    double v_worse = 0.0;
    for (std::size_t x : g.interior()) {
        const double lu = local_lipschitz(g, u, x);
        const double lv = local_lipschitz(g, v, x);
        if (lu > lv) u_worse = std::max(u_worse, lu);
        if (lv > lu) v_worse = std::max(v_worse, lv);
    }
    return u_worse > v_worse;
}

/// Neighbour values of x and the corresponding edge lengths.
inline std::pair<std::vector<Point>, std::vector<double>> neighborhood_samples(const Graph& g, const VertexFunction& u,
                                                                               std::size_t x) {
    std::pair<std::vector<Point>, std::vector<double>> out;
    for (const auto& n : g.neighbors(x)) {
        out.first.push_back(u[n.vertex]);
        out.second.push_back(n.length);
    }
    return out;
}

/// K(u, S(x))(x): the scalar formula when m = 1, subset enumeration otherwise.
inline KPointResult neighborhood_kpoint(const Graph& g, const VertexFunction& u, std::size_t x) {
    const auto [values, dists] = neighborhood_samples(g, u, x);
    if (g.value_dim() == 1) return kpoint_scalar(values, dists);
    return kpoint_vector(values, dists);
}

} // namespace lipext
