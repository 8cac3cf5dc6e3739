#pragma once

// Graph generators: lattice grids in the unit square, paths, stars and
// seeded random connected graphs, with boundary data from a few fixed rules.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lipext/error.hpp"
#include "lipext/graph.hpp"

namespace lipext {

struct BoundaryFunction {
    enum class Kind { LinearX, LinearY, Constant, Corners, Uniform };
    Kind kind = Kind::LinearX;
    double constant = 0.0;        ///< Constant
    std::size_t dim = 1;          ///< Uniform: value dimension
    std::uint64_t seed = 0;       ///< Uniform: values drawn in [0, 1]^dim

    /// Parses linear-x | linear-y | constant:<v> | corners.
    static BoundaryFunction parse(std::string_view text) {
        BoundaryFunction f;
        if (text == "linear-x") {
            f.kind = Kind::LinearX;
        } else if (text == "linear-y") {
            f.kind = Kind::LinearY;
        } else if (text == "corners") {
            f.kind = Kind::Corners;
        } else if (text.starts_with("constant:")) {
            f.kind = Kind::Constant;
            const std::string number(text.substr(9));
            std::size_t used = 0;
            try {
                f.constant = std::stod(number, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (number.empty() || used != number.size() || !std::isfinite(f.constant))
                throw Error(ErrorCode::BadParams, "bad constant in boundary function '" + std::string(text) + "'");
        } else {
            throw Error(ErrorCode::BadParams, "unknown boundary function '" + std::string(text) + "'");
        }
        return f;
    }
};

namespace detail {

// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
inline double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

inline std::string padded(std::string_view prefix, std::size_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return std::string(prefix) + digits;
}

inline std::size_t digits_of(std::size_t n) { return std::to_string(n).size(); }

// Applies f to every vertex listed in `omega`.
inline void assign_boundary(GraphData& g, const std::vector<std::size_t>& omega, const BoundaryFunction& f) {
    std::mt19937_64 rng(f.seed);
    for (std::size_t i : omega) {
        const auto& v = g.vertices[i];
        const double x = v.pos.empty() ? 0.0 : v.pos[0];
        const double y = v.pos.size() > 1 ? v.pos[1] : 0.0;
        Point value;
        switch (f.kind) {
            case BoundaryFunction::Kind::LinearX: value = {x}; break;
            case BoundaryFunction::Kind::LinearY: value = {y}; break;
            case BoundaryFunction::Kind::Constant: value = {f.constant}; break;
            case BoundaryFunction::Kind::Corners:
                value = {std::clamp(std::round(x), 0.0, 1.0), std::clamp(std::round(y), 0.0, 1.0)};
                break;
            case BoundaryFunction::Kind::Uniform:
                value.resize(f.dim);
                for (double& c : value) c = unit_real(rng);
                break;
        }
        g.boundary[v.id] = std::move(value);
    }
}

} // namespace detail

/// nx-by-ny lattice on the unit square with 4-neighbour edges; the perimeter is the boundary.
inline GraphData make_grid(std::size_t nx, std::size_t ny, const BoundaryFunction& f) {
    if (nx < 2 || ny < 2) throw Error(ErrorCode::BadParams, "grid needs at least 2 x 2 vertices");
    GraphData g;
    const std::size_t width = detail::digits_of(std::max(nx, ny) - 1);
    auto id = [&](std::size_t i, std::size_t j) { return detail::padded("r", j, width) + detail::padded("c", i, width); };
    std::vector<std::size_t> omega;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            if (i == 0 || j == 0 || i + 1 == nx || j + 1 == ny) omega.push_back(g.vertices.size());
            g.vertices.push_back({id(i, j), {static_cast<double>(i) / static_cast<double>(nx - 1),
                                             static_cast<double>(j) / static_cast<double>(ny - 1)}});
            if (i > 0) g.edges.push_back({id(i - 1, j), id(i, j), std::nullopt});
            if (j > 0) g.edges.push_back({id(i, j - 1), id(i, j), std::nullopt});
        }
    detail::assign_boundary(g, omega, f);
    return g;
}

/// n vertices at x = 0, 1, ..., n - 1; the two ends are the boundary.
inline GraphData make_path(std::size_t n, const BoundaryFunction& f) {
    if (n < 2) throw Error(ErrorCode::BadParams, "path needs at least 2 vertices");
    GraphData g;
    const std::size_t width = detail::digits_of(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        g.vertices.push_back({detail::padded("v", i, width), {static_cast<double>(i), 0.0}});
        if (i > 0) g.edges.push_back({g.vertices[i - 1].id, g.vertices[i].id, std::nullopt});
    }
    detail::assign_boundary(g, {0, n - 1}, f);
    return g;
}

/// Centre "c" at the origin joined to `leaves` boundary vertices on the unit circle.
inline GraphData make_star(std::size_t leaves, const BoundaryFunction& f) {
    if (leaves < 1) throw Error(ErrorCode::BadParams, "star needs at least one leaf");
    GraphData g;
    g.vertices.push_back({"c", {0.0, 0.0}});
    std::vector<std::size_t> omega;
    const std::size_t width = detail::digits_of(leaves - 1);
    for (std::size_t k = 0; k < leaves; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(leaves);
        omega.push_back(g.vertices.size());
        g.vertices.push_back({detail::padded("l", k, width), {std::cos(angle), std::sin(angle)}});
        g.edges.push_back({"c", g.vertices.back().id, std::nullopt});
    }
    detail::assign_boundary(g, omega, f);
    return g;
}

/// Connected graph on n uniform points of the unit square: a random spanning
/// tree plus `extra_edges` further distinct edges; the boundary is a random
/// subset of size in [1, max(1, n / 2)]. Fully determined by `seed`.
inline GraphData make_random(std::size_t n, std::uint64_t seed, std::size_t extra_edges, const BoundaryFunction& f) {
    if (n < 2) throw Error(ErrorCode::BadParams, "random graph needs at least 2 vertices");
    std::mt19937_64 rng(seed);
    GraphData g;
    const std::size_t width = detail::digits_of(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = detail::unit_real(rng);
        const double y = detail::unit_real(rng);
        g.vertices.push_back({detail::padded("n", i, width), {x, y}});
    }
    std::set<std::pair<std::size_t, std::size_t>> present;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t j = detail::below(rng, i);
        present.insert({j, i});
        g.edges.push_back({g.vertices[j].id, g.vertices[i].id, std::nullopt});
    }
    const std::size_t max_edges = n * (n - 1) / 2;
    for (std::size_t added = 0, tries = 0; added < extra_edges && present.size() < max_edges && tries < 100 * (extra_edges + 1);
         ++tries) {
        std::size_t a = detail::below(rng, n);
        std::size_t b = detail::below(rng, n);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (!present.insert({a, b}).second) continue;
        g.edges.push_back({g.vertices[a].id, g.vertices[b].id, std::nullopt});
        ++added;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[detail::below(rng, i + 1)]);
    const std::size_t omega_size = 1 + detail::below(rng, std::max<std::size_t>(1, n / 2));
    order.resize(omega_size);
    std::sort(order.begin(), order.end());
    BoundaryFunction seeded = f;
    if (seeded.kind == BoundaryFunction::Kind::Uniform) seeded.seed = rng();
    detail::assign_boundary(g, order, seeded);
    return g;
}

} // namespace lipext
