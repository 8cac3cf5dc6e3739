#pragma once

// Distance-geometry primitives: Cayley-Menger determinants, simplex tests,
// barycentric certificates, sphere intersections and the biquadratic in the
// squared Lipschitz ratio that arises from substituting sphere radii into a
// Cayley-Menger determinant.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipext/error.hpp"
#include "lipext/linalg.hpp"

namespace lipext {

using Point = std::vector<double>;

/// Relative threshold on |Gamma| for accepting a point set as a simplex.
inline constexpr double kSimplexTol = 1e-12;
/// Tolerance for barycentric / convex-hull certificates.
inline constexpr double kHullTol = 1e-9;

inline double squared_distance(const Point& a, const Point& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

inline double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

inline double norm(const Point& a) {
    double sum = 0.0;
    for (double v : a) sum += v * v;
    return std::sqrt(sum);
}

class SquaredDistanceMatrix {
public:
    explicit SquaredDistanceMatrix(std::size_t k) : k_(k), d2_(k * k, 0.0) {}

    static SquaredDistanceMatrix from_points(std::span<const Point> points) {
        SquaredDistanceMatrix m(points.size());
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                m.set(i, j, squared_distance(points[i], points[j]));
        return m;
    }

    /// Builds from explicit rows; rejects asymmetric, negative or nonzero-diagonal input.
    static SquaredDistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        SquaredDistanceMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                throw Error(ErrorCode::InvalidArgument, "squared distance matrix must be square");
            if (rows[i][i] != 0.0)
                throw Error(ErrorCode::InvalidArgument, "squared distance matrix needs a zero diagonal");
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (rows[i][j] < 0.0 || !std::isfinite(rows[i][j]))
                    throw Error(ErrorCode::InvalidArgument, "squared distances must be finite and nonnegative");
                if (rows[i][j] != rows[j][i])
                    throw Error(ErrorCode::InvalidArgument, "squared distance matrix must be symmetric");
            }
            for (std::size_t j = i + 1; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
        }
        return m;
    }

    std::size_t size() const noexcept { return k_; }
    double operator()(std::size_t i, std::size_t j) const { return d2_[i * k_ + j]; }

    void set(std::size_t i, std::size_t j, double value) {
        d2_[i * k_ + j] = value;
        d2_[j * k_ + i] = value;
    }

    double max_entry() const {
        double best = 0.0;
        for (double v : d2_) best = std::max(best, v);
        return best;
    }

private:
    std::size_t k_;
    std::vector<double> d2_;
};

/// Determinant of the bordered matrix [[0, 1^T], [1, D]].
inline double cayley_menger(const SquaredDistanceMatrix& m) {
    const std::size_t k = m.size();
    linalg::Matrix bordered(k + 1, k + 1, 1.0);
    bordered(0, 0) = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) bordered(i + 1, j + 1) = m(i, j);
    return linalg::determinant(std::move(bordered));
}

inline double cayley_menger(std::span<const Point> points) {
    return cayley_menger(SquaredDistanceMatrix::from_points(points));
}

/// True iff the k points are affinely independent. The test is
/// |Gamma| > tol * s^(k-1) with s the largest squared pairwise distance,
/// which is invariant under uniform rescaling of the points.
inline bool is_simplex(std::span<const Point> points, double tol = kSimplexTol) {
    const std::size_t k = points.size();
    if (k == 0) return false;
    if (k == 1) return true;
    if (k > points.front().size() + 1) return false;
    const auto m = SquaredDistanceMatrix::from_points(points);
    const double scale = m.max_entry();
    if (scale == 0.0) return false;
    return std::abs(cayley_menger(m)) > tol * std::pow(scale, static_cast<double>(k - 1));
}

namespace detail {

// Edge vectors e_l = v_l - v_0 and their Gram matrix.
struct AffineFrame {
    std::vector<Point> edges;
    linalg::Matrix gram;
};

inline AffineFrame affine_frame(std::span<const Point> vertices) {
    AffineFrame frame;
    const std::size_t k = vertices.size();
    const std::size_t dim = vertices.front().size();
    for (std::size_t l = 1; l < k; ++l) {
        Point e(dim);
        for (std::size_t c = 0; c < dim; ++c) e[c] = vertices[l][c] - vertices[0][c];
        frame.edges.push_back(std::move(e));
    }
    frame.gram = linalg::Matrix(k - 1, k - 1);
    for (std::size_t a = 0; a + 1 < k; ++a)
        for (std::size_t b = 0; b + 1 < k; ++b) {
            double dot = 0.0;
            for (std::size_t c = 0; c < dim; ++c) dot += frame.edges[a][c] * frame.edges[b][c];
            frame.gram(a, b) = dot;
        }
    return frame;
}

inline double max_pairwise_distance(std::span<const Point> points) {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::max(best, squared_distance(points[i], points[j]));
    return std::sqrt(best);
}

inline void require_simplex(std::span<const Point> vertices) {
    if (vertices.empty() || !is_simplex(vertices))
        throw Error(ErrorCode::DegenerateSimplex, "vertices are not affinely independent");
}

} // namespace detail

/// Affine coordinates t with sum(t) = 1 and sum(t_l v_l) = y.
inline std::vector<double> barycentric_coordinates(std::span<const Point> vertices, const Point& y,
                                                   double tol = kHullTol) {
    detail::require_simplex(vertices);
    const std::size_t k = vertices.size();
    const std::size_t dim = y.size();
    if (vertices.front().size() != dim)
        throw Error(ErrorCode::DimensionMismatch, "query and vertices differ in dimension");

    std::vector<double> t(k, 0.0);
    if (k == 1) {
        t[0] = 1.0;
    } else {
        const auto frame = detail::affine_frame(vertices);
        std::vector<double> rhs(k - 1, 0.0);
        for (std::size_t a = 0; a + 1 < k; ++a)
            for (std::size_t c = 0; c < dim; ++c) rhs[a] += frame.edges[a][c] * (y[c] - vertices[0][c]);
        const auto s = linalg::solve(frame.gram, rhs);
        if (!s) throw Error(ErrorCode::DegenerateSimplex, "singular Gram matrix");
        double rest = 1.0;
        for (std::size_t a = 0; a + 1 < k; ++a) {
            t[a + 1] = (*s)[a];
            rest -= (*s)[a];
        }
        t[0] = rest;
    }

    Point rebuilt(dim, 0.0);
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t c = 0; c < dim; ++c) rebuilt[c] += t[l] * vertices[l][c];
    const double scale = std::max({detail::max_pairwise_distance(vertices), distance(y, vertices[0]),
                                   std::numeric_limits<double>::min()});
    if (distance(rebuilt, y) > tol * scale)
        throw Error(ErrorCode::NotInAffineHull, "point is off the affine hull of the simplex");
    return t;
}

/// Non-strict membership: boundary points count as inside.
inline bool in_convex_hull(std::span<const Point> vertices, const Point& y, double tol = kHullTol) {
    std::vector<double> t;
    try {
        t = barycentric_coordinates(vertices, y, tol);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotInAffineHull) return false;
        throw;
    }
    return std::all_of(t.begin(), t.end(), [tol](double v) { return v >= -tol; });
}

/// The point of the affine hull of `centers` at distance radii[l] from every
/// center, if one exists. Sphere equations are differenced against the first
/// center, leaving a linear system in affine coordinates; the first sphere
/// equation is then checked as a residual.
inline std::optional<Point> solve_sphere_intersection(std::span<const Point> centers, std::span<const double> radii,
                                                      double tol = kHullTol) {
    detail::require_simplex(centers);
    if (radii.size() != centers.size())
        throw Error(ErrorCode::DimensionMismatch, "one radius per center is required");
    const std::size_t k = centers.size();
    const std::size_t dim = centers.front().size();

    Point y = centers[0];
    if (k > 1) {
        const auto frame = detail::affine_frame(centers);
        std::vector<double> rhs(k - 1);
        for (std::size_t a = 0; a + 1 < k; ++a)
            rhs[a] = 0.5 * (frame.gram(a, a) - radii[a + 1] * radii[a + 1] + radii[0] * radii[0]);
        const auto s = linalg::solve(frame.gram, rhs);
        if (!s) throw Error(ErrorCode::DegenerateSimplex, "singular Gram matrix");
        for (std::size_t a = 0; a + 1 < k; ++a)
            for (std::size_t c = 0; c < dim; ++c) y[c] += (*s)[a] * frame.edges[a][c];
    }

    double scale = detail::max_pairwise_distance(centers);
    for (double r : radii) scale = std::max(scale, r);
    scale = std::max(scale, std::numeric_limits<double>::min());
    for (std::size_t l = 0; l < k; ++l)
        if (std::abs(distance(y, centers[l]) - radii[l]) > tol * scale) return std::nullopt;
    return y;
}

/// a*lambda^4 + b*lambda^2 + c, i.e. a quadratic in mu = lambda^2.
struct Biquadratic {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double operator()(double lambda) const {
        const double mu = lambda * lambda;
        return (a * mu + b) * mu + c;
    }
    double max_coefficient() const { return std::max({std::abs(a), std::abs(b), std::abs(c)}); }
};

/// Cayley-Menger determinant of (y, values...) with |y - values[l]|^2 replaced
/// by mu * dists[l]^2.
inline double substituted_cayley_menger(std::span<const Point> values, std::span<const double> dists, double mu) {
    const std::size_t k = values.size();
    SquaredDistanceMatrix m(k + 1);
    for (std::size_t l = 0; l < k; ++l) {
        m.set(0, l + 1, mu * dists[l] * dists[l]);
        for (std::size_t j = l + 1; j < k; ++j) m.set(l + 1, j + 1, squared_distance(values[l], values[j]));
    }
    return cayley_menger(m);
}

/// Coefficients of the substituted determinant as a polynomial in mu,
/// recovered exactly from its values at mu = 0, 1, 2.
inline Biquadratic biquadratic_coefficients(std::span<const Point> values, std::span<const double> dists) {
    if (values.size() != dists.size())
        throw Error(ErrorCode::DimensionMismatch, "one distance per value is required");
    if (values.size() < 2) throw Error(ErrorCode::InvalidArgument, "at least two values are required");
    const double g0 = substituted_cayley_menger(values, dists, 0.0);
    const double g1 = substituted_cayley_menger(values, dists, 1.0);
    const double g2 = substituted_cayley_menger(values, dists, 2.0);
    Biquadratic q;
    q.c = g0;
    q.a = 0.5 * (g2 - 2.0 * g1 + g0);
    q.b = g1 - g0 - q.a;
    return q;
}

/// Nonnegative real lambda with q(lambda) = 0, ascending and deduplicated.
/// The identically-zero polynomial reports the single representative root 0.
inline std::vector<double> solve_biquadratic(const Biquadratic& q) {
    constexpr double eps = 1e-14;
    std::vector<double> mus;
    const double scale = q.max_coefficient();
    if (scale == 0.0) return {0.0};

    if (q.a == 0.0) {
        if (q.b != 0.0) mus.push_back(-q.c / q.b);
    } else {
        double disc = q.b * q.b - 4.0 * q.a * q.c;
        if (disc < 0.0 && disc >= -eps * (q.b * q.b + std::abs(4.0 * q.a * q.c))) disc = 0.0;
        if (disc >= 0.0) {
            const double root = std::sqrt(disc);
            const double qq = -0.5 * (q.b + std::copysign(root, q.b));
            if (qq != 0.0) {
                mus.push_back(qq / q.a);
                mus.push_back(q.c / qq);
            } else {
                mus.push_back(0.0);
            }
        }
    }

    std::vector<double> lambdas;
    for (double mu : mus) {
        if (mu < 0.0) continue;
        lambdas.push_back(std::sqrt(mu));
    }
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    return lambdas;
}

} // namespace lipext
