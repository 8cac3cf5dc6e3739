#pragma once

// Pointwise Kirszbraun value K(f,S)(x) and optimal ratio lambda(f,S)(x).
//
// All routines have a core form taking the sample values f_i and the
// distances d_i = |x - p_i| directly, because graph neighbourhoods carry edge
// lengths rather than positions. The LabeledPointSet overloads compute the
// distances from a query point and forward.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lipext/error.hpp"
#include "lipext/geometry.hpp"

namespace lipext {

/// Samples p_i in R^n with values f_i in R^m.
struct LabeledPointSet {
    std::vector<Point> points;
    std::vector<Point> values;

    std::size_t size() const noexcept { return points.size(); }
    std::size_t position_dim() const { return points.empty() ? 0 : points.front().size(); }
    std::size_t value_dim() const { return values.empty() ? 0 : values.front().size(); }

    void validate() const {
        if (points.empty()) throw Error(ErrorCode::InvalidArgument, "point set is empty");
        if (points.size() != values.size())
            throw Error(ErrorCode::DimensionMismatch, "one value per point is required");
        for (const auto& p : points)
            if (p.size() != position_dim())
                throw Error(ErrorCode::DimensionMismatch, "positions differ in dimension");
        for (const auto& v : values)
            if (v.size() != value_dim() || v.empty())
                throw Error(ErrorCode::DimensionMismatch, "values differ in dimension");
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (points[i] == points[j]) throw Error(ErrorCode::InvalidArgument, "sample positions must be distinct");
    }
};

struct KPointResult {
    double lambda = 0.0;
    Point point;
    std::vector<std::size_t> active;  ///< ascending sample indices
    double max_violation = 0.0;       ///< max_i |point - f_i| - lambda d_i
    std::vector<double> hull_coords;  ///< barycentric coordinates of point w.r.t. active values
};

/// Relative tolerances shared by the solvers and certificates.
inline constexpr double kCertificateTol = 1e-9;
inline constexpr double kConstantDataTol = 1e-14;

/// Largest difference quotient over distinct sample pairs; 0 for one sample.
inline double lip_constant(const LabeledPointSet& s) {
    double best = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            best = std::max(best, distance(s.values[i], s.values[j]) / distance(s.points[i], s.points[j]));
    return best;
}

inline std::vector<double> sample_distances(const LabeledPointSet& s, const Point& x) {
    s.validate();
    if (x.size() != s.position_dim())
        throw Error(ErrorCode::DimensionMismatch, "query dimension differs from sample positions");
    std::vector<double> d(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        d[i] = distance(x, s.points[i]);
        if (d[i] == 0.0) throw Error(ErrorCode::QueryCoincidesWithSample, "query equals sample " + std::to_string(i));
    }
    return d;
}

namespace detail {

inline void check_inputs(std::span<const Point> values, std::span<const double> dists) {
    if (values.empty()) throw Error(ErrorCode::InvalidArgument, "no samples");
    if (values.size() != dists.size()) throw Error(ErrorCode::DimensionMismatch, "one distance per value is required");
    for (const auto& v : values)
        if (v.size() != values.front().size()) throw Error(ErrorCode::DimensionMismatch, "values differ in dimension");
    for (double d : dists) {
        if (d == 0.0) throw Error(ErrorCode::QueryCoincidesWithSample, "query coincides with a sample");
        if (!(d > 0.0) || !std::isfinite(d)) throw Error(ErrorCode::InvalidArgument, "distances must be positive");
    }
}

inline double certificate_scale(double lambda, std::span<const double> dists) {
    const double s = lambda * *std::max_element(dists.begin(), dists.end());
    return s > 0.0 ? s : 1.0;
}

inline double max_violation(std::span<const Point> values, std::span<const double> dists, double lambda,
                            const Point& point) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i)
        worst = std::max(worst, distance(point, values[i]) - lambda * dists[i]);
    return worst;
}

inline KPointResult singleton(std::span<const Point> values, std::span<const double> dists, std::size_t index) {
    KPointResult r;
    r.lambda = 0.0;
    r.point = values[index];
    r.active = {index};
    r.hull_coords = {1.0};
    r.max_violation = max_violation(values, dists, 0.0, r.point);
    return r;
}

// Spread of the values around the first one, and a magnitude to compare it with.
inline bool values_coincide(std::span<const Point> values) {
    double spread = 0.0;
    double magnitude = 0.0;
    for (const auto& v : values) {
        spread = std::max(spread, distance(v, values.front()));
        magnitude = std::max(magnitude, norm(v));
    }
    return spread <= kConstantDataTol * std::max(magnitude, 1.0);
}

// Values and distances rescaled to unit value diameter and unit max distance,
// with values centred on the first sample. lambda_original = lambda * ratio.
struct Normalized {
    std::vector<Point> values;
    std::vector<double> dists;
    Point shift;
    double value_scale = 1.0;
    double dist_scale = 1.0;

    double ratio() const { return value_scale / dist_scale; }

    Point restore(const Point& y) const {
        Point out(y.size());
        for (std::size_t c = 0; c < y.size(); ++c) out[c] = y[c] * value_scale + shift[c];
        return out;
    }
};

inline Normalized normalize(std::span<const Point> values, std::span<const double> dists) {
    Normalized n;
    n.shift = values.front();
    n.value_scale = max_pairwise_distance(values);
    if (n.value_scale == 0.0) n.value_scale = 1.0;
    n.dist_scale = *std::max_element(dists.begin(), dists.end());
    for (const auto& v : values) {
        Point w(v.size());
        for (std::size_t c = 0; c < v.size(); ++c) w[c] = (v[c] - n.shift[c]) / n.value_scale;
        n.values.push_back(std::move(w));
    }
    for (double d : dists) n.dists.push_back(d / n.dist_scale);
    return n;
}

// Sample order used for enumeration: by value (lexicographic), then distance.
// Makes the result independent of the order samples are supplied in.
inline std::vector<std::size_t> canonical_order(std::span<const Point> values, std::span<const double> dists) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return dists[a] < dists[b];
    });
    return order;
}

// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order
// until visit returns true.
template <class Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        if (visit(std::as_const(idx))) return true;
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) return false;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Newton refinement of a root mu of the substituted determinant, using the
// equivalent residual |y(mu) - v_0|^2 - mu d_0^2 where y(mu) is the affine
// hull point satisfying the differenced sphere equations (affine in mu).
inline double polish_root(std::span<const Point> vertices, std::span<const double> dists, double mu) {
    const std::size_t k = vertices.size();
    const std::size_t dim = vertices.front().size();
    const auto frame = affine_frame(vertices);
    std::vector<double> rhs0(k - 1), rhs1(k - 1);
    for (std::size_t a = 0; a + 1 < k; ++a) {
        rhs0[a] = 0.5 * frame.gram(a, a);
        rhs1[a] = -0.5 * (dists[a + 1] * dists[a + 1] - dists[0] * dists[0]);
    }
    const auto s0 = linalg::solve(frame.gram, rhs0);
    const auto s1 = linalg::solve(frame.gram, rhs1);
    if (!s0 || !s1) return mu;
    Point w0(dim, 0.0), w1(dim, 0.0);
    for (std::size_t a = 0; a + 1 < k; ++a)
        for (std::size_t c = 0; c < dim; ++c) {
            w0[c] += (*s0)[a] * frame.edges[a][c];
            w1[c] += (*s1)[a] * frame.edges[a][c];
        }
    const double d0sq = dists[0] * dists[0];
    for (int iter = 0; iter < 3; ++iter) {
        double g = -mu * d0sq;
        double dg = -d0sq;
        for (std::size_t c = 0; c < dim; ++c) {
            const double y = w0[c] + mu * w1[c];
            g += y * y;
            dg += 2.0 * w1[c] * y;
        }
        if (dg == 0.0 || !std::isfinite(g)) break;
        const double next = mu - g / dg;
        if (!(next >= 0.0) || !std::isfinite(next)) break;
        mu = next;
    }
    return mu;
}

template <class T>
std::vector<T> gather(std::span<const T> items, std::span<const std::size_t> idx) {
    std::vector<T> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(items[i]);
    return out;
}

} // namespace detail

/// Candidate from a sample pair: the point on the segment [f_i, f_j] splitting
/// it in ratio d_i : d_j, with lambda = |f_i - f_j| / (d_i + d_j).
inline std::pair<Point, double> pair_candidate(std::span<const Point> values, std::span<const double> dists,
                                               std::size_t i, std::size_t j) {
    if (i == j) throw Error(ErrorCode::InvalidArgument, "pair indices must differ");
    if (dists[i] == 0.0 || dists[j] == 0.0)
        throw Error(ErrorCode::QueryCoincidesWithSample, "query coincides with a sample");
    const double total = dists[i] + dists[j];
    Point y(values[i].size());
    for (std::size_t c = 0; c < y.size(); ++c) y[c] = (dists[j] * values[i][c] + dists[i] * values[j][c]) / total;
    return {std::move(y), distance(values[i], values[j]) / total};
}

inline std::pair<Point, double> pair_candidate(const LabeledPointSet& s, std::size_t i, std::size_t j, const Point& x) {
    const auto d = sample_distances(s, x);
    return pair_candidate(s.values, d, i, j);
}

/// Certificate for (lambda0, point0): equality on `subset`, domination on
/// every sample, and point0 in the convex hull of the subset values.
/// Tolerances are relative to lambda0 * max distance (absolute if that is 0).
inline bool certificate_check(std::span<const Point> values, std::span<const double> dists, double lambda0,
                              const Point& point0, std::span<const std::size_t> subset, double tol = kCertificateTol) {
    if (subset.empty()) throw Error(ErrorCode::InvalidArgument, "certificate subset is empty");
    detail::check_inputs(values, dists);
    const double scale = detail::certificate_scale(lambda0, dists);
    for (std::size_t j : subset)
        if (std::abs(distance(point0, values[j]) - lambda0 * dists[j]) > tol * scale) return false;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (distance(point0, values[i]) > lambda0 * dists[i] + tol * scale) return false;
    const auto vertices = detail::gather(values, subset);
    if (!is_simplex(vertices)) return false;
    return in_convex_hull(vertices, point0, tol);
}

inline bool certificate_check(const LabeledPointSet& s, const Point& x, double lambda0, const Point& point0,
                              std::span<const std::size_t> subset, double tol = kCertificateTol) {
    return certificate_check(s.values, sample_distances(s, x), lambda0, point0, subset, tol);
}

/// Scalar data: the pair maximizing |f_i - f_j| / (d_i + d_j) determines K.
inline KPointResult kpoint_scalar(std::span<const Point> values, std::span<const double> dists) {
    detail::check_inputs(values, dists);
    if (values.front().size() != 1) throw Error(ErrorCode::DimensionMismatch, "scalar K-point needs m = 1");
    const std::size_t n = values.size();
    if (n == 1) return detail::singleton(values, dists, 0);

    std::size_t bi = 0, bj = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double slope = std::abs(values[i][0] - values[j][0]) / (dists[i] + dists[j]);
            if (slope > best) {
                best = slope;
                bi = i;
                bj = j;
            }
        }
    if (best == 0.0) return detail::singleton(values, dists, 0);

    KPointResult r;
    auto [y, lambda] = pair_candidate(values, dists, bi, bj);
    r.lambda = lambda;
    r.point = std::move(y);
    r.active = {bi, bj};
    const double total = dists[bi] + dists[bj];
    r.hull_coords = {dists[bj] / total, dists[bi] / total};
    r.max_violation = detail::max_violation(values, dists, r.lambda, r.point);
    return r;
}

inline KPointResult kpoint_scalar(const LabeledPointSet& s, const Point& x) {
    return kpoint_scalar(s.values, sample_distances(s, x));
}

/// General m: enumerate subsets by size (pairs first, then simplices up to
/// m + 1 samples) and return the first candidate whose certificate holds.
inline KPointResult kpoint_vector(std::span<const Point> values, std::span<const double> dists,
                                  double tol = kCertificateTol) {
    detail::check_inputs(values, dists);
    const std::size_t n = values.size();
    const std::size_t m = values.front().size();
    if (n == 1 || detail::values_coincide(values)) return detail::singleton(values, dists, 0);

    const auto order = detail::canonical_order(values, dists);
    const auto norm = detail::normalize(values, dists);
    const std::vector<Point> cv = detail::gather<Point>(norm.values, order);
    const std::vector<double> cd = detail::gather<double>(norm.dists, order);

    std::optional<KPointResult> found;
    auto accept = [&](std::span<const std::size_t> subset, double lambda, const Point& y) {
        const auto vertices = detail::gather<Point>(cv, subset);
        auto coords = barycentric_coordinates(vertices, y, tol);
        std::vector<std::pair<std::size_t, double>> active;
        for (std::size_t l = 0; l < subset.size(); ++l) active.emplace_back(order[subset[l]], coords[l]);
        std::sort(active.begin(), active.end());
        KPointResult r;
        r.lambda = lambda * norm.ratio();
        r.point = norm.restore(y);
        for (const auto& [index, t] : active) {
            r.active.push_back(index);
            r.hull_coords.push_back(t);
        }
        r.max_violation = detail::max_violation(values, dists, r.lambda, r.point);
        found = std::move(r);
    };

    detail::for_each_combination(n, 2, [&](std::span<const std::size_t> subset) {
        auto [y, lambda] = pair_candidate(cv, cd, subset[0], subset[1]);
        if (lambda == 0.0 || !certificate_check(cv, cd, lambda, y, subset, tol)) return false;
        accept(subset, lambda, y);
        return true;
    });
    if (found) return *found;

    const std::size_t max_size = std::min(m + 1, n);
    for (std::size_t k = 3; k <= max_size && !found; ++k) {
        detail::for_each_combination(n, k, [&](std::span<const std::size_t> subset) {
            const auto vertices = detail::gather<Point>(cv, subset);
            if (!is_simplex(vertices)) return false;
            const auto sub_dists = detail::gather<double>(cd, subset);
            const auto roots = solve_biquadratic(biquadratic_coefficients(vertices, sub_dists));
            for (double root : roots) {
                if (root <= 0.0) continue;
                const double lambda = std::sqrt(detail::polish_root(vertices, sub_dists, root * root));
                std::vector<double> radii(k);
                for (std::size_t l = 0; l < k; ++l) radii[l] = lambda * sub_dists[l];
                const auto y = solve_sphere_intersection(vertices, radii, tol);
                if (!y) continue;
                if (!certificate_check(cv, cd, lambda, *y, subset, tol)) continue;
                accept(subset, lambda, *y);
                return true;
            }
            return false;
        });
    }
    if (!found) throw Error(ErrorCode::NoCertifiedSubset, "no sample subset produced a certified K-point");
    return *found;
}

inline KPointResult kpoint_vector(const LabeledPointSet& s, const Point& x, double tol = kCertificateTol) {
    return kpoint_vector(s.values, sample_distances(s, x), tol);
}

/// Oracle parameters for kpoint_oracle.
struct OracleOptions {
    int bisection_steps = 80;
    int max_cycles = 10000;   ///< cap on projection cycles + Newton steps per feasibility test
    int warmup_cycles = 20;   ///< plain cyclic projections before switching to Newton steps
};

namespace detail {

// Sum of squared distances from y to the balls; zero iff y is in all of them.
inline double ball_gap(std::span<const Point> centers, std::span<const double> radii, const Point& y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double excess = distance(y, centers[i]) - radii[i];
        if (excess > 0.0) sum += excess * excess;
    }
    return sum;
}

inline double ball_violation(std::span<const Point> centers, std::span<const double> radii, const Point& y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i) worst = std::max(worst, distance(y, centers[i]) - radii[i]);
    return worst;
}

// Decides whether the balls Ball(center_i, radius_i) intersect, moving y
// towards the intersection. A few cyclic projections are followed by damped
// Newton steps on the summed squared distance to the balls, whose gradient is
// 2 sum (y - P_i(y)). Plain cyclic projections alone crawl when the balls are
// nearly tangent, which is exactly where bisection spends its last steps.
// Feasible once every ball is violated by at most `threshold`.
inline bool project_onto_balls(std::span<const Point> centers, std::span<const double> radii, Point& y,
                               double threshold, const OracleOptions& options) {
    const std::size_t dim = y.size();
    int budget = options.max_cycles;
    for (int cycle = 0; cycle < options.warmup_cycles && budget > 0; ++cycle, --budget) {
        for (std::size_t i = 0; i < centers.size(); ++i) {
            const double dist = distance(y, centers[i]);
            if (dist <= radii[i]) continue;
            const double shrink = radii[i] / dist;
            for (std::size_t c = 0; c < dim; ++c) y[c] = centers[i][c] + (y[c] - centers[i][c]) * shrink;
        }
        if (ball_violation(centers, radii, y) <= threshold) return true;
    }

    for (; budget > 0; --budget) {
        if (ball_violation(centers, radii, y) <= threshold) return true;
        std::vector<double> grad(dim, 0.0);
        linalg::Matrix hess(dim, dim);
        for (std::size_t i = 0; i < centers.size(); ++i) {
            const double rho = distance(y, centers[i]);
            if (rho <= radii[i]) continue;
            Point u(dim);
            for (std::size_t c = 0; c < dim; ++c) u[c] = (y[c] - centers[i][c]) / rho;
            const double tangential = 1.0 - radii[i] / rho;
            for (std::size_t a = 0; a < dim; ++a) {
                grad[a] += 2.0 * (rho - radii[i]) * u[a];
                for (std::size_t b = 0; b < dim; ++b)
                    hess(a, b) += 2.0 * ((a == b ? tangential : 0.0) + (1.0 - tangential) * u[a] * u[b]);
            }
        }
        double trace = 0.0;
        for (std::size_t a = 0; a < dim; ++a) trace += hess(a, a);
        for (std::size_t a = 0; a < dim; ++a) hess(a, a) += 1e-12 * trace + std::numeric_limits<double>::min();
        std::vector<double> rhs(dim);
        for (std::size_t a = 0; a < dim; ++a) rhs[a] = -grad[a];
        const auto step = linalg::solve(hess, rhs);
        if (!step) return false;

        const double gap = ball_gap(centers, radii, y);
        double slope = 0.0;
        for (std::size_t a = 0; a < dim; ++a) slope += grad[a] * (*step)[a];
        double t = 1.0;
        Point trial(dim);
        bool improved = false;
        while (t > 1e-12) {
            for (std::size_t a = 0; a < dim; ++a) trial[a] = y[a] + t * (*step)[a];
            if (ball_gap(centers, radii, trial) <= gap + 1e-4 * t * slope) {
                improved = true;
                break;
            }
            t *= 0.5;
        }
        if (!improved || trial == y) break;
        y = trial;
    }
    return ball_violation(centers, radii, y) <= threshold;
}

} // namespace detail

/// Independent check of the minimax point: bisection on lambda, deciding
/// nonemptiness of the ball intersection by projections (see project_onto_balls).
inline KPointResult kpoint_oracle(std::span<const Point> values, std::span<const double> dists,
                                  double tol = kCertificateTol, OracleOptions options = {}) {
    detail::check_inputs(values, dists);
    const std::size_t n = values.size();
    if (n == 1) return detail::singleton(values, dists, 0);

    const auto norm = detail::normalize(values, dists);
    const auto& v = norm.values;
    const auto& d = norm.dists;

    // Each f_j is feasible for lambda = max_i |f_j - f_i| / d_i.
    double hi = std::numeric_limits<double>::infinity();
    Point best;
    for (std::size_t j = 0; j < n; ++j) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, distance(v[j], v[i]) / d[i]);
        if (worst < hi) {
            hi = worst;
            best = v[j];
        }
    }
    double lo = 0.0;
    const double threshold = tol / 10.0;
    std::vector<double> radii(n);
    Point y = best;
    for (int step = 0; step < options.bisection_steps && hi - lo > 0.0; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        for (std::size_t i = 0; i < n; ++i) radii[i] = mid * d[i];
        y = best;
        if (detail::project_onto_balls(v, radii, y, threshold, options)) {
            hi = mid;
            best = y;
        } else {
            lo = mid;
        }
    }

    KPointResult r;
    r.lambda = hi * norm.ratio();
    r.point = norm.restore(best);
    const double scale = detail::certificate_scale(r.lambda, dists);
    for (std::size_t i = 0; i < n; ++i)
        if (distance(r.point, values[i]) >= r.lambda * dists[i] - 10.0 * tol * scale) r.active.push_back(i);
    r.max_violation = detail::max_violation(values, dists, r.lambda, r.point);
    return r;
}

inline KPointResult kpoint_oracle(const LabeledPointSet& s, const Point& x, double tol = kCertificateTol,
                                  OracleOptions options = {}) {
    return kpoint_oracle(s.values, sample_distances(s, x), tol, options);
}

} // namespace lipext
