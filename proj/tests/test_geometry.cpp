#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "lipext/geometry.hpp"
#include "support/fixtures.hpp"

using namespace lipext;

namespace {

const std::vector<Point> kUnitPair{{0.0, 0.0}, {1.0, 0.0}};
const std::vector<Point> kCollinear{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
const std::vector<Point> kRightTriangle{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};

} // namespace

TEST(CayleyMenger, UnitPairIsTwo) { EXPECT_NEAR(cayley_menger(kUnitPair), 2.0, 1e-12); }

TEST(CayleyMenger, CollinearTripleIsZero) { EXPECT_NEAR(cayley_menger(kCollinear), 0.0, 1e-12); }

TEST(CayleyMenger, UnitRightTriangleIsMinusFour) { EXPECT_NEAR(cayley_menger(kRightTriangle), -4.0, 1e-12); }

TEST(CayleyMenger, FromSquaredDistanceRows) {
    const auto m = SquaredDistanceMatrix::from_rows({{0, 1, 4}, {1, 0, 1}, {4, 1, 0}});
    EXPECT_NEAR(cayley_menger(m), 0.0, 1e-12);
}

TEST(CayleyMenger, RejectsAsymmetricRows) {
    EXPECT_THROW(SquaredDistanceMatrix::from_rows({{0, 1}, {2, 0}}), Error);
    EXPECT_THROW(SquaredDistanceMatrix::from_rows({{1, 1}, {1, 0}}), Error);
}

TEST(CayleyMenger, PermutationInvariant) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> pts;
        for (int i = 0; i < 4; ++i) pts.push_back(fixtures::random_point(rng, 3));
        const double base = cayley_menger(pts);
        auto shuffled = pts;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_NEAR(cayley_menger(shuffled), base, 1e-12 * std::max(1.0, std::abs(base)));
    }
}

TEST(CayleyMenger, TooManyPointsForDimensionIsDegenerate) {
    std::mt19937_64 rng(12);
    for (std::size_t m = 1; m <= 3; ++m)
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Point> pts;
            for (std::size_t i = 0; i < m + 2; ++i) pts.push_back(fixtures::random_point(rng, m));
            const double scale = SquaredDistanceMatrix::from_points(pts).max_entry();
            EXPECT_LE(std::abs(cayley_menger(pts)), 1e-12 * std::pow(scale, static_cast<double>(m + 2)));
            EXPECT_FALSE(is_simplex(pts));
        }
}

TEST(IsSimplex, Examples) {
    EXPECT_TRUE(is_simplex(kRightTriangle));
    EXPECT_FALSE(is_simplex(kCollinear));
    const std::vector<Point> coincident{{1.0, 2.0}, {1.0, 2.0}};
    EXPECT_FALSE(is_simplex(coincident));
    const std::vector<Point> single{{3.0}};
    EXPECT_TRUE(is_simplex(single));
}

TEST(IsSimplex, ScaleInvariant) {
    for (double s : {1e-6, 1e-3, 1.0, 1e3, 1e6}) {
        std::vector<Point> tri, line;
        for (const auto& p : kRightTriangle) tri.push_back({s * p[0], s * p[1]});
        for (const auto& p : kCollinear) line.push_back({s * p[0], s * p[1]});
        EXPECT_TRUE(is_simplex(tri)) << s;
        EXPECT_FALSE(is_simplex(line)) << s;
    }
}

TEST(Barycentric, Examples) {
    const std::vector<Point> segment{{0.0}, {2.0}};
    auto t = barycentric_coordinates(segment, {1.0});
    EXPECT_NEAR(t[0], 0.5, 1e-12);
    EXPECT_NEAR(t[1], 0.5, 1e-12);

    t = barycentric_coordinates(kRightTriangle, {0.0, 0.0});
    EXPECT_NEAR(t[0], 1.0, 1e-12);
    EXPECT_NEAR(t[1], 0.0, 1e-12);
    EXPECT_NEAR(t[2], 0.0, 1e-12);

    t = barycentric_coordinates(kRightTriangle, {1.0 / 3.0, 1.0 / 3.0});
    for (double c : t) EXPECT_NEAR(c, 1.0 / 3.0, 1e-12);
}

TEST(Barycentric, Errors) {
    const auto code = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    EXPECT_EQ(code([] { barycentric_coordinates(kCollinear, {1.0, 0.0}); }), ErrorCode::DegenerateSimplex);
    const std::vector<Point> segment{{0.0, 0.0}, {1.0, 0.0}};
    EXPECT_EQ(code([&] { barycentric_coordinates(segment, {0.5, 0.5}); }), ErrorCode::NotInAffineHull);
}

TEST(Barycentric, ReconstructsRandomHullPoints) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 1 + trial % 3;
        const std::size_t k = 1 + static_cast<std::size_t>(trial) % (m + 1);
        std::vector<Point> v;
        for (std::size_t i = 0; i < k; ++i) v.push_back(fixtures::random_point(rng, m));
        if (!is_simplex(v)) continue;
        std::vector<double> w(k);
        double total = 0.0;
        for (double& c : w) total += (c = fixtures::uniform(rng) + 1e-3);
        Point y(m, 0.0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t d = 0; d < m; ++d) y[d] += w[i] / total * v[i][d];
        const auto t = barycentric_coordinates(v, y);
        Point back(m, 0.0);
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            sum += t[i];
            EXPECT_NEAR(t[i], w[i] / total, 1e-7);
            for (std::size_t d = 0; d < m; ++d) back[d] += t[i] * v[i][d];
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
        EXPECT_LE(distance(back, y), 1e-9);
    }
}

TEST(InConvexHull, Examples) {
    EXPECT_TRUE(in_convex_hull(kRightTriangle, {1.0 / 3.0, 1.0 / 3.0}));
    EXPECT_FALSE(in_convex_hull(kRightTriangle, {2.0, 2.0}));
    EXPECT_TRUE(in_convex_hull(kRightTriangle, {0.5, 0.5}));
    EXPECT_THROW(in_convex_hull(kCollinear, {1.0, 0.0}), Error);
}

TEST(SphereIntersection, Examples) {
    const std::vector<Point> centers{{0.0, 0.0}, {2.0, 0.0}};
    const std::vector<double> tangent{1.0, 1.0};
    const auto y = solve_sphere_intersection(centers, tangent);
    ASSERT_TRUE(y.has_value());
    EXPECT_NEAR((*y)[0], 1.0, 1e-12);
    EXPECT_NEAR((*y)[1], 0.0, 1e-12);

    const std::vector<double> wide{std::sqrt(2.0), std::sqrt(2.0)};
    EXPECT_FALSE(solve_sphere_intersection(centers, wide).has_value());

    const std::vector<Point> scalar{{0.0}, {4.0}};
    const std::vector<double> radii{2.0, 2.0};
    const auto z = solve_sphere_intersection(scalar, radii);
    ASSERT_TRUE(z.has_value());
    EXPECT_NEAR((*z)[0], 2.0, 1e-12);
}

TEST(SphereIntersection, DegenerateCentersThrow) {
    const std::vector<double> radii{1.0, 1.0, 1.0};
    EXPECT_THROW(solve_sphere_intersection(kCollinear, radii), Error);
}

TEST(SphereIntersection, RandomSolutionsSatisfyEverySphere) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 1 + trial % 3;
        const std::size_t k = 2 + static_cast<std::size_t>(trial) % m;
        std::vector<Point> centers;
        for (std::size_t i = 0; i < k; ++i) centers.push_back(fixtures::random_point(rng, m));
        if (!is_simplex(centers)) continue;
        // A point in the affine hull fixes consistent radii.
        std::vector<double> w(k);
        double total = 0.0;
        for (double& c : w) total += (c = fixtures::uniform(rng));
        Point y(m, 0.0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t d = 0; d < m; ++d) y[d] += w[i] / total * centers[i][d];
        std::vector<double> radii;
        for (const auto& c : centers) radii.push_back(distance(c, y));
        const auto got = solve_sphere_intersection(centers, radii);
        ASSERT_TRUE(got.has_value());
        for (std::size_t i = 0; i < k; ++i) EXPECT_NEAR(distance(*got, centers[i]), radii[i], 1e-9);
    }
}

TEST(Biquadratic, Roots) {
    EXPECT_EQ(solve_biquadratic({1.0, -5.0, 4.0}), (std::vector<double>{1.0, 2.0}));
    EXPECT_EQ(solve_biquadratic({0.0, 1.0, -4.0}), (std::vector<double>{2.0}));
    EXPECT_TRUE(solve_biquadratic({1.0, 0.0, 1.0}).empty());
}

TEST(Biquadratic, DoubleRootReportedOnce) {
    const auto r = solve_biquadratic({1.0, -2.0, 1.0});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r[0], 1.0, 1e-12);
}

TEST(Biquadratic, RootsSubstituteBack) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        const Biquadratic q{fixtures::uniform(rng) - 0.5, fixtures::uniform(rng) - 0.5, fixtures::uniform(rng) - 0.5};
        for (double lambda : solve_biquadratic(q)) {
            EXPECT_GE(lambda, 0.0);
            EXPECT_LE(std::abs(q(lambda)), 1e-9 * q.max_coefficient());
        }
    }
}

TEST(BiquadraticCoefficients, ConstantDataHasRootZero) {
    const std::vector<Point> values{{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}};
    const std::vector<double> dists{1.0, 1.0, 1.0};
    const auto q = biquadratic_coefficients(values, dists);
    EXPECT_NEAR(q.c, substituted_cayley_menger(values, dists, 0.0), 1e-12);
    EXPECT_NEAR(q(0.0), 0.0, 1e-12);
}

TEST(BiquadraticCoefficients, PairReproducesClosedForm) {
    const std::vector<Point> values{{0.0, 0.0}, {3.0, 4.0}};
    const std::vector<double> dists{1.0, 1.5};
    const auto roots = solve_biquadratic(biquadratic_coefficients(values, dists));
    const double expected = 5.0 / 2.5;
    EXPECT_TRUE(std::any_of(roots.begin(), roots.end(), [&](double r) { return std::abs(r - expected) < 1e-12; }));
}

TEST(BiquadraticCoefficients, InterpolationIdentity) {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> values;
        std::vector<double> dists;
        for (int i = 0; i < 3; ++i) {
            values.push_back(fixtures::random_point(rng, 2));
            dists.push_back(0.1 + fixtures::uniform(rng));
        }
        const auto q = biquadratic_coefficients(values, dists);
        const double at_one = substituted_cayley_menger(values, dists, 1.0);
        EXPECT_NEAR(q.a + q.b + q.c, at_one, 1e-12 * std::max(1.0, std::abs(at_one)));
        const double at_three = substituted_cayley_menger(values, dists, 3.0);
        EXPECT_NEAR(9 * q.a + 3 * q.b + q.c, at_three, 1e-10 * std::max(1.0, std::abs(at_three)));
    }
}
