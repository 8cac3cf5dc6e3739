#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "lipext/kpoint.hpp"
#include "support/fixtures.hpp"

using namespace lipext;

namespace {

LabeledPointSet scalar_set(std::vector<double> positions, std::vector<double> values) {
    LabeledPointSet s;
    for (double p : positions) s.points.push_back({p});
    for (double v : values) s.values.push_back({v});
    return s;
}

// Three samples at distance 1 from the origin with values on the unit circle
// at angles 0, 120 and 240 degrees.
LabeledPointSet equilateral() {
    const double h = std::sqrt(3.0) / 2.0;
    return {{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}}, {{1.0, 0.0}, {-0.5, h}, {-0.5, -h}}};
}

LabeledPointSet planar_pair() { return {{{-1.0, 0.0}, {1.0, 0.0}}, {{0.0, 0.0}, {2.0, 0.0}}}; }

ErrorCode error_code(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

} // namespace

TEST(LipConstant, Examples) {
    EXPECT_DOUBLE_EQ(lip_constant(scalar_set({0, 1}, {0, 3})), 3.0);
    EXPECT_DOUBLE_EQ(lip_constant(scalar_set({0, 1, 2}, {5, 5, 5})), 0.0);
    EXPECT_DOUBLE_EQ(lip_constant(scalar_set({0, 1, 2}, {0, 1, 4})), 3.0);
    EXPECT_DOUBLE_EQ(lip_constant(scalar_set({0}, {7})), 0.0);
}

TEST(PairCandidate, Examples) {
    auto [y, lambda] = pair_candidate(scalar_set({0, 2}, {0, 4}), 0, 1, {1.0});
    EXPECT_DOUBLE_EQ(y[0], 2.0);
    EXPECT_DOUBLE_EQ(lambda, 2.0);

    std::tie(y, lambda) = pair_candidate(scalar_set({0, 2}, {3, 3}), 0, 1, {0.5});
    EXPECT_DOUBLE_EQ(y[0], 3.0);
    EXPECT_DOUBLE_EQ(lambda, 0.0);

    std::tie(y, lambda) = pair_candidate(planar_pair(), 0, 1, {0.0, 0.0});
    EXPECT_DOUBLE_EQ(y[0], 1.0);
    EXPECT_DOUBLE_EQ(y[1], 0.0);
    EXPECT_DOUBLE_EQ(lambda, 1.0);
}

TEST(PairCandidate, QueryOnSampleRejected) {
    EXPECT_EQ(error_code([] { pair_candidate(scalar_set({0, 2}, {0, 4}), 0, 1, {2.0}); }),
              ErrorCode::QueryCoincidesWithSample);
}

TEST(KPointScalar, Examples) {
    // Three samples at distance 1 with values 0, 10, 4: the pair (0, 10) has slope 5.
    const std::vector<Point> values{{0.0}, {10.0}, {4.0}};
    const std::vector<double> dists{1.0, 1.0, 1.0};
    auto r = kpoint_scalar(values, dists);
    EXPECT_DOUBLE_EQ(r.lambda, 5.0);
    EXPECT_DOUBLE_EQ(r.point[0], 5.0);
    EXPECT_EQ(r.active, (std::vector<std::size_t>{0, 1}));

    r = kpoint_scalar(scalar_set({0, 1, 2}, {2, 2, 2}), {5.0});
    EXPECT_DOUBLE_EQ(r.lambda, 0.0);
    EXPECT_DOUBLE_EQ(r.point[0], 2.0);

    r = kpoint_scalar(scalar_set({0}, {7}), {1.0});
    EXPECT_DOUBLE_EQ(r.lambda, 0.0);
    EXPECT_DOUBLE_EQ(r.point[0], 7.0);
    EXPECT_EQ(r.active, (std::vector<std::size_t>{0}));
}

TEST(KPointScalar, AgreesWithPairEnumerationOracle) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = fixtures::random_kpoint_instance(rng, 2, 1, 1 + trial % 8);
        const auto d = sample_distances(inst.samples, inst.query);
        const auto [lambda, value] = fixtures::pair_enumeration(inst.samples.values, d);
        const auto r = kpoint_scalar(inst.samples, inst.query);
        EXPECT_NEAR(r.lambda, lambda, 1e-12);
        EXPECT_NEAR(r.point[0], value, 1e-12);
    }
}

TEST(KPointVector, PlanarPair) {
    const auto r = kpoint_vector(planar_pair(), {0.0, 0.0});
    EXPECT_NEAR(r.lambda, 1.0, 1e-12);
    EXPECT_NEAR(r.point[0], 1.0, 1e-12);
    EXPECT_NEAR(r.point[1], 0.0, 1e-12);
    EXPECT_EQ(r.active, (std::vector<std::size_t>{0, 1}));
}

TEST(KPointVector, EquilateralNeedsAllThree) {
    const auto r = kpoint_vector(equilateral(), {0.0, 0.0});
    EXPECT_NEAR(r.lambda, 1.0, 1e-9);
    EXPECT_NEAR(r.point[0], 0.0, 1e-9);
    EXPECT_NEAR(r.point[1], 0.0, 1e-9);
    EXPECT_EQ(r.active, (std::vector<std::size_t>{0, 1, 2}));
    ASSERT_EQ(r.hull_coords.size(), 3u);
    for (double t : r.hull_coords) EXPECT_NEAR(t, 1.0 / 3.0, 1e-9);

    const auto o = kpoint_oracle(equilateral(), {0.0, 0.0});
    EXPECT_NEAR(o.lambda, 1.0, 1e-6);
    EXPECT_NEAR(distance(o.point, r.point), 0.0, 1e-5);
}

TEST(KPointVector, ConstantValues) {
    LabeledPointSet s{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{2.0, -1.0}, {2.0, -1.0}, {2.0, -1.0}}};
    const auto r = kpoint_vector(s, {0.3, 0.3});
    EXPECT_EQ(r.lambda, 0.0);
    EXPECT_EQ(r.point, (Point{2.0, -1.0}));
}

TEST(KPointVector, QueryOnSampleRejected) {
    EXPECT_EQ(error_code([] { kpoint_vector(planar_pair(), {1.0, 0.0}); }), ErrorCode::QueryCoincidesWithSample);
    EXPECT_EQ(error_code([] { kpoint_oracle(planar_pair(), {1.0, 0.0}); }), ErrorCode::QueryCoincidesWithSample);
    EXPECT_EQ(error_code([] { kpoint_scalar(scalar_set({0, 1}, {0, 1}), {1.0}); }),
              ErrorCode::QueryCoincidesWithSample);
}

TEST(KPointVector, SatisfiesResultInvariants) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 3, m = 1 + (trial / 3) % 3;
        const auto inst = fixtures::random_kpoint_instance(rng, n, m, 1 + trial % 8);
        const auto r = kpoint_vector(inst.samples, inst.query);
        const auto d = sample_distances(inst.samples, inst.query);
        const double scale = std::max(1.0, r.lambda * *std::max_element(d.begin(), d.end()));
        EXPECT_GE(r.lambda, 0.0);
        ASSERT_FALSE(r.active.empty());
        EXPECT_LE(r.active.size(), m + 1);
        EXPECT_TRUE(std::is_sorted(r.active.begin(), r.active.end()));
        EXPECT_LE(r.max_violation, 1e-9 * scale);
        for (std::size_t i : r.active)
            EXPECT_NEAR(distance(r.point, inst.samples.values[i]), r.lambda * d[i], 1e-9 * scale);
        for (double t : r.hull_coords) EXPECT_GE(t, -1e-9);
        EXPECT_TRUE(certificate_check(inst.samples, inst.query, r.lambda, r.point, r.active));
    }
}

TEST(KPointVector, PermutationInvariant) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = fixtures::random_kpoint_instance(rng, 2, 2, 2 + trial % 7);
        const auto base = kpoint_vector(inst.samples, inst.query);
        std::vector<std::size_t> perm(inst.samples.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        LabeledPointSet shuffled;
        for (std::size_t i : perm) {
            shuffled.points.push_back(inst.samples.points[i]);
            shuffled.values.push_back(inst.samples.values[i]);
        }
        const auto r = kpoint_vector(shuffled, inst.query);
        EXPECT_NEAR(r.lambda, base.lambda, 1e-12);
        EXPECT_LE(distance(r.point, base.point), 1e-9);
        std::vector<std::size_t> mapped;
        for (std::size_t i : r.active) mapped.push_back(perm[i]);
        std::sort(mapped.begin(), mapped.end());
        EXPECT_EQ(mapped, base.active);
    }
}

TEST(KPointVector, ScaleAndTranslationEquivariant) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 1 + trial % 3;
        const auto inst = fixtures::random_kpoint_instance(rng, 2, m, 1 + trial % 8);
        const auto base = kpoint_vector(inst.samples, inst.query);
        const double s = 0.1 + 10.0 * fixtures::uniform(rng);
        const auto shift = fixtures::random_point(rng, m);

        auto scaled = inst.samples, moved = inst.samples;
        for (auto& v : scaled.values)
            for (double& c : v) c *= s;
        for (auto& v : moved.values)
            for (std::size_t k = 0; k < m; ++k) v[k] += shift[k];
        const auto rs = kpoint_vector(scaled, inst.query);
        const auto rm = kpoint_vector(moved, inst.query);
        EXPECT_NEAR(rs.lambda, s * base.lambda, 1e-9 * s);
        EXPECT_NEAR(rm.lambda, base.lambda, 1e-9);
        for (std::size_t k = 0; k < m; ++k) {
            EXPECT_NEAR(rs.point[k], s * base.point[k], 1e-8 * s);
            EXPECT_NEAR(rm.point[k], base.point[k] + shift[k], 1e-8);
        }
    }
}

TEST(KPointVector, MatchesScalarForOneDimensionalValues) {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = fixtures::random_kpoint_instance(rng, 1 + trial % 3, 1, 1 + trial % 8);
        const auto v = kpoint_vector(inst.samples, inst.query);
        const auto s = kpoint_scalar(inst.samples, inst.query);
        EXPECT_NEAR(v.lambda, s.lambda, 1e-9);
        EXPECT_NEAR(v.point[0], s.point[0], 1e-9);
    }
}

TEST(KPointOracle, AgreesWithVectorOnInstancesInMinusOneOne) {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + trial % 3, m = 1 + (trial / 3) % 3;
        auto inst = fixtures::random_kpoint_instance(rng, n, m, 1 + trial % 8);
        for (auto& p : inst.samples.points)
            for (double& c : p) c = 2.0 * c - 1.0;
        for (auto& v : inst.samples.values)
            for (double& c : v) c = 2.0 * c - 1.0;
        for (double& c : inst.query) c = 2.0 * c - 1.0;
        const auto v = kpoint_vector(inst.samples, inst.query);
        const auto o = kpoint_oracle(inst.samples, inst.query);
        EXPECT_NEAR(v.lambda, o.lambda, 1e-6);
        EXPECT_LE(distance(v.point, o.point), 1e-5);
        EXPECT_LE(v.lambda, lip_constant(inst.samples) + 1e-9);
        EXPECT_LE(o.lambda, lip_constant(inst.samples) + 1e-9);
    }
}

TEST(KPointOracle, Singleton) {
    const auto r = kpoint_oracle(scalar_set({0}, {7}), {3.0});
    EXPECT_EQ(r.lambda, 0.0);
    EXPECT_EQ(r.point, (Point{7.0}));
}

TEST(KPointOracle, ReproducesHandExamples) {
    auto r = kpoint_oracle(planar_pair(), {0.0, 0.0});
    EXPECT_NEAR(r.lambda, 1.0, 1e-6);
    EXPECT_NEAR(r.point[0], 1.0, 1e-5);
    r = kpoint_oracle(scalar_set({0, 2}, {0, 4}), {1.0});
    EXPECT_NEAR(r.lambda, 2.0, 1e-6);
    EXPECT_NEAR(r.point[0], 2.0, 1e-5);
}

TEST(CertificateCheck, Examples) {
    const auto tri = equilateral();
    const Point x{0.0, 0.0};
    const std::vector<std::size_t> all{0, 1, 2};
    EXPECT_TRUE(certificate_check(tri, x, 1.0, {0.0, 0.0}, all));

    // The pair (0, 1) candidate leaves sample 2 farther than lambda allows.
    const auto [y, lambda] = pair_candidate(tri, 0, 1, x);
    const std::vector<std::size_t> pair{0, 1};
    EXPECT_FALSE(certificate_check(tri, x, lambda, y, pair));

    LabeledPointSet flat{{{0.0}, {1.0}}, {{4.0}, {4.0}}};
    const std::vector<std::size_t> single{1};
    EXPECT_TRUE(certificate_check(flat, {0.5}, 0.0, {4.0}, single));
}
