#include "hopflab/hopf.hpp"
#include "hopflab/moduli.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace hopflab;
using namespace hopflab::moduli;

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 polar_point(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// The distance ratio of polar contraction by 1/2 is largest for points on
// the rim of the hemisphere: d(f x, f y) / d(x, y) tends to sin(pi/4) / 1 as
// the points approach each other on the equator.
constexpr double kContractionSupRatio = 0.70710678118654752;

}  // namespace

TEST(SphericalCap, Containment) {
    const SphericalCap cap{Vec3(0, 0, 1), kPi / 2};
    EXPECT_TRUE(cap.contains(polar_point(1.0, 0.3)));
    EXPECT_FALSE(cap.contains(polar_point(1.6, 0.3)));
    EXPECT_FALSE(cap.contains(polar_point(1.5, 0.3), 0.1));
    EXPECT_TRUE(SphericalCap{}.whole_sphere());
}

TEST(Validation, ConstantAndContractionsPassIsometriesFail) {
    EXPECT_TRUE(validate_distance_decreasing(constant_map(Vec3(0, 0, 1)), 500, 1).ok);
    EXPECT_TRUE(validate_distance_decreasing(polar_contraction(0.5), 500, 1).ok);
    const auto id = validate_distance_decreasing(identity_map(), 500, 1);
    EXPECT_FALSE(id.ok);
    EXPECT_NEAR(id.worst_ratio, 1.0, 1e-12);
    ASSERT_TRUE(id.witness.has_value());
    Rng rng = make_stream(31, 1);
    const Mat3 r = rotation_matrix(haar_unit_quaternion(rng));
    EXPECT_FALSE(validate_distance_decreasing(rotation_map(r), 500, 1).ok);
}

TEST(Validation, ContractionSupRatioMatchesAnalyticValue) {
    const auto f = polar_contraction(0.5);
    const auto report = validate_distance_decreasing(f, 20000, 2);
    EXPECT_LT(report.worst_ratio, kContractionSupRatio);
    // dense scan along the rim
    double best = 0.0;
    for (int k = 1; k <= 1000; ++k) {
        const double theta = kPi / 2 - 1e-7, dphi = 1e-3 * k / 1000.0;
        const Vec3 x = polar_point(theta, 0.0), y = polar_point(theta, dphi);
        best = std::max(best, sphere_geodesic_distance(Vec(f(x)), Vec(f(y))) / sphere_geodesic_distance(Vec(x), Vec(y)));
    }
    EXPECT_NEAR(best, kContractionSupRatio, 1e-6);
}

TEST(Fibration, ConstantMapGivesHopfFibers) {
    const auto fib = fibration_from_map(constant_map(Vec3(1, 0, 0)), GraphFactor::First);
    Rng rng = make_stream(31, 2);
    for (int t = 0; t < 200; ++t) {
        const Vec3 x = random_unit_vector(rng, 2).coords();
        const hopf::FiberSampler f = fib(x);
        const hopf::FiberSampler h = hopf::complex_hopf_fiber(UnitVector::normalize(f.basis().col(0)));
        EXPECT_LT(hopf::span_difference(f, h), 1e-9);
    }
}

TEST(Fibration, OtherConstantsGiveConjugateHopfFibrations) {
    // c = (0, 1, 0): fibers are span{x, x j}
    const auto fib = fibration_from_map(constant_map(Vec3(0, 1, 0)));
    Rng rng = make_stream(31, 3);
    for (int t = 0; t < 100; ++t) {
        const hopf::FiberSampler f = fib(random_unit_vector(rng, 2).coords());
        const Vec x = f.basis().col(0);
        EXPECT_LT(f.residual(hopf::right_multiply(x, Quaternion::j())), 1e-9);
    }
}

TEST(Fibration, RejectsNonContractions) {
    EXPECT_THROW(fibration_from_map(identity_map()), PreconditionError);
}

TEST(Fibration, FibersOfAContractionAreDisjoint) {
    const GreatCircleFibration fib(polar_contraction(0.5), GraphFactor::First);
    const auto report = check_fibers_disjoint(fib, 2000, 3);
    EXPECT_TRUE(report.ok);
    EXPECT_GT(report.min_angle, 1e-6);
    // the isometry case has intersecting fibers: x and its antipode share a plane
    const GreatCircleFibration bad(identity_map(), GraphFactor::First);
    const Vec3 x(0, 0, 1);
    const double angle = hopf::smallest_principal_angle(bad.plane(x).basis(), bad.plane(Vec3(1, 0, 0)).basis());
    EXPECT_LT(angle, 1e-12);
}

TEST(Fibration, SecondFactorSwapsTheRoles) {
    const GreatCircleFibration a(constant_map(Vec3(0, 0, 1)), GraphFactor::First);
    const GreatCircleFibration b(constant_map(Vec3(0, 0, 1)), GraphFactor::Second);
    const Vec3 x = Vec3(1, 2, 3).normalized();
    EXPECT_LT((a.moduli(x).xi_plus - x).norm(), 1e-15);
    EXPECT_LT((b.moduli(x).xi_minus - x).norm(), 1e-15);
}

TEST(Differential, ContractionSingularValues) {
    const auto f = polar_contraction(0.5);
    // at the pole the map is conformal with factor lambda
    const auto pole = ellipse(differential(f, Vec3(0, 0, 1)));
    EXPECT_NEAR(pole.sigma_major, 0.5, 1e-8);
    EXPECT_NEAR(pole.sigma_minor, 0.5, 1e-8);
    // at theta: radial factor lambda, azimuthal sin(lambda theta) / sin(theta)
    for (double theta : {0.2, kPi / 6, kPi / 3, 1.4}) {
        const auto e = ellipse(differential(f, polar_point(theta, 0.7)));
        const double azimuthal = std::sin(0.5 * theta) / std::sin(theta);
        EXPECT_NEAR(e.sigma_major, std::max(0.5, azimuthal), 1e-8);
        EXPECT_NEAR(e.sigma_minor, std::min(0.5, azimuthal), 1e-8);
    }
    const auto e = ellipse(differential(f, polar_point(kPi / 3, 0.0)));
    EXPECT_NEAR(e.sigma_major, 1.0 / std::sqrt(3.0), 1e-8);
}

TEST(Differential, RefusesPointsNearTheBoundary) {
    EXPECT_THROW(differential(polar_contraction(0.5), polar_point(kPi / 2 - 1e-7, 0)), PreconditionError);
}

TEST(Homogeneity, ContractionFailsConstantAxes) {
    const auto scan = homogeneity_scan(polar_contraction(0.5), {polar_point(0, 0), polar_point(kPi / 3, 1.0)});
    EXPECT_FALSE(scan.constant_axes);
    EXPECT_NEAR(scan.spread(), 1.0 / std::sqrt(3.0) - 0.5, 1e-6);
    EXPECT_THROW(round_map_classifier(scan), PreconditionError);
}

TEST(Homogeneity, RotationAndConstantAreHomogeneous) {
    std::vector<Vec3> points;
    for (int k = 0; k < 10; ++k) points.push_back(polar_point(0.3 * k, 0.5 * k));
    Rng rng = make_stream(31, 4);
    const auto rot = homogeneity_scan(rotation_map(rotation_matrix(haar_unit_quaternion(rng))), points);
    EXPECT_TRUE(rot.constant_axes);
    EXPECT_EQ(round_map_classifier(rot), RoundMapVerdict::DistancePreservingExcluded);
    EXPECT_EQ(round_map_classifier(constant_map(Vec3(0, 1, 0)), points), RoundMapVerdict::Hopf);
}

TEST(Trichotomy, ClassifiesByRadius) {
    EXPECT_EQ(classify_radius(0.0), RoundMapVerdict::Hopf);
    EXPECT_EQ(classify_radius(1.0), RoundMapVerdict::DistancePreservingExcluded);
    for (double r : {0.01, 0.3, 0.5, 0.99}) EXPECT_EQ(classify_radius(r), RoundMapVerdict::CurvatureExcluded);
    EXPECT_THROW(classify_radius(1.5), PreconditionError);
    EXPECT_THROW(classify_radius(-0.1), PreconditionError);
    EXPECT_EQ(to_string(RoundMapVerdict::CurvatureExcluded), "curvature-excluded");
}

TEST(Trichotomy, SyntheticConstantFields) {
    for (const auto& [r, verdict] : std::vector<std::pair<double, RoundMapVerdict>>{
             {0.0, RoundMapVerdict::Hopf},
             {1.0, RoundMapVerdict::DistancePreservingExcluded},
             {0.25, RoundMapVerdict::CurvatureExcluded},
             {0.75, RoundMapVerdict::CurvatureExcluded}}) {
        const auto report = homogeneity_report(std::vector<std::pair<double, double>>(8, {r, r}));
        EXPECT_EQ(round_map_classifier(report), verdict);
    }
    // constant but non-circular ellipses are outside the trichotomy
    EXPECT_THROW(round_map_classifier(homogeneity_report({{0.6, 0.3}, {0.6, 0.3}})), PreconditionError);
}
