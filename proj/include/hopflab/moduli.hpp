#pragma once

/**
 * @file moduli.hpp
 * @brief Great-circle fibrations of open sets in S^3 encoded as
 *        distance-decreasing maps f : V -> S^2 between the two factors of
 *        G_2(R^4) = S^2 x S^2.
 *
 * The fiber over x in V is the plane with moduli point (x, f(x)) when the
 * graph lives over the first factor (the default), or (f(x), x) otherwise.
 * With the conventions of grassmann.hpp, the constant map c over the first
 * factor produces the fibration by the circles {x e^{p t}}, where
 * p = c_0 i + c_1 j + c_2 k.
 */

#include "hopflab/algebra.hpp"
#include "hopflab/grassmann.hpp"
#include "hopflab/hopf.hpp"

#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hopflab::moduli {

using Mat2 = Eigen::Matrix2d;

/// Open geodesic ball {x : d(x, center) < radius} of S^2. radius >= pi is all of S^2.
struct SphericalCap {
    Vec3 center{0, 0, 1};
    double radius{std::numbers::pi + 1.0};

    bool whole_sphere() const { return radius > std::numbers::pi; }

    /// True when the closed ball of radius `margin` about x lies inside the cap.
    bool contains(const Vec3& x, double margin = 0.0) const {
        if (whole_sphere()) return true;
        return sphere_geodesic_distance(Vec(center), Vec(x)) + margin < radius;
    }
};

struct DistanceDecreasingMap {
    std::string name;
    SphericalCap domain;
    std::function<Vec3(const Vec3&)> eval;  // must be reentrant

    Vec3 operator()(const Vec3& x) const { return eval(x); }
};

inline DistanceDecreasingMap constant_map(const Vec3& c) {
    if (std::abs(c.norm() - 1.0) > tol::kUnit) throw PreconditionError("constant_map: value must be a unit vector");
    return {"constant", SphericalCap{}, [c](const Vec3&) { return c; }};
}

inline DistanceDecreasingMap identity_map() {
    return {"identity", SphericalCap{}, [](const Vec3& x) { return x; }};
}

/// x -> R x for a rotation R; preserves all distances.
inline DistanceDecreasingMap rotation_map(const Mat3& r) {
    return {"rotation", SphericalCap{}, [r](const Vec3& x) { return Vec3(r * x); }};
}

/// Geodesic polar contraction about the north pole, (theta, phi) -> (lambda theta, phi),
/// restricted to the cap theta < cap_radius.
inline DistanceDecreasingMap polar_contraction(double lambda, double cap_radius = std::numbers::pi / 2) {
    if (!(lambda >= 0.0)) throw PreconditionError("polar_contraction: lambda must be nonnegative");
    return {"polar-contraction", SphericalCap{Vec3(0, 0, 1), cap_radius}, [lambda](const Vec3& x) {
                const double r = std::hypot(x[0], x[1]);
                const double theta = std::atan2(r, x[2]);
                const double s = std::sin(lambda * theta);
                if (r == 0.0) return Vec3(0, 0, std::cos(lambda * theta));
                return Vec3(s * x[0] / r, s * x[1] / r, std::cos(lambda * theta));
            }};
}

/// Orthonormal (center, e1, e2) frame used to parametrize caps.
inline std::pair<Vec3, Vec3> orthonormal_complement(const Vec3& n) {
    const Vec3 helper = std::abs(n[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 e1 = (helper - helper.dot(n) * n).normalized();
    return {e1, n.cross(e1)};
}

/// Uniform sample on the cap (area measure).
inline Vec3 sample_in_cap(Rng& rng, const SphericalCap& cap) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double max_angle = std::min(cap.radius, std::numbers::pi);
    const double cos_min = std::cos(max_angle);
    for (;;) {
        const double z = cos_min + (1.0 - cos_min) * unit(rng);
        const double phi = 2.0 * std::numbers::pi * unit(rng);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const auto [e1, e2] = orthonormal_complement(cap.center);
        const Vec3 x = z * cap.center + rho * (std::cos(phi) * e1 + std::sin(phi) * e2);
        if (cap.contains(x)) return x.normalized();
    }
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
    bool ok{true};
    double worst_ratio{0.0};
    std::optional<std::pair<Vec3, Vec3>> witness;  // pair attaining worst_ratio
    std::size_t pairs{0};
};

/// Strictness margin: ratios must stay below 1 - kStrictness.
inline constexpr double kStrictness = 1e-12;

/// Samples `pairs` pairs of distinct points of the domain (pair k drawn from
/// its own stream) and reports the largest distance ratio.
inline ValidationReport validate_distance_decreasing(const DistanceDecreasingMap& f, std::size_t pairs, std::uint64_t seed) {
    if (pairs < 1) throw PreconditionError("validate_distance_decreasing: need at least one pair");
    ValidationReport report;
    report.pairs = pairs;
    for (std::size_t k = 0; k < pairs; ++k) {
        Rng rng = make_stream(seed, 0x76616c, k);
        const Vec3 x = sample_in_cap(rng, f.domain);
        Vec3 y = sample_in_cap(rng, f.domain);
        double d = sphere_geodesic_distance(Vec(x), Vec(y));
        while (d == 0.0) {
            y = sample_in_cap(rng, f.domain);
            d = sphere_geodesic_distance(Vec(x), Vec(y));
        }
        const double ratio = sphere_geodesic_distance(Vec(f(x)), Vec(f(y))) / d;
        if (!report.witness || ratio > report.worst_ratio) {
            report.worst_ratio = ratio;
            report.witness = std::make_pair(x, y);
        }
    }
    report.ok = report.worst_ratio < 1.0 - kStrictness;
    return report;
}

// ---------------------------------------------------------------------------
// Fibration from a map

enum class GraphFactor { First, Second };

/// The great-circle fibration whose moduli are the graph of f.
class GreatCircleFibration {
public:
    GreatCircleFibration(DistanceDecreasingMap f, GraphFactor factor) : f_(std::move(f)), factor_(factor) {}

    const DistanceDecreasingMap& map() const { return f_; }
    GraphFactor factor() const { return factor_; }

    grassmann::ModuliPoint moduli(const Vec3& x) const {
        if (!f_.domain.contains(x)) throw PreconditionError("GreatCircleFibration: point outside the domain");
        const Vec3 fx = f_(x);
        return factor_ == GraphFactor::First ? grassmann::ModuliPoint{x, fx} : grassmann::ModuliPoint{fx, x};
    }

    grassmann::OrientedPlane2 plane(const Vec3& x) const { return grassmann::moduli_to_plane(moduli(x)); }

    hopf::FiberSampler fiber(const Vec3& x) const { return hopf::FiberSampler(plane(x).basis()); }
    hopf::FiberSampler operator()(const Vec3& x) const { return fiber(x); }

private:
    DistanceDecreasingMap f_;
    GraphFactor factor_;
};

inline GreatCircleFibration fibration_from_map(const DistanceDecreasingMap& f, GraphFactor factor = GraphFactor::First,
                                               std::size_t validation_pairs = 2000, std::uint64_t seed = 0x4757) {
    const auto report = validate_distance_decreasing(f, validation_pairs, seed);
    if (!report.ok)
        throw PreconditionError("fibration_from_map: map '" + f.name + "' is not distance decreasing (worst ratio " +
                                std::to_string(report.worst_ratio) + ")");
    return GreatCircleFibration(f, factor);
}

struct DisjointnessReport {
    bool ok{true};
    double min_angle{std::numbers::pi / 2};
    std::size_t pairs{0};
};

/// Smallest principal angle over `pairs` random pairs of fibers; ok iff > threshold.
inline DisjointnessReport check_fibers_disjoint(const GreatCircleFibration& fib, std::size_t pairs, std::uint64_t seed,
                                                double threshold = 1e-6) {
    DisjointnessReport report;
    report.pairs = pairs;
    for (std::size_t k = 0; k < pairs; ++k) {
        Rng rng = make_stream(seed, 0x646973, k);
        const Vec3 x = sample_in_cap(rng, fib.map().domain);
        const Vec3 y = sample_in_cap(rng, fib.map().domain);
        if ((x - y).norm() == 0.0) continue;
        const double angle = hopf::smallest_principal_angle(fib.plane(x).basis(), fib.plane(y).basis());
        report.min_angle = std::min(report.min_angle, angle);
    }
    report.ok = report.min_angle > threshold;
    return report;
}

// ---------------------------------------------------------------------------
// Differentials and ellipses

struct TangentFrame2 {
    Vec3 base;
    Vec3 e1;
    Vec3 e2;

    /// Frame rotated by `angle` within the tangent plane.
    TangentFrame2 rotated(double angle) const {
        const double c = std::cos(angle), s = std::sin(angle);
        return {base, c * e1 + s * e2, -s * e1 + c * e2};
    }
};

/// e1 is the normalized tangential part of the z axis, or of the x axis when
/// |<x, z>| > 0.99; e2 = x cross e1.
inline TangentFrame2 tangent_frame(const Vec3& x) {
    const Vec3 axis = std::abs(x[2]) > 0.99 ? Vec3::UnitX() : Vec3::UnitZ();
    const Vec3 e1 = (axis - axis.dot(x) * x).normalized();
    return {x, e1, x.cross(e1)};
}

inline Vec3 exp_map(const Vec3& x, const Vec3& tangent, double s) { return std::cos(s) * x + std::sin(s) * tangent; }

/// df_x by central differences along geodesics, in the given frames.
inline Mat2 differential(const DistanceDecreasingMap& f, const TangentFrame2& at_x, const TangentFrame2& at_fx, double h) {
    if (!(h > 0.0)) throw PreconditionError("differential: step must be positive");
    if (!f.domain.contains(at_x.base, h)) throw PreconditionError("differential: point too close to the domain boundary");
    Mat2 df;
    const Vec3 dirs[2] = {at_x.e1, at_x.e2};
    for (int j = 0; j < 2; ++j) {
        const Vec3 diff = (f(exp_map(at_x.base, dirs[j], h)) - f(exp_map(at_x.base, dirs[j], -h))) / (2.0 * h);
        df(0, j) = diff.dot(at_fx.e1);
        df(1, j) = diff.dot(at_fx.e2);
    }
    return df;
}

inline Mat2 differential(const DistanceDecreasingMap& f, const Vec3& x, double h = 1e-5) {
    return differential(f, tangent_frame(x), tangent_frame(f(x)), h);
}

struct EllipseData {
    double sigma_major{0};
    double sigma_minor{0};
    Mat2 axes{Mat2::Identity()};  // columns: preimages of the major and minor axes
};

inline EllipseData ellipse(const Mat2& df) {
    Eigen::JacobiSVD<Mat2> svd(df, Eigen::ComputeFullV);
    return {svd.singularValues()[0], svd.singularValues()[1], svd.matrixV()};
}

// ---------------------------------------------------------------------------
// Local homogeneity

struct HomogeneityReport {
    bool constant_axes{true};
    std::vector<std::pair<double, double>> sigma_field;  // (major, minor) per point
    double spread_major{0};
    double spread_minor{0};

    double spread() const { return std::max(spread_major, spread_minor); }
};

inline constexpr double kHomogeneityTolerance = 1e-3;

/// Necessary condition for local fiberwise homogeneity: the singular values
/// of df must be the same at every point. A false `constant_axes` rules it out.
inline HomogeneityReport homogeneity_report(std::vector<std::pair<double, double>> sigmas,
                                            double tolerance = kHomogeneityTolerance) {
    HomogeneityReport report;
    report.sigma_field = std::move(sigmas);
    if (report.sigma_field.empty()) return report;
    double lo_major = report.sigma_field.front().first, hi_major = lo_major;
    double lo_minor = report.sigma_field.front().second, hi_minor = lo_minor;
    for (const auto& [major, minor] : report.sigma_field) {
        lo_major = std::min(lo_major, major);
        hi_major = std::max(hi_major, major);
        lo_minor = std::min(lo_minor, minor);
        hi_minor = std::max(hi_minor, minor);
    }
    report.spread_major = hi_major - lo_major;
    report.spread_minor = hi_minor - lo_minor;
    report.constant_axes = report.spread() < tolerance;
    return report;
}

inline HomogeneityReport homogeneity_scan(const DistanceDecreasingMap& f, const std::vector<Vec3>& points,
                                          double tolerance = kHomogeneityTolerance, double h = 1e-5) {
    std::vector<std::pair<double, double>> sigmas;
    sigmas.reserve(points.size());
    for (const Vec3& x : points) {
        const auto e = ellipse(differential(f, x, h));
        sigmas.emplace_back(e.sigma_major, e.sigma_minor);
    }
    return homogeneity_report(std::move(sigmas), tolerance);
}

enum class RoundMapVerdict { Hopf, DistancePreservingExcluded, CurvatureExcluded };

inline std::string to_string(RoundMapVerdict v) {
    switch (v) {
    case RoundMapVerdict::Hopf: return "hopf";
    case RoundMapVerdict::DistancePreservingExcluded: return "distance-preserving-excluded";
    case RoundMapVerdict::CurvatureExcluded: return "curvature-excluded";
    }
    return "unknown";
}

/// Trichotomy for a map whose differential sends unit circles to circles of
/// constant radius r:
///   r = 0      f is constant, the fibration is Hopf
///   r = 1      f is an isometry, not distance decreasing
///   0 < r < 1  f scales curvature by 1/r^2 > 1, impossible inside the unit sphere
inline RoundMapVerdict classify_radius(double r, double tolerance = kHomogeneityTolerance) {
    if (!(r >= 0.0)) throw PreconditionError("classify_radius: radius must be nonnegative");
    if (r <= tolerance) return RoundMapVerdict::Hopf;
    if (std::abs(r - 1.0) <= tolerance) return RoundMapVerdict::DistancePreservingExcluded;
    if (r < 1.0) return RoundMapVerdict::CurvatureExcluded;
    throw PreconditionError("classify_radius: r > 1 cannot come from a distance-decreasing map");
}

inline RoundMapVerdict round_map_classifier(const HomogeneityReport& scan, double tolerance = kHomogeneityTolerance) {
    if (scan.sigma_field.empty()) throw PreconditionError("round_map_classifier: empty ellipse field");
    if (!scan.constant_axes) throw PreconditionError("round_map_classifier: ellipse field is not constant");
    double sum = 0.0;
    for (const auto& [major, minor] : scan.sigma_field) {
        if (major - minor > tolerance) throw PreconditionError("round_map_classifier: ellipses are not circles");
        sum += 0.5 * (major + minor);
    }
    return classify_radius(sum / static_cast<double>(scan.sigma_field.size()), tolerance);
}

inline RoundMapVerdict round_map_classifier(const DistanceDecreasingMap& f, const std::vector<Vec3>& points) {
    return round_map_classifier(homogeneity_scan(f, points));
}

}  // namespace hopflab::moduli
