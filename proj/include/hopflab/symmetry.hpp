#pragma once

/**
 * @file symmetry.hpp
 * @brief Explicit fiber-preserving isometries: left quaternion multiplication
 *        on the Hopf fibration of S^3, and screw motions of the line
 *        fibration of R^3 whose direction turns at a constant rate with height.
 */

#include "hopflab/algebra.hpp"
#include "hopflab/hopf.hpp"

#include <array>
#include <functional>
#include <numbers>
#include <optional>

namespace hopflab::symmetry {

/// A fibration of S^3 given by the fiber through each point.
using Fibration = std::function<hopf::FiberSampler(const UnitVector&)>;

inline Fibration hopf_s3() {
    return [](const UnitVector& x) { return hopf::complex_hopf_fiber(x); };
}

/// g = (y conj(x), 1): left multiplication taking x to y, and the Hopf fiber
/// through x onto the fiber through y.
inline IsometrySO4 hopf_transitivity_witness(const UnitVector& x, const UnitVector& y) {
    if (x.dim() != 3 || y.dim() != 3) throw PreconditionError("hopf_transitivity_witness: expected points of S^3");
    const Quaternion qx = Quaternion::from_vec(Vec4(x.coords()));
    const Quaternion qy = Quaternion::from_vec(Vec4(y.coords()));
    return {(qy * qx.conj()).normalized(), Quaternion::one()};
}

/// Largest distance from g(F) to G over `samples` equally spaced points of F.
inline double image_residual(const hopf::FiberSampler& f, const IsometrySO4& g, const hopf::FiberSampler& target,
                             int samples = 16) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Vec4 p = f.sample_angle(2.0 * std::numbers::pi * k / samples);
        worst = std::max(worst, target.residual(g.apply(p)));
    }
    return worst;
}

struct PreservationReport {
    bool ok{true};
    double worst_residual{0.0};
    std::optional<Vec4> witness;  // base point of the worst trial
};

/// For random x and points p on fiber(x): residual = distance of g p from the
/// span of fiber(g x). ok iff the worst residual is below 1e-9.
inline PreservationReport fiber_preservation_check(const Fibration& fibration, const IsometrySO4& g, int trials,
                                                   std::uint64_t seed, int points_per_fiber = 8) {
    if (trials < 1) throw PreconditionError("fiber_preservation_check: need at least one trial");
    PreservationReport report;
    for (int t = 0; t < trials; ++t) {
        Rng rng = make_stream(seed, 0x707265, static_cast<std::uint64_t>(t));
        const UnitVector x = random_unit_vector(rng, 3);
        const hopf::FiberSampler source = fibration(x);
        const hopf::FiberSampler target = fibration(UnitVector::normalize(g.apply(Vec4(x.coords()))));
        const double residual = image_residual(source, g, target, points_per_fiber);
        if (!report.witness || residual > report.worst_residual) {
            report.worst_residual = residual;
            report.witness = Vec4(x.coords());
        }
    }
    report.ok = report.worst_residual < tol::kUnit;
    return report;
}

/// Push-forward h F of a fibration: x -> h fiber(h^-1 x).
inline Fibration pushed_fibration(const Fibration& fibration, const IsometrySO4& h) {
    return [fibration, h](const UnitVector& x) {
        const hopf::FiberSampler f = fibration(UnitVector::normalize(h.inverse().apply(Vec4(x.coords()))));
        Mat basis(4, f.basis().cols());
        for (Eigen::Index c = 0; c < f.basis().cols(); ++c) basis.col(c) = h.apply(Vec4(f.basis().col(c)));
        return hopf::FiberSampler(std::move(basis));
    };
}

// ---------------------------------------------------------------------------
// Line fibration of R^3

using Vec2 = Eigen::Vector2d;

struct Line3 {
    Vec3 point;
    Vec3 direction;  // unit

    Vec3 at(double t) const { return point + t * direction; }
    double distance_to(const Vec3& q) const {
        const Vec3 d = q - point;
        return (d - d.dot(direction) * direction).norm();
    }
};

/// Each horizontal plane z = c is filled by the lines with direction angle alpha c.
struct LineFibrationR3 {
    double alpha{0.0};

    Vec3 direction_at_height(double c) const { return {std::cos(alpha * c), std::sin(alpha * c), 0.0}; }
    Line3 line_through(const Vec3& p) const { return {p, direction_at_height(p[2])}; }
};

inline LineFibrationR3 figure1_fibration(double alpha) { return {alpha}; }

inline Eigen::Matrix2d planar_rotation(double angle) {
    Eigen::Matrix2d r;
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return r;
}

/// (v, z) -> (R_{alpha t} v + w, z + t).
struct ScrewMotion {
    double alpha{0.0};
    double t{0.0};
    Vec2 w{Vec2::Zero()};

    Vec3 apply(const Vec3& p) const {
        const Vec2 v = planar_rotation(alpha * t) * p.head<2>() + w;
        return {v[0], v[1], p[2] + t};
    }

    /// (this o other)(p) = this(other(p)).
    ScrewMotion compose(const ScrewMotion& other) const {
        return {alpha, t + other.t, planar_rotation(alpha * t) * other.w + w};
    }
};

/// The screw motion taking the fibration line through p1 onto the one through p2.
inline ScrewMotion screw_between(const LineFibrationR3& fib, const Vec3& p1, const Vec3& p2) {
    const double t = p2[2] - p1[2];
    return {fib.alpha, t, p2.head<2>() - planar_rotation(fib.alpha * t) * p1.head<2>()};
}

inline constexpr std::array<double, 5> kLineParameters{-10.0, -1.0, 0.0, 1.0, 10.0};

/// Largest distance from the image of sampled points of `line` to `target`.
inline double line_image_residual(const ScrewMotion& m, const Line3& line, const Line3& target) {
    double worst = 0.0;
    for (double s : kLineParameters) worst = std::max(worst, target.distance_to(m.apply(line.at(s))));
    return worst;
}

struct ScrewReport {
    bool ok{true};
    double worst_residual{0.0};
    int pairs{0};
};

/// For random line pairs, the screw motion between them must map the first
/// onto the second and carry other sampled lines onto lines of the fibration.
inline ScrewReport screw_transitivity_check(const LineFibrationR3& fib, int pairs, std::uint64_t seed,
                                            double threshold = tol::kAlgebra, int extra_lines = 3) {
    if (pairs < 1) throw PreconditionError("screw_transitivity_check: need at least one pair");
    ScrewReport report;
    report.pairs = pairs;
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int k = 0; k < pairs; ++k) {
        Rng rng = make_stream(seed, 0x736372, static_cast<std::uint64_t>(k));
        auto point = [&] {
            Vec3 p;
            for (int i = 0; i < 3; ++i) p[i] = coord(rng);
            return p;
        };
        const Vec3 p1 = point(), p2 = point();
        const ScrewMotion m = screw_between(fib, p1, p2);
        double worst = line_image_residual(m, fib.line_through(p1), fib.line_through(p2));
        for (int e = 0; e < extra_lines; ++e) {
            const Vec3 q = point();
            worst = std::max(worst, line_image_residual(m, fib.line_through(q), fib.line_through(m.apply(q))));
        }
        report.worst_residual = std::max(report.worst_residual, worst);
    }
    report.ok = report.worst_residual < threshold;
    return report;
}

}  // namespace hopflab::symmetry
