#pragma once

/**
 * @file hopf.hpp
 * @brief The complex, quaternionic and octonionic Hopf fibrations.
 *
 * Scalars act on the right:
 *   - complex fibers    {x e^{i t}}  on S^(2n+1)
 *   - quaternionic      {x q}        on S^(4n+3), q a unit quaternion
 *   - octonionic        {(c u, s conj(w) u)} on S^15, u a unit octonion
 *
 * On R^(2n+2) the complex structure J pairs consecutive coordinates
 * (x_2m, x_2m+1). Pair m carries +i when m is even and -i when m is odd, so
 * that on every quaternionic block of R^4 J is right multiplication by i.
 * Left multiplication by unit quaternions then commutes with J and permutes
 * the complex Hopf fibers of S^3.
 */

#include "hopflab/algebra.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace hopflab::hopf {

/// A great k-sphere, k = fiber_dim, inside S^ambient_dim.
class FiberSampler {
public:
    /// `basis` columns must be orthonormal vectors of R^(ambient_dim+1).
    explicit FiberSampler(Mat basis) : basis_(std::move(basis)) {
        if (basis_.cols() < 2 || basis_.rows() < basis_.cols())
            throw PreconditionError("FiberSampler: basis has the wrong shape");
        const Mat gram = basis_.transpose() * basis_;
        if ((gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > tol::kUnit)
            throw PreconditionError("FiberSampler: basis is not orthonormal");
    }

    int ambient_dim() const { return static_cast<int>(basis_.rows()) - 1; }
    int fiber_dim() const { return static_cast<int>(basis_.cols()) - 1; }
    const Mat& basis() const { return basis_; }

    /// Image of a point t of the unit fiber_dim-sphere.
    Vec sample(const Vec& t) const {
        if (t.size() != basis_.cols()) throw PreconditionError("FiberSampler::sample: parameter has wrong size");
        return basis_ * t;
    }

    /// The great circle through the first two basis vectors.
    Vec sample_angle(double theta) const { return std::cos(theta) * basis_.col(0) + std::sin(theta) * basis_.col(1); }

    /// Orthogonal projector onto the linear span of the fiber.
    Mat projector() const { return basis_ * basis_.transpose(); }

    /// Euclidean distance from p to the linear span of the fiber.
    double residual(const Vec& p) const { return (p - basis_ * (basis_.transpose() * p)).norm(); }

    /// Geodesic distance on the sphere from unit p to the fiber.
    double distance_to(const Vec& p) const {
        return std::acos(std::clamp((basis_.transpose() * p).norm(), 0.0, 1.0));
    }

private:
    Mat basis_;
};

/// Projector difference (Frobenius norm) between the spans of two fibers.
inline double span_difference(const FiberSampler& f, const FiberSampler& g) {
    if (f.basis().rows() != g.basis().rows()) throw PreconditionError("span_difference: dimension mismatch");
    return (f.projector() - g.projector()).norm();
}

/// Smallest principal angle between the column spans of two orthonormal bases.
/// Computed from sines so that small angles keep full relative accuracy.
inline double smallest_principal_angle(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw PreconditionError("smallest_principal_angle: dimension mismatch");
    const Mat complement = b - a * (a.transpose() * b);
    Eigen::JacobiSVD<Mat> svd(complement);
    const double s_min = svd.singularValues().minCoeff();
    return std::asin(std::clamp(s_min, 0.0, 1.0));
}

// ---------------------------------------------------------------------------
// Base points

enum class BaseKind { ComplexProjective, QuaternionicProjective, Sphere8 };

struct BasePoint {
    BaseKind kind;
    Vec representative;  // unit vector; for projective kinds, any point of the fiber
};

/// x -> J x, the complex structure described in the file comment.
inline Vec complex_structure(const Vec& x) {
    if (x.size() % 2 != 0) throw PreconditionError("complex_structure: odd ambient dimension");
    Vec out(x.size());
    for (Eigen::Index m = 0; m < x.size() / 2; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        out[2 * m] = -sign * x[2 * m + 1];
        out[2 * m + 1] = sign * x[2 * m];
    }
    return out;
}

/// Coordinatewise right multiplication by q on H^(n+1) = R^(4n+4).
inline Vec right_multiply(const Vec& x, const Quaternion& q) {
    if (x.size() % 4 != 0) throw PreconditionError("right_multiply: ambient dimension is not a multiple of 4");
    Vec out(x.size());
    for (Eigen::Index b = 0; b < x.size(); b += 4) {
        const Quaternion block{x[b], x[b + 1], x[b + 2], x[b + 3]};
        out.segment<4>(b) = (block * q).to_vec();
    }
    return out;
}

/// Coordinatewise left multiplication by q on H^(n+1).
inline Vec left_multiply(const Quaternion& q, const Vec& x) {
    if (x.size() % 4 != 0) throw PreconditionError("left_multiply: ambient dimension is not a multiple of 4");
    Vec out(x.size());
    for (Eigen::Index b = 0; b < x.size(); b += 4) {
        const Quaternion block{x[b], x[b + 1], x[b + 2], x[b + 3]};
        out.segment<4>(b) = (q * block).to_vec();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fibers

inline FiberSampler complex_hopf_fiber(const UnitVector& x) {
    if (x.dim() < 3 || x.dim() % 2 == 0) throw PreconditionError("complex_hopf_fiber: need S^(2n+1), n >= 1");
    Mat basis(x.dim() + 1, 2);
    basis.col(0) = x.coords();
    basis.col(1) = complex_structure(x.coords());
    return FiberSampler(std::move(basis));
}

inline FiberSampler quaternionic_hopf_fiber(const UnitVector& x) {
    if ((x.dim() + 1) % 4 != 0) throw PreconditionError("quaternionic_hopf_fiber: need S^(4n+3)");
    Mat basis(x.dim() + 1, 4);
    basis.col(0) = x.coords();
    basis.col(1) = right_multiply(x.coords(), Quaternion::i());
    basis.col(2) = right_multiply(x.coords(), Quaternion::j());
    basis.col(3) = right_multiply(x.coords(), Quaternion::k());
    return FiberSampler(std::move(basis));
}

inline BasePoint complex_base_point(const UnitVector& x) {
    complex_hopf_fiber(x);  // validates the dimension
    return {BaseKind::ComplexProjective, x.coords()};
}

inline BasePoint quaternionic_base_point(const UnitVector& x) {
    quaternionic_hopf_fiber(x);
    return {BaseKind::QuaternionicProjective, x.coords()};
}

/// (a, b) in S^15 -> (2 a conj(b), |a|^2 - |b|^2) in S^8 (octonion part first).
inline BasePoint octonionic_hopf_map(const Octonion& a, const Octonion& b) {
    const double na = a.norm_squared(), nb = b.norm_squared();
    if (std::abs(na + nb - 1.0) > tol::kUnit) throw PreconditionError("octonionic_hopf_map: |a|^2 + |b|^2 != 1");
    Vec p(9);
    p.head<8>() = (2.0 * (a * b.conj())).to_vec();
    p[8] = na - nb;
    return {BaseKind::Sphere8, p};
}

inline BasePoint octonionic_hopf_map(const UnitVector& x) {
    if (x.dim() != 15) throw PreconditionError("octonionic_hopf_map: expected a point of S^15");
    return octonionic_hopf_map(Octonion::from_vec(x.coords().head<8>()), Octonion::from_vec(x.coords().tail<8>()));
}

inline FiberSampler octonionic_hopf_fiber(const BasePoint& p) {
    if (p.kind != BaseKind::Sphere8 || p.representative.size() != 9)
        throw PreconditionError("octonionic_hopf_fiber: expected a point of S^8");
    if (std::abs(p.representative.norm() - 1.0) > tol::kUnit)
        throw PreconditionError("octonionic_hopf_fiber: base point is not unit");

    const Vec oct = p.representative.head<8>();
    const double height = p.representative[8];
    const double r = oct.norm();
    // p = (sin 2t w, cos 2t)
    const double t = 0.5 * std::atan2(r, height);
    const double c = std::cos(t), s = std::sin(t);

    Mat basis = Mat::Zero(16, 8);
    if (r < 1e-14) {
        // poles: one coordinate O-axis
        const Eigen::Index offset = height > 0 ? 0 : 8;
        basis.block(offset, 0, 8, 8) = Mat::Identity(8, 8);
        return FiberSampler(std::move(basis));
    }
    const Octonion w_conj = Octonion::from_vec(oct / r).conj();
    for (int i = 0; i < 8; ++i) {
        const Octonion u = Octonion::basis(i);
        basis.col(i).head<8>() = (c * u).to_vec();
        basis.col(i).tail<8>() = (s * (w_conj * u)).to_vec();
    }
    return FiberSampler(std::move(basis));
}

/// Fiber of the base point's own Hopf fibration.
inline FiberSampler fiber_of(const BasePoint& p) {
    switch (p.kind) {
    case BaseKind::ComplexProjective: return complex_hopf_fiber(UnitVector(p.representative));
    case BaseKind::QuaternionicProjective: return quaternionic_hopf_fiber(UnitVector(p.representative));
    case BaseKind::Sphere8: return octonionic_hopf_fiber(p);
    }
    throw PreconditionError("fiber_of: unknown base kind");
}

/// Equality of base points: projective kinds compare fiber projectors.
inline bool same_base_point(const BasePoint& a, const BasePoint& b, double tolerance = tol::kUnit) {
    if (a.kind != b.kind || a.representative.size() != b.representative.size()) return false;
    if (a.kind == BaseKind::Sphere8) return (a.representative - b.representative).norm() <= tolerance;
    return span_difference(fiber_of(a), fiber_of(b)) <= tolerance;
}

// ---------------------------------------------------------------------------
// Distances between fibers

struct FiberDistance {
    double min{0};                  // smallest pointwise distance from sampled p in F to G
    double max_over_basepoints{0};  // largest pointwise distance from sampled p in F to G

    double spread() const { return max_over_basepoints - min; }
};

/// Points of F used by fiber_distance: equally spaced angles on circles, a
/// fixed pseudo-random cloud on higher-dimensional fibers.
inline std::vector<Vec> fiber_grid(const FiberSampler& f, int grid) {
    std::vector<Vec> points;
    points.reserve(static_cast<std::size_t>(grid));
    if (f.fiber_dim() == 1) {
        for (int k = 0; k < grid; ++k) points.push_back(f.sample_angle(2.0 * std::numbers::pi * k / grid));
        return points;
    }
    Rng rng = make_stream(0x686f7066u, static_cast<std::uint64_t>(f.fiber_dim()));
    for (int k = 0; k < grid; ++k) points.push_back(f.sample(random_unit_vector(rng, f.fiber_dim()).coords()));
    return points;
}

/// For every sampled p in F, the distance to G is attained at the normalized
/// projection of p onto span(G), so d(p, G) = arccos |B_G^T p|.
inline FiberDistance fiber_distance(const FiberSampler& f, const FiberSampler& g, int grid) {
    if (f.ambient_dim() != g.ambient_dim()) throw PreconditionError("fiber_distance: dimension mismatch");
    if (grid < 16) throw PreconditionError("fiber_distance: grid must be at least 16");
    FiberDistance out{std::numeric_limits<double>::infinity(), 0.0};
    for (const Vec& p : fiber_grid(f, grid)) {
        const double d = g.distance_to(p);
        out.min = std::min(out.min, d);
        out.max_over_basepoints = std::max(out.max_over_basepoints, d);
    }
    return out;
}

}  // namespace hopflab::hopf
