#pragma once

/**
 * @file grassmann.hpp
 * @brief Oriented 2-planes in R^4 and the identification G_2(R^4) = S^2 x S^2.
 *
 * Bivectors are stored in the basis (e01, e02, e03, e12, e13, e23). A unit
 * bivector w splits into self-dual and anti-self-dual parts using the
 * orthonormal bases
 *
 *   self-dual:       (e01 + e23, e02 - e13, e03 + e12) / sqrt(2)
 *   anti-self-dual:  (e01 - e23, e02 + e13, e03 - e12) / sqrt(2)
 *
 * and the moduli point of a plane is sqrt(2) times the two coordinate
 * triples. With this orientation, left multiplication by unit quaternions
 * acts trivially on the anti-self-dual factor and right multiplication acts
 * trivially on the self-dual factor.
 */

#include "hopflab/algebra.hpp"

#include <utility>

namespace hopflab::grassmann {

using Bivector = Eigen::Matrix<double, 6, 1>;

/// u ^ v in the (e01, e02, e03, e12, e13, e23) basis.
inline Bivector wedge(const Vec4& u, const Vec4& v) {
    Bivector w;
    int k = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) w[k++] = u[a] * v[b] - u[b] * v[a];
    return w;
}

/// Skew-symmetric 4x4 matrix W with W_ab = w_ab.
inline Mat4 skew_matrix(const Bivector& w) {
    Mat4 m = Mat4::Zero();
    int k = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            m(a, b) = w[k];
            m(b, a) = -w[k];
            ++k;
        }
    return m;
}

inline Vec3 self_dual_part(const Bivector& w) { return {w[0] + w[5], w[1] - w[4], w[2] + w[3]}; }
inline Vec3 anti_self_dual_part(const Bivector& w) { return {w[0] - w[5], w[1] + w[4], w[2] - w[3]}; }

/// Inverse of (self_dual_part, anti_self_dual_part).
inline Bivector bivector_from_parts(const Vec3& plus, const Vec3& minus) {
    Bivector w;
    w[0] = 0.5 * (plus[0] + minus[0]);
    w[5] = 0.5 * (plus[0] - minus[0]);
    w[1] = 0.5 * (plus[1] + minus[1]);
    w[4] = 0.5 * (minus[1] - plus[1]);
    w[2] = 0.5 * (plus[2] + minus[2]);
    w[3] = 0.5 * (plus[2] - minus[2]);
    return w;
}

/// Oriented plane spanned by the ordered orthonormal pair (u, v).
class OrientedPlane2 {
public:
    OrientedPlane2(Vec4 u, Vec4 v, double tolerance = tol::kUnit) : u_(std::move(u)), v_(std::move(v)) {
        if (std::abs(u_.norm() - 1.0) > tolerance || std::abs(v_.norm() - 1.0) > tolerance ||
            std::abs(u_.dot(v_)) > tolerance)
            throw PreconditionError("OrientedPlane2: basis is not orthonormal");
    }

    /// Orthonormalizes an arbitrary independent pair, keeping the orientation.
    static OrientedPlane2 from_spanning(const Vec4& a, const Vec4& b) {
        const double na = a.norm();
        if (!(na > 0.0)) throw PreconditionError("OrientedPlane2: degenerate spanning pair");
        const Vec4 u = a / na;
        const Vec4 w = b - u.dot(b) * u;
        const double nw = w.norm();
        if (!(nw > 1e-12 * std::max(1.0, b.norm()))) throw PreconditionError("OrientedPlane2: degenerate spanning pair");
        return {u, w / nw};
    }

    const Vec4& u() const { return u_; }
    const Vec4& v() const { return v_; }

    Bivector bivector() const { return wedge(u_, v_); }
    Mat4 projector() const { return u_ * u_.transpose() + v_ * v_.transpose(); }
    Mat basis() const {
        Mat b(4, 2);
        b.col(0) = u_;
        b.col(1) = v_;
        return b;
    }
    OrientedPlane2 reversed() const { return {v_, u_}; }
    OrientedPlane2 transformed(const IsometrySO4& g) const { return {g.apply(u_), g.apply(v_)}; }

private:
    Vec4 u_, v_;
};

inline double projector_difference(const OrientedPlane2& a, const OrientedPlane2& b) {
    return (a.projector() - b.projector()).norm();
}

/// Uniformly random oriented plane (Gaussian pair, orthonormalized).
inline OrientedPlane2 random_plane(Rng& rng) {
    for (;;) {
        const Vec a = gaussian_vector(rng, 4), b = gaussian_vector(rng, 4);
        try {
            return OrientedPlane2::from_spanning(a, b);
        } catch (const PreconditionError&) {
        }
    }
}

struct ModuliPoint {
    Vec3 xi_plus;
    Vec3 xi_minus;

    bool is_valid(double tolerance = tol::kUnit) const {
        return std::abs(xi_plus.norm() - 1.0) <= tolerance && std::abs(xi_minus.norm() - 1.0) <= tolerance;
    }
};

inline double moduli_distance(const ModuliPoint& a, const ModuliPoint& b) {
    return std::hypot((a.xi_plus - b.xi_plus).norm(), (a.xi_minus - b.xi_minus).norm());
}

inline ModuliPoint plane_to_moduli(const OrientedPlane2& p) {
    const Bivector w = p.bivector();
    return {self_dual_part(w), anti_self_dual_part(w)};
}

/// Factors the bivector of m into an oriented orthonormal pair. The image of
/// the skew matrix is the plane; its top two left singular vectors span it.
inline OrientedPlane2 moduli_to_plane(const ModuliPoint& m) {
    if (!m.is_valid()) throw PreconditionError("moduli_to_plane: components must be unit vectors");
    const Mat4 w = skew_matrix(bivector_from_parts(m.xi_plus, m.xi_minus));
    Eigen::JacobiSVD<Mat4> svd(w, Eigen::ComputeFullU);
    Vec4 a = svd.matrixU().col(0);
    Vec4 b = svd.matrixU().col(1);
    b -= a.dot(b) * a;
    b.normalize();
    if (a.dot(w * b) < 0) std::swap(a, b);
    const Mat4 rebuilt = a * b.transpose() - b * a.transpose();
    if ((rebuilt - w).norm() > tol::kUnit)
        throw NumericalError("moduli_to_plane: bivector is not decomposable (reconstruction residual too large)");
    return {a, b};
}

/// Induced action of g on the 6-dimensional space of bivectors.
inline Eigen::Matrix<double, 6, 6> bivector_action(const IsometrySO4& g) {
    const Mat4 m = g.matrix();
    Eigen::Matrix<double, 6, 6> out;
    int k = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) out.col(k++) = wedge(m.col(a), m.col(b));
    return out;
}

/// The pair of rotations with plane_to_moduli(g P) = (R+ xi+, R- xi-).
inline std::pair<Mat3, Mat3> so4_to_so3xso3(const IsometrySO4& g) {
    const auto action = bivector_action(g);
    Mat3 plus, minus;
    for (int k = 0; k < 3; ++k) {
        const Vec3 e = Vec3::Unit(k);
        plus.col(k) = self_dual_part(action * bivector_from_parts(e, Vec3::Zero()));
        minus.col(k) = anti_self_dual_part(action * bivector_from_parts(Vec3::Zero(), e));
    }
    return {plus, minus};
}

}  // namespace hopflab::grassmann
