#pragma once

/**
 * @file algebra.hpp
 * @brief Normed division algebras, points on round spheres, and SO(4) as
 *        pairs of unit quaternions.
 *
 * Quaternions follow the Hamilton convention:
 *   i^2 = j^2 = k^2 = ijk = -1,   ij = k, jk = i, ki = j
 *
 * R^4 is identified with H via (x0, x1, x2, x3) <-> x0 + x1 i + x2 j + x3 k.
 *
 * Octonions are built by Cayley-Dickson doubling of quaternion pairs:
 *   (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
 * with basis e0..e3 = (1, i, j, k, 0) and e4..e7 = (0, 1, i, j, k).
 */

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace hopflab {

/// Precondition violated by a caller (non-unit input, dimension mismatch...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure produced a result it cannot vouch for.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double kUnit = 1e-9;      // unit / orthogonality preconditions
inline constexpr double kAlgebra = 1e-12;  // algebraic identities
}  // namespace tol

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// ---------------------------------------------------------------------------
// Quaternion

struct Quaternion {
    double w{0}, x{0}, y{0}, z{0};

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w{w_}, x{x_}, y{y_}, z{z_} {}

    static constexpr Quaternion one() { return {1, 0, 0, 0}; }
    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    static Quaternion from_vec(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
    Vec4 to_vec() const { return {w, x, y, z}; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    constexpr double norm_squared() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_squared()); }

    Quaternion normalized() const {
        const double n = norm();
        if (n == 0.0) throw PreconditionError("cannot normalize the zero quaternion");
        return {w / n, x / n, y / n, z / n};
    }

    constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    friend constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

    // Hamilton product
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    constexpr bool operator==(const Quaternion&) const = default;
};

inline Quaternion quat_mul(const Quaternion& a, const Quaternion& b) { return a * b; }

inline double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

/// Matrix of v -> q v on R^4.
inline Mat4 left_mult_matrix(const Quaternion& q) {
    Mat4 m;
    m << q.w, -q.x, -q.y, -q.z,
         q.x,  q.w, -q.z,  q.y,
         q.y,  q.z,  q.w, -q.x,
         q.z, -q.y,  q.x,  q.w;
    return m;
}

/// Matrix of v -> v q on R^4.
inline Mat4 right_mult_matrix(const Quaternion& q) {
    Mat4 m;
    m << q.w, -q.x, -q.y, -q.z,
         q.x,  q.w,  q.z, -q.y,
         q.y, -q.z,  q.w,  q.x,
         q.z,  q.y, -q.x,  q.w;
    return m;
}

/// Rotation matrix of v -> q v conj(q) on the imaginary quaternions, for unit q.
inline Mat3 rotation_matrix(const Quaternion& q) {
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    Mat3 r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return r;
}

// ---------------------------------------------------------------------------
// Octonion

struct Octonion {
    Quaternion a{}, b{};  // (a, b) with a in span(e0..e3), b in span(e4..e7)

    constexpr Octonion() = default;
    constexpr Octonion(const Quaternion& a_, const Quaternion& b_) : a{a_}, b{b_} {}

    static constexpr Octonion one() { return {Quaternion::one(), {}}; }

    /// Basis element e_index, index in [0, 8).
    static Octonion basis(int index) {
        if (index < 0 || index > 7) throw PreconditionError("octonion basis index out of range");
        std::array<double, 8> c{};
        c[static_cast<std::size_t>(index)] = 1.0;
        return from_array(c);
    }

    static constexpr Octonion from_array(const std::array<double, 8>& c) {
        return {{c[0], c[1], c[2], c[3]}, {c[4], c[5], c[6], c[7]}};
    }
    static Octonion from_vec(const Eigen::Ref<const Vec>& v) {
        if (v.size() != 8) throw PreconditionError("octonion needs 8 coordinates");
        return {{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}};
    }

    constexpr std::array<double, 8> coords() const { return {a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z}; }
    Vec to_vec() const {
        Vec v(8);
        v << a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z;
        return v;
    }

    constexpr Octonion conj() const { return {a.conj(), -b}; }
    constexpr double norm_squared() const { return a.norm_squared() + b.norm_squared(); }
    double norm() const { return std::sqrt(norm_squared()); }

    Octonion normalized() const {
        const double n = norm();
        if (n == 0.0) throw PreconditionError("cannot normalize the zero octonion");
        return *this * (1.0 / n);
    }

    constexpr Octonion operator+(const Octonion& o) const { return {a + o.a, b + o.b}; }
    constexpr Octonion operator-(const Octonion& o) const { return {a - o.a, b - o.b}; }
    constexpr Octonion operator-() const { return {-a, -b}; }
    constexpr Octonion operator*(double s) const { return {a * s, b * s}; }
    friend constexpr Octonion operator*(double s, const Octonion& o) { return o * s; }

    constexpr Octonion operator*(const Octonion& o) const {
        return {a * o.a - o.b.conj() * b, o.b * a + b * o.a.conj()};
    }

    constexpr bool operator==(const Octonion&) const = default;
};

inline Octonion oct_mul(const Octonion& x, const Octonion& y) { return x * y; }

inline double distance(const Octonion& x, const Octonion& y) { return (x - y).norm(); }

// ---------------------------------------------------------------------------
// Points on round spheres

/// A point of the round sphere S^dim in R^(dim+1).
class UnitVector {
public:
    /// Checked constructor: |coords| must be 1 within `tolerance`.
    explicit UnitVector(Vec coords, double tolerance = tol::kUnit) : coords_(std::move(coords)) {
        if (coords_.size() < 2) throw PreconditionError("UnitVector needs at least 2 coordinates");
        if (!coords_.allFinite() || std::abs(coords_.norm() - 1.0) > tolerance)
            throw PreconditionError("UnitVector coordinates are not unit norm");
    }

    /// Rescales `v` onto the sphere.
    static UnitVector normalize(const Vec& v) {
        const double n = v.norm();
        if (!(n > 0.0) || !std::isfinite(n)) throw PreconditionError("cannot normalize a zero or non-finite vector");
        return UnitVector(v / n);
    }

    /// Standard basis vector e_index of R^(dim+1).
    static UnitVector axis(int dim, int index) {
        if (index < 0 || index > dim) throw PreconditionError("axis index out of range");
        Vec v = Vec::Zero(dim + 1);
        v[index] = 1.0;
        return UnitVector(std::move(v));
    }

    int dim() const { return static_cast<int>(coords_.size()) - 1; }
    const Vec& coords() const { return coords_; }
    double operator[](Eigen::Index i) const { return coords_[i]; }

private:
    Vec coords_;
};

/// Great-circle distance on S^n, with the inner product clamped into [-1, 1].
inline double sphere_geodesic_distance(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw PreconditionError("sphere_geodesic_distance: dimension mismatch");
    return std::acos(std::clamp(x.dot(y), -1.0, 1.0));
}

inline double sphere_geodesic_distance(const UnitVector& x, const UnitVector& y) {
    return sphere_geodesic_distance(x.coords(), y.coords());
}

// ---------------------------------------------------------------------------
// Random streams

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent engine for sample `index` of stream `stream` under `seed`.
/// Drawing per-index engines makes results independent of work partitioning.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
    return Rng(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index));
}

inline Vec gaussian_vector(Rng& rng, Eigen::Index size) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec v(size);
    for (Eigen::Index i = 0; i < size; ++i) v[i] = normal(rng);
    return v;
}

/// Uniform point on S^dim (normalized Gaussian).
inline UnitVector random_unit_vector(Rng& rng, int dim) {
    for (;;) {
        Vec v = gaussian_vector(rng, dim + 1);
        const double n = v.norm();
        if (n > 1e-300) return UnitVector(v / n);
    }
}

/// Haar-uniform unit quaternion.
inline Quaternion haar_unit_quaternion(Rng& rng) {
    return Quaternion::from_vec(random_unit_vector(rng, 3).coords());
}

// ---------------------------------------------------------------------------
// SO(4) as SU(2) x SU(2)

/// Rotation of R^4 = H acting as v -> left * v * conj(right).
struct IsometrySO4 {
    Quaternion left{Quaternion::one()};
    Quaternion right{Quaternion::one()};

    static constexpr IsometrySO4 identity() { return {}; }

    bool is_valid(double tolerance = tol::kUnit) const {
        return std::abs(left.norm() - 1.0) <= tolerance && std::abs(right.norm() - 1.0) <= tolerance;
    }

    Quaternion apply(const Quaternion& v) const { return left * v * right.conj(); }

    Vec4 apply(const Vec4& v) const { return apply(Quaternion::from_vec(v)).to_vec(); }

    /// (this o other)(v) = this(other(v)).
    IsometrySO4 compose(const IsometrySO4& other) const { return {left * other.left, right * other.right}; }

    IsometrySO4 inverse() const { return {left.conj(), right.conj()}; }

    Mat4 matrix() const { return left_mult_matrix(left) * right_mult_matrix(right.conj()); }
};

inline UnitVector rot4_apply(const IsometrySO4& g, const UnitVector& v) {
    if (!g.is_valid()) throw PreconditionError("rot4_apply: factor quaternions must be unit");
    if (v.dim() != 3) throw PreconditionError("rot4_apply: expected a point of S^3");
    const Vec4 out = g.apply(Vec4(v.coords()));
    return UnitVector(Vec(out), tol::kUnit);
}

inline IsometrySO4 haar_so4(Rng& rng) {
    const Quaternion l = haar_unit_quaternion(rng);
    return {l, haar_unit_quaternion(rng)};
}

}  // namespace hopflab
