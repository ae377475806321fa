#pragma once

/**
 * @file curvature.hpp
 * @brief Sectional curvature of surfaces from frame structure constants, and a
 *        finite-difference curvature engine on chart metrics to check it.
 *
 * Convention: K(X, Y) = <R(X,Y)X, Y> with R(X,Y) = [nabla_Y, nabla_X] + nabla_[X,Y],
 * so that K is the Gaussian curvature for an orthonormal frame.
 */

#include "hopflab/algebra.hpp"

#include <array>
#include <functional>
#include <utility>

namespace hopflab::moduli {

using Point2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Chart metric p -> g(p), symmetric positive definite.
using MetricField = std::function<Mat2(const Point2&)>;
/// Chart frame p -> (X(p), Y(p)) in coordinate components.
using FrameField = std::function<std::pair<Point2, Point2>(const Point2&)>;

/// [X, Y] = a X + b Y for an orthonormal frame preserved by local isometries
/// gives K = -a^2 - b^2.
constexpr double curvature_from_structure_constants(double a, double b) { return -a * a - b * b; }

namespace detail {

using Christoffel = std::array<Mat2, 2>;  // gamma[k](i, j) = Gamma^k_ij

inline Christoffel christoffel(const MetricField& metric, const Point2& p, double h) {
    std::array<Mat2, 2> dg;  // dg[l] = d g / d x^l
    for (int l = 0; l < 2; ++l) {
        const Point2 step = h * Point2::Unit(l);
        dg[static_cast<std::size_t>(l)] = (metric(p + step) - metric(p - step)) / (2.0 * h);
    }
    const Mat2 inv = metric(p).inverse();
    Christoffel gamma;
    for (int k = 0; k < 2; ++k) {
        Mat2 g_k = Mat2::Zero();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int l = 0; l < 2; ++l)
                    g_k(i, j) += 0.5 * inv(k, l) *
                                 (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                                  dg[static_cast<std::size_t>(l)](i, j));
        gamma[static_cast<std::size_t>(k)] = g_k;
    }
    return gamma;
}

/// <R_std(X,Y)Y, X> from nested central differences with step h.
inline double frame_curvature_at_step(const MetricField& metric, const FrameField& frame, const Point2& p, double h) {
    const Christoffel gamma = christoffel(metric, p, h);
    std::array<Christoffel, 2> dgamma;  // dgamma[m][l](i, j) = d_m Gamma^l_ij
    for (int m = 0; m < 2; ++m) {
        const Point2 step = h * Point2::Unit(m);
        const Christoffel plus = christoffel(metric, p + step, h);
        const Christoffel minus = christoffel(metric, p - step, h);
        for (int l = 0; l < 2; ++l) {
            const auto ul = static_cast<std::size_t>(l);
            dgamma[static_cast<std::size_t>(m)][ul] = (plus[ul] - minus[ul]) / (2.0 * h);
        }
    }
    // R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^m_jk G^l_im - G^m_ik G^l_jm
    auto riemann = [&](int l, int i, int j, int k) {
        const auto ul = static_cast<std::size_t>(l);
        double r = dgamma[static_cast<std::size_t>(i)][ul](j, k) - dgamma[static_cast<std::size_t>(j)][ul](i, k);
        for (int m = 0; m < 2; ++m) {
            const auto um = static_cast<std::size_t>(m);
            r += gamma[um](j, k) * gamma[ul](i, m) - gamma[um](i, k) * gamma[ul](j, m);
        }
        return r;
    };
    const auto [x, y] = frame(p);
    const Mat2 g = metric(p);
    double out = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    for (int m = 0; m < 2; ++m) out += x[i] * y[j] * y[k] * riemann(l, i, j, k) * g(l, m) * x[m];
    return out;
}

}  // namespace detail

/// <R(X,Y)X, Y> at p for the given chart metric and frame. Evaluated at steps
/// h and h/2; a disagreement above 1e-3 (relative to max(1, |K|)) means the
/// step is too large. Returns the Richardson extrapolation of the two.
inline double numeric_frame_curvature(const MetricField& metric, const FrameField& frame, const Point2& p,
                                      double h = 1e-3) {
    if (!(h > 0.0)) throw PreconditionError("numeric_frame_curvature: step must be positive");
    const Eigen::SelfAdjointEigenSolver<Mat2> eig(metric(p));
    if (eig.eigenvalues().minCoeff() <= 0.0) throw PreconditionError("numeric_frame_curvature: metric is not positive definite");
    const double coarse = detail::frame_curvature_at_step(metric, frame, p, h);
    const double fine = detail::frame_curvature_at_step(metric, frame, p, 0.5 * h);
    if (!std::isfinite(coarse) || !std::isfinite(fine) ||
        std::abs(coarse - fine) > 1e-3 * std::max(1.0, std::abs(fine)))
        throw NumericalError("numeric_frame_curvature: step too large (Richardson check diverged)");
    return (4.0 * fine - coarse) / 3.0;
}

/// Coefficients (a, b) with [X, Y] = a X + b Y at p, from central differences.
inline std::pair<double, double> frame_structure_constants(const FrameField& frame, const Point2& p, double h = 1e-5) {
    std::array<std::pair<Point2, Point2>, 2> d;  // d[i] = (d_i X, d_i Y)
    for (int i = 0; i < 2; ++i) {
        const Point2 step = h * Point2::Unit(i);
        const auto [xp, yp] = frame(p + step);
        const auto [xm, ym] = frame(p - step);
        d[static_cast<std::size_t>(i)] = {(xp - xm) / (2.0 * h), (yp - ym) / (2.0 * h)};
    }
    const auto [x, y] = frame(p);
    Point2 bracket = Point2::Zero();
    for (int i = 0; i < 2; ++i) bracket += x[i] * d[static_cast<std::size_t>(i)].second - y[i] * d[static_cast<std::size_t>(i)].first;
    Mat2 columns;
    columns.col(0) = x;
    columns.col(1) = y;
    const Point2 ab = columns.fullPivLu().solve(bracket);
    return {ab[0], ab[1]};
}

// ---------------------------------------------------------------------------
// Reference charts

inline MetricField euclidean_metric() {
    return [](const Point2&) { return Mat2::Identity().eval(); };
}

inline FrameField coordinate_frame() {
    return [](const Point2&) { return std::make_pair(Point2(1, 0), Point2(0, 1)); };
}

/// (dx^2 + dy^2) / y^2 on y > 0.
inline MetricField upper_half_plane_metric() {
    return [](const Point2& p) { return (Mat2::Identity() / (p[1] * p[1])).eval(); };
}

/// (y d/dx, y d/dy), orthonormal for the half-plane metric, with [X, Y] = -X.
inline FrameField upper_half_plane_frame() {
    return [](const Point2& p) { return std::make_pair(Point2(p[1], 0), Point2(0, p[1])); };
}

/// Round unit sphere in (theta, phi): d theta^2 + sin^2 theta d phi^2.
inline MetricField round_sphere_metric() {
    return [](const Point2& p) {
        Mat2 g = Mat2::Zero();
        g(0, 0) = 1.0;
        g(1, 1) = std::sin(p[0]) * std::sin(p[0]);
        return g;
    };
}

/// (d/d theta, d/d phi / sin theta).
inline FrameField round_sphere_frame() {
    return [](const Point2& p) { return std::make_pair(Point2(1, 0), Point2(0, 1.0 / std::sin(p[0]))); };
}

}  // namespace hopflab::moduli
