#pragma once

/**
 * @file repcheck.hpp
 * @brief Monte Carlo Frobenius-Schur indicators over Haar samples of small
 *        compact groups, tensor-product type checks, and a table of the
 *        low-dimensional irreducible representations of SU(n+1), Sp(n), Spin(9).
 *
 * The indicator of an irreducible character chi is the Haar integral of
 * chi(g^2): +1 for real type, 0 for complex type, -1 for quaternionic type.
 */

#include "hopflab/algebra.hpp"

#include <array>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace hopflab::repcheck {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;

enum class GroupId { SU2, SO3, U1, SU3, Sp2 };

inline std::string to_string(GroupId g) {
    switch (g) {
    case GroupId::SU2: return "SU2";
    case GroupId::SO3: return "SO3";
    case GroupId::U1: return "U1";
    case GroupId::SU3: return "SU3";
    case GroupId::Sp2: return "Sp2";
    }
    return "?";
}

inline std::optional<GroupId> parse_group(std::string_view s) {
    for (GroupId g : {GroupId::SU2, GroupId::SO3, GroupId::U1, GroupId::SU3, GroupId::Sp2})
        if (s == to_string(g)) return g;
    return std::nullopt;
}

inline int defining_dimension(GroupId g) {
    switch (g) {
    case GroupId::SU2: return 2;
    case GroupId::SO3: return 3;
    case GroupId::U1: return 1;
    case GroupId::SU3: return 3;
    case GroupId::Sp2: return 4;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Haar samplers

/// Unit quaternion a + bi + cj + dk as the SU(2) matrix [[a+bi, c+di], [-c+di, a-bi]].
inline CMat quaternion_matrix(const Quaternion& q) {
    CMat m(2, 2);
    m << Complex(q.w, q.x), Complex(q.y, q.z), Complex(-q.y, q.z), Complex(q.w, -q.x);
    return m;
}

inline CMat haar_su2(Rng& rng) { return quaternion_matrix(haar_unit_quaternion(rng)); }

/// Push-forward of Haar SU(2) under the double cover SU(2) -> SO(3).
inline CMat haar_so3(Rng& rng) { return rotation_matrix(haar_unit_quaternion(rng)).cast<Complex>(); }

inline CMat haar_u1(Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    CMat m(1, 1);
    m(0, 0) = std::polar(1.0, angle(rng));
    return m;
}

/// QR of a complex Gaussian matrix with the phases of diag(R) moved into Q
/// gives Haar U(n); dividing by a cube root of the determinant lands in SU(3).
inline CMat haar_su3(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMat z(3, 3);
    for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) {
            const double re = normal(rng);
            z(i, j) = Complex(re, normal(rng));
        }
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    const CMat& r = qr.matrixQR();
    for (Eigen::Index i = 0; i < 3; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    const Complex det = q.determinant();
    return q * std::polar(1.0, -std::arg(det) / 3.0);
}

/// Sp(2) as 2x2 quaternionic unitary matrices, from quaternionic Gram-Schmidt
/// of a Gaussian matrix, returned in the 4x4 complex form (blocks quaternion_matrix).
inline CMat haar_sp2(Rng& rng) {
    std::array<std::array<Quaternion, 2>, 2> cols;  // cols[c][r]
    for (auto& col : cols)
        for (auto& entry : col) entry = Quaternion::from_vec(Vec4(gaussian_vector(rng, 4)));
    auto inner = [](const std::array<Quaternion, 2>& u, const std::array<Quaternion, 2>& v) {
        return u[0].conj() * v[0] + u[1].conj() * v[1];
    };
    auto normalize = [&](std::array<Quaternion, 2>& u) {
        const double n = std::sqrt(inner(u, u).w);
        for (auto& e : u) e = e * (1.0 / n);
    };
    normalize(cols[0]);
    const Quaternion coef = inner(cols[0], cols[1]);
    for (int r = 0; r < 2; ++r) cols[1][r] = cols[1][r] - cols[0][r] * coef;
    normalize(cols[1]);
    CMat m(4, 4);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            const Quaternion& q = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
            m.block(2 * r, 2 * c, 2, 2) = quaternion_matrix(q);
        }
    return m;
}

inline CMat haar_draw(GroupId g, Rng& rng) {
    switch (g) {
    case GroupId::SU2: return haar_su2(rng);
    case GroupId::SO3: return haar_so3(rng);
    case GroupId::U1: return haar_u1(rng);
    case GroupId::SU3: return haar_su3(rng);
    case GroupId::Sp2: return haar_sp2(rng);
    }
    throw PreconditionError("haar_draw: unknown group");
}

/// A group element: one matrix per factor of a product group.
using Element = std::vector<CMat>;

inline Element squared(const Element& g) {
    Element out;
    out.reserve(g.size());
    for (const CMat& m : g) out.push_back(m * m);
    return out;
}

class GroupSampler {
public:
    explicit GroupSampler(GroupId g) : factors_{g} {}
    GroupSampler(GroupId g, GroupId h) : factors_{g, h} {}

    static GroupSampler product(const GroupSampler& a, const GroupSampler& b) {
        GroupSampler out(a);
        out.factors_.insert(out.factors_.end(), b.factors_.begin(), b.factors_.end());
        return out;
    }

    const std::vector<GroupId>& factors() const { return factors_; }
    std::size_t factor_count() const { return factors_.size(); }

    std::string name() const {
        std::string s;
        for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "x" : "") + to_string(factors_[i]);
        return s;
    }

    Element draw(Rng& rng) const {
        Element out;
        out.reserve(factors_.size());
        for (GroupId g : factors_) out.push_back(haar_draw(g, rng));
        return out;
    }

    Element identity() const {
        Element out;
        for (GroupId g : factors_) out.push_back(CMat::Identity(defining_dimension(g), defining_dimension(g)));
        return out;
    }

private:
    std::vector<GroupId> factors_;
};

// ---------------------------------------------------------------------------
// Characters

struct Character {
    std::string rep_id;
    int dimension{1};
    std::size_t factor_count{1};
    std::function<Complex(std::span<const CMat>)> eval;

    Complex operator()(std::span<const CMat> g) const {
        if (g.size() != factor_count) throw PreconditionError("Character: element has the wrong number of factors");
        return eval(g);
    }
    Complex operator()(const Element& g) const { return (*this)(std::span<const CMat>(g)); }
};

inline Character trivial_character(std::size_t factor_count = 1) {
    return {"trivial", 1, factor_count, [](std::span<const CMat>) { return Complex(1.0, 0.0); }};
}

inline Character defining_character(GroupId g) {
    return {"defining", defining_dimension(g), 1, [](std::span<const CMat> e) { return e[0].trace(); }};
}

inline Character conjugate_defining_character(GroupId g) {
    return {"conjugate-defining", defining_dimension(g), 1,
            [](std::span<const CMat> e) { return std::conj(Complex(e[0].trace())); }};
}

/// Adjoint representation: |tr g|^2 - 1 on SU(n), the defining character on SO(3),
/// and the symmetric square (tr(g)^2 + tr(g^2)) / 2 on Sp(2).
inline Character adjoint_character(GroupId g) {
    switch (g) {
    case GroupId::SU2:
    case GroupId::SU3: {
        const int n = defining_dimension(g);
        return {"adjoint", n * n - 1, 1, [](std::span<const CMat> e) { return Complex(std::norm(e[0].trace()) - 1.0, 0.0); }};
    }
    case GroupId::SO3: return {"adjoint", 3, 1, [](std::span<const CMat> e) { return e[0].trace(); }};
    case GroupId::Sp2:
        return {"adjoint", 10, 1, [](std::span<const CMat> e) {
                    const Complex t = e[0].trace();
                    return 0.5 * (t * t + Complex((e[0] * e[0]).trace()));
                }};
    case GroupId::U1: return {"adjoint", 1, 1, [](std::span<const CMat>) { return Complex(1.0, 0.0); }};
    }
    throw PreconditionError("adjoint_character: unknown group");
}

/// Named representation of a single group; nullopt when unsupported.
inline std::optional<Character> named_character(GroupId g, std::string_view rep) {
    if (rep == "trivial") return trivial_character();
    if (rep == "defining" || rep == "vector") return defining_character(g);
    if (rep == "conjugate-defining") return conjugate_defining_character(g);
    if (rep == "adjoint") return adjoint_character(g);
    return std::nullopt;
}

/// chi_{V (x) W}(g, h) = chi_V(g) chi_W(h) on the product group.
inline Character tensor_character(const Character& v, const Character& w) {
    const std::size_t split = v.factor_count;
    return {v.rep_id + "(x)" + w.rep_id, v.dimension * w.dimension, v.factor_count + w.factor_count,
            [v, w, split](std::span<const CMat> e) { return v.eval(e.first(split)) * w.eval(e.subspan(split)); }};
}

// ---------------------------------------------------------------------------
// Frobenius-Schur indicator

struct IndicatorEstimate {
    double estimate{0};
    double stderr_{0};
    double imag_mean{0};
    std::size_t n{0};
};

namespace detail {

/// chi(g_k^2) for k in [0, n), sample k drawn from make_stream(seed, stream, k).
/// Work is split across `workers` threads; values do not depend on the split.
inline std::vector<Complex> squared_character_values(const Character& chi, const GroupSampler& sampler, std::size_t n,
                                                     std::uint64_t seed, std::uint64_t stream, unsigned workers) {
    std::vector<Complex> values(n);
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            Rng rng = make_stream(seed, stream, k);
            values[k] = chi(squared(sampler.draw(rng)));
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        run(0, n);
        return values;
    }
    {
        std::vector<std::jthread> threads;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t begin = 0; begin < n; begin += chunk)
            threads.emplace_back(run, begin, std::min(n, begin + chunk));
    }
    return values;
}

inline IndicatorEstimate summarize(const std::vector<Complex>& values) {
    const auto n = static_cast<double>(values.size());
    Complex sum{0, 0};
    for (const Complex& v : values) sum += v;
    const Complex mean = sum / n;
    double var_re = 0, var_im = 0;
    for (const Complex& v : values) {
        var_re += (v.real() - mean.real()) * (v.real() - mean.real());
        var_im += (v.imag() - mean.imag()) * (v.imag() - mean.imag());
    }
    const double denom = values.size() > 1 ? n - 1.0 : 1.0;
    IndicatorEstimate out;
    out.estimate = mean.real();
    out.stderr_ = std::sqrt(var_re / denom / n);
    out.imag_mean = mean.imag();
    out.n = values.size();
    const double imag_stderr = std::sqrt(var_im / denom / n);
    if (std::abs(out.imag_mean) >= 5.0 * std::max(out.stderr_, imag_stderr) + 1e-12)
        throw NumericalError("fs_indicator: imaginary part of the mean is implausibly large");
    return out;
}

}  // namespace detail

inline constexpr std::size_t kMinIndicatorSamples = 1000;

inline IndicatorEstimate fs_indicator(const Character& chi, const GroupSampler& sampler, std::size_t n, std::uint64_t seed,
                                      unsigned workers = 1) {
    if (n < kMinIndicatorSamples) throw PreconditionError("fs_indicator: need at least 1000 samples");
    if (chi.factor_count != sampler.factor_count()) throw PreconditionError("fs_indicator: character and group disagree");
    return detail::summarize(detail::squared_character_values(chi, sampler, n, seed, 0x6673, workers));
}

/// Nearest of {-1, 0, +1}.
inline int nearest_type_value(double estimate) {
    return static_cast<int>(std::clamp(std::round(estimate), -1.0, 1.0));
}

struct TensorTypeReport {
    double indicator_v{0};
    double indicator_w{0};
    double indicator_product{0};  // indicator_v * indicator_w
    double indicator_tensor{0};   // Monte Carlo over the paired samples (g_k, h_k)
    double tensor_stderr{0};
    std::size_t grid{0};          // product-grid size m
    double grid_tensor{0};        // (1/m^2) sum_{k,l} Re chi_{V(x)W}(g_k^2, h_l^2)
    double grid_product{0};       // Re[(1/m) sum chi_V(g_k^2) * (1/m) sum chi_W(h_l^2)]
    bool consistent{false};       // |grid_tensor - grid_product| < 1e-12
};

/// V and W are estimated on independent streams; the tensor character is
/// evaluated both on the paired samples and on the full m x m product grid
/// of the first m samples, where its mean must factor exactly.
inline TensorTypeReport tensor_type_check(const Character& chi_v, const GroupSampler& g, const Character& chi_w,
                                          const GroupSampler& h, std::size_t n, std::uint64_t seed,
                                          std::size_t grid = 1000) {
    if (n < kMinIndicatorSamples) throw PreconditionError("tensor_type_check: need at least 1000 samples");
    const Character tensor = tensor_character(chi_v, chi_w);

    std::vector<Element> gs(n), hs(n);
    std::vector<Complex> a(n), b(n), paired(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rng rg = make_stream(seed, 0x47, k);
        Rng rh = make_stream(seed, 0x48, k);
        gs[k] = squared(g.draw(rg));
        hs[k] = squared(h.draw(rh));
        a[k] = chi_v(gs[k]);
        b[k] = chi_w(hs[k]);
    }
    Element joint;
    for (std::size_t k = 0; k < n; ++k) {
        joint = gs[k];
        joint.insert(joint.end(), hs[k].begin(), hs[k].end());
        paired[k] = tensor(joint);
    }

    TensorTypeReport report;
    report.indicator_v = detail::summarize(a).estimate;
    report.indicator_w = detail::summarize(b).estimate;
    report.indicator_product = report.indicator_v * report.indicator_w;
    const auto t = detail::summarize(paired);
    report.indicator_tensor = t.estimate;
    report.tensor_stderr = t.stderr_;

    // Product grid, Kahan-compensated.
    const std::size_t m = std::min(n, grid);
    report.grid = m;
    Complex sum{0, 0}, comp{0, 0};
    joint = gs[0];
    joint.insert(joint.end(), hs[0].begin(), hs[0].end());
    const std::size_t split = gs[0].size();
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < split; ++i) joint[i] = gs[k][i];
        for (std::size_t l = 0; l < m; ++l) {
            for (std::size_t i = 0; i < hs[l].size(); ++i) joint[split + i] = hs[l][i];
            const Complex y = tensor(joint) - comp;
            const Complex s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        }
    }
    const double mm = static_cast<double>(m);
    report.grid_tensor = (sum / (mm * mm)).real();
    Complex sa{0, 0}, sb{0, 0};
    for (std::size_t k = 0; k < m; ++k) {
        sa += a[k];
        sb += b[k];
    }
    report.grid_product = ((sa / mm) * (sb / mm)).real();
    report.consistent = std::abs(report.grid_tensor - report.grid_product) < 1e-12;
    return report;
}

// ---------------------------------------------------------------------------
// Low-dimensional irreducible representations

enum class RepType { Real, Complex, Quaternionic };

inline std::string to_string(RepType t) {
    switch (t) {
    case RepType::Real: return "real";
    case RepType::Complex: return "complex";
    case RepType::Quaternionic: return "quaternionic";
    }
    return "?";
}

inline int indicator_of(RepType t) { return t == RepType::Real ? 1 : t == RepType::Quaternionic ? -1 : 0; }

struct IrrepFact {
    std::string group;
    int dimension{0};
    RepType type{RepType::Complex};
    std::string note;
};

/// Irreducible complex representations of dimension below dim G for
/// SU(n+1) (2 <= n <= 7), Sp(n) (1 <= n <= 3) and Spin(9). Accepts "SU4",
/// "SU(4)", "Sp2", "Sp(2)", "Spin9", "Spin(9)".
inline std::vector<IrrepFact> irrep_table(std::string_view group_id) {
    std::string id;
    for (char c : group_id)
        if (c != '(' && c != ')' && c != ' ') id += c;

    auto parse_rank = [&](std::string_view prefix) -> std::optional<int> {
        if (id.size() <= prefix.size() || id.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
        const std::string digits = id.substr(prefix.size());
        if (digits.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
        return std::stoi(digits);
    };

    std::vector<IrrepFact> out;
    if (id == "Spin9") {
        out.push_back({id, 9, RepType::Real, "vector"});
        out.push_back({id, 16, RepType::Real, "spin"});
        return out;
    }
    if (const auto m = parse_rank("SU")) {
        const int n = *m - 1;
        if (n < 2 || n > 7) throw PreconditionError("irrep_table: SU(n+1) supported for 2 <= n <= 7");
        out.push_back({id, n + 1, RepType::Complex, "defining"});
        out.push_back({id, (n + 1) * (n + 2) / 2, RepType::Complex, "symmetric square"});
        out.push_back({id, n * (n + 1) / 2, n == 3 ? RepType::Real : RepType::Complex,
                       n == 2 ? "exterior square; equivalent to the defining representation" : "exterior square"});
        if (n >= 5)
            out.push_back({id, (n - 1) * n * (n + 1) / 6, n == 5 ? RepType::Quaternionic : RepType::Complex,
                           "exterior cube"});
        return out;
    }
    if (const auto rank = parse_rank("Sp")) {
        const int n = *rank;
        if (n < 1 || n > 3) throw PreconditionError("irrep_table: Sp(n) supported for 1 <= n <= 3");
        out.push_back({id, 2 * n, RepType::Quaternionic, "defining"});
        if (const int d = 2 * n * n - n - 1; d > 0) out.push_back({id, d, RepType::Real, "traceless exterior square"});
        if (n == 3) out.push_back({id, 14, RepType::Quaternionic, "traceless exterior cube"});
        return out;
    }
    throw PreconditionError("irrep_table: unsupported group " + std::string(group_id));
}

}  // namespace hopflab::repcheck
