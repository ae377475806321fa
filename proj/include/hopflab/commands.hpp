#pragma once

/**
 * @file commands.hpp
 * @brief The work behind each `hopflab` subcommand, independent of argument
 *        parsing. Exit codes: 0 success, 1 check failure (report still
 *        produced), 2 usage error (UsageError).
 */

#include "hopflab/algebra.hpp"
#include "hopflab/hopf.hpp"
#include "hopflab/moduli.hpp"
#include "hopflab/report.hpp"
#include "hopflab/repcheck.hpp"
#include "hopflab/symmetry.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hopflab::cli {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct CommandResult {
    int exit_code{kExitOk};
    RunReport report;
};

inline std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline double parse_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw UsageError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

// ---------------------------------------------------------------------------
// fibers

enum class Family { Complex, Quaternionic, Octonionic };

inline Family parse_family(std::string_view s) {
    if (s == "complex") return Family::Complex;
    if (s == "quaternionic") return Family::Quaternionic;
    if (s == "octonionic") return Family::Octonionic;
    throw UsageError("unknown family '" + std::string(s) + "' (expected complex|quaternionic|octonionic)");
}

struct FibersOptions {
    Family family{Family::Complex};
    int sphere_dim{3};
    int count{8};
    int grid{64};
    bool stereographic{false};
    std::uint64_t seed{1};
};

/// (x0, x1, x2, x3) -> (x0, x1, x2) / (1 - x3).
inline std::vector<double> stereographic(const Vec& x) {
    const double denom = 1.0 - x[3];
    return {x[0] / denom, x[1] / denom, x[2] / denom};
}

inline hopf::FiberSampler family_fiber(Family family, const UnitVector& x) {
    switch (family) {
    case Family::Complex: return hopf::complex_hopf_fiber(x);
    case Family::Quaternionic: return hopf::quaternionic_hopf_fiber(x);
    case Family::Octonionic: return hopf::octonionic_hopf_fiber(hopf::octonionic_hopf_map(x));
    }
    throw UsageError("unknown family");
}

/// Fiber 0 passes through (1, 0, ..., 0); the others through seeded random
/// points. Each polyline is `grid` equally spaced points of the great circle
/// through the first two basis vectors of the fiber.
inline FiberPolylineFile cmd_fibers(const FibersOptions& opt) {
    const int n = opt.sphere_dim;
    switch (opt.family) {
    case Family::Complex:
        if (n < 3 || n % 2 == 0) throw UsageError("complex family needs an odd sphere dimension >= 3");
        break;
    case Family::Quaternionic:
        if (n < 3 || n % 4 != 3) throw UsageError("quaternionic family needs sphere dimension 3 mod 4");
        break;
    case Family::Octonionic:
        if (n != 15) throw UsageError("octonionic family needs sphere dimension 15");
        break;
    }
    if (opt.count < 1) throw UsageError("count must be positive");
    if (opt.grid < 2) throw UsageError("grid must be at least 2");
    if (opt.stereographic && n != 3) throw UsageError("stereographic projection is only offered for S^3");

    FiberPolylineFile file;
    file.ambient_dim = n;
    file.projection = opt.stereographic ? "stereographic" : "none";
    const Vec pole = UnitVector::axis(n, n).coords();
    for (int id = 0; id < opt.count; ++id) {
        std::optional<hopf::FiberSampler> fiber;
        if (id == 0) {
            fiber = family_fiber(opt.family, UnitVector::axis(n, 0));
        } else {
            Rng rng = make_stream(opt.seed, 0x666962, static_cast<std::uint64_t>(id));
            do {
                fiber = family_fiber(opt.family, random_unit_vector(rng, n));
            } while (opt.stereographic && fiber->distance_to(pole) < 1e-3);
        }
        FiberPolyline line{id, {}};
        for (int k = 0; k < opt.grid; ++k) {
            const Vec p = fiber->sample_angle(2.0 * std::numbers::pi * k / opt.grid);
            line.points.push_back(opt.stereographic ? stereographic(p) : std::vector<double>(p.data(), p.data() + p.size()));
        }
        file.fibers.push_back(std::move(line));
    }
    return file;
}

// ---------------------------------------------------------------------------
// validate-map

/// "constant[:x,y,z]" | "polar-contraction:lambda" | "identity"
inline moduli::DistanceDecreasingMap parse_map_spec(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    if (kind == "identity" && arg.empty()) return moduli::identity_map();
    if (kind == "constant") {
        if (arg.empty()) return moduli::constant_map(Vec3::UnitZ());
        const auto parts = split(arg, ',');
        if (parts.size() != 3) throw UsageError("constant map needs three coordinates");
        Vec3 c;
        for (int i = 0; i < 3; ++i) c[i] = parse_double(parts[static_cast<std::size_t>(i)], "constant value");
        if (!(c.norm() > 0)) throw UsageError("constant map value must be nonzero");
        return moduli::constant_map(c.normalized());
    }
    if (kind == "polar-contraction") {
        const double lambda = parse_double(arg, "contraction factor");
        if (lambda < 0.0) throw UsageError("contraction factor must be nonnegative");
        return moduli::polar_contraction(lambda);
    }
    throw UsageError("unknown map spec '" + std::string(spec) + "'");
}

/// Interior sample points: the domain center and rings at distances
/// 0.1, pi/6, pi/3 from it, at three azimuths each.
inline std::vector<Vec3> homogeneity_points(const moduli::SphericalCap& domain) {
    std::vector<Vec3> points{domain.center};
    const auto [e1, e2] = moduli::orthonormal_complement(domain.center);
    for (double r : {0.1, std::numbers::pi / 6, std::numbers::pi / 3})
        for (int a = 0; a < 3; ++a) {
            const double phi = 2.0 * std::numbers::pi * a / 3.0;
            const Vec3 x = std::cos(r) * domain.center + std::sin(r) * (std::cos(phi) * e1 + std::sin(phi) * e2);
            if (domain.contains(x, 1e-3)) points.push_back(x);
        }
    return points;
}

inline CommandResult cmd_validate_map(std::string_view map_spec, std::size_t pairs, std::uint64_t seed) {
    if (pairs < 1) throw UsageError("pairs must be positive");
    const auto f = parse_map_spec(map_spec);
    CommandResult result;
    RunReport& r = result.report;
    r.command = "validate-map";
    r.seed = seed;
    r.parameters = {{"map", std::string(map_spec)}, {"pairs", std::to_string(pairs)}};

    const auto validation = moduli::validate_distance_decreasing(f, pairs, seed);
    r.add("distance_decreasing", validation.ok, validation.worst_ratio);
    bool failed = !validation.ok;

    if (validation.ok) {
        const moduli::GreatCircleFibration fib(f, moduli::GraphFactor::First);
        const auto disjoint = moduli::check_fibers_disjoint(fib, std::min<std::size_t>(pairs, 10000), seed);
        r.add("fibers_disjoint", disjoint.ok, disjoint.min_angle);
        failed = failed || !disjoint.ok;
    }

    const auto scan = moduli::homogeneity_scan(f, homogeneity_points(f.domain));
    r.add("constant_axes", scan.constant_axes, scan.spread(),
          scan.constant_axes ? "" : "not locally homogeneous");
    if (scan.constant_axes) {
        try {
            const auto verdict = moduli::round_map_classifier(scan);
            r.add("verdict", true, scan.sigma_field.front().first, moduli::to_string(verdict));
        } catch (const PreconditionError&) {
            r.add("verdict", true, scan.sigma_field.front().first, "not locally homogeneous: ellipses are not circles");
        }
    }
    result.exit_code = failed ? kExitCheckFailed : kExitOk;
    return result;
}

// ---------------------------------------------------------------------------
// fs

inline constexpr double kIndicatorBand = 0.05;

/// group: "SU2" | "SO3" | "U1" | "SU3" | "Sp2", or "GxH" for a product;
/// rep: a named representation, or "r1,r2" for the tensor product on GxH.
inline CommandResult cmd_fs(std::string_view group, std::string_view rep, std::size_t n, std::uint64_t seed) {
    if (n < repcheck::kMinIndicatorSamples) throw UsageError("n must be at least 1000");
    const auto group_names = split(group, 'x');
    const auto rep_names = split(rep, ',');
    if (group_names.size() > 2) throw UsageError("at most two group factors are supported");

    std::vector<repcheck::GroupId> ids;
    for (auto g : group_names) {
        const auto id = repcheck::parse_group(g);
        if (!id) throw UsageError("unsupported group '" + std::string(g) + "'");
        ids.push_back(*id);
    }
    std::optional<repcheck::Character> chi;
    if (ids.size() == 1 && rep_names.size() == 1) {
        chi = repcheck::named_character(ids[0], rep_names[0]);
    } else if (ids.size() == 2 && rep_names.size() == 2) {
        const auto a = repcheck::named_character(ids[0], rep_names[0]);
        const auto b = repcheck::named_character(ids[1], rep_names[1]);
        if (a && b) chi = repcheck::tensor_character(*a, *b);
    } else if (ids.size() == 2 && rep == "trivial") {
        chi = repcheck::trivial_character(2);
    }
    if (!chi) throw UsageError("unsupported (group, rep) pair: (" + std::string(group) + ", " + std::string(rep) + ")");

    const repcheck::GroupSampler sampler = ids.size() == 1 ? repcheck::GroupSampler(ids[0]) : repcheck::GroupSampler(ids[0], ids[1]);
    const auto est = repcheck::fs_indicator(*chi, sampler, n, seed);
    const int nearest = repcheck::nearest_type_value(est.estimate);
    const bool confident = std::abs(est.estimate - nearest) < kIndicatorBand;

    CommandResult result;
    RunReport& r = result.report;
    r.command = "fs";
    r.seed = seed;
    r.parameters = {{"group", std::string(group)}, {"rep", std::string(rep)}, {"n", std::to_string(n)}};
    r.add("estimate", true, est.estimate);
    r.add("stderr", true, est.stderr_);
    r.add("nearest", confident, nearest,
          nearest == 1 ? "real" : nearest == 0 ? "complex" : "quaternionic");
    result.exit_code = confident ? kExitOk : kExitCheckFailed;
    return result;
}

// ---------------------------------------------------------------------------
// homogeneity

inline CommandResult cmd_homogeneity(std::string_view target, int trials, std::uint64_t seed) {
    if (trials < 1) throw UsageError("trials must be positive");
    CommandResult result;
    RunReport& r = result.report;
    r.command = "homogeneity";
    r.seed = seed;
    r.parameters = {{"target", std::string(target)}, {"trials", std::to_string(trials)}};

    bool ok = true;
    if (target == "hopf-s3") {
        const auto fibration = symmetry::hopf_s3();
        double worst_transitivity = 0.0, worst_preservation = 0.0;
        for (int t = 0; t < trials; ++t) {
            Rng rng = make_stream(seed, 0x686f6d, static_cast<std::uint64_t>(t));
            const UnitVector x = random_unit_vector(rng, 3);
            const UnitVector y = random_unit_vector(rng, 3);
            const IsometrySO4 g = symmetry::hopf_transitivity_witness(x, y);
            worst_transitivity = std::max(worst_transitivity, symmetry::image_residual(fibration(x), g, fibration(y)));
            const auto pres = symmetry::fiber_preservation_check(fibration, g, 4, seed + static_cast<std::uint64_t>(t));
            worst_preservation = std::max(worst_preservation, pres.worst_residual);
        }
        const bool t_ok = worst_transitivity < tol::kUnit, p_ok = worst_preservation < tol::kUnit;
        r.add("transitivity", t_ok, worst_transitivity);
        r.add("fiber_preservation", p_ok, worst_preservation);
        ok = t_ok && p_ok;
    } else if (target.substr(0, 7) == "figure1") {
        double alpha = 1.0;
        if (target.size() > 7) {
            if (target[7] != ':') throw UsageError("expected figure1:<alpha>");
            alpha = parse_double(target.substr(8), "alpha");
        }
        r.parameters.emplace_back("alpha", format_number(alpha));
        const auto report = symmetry::screw_transitivity_check(symmetry::figure1_fibration(alpha), trials, seed);
        r.add("screw_transitivity", report.ok, report.worst_residual);
        ok = report.ok;
    } else {
        throw UsageError("unknown homogeneity target '" + std::string(target) + "' (expected hopf-s3 | figure1:<alpha>)");
    }
    result.exit_code = ok ? kExitOk : kExitCheckFailed;
    return result;
}

}  // namespace hopflab::cli
