// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failures.

#include "hopflab/curvature.hpp"
#include "hopflab/grassmann.hpp"
#include "hopflab/hopf.hpp"
#include "hopflab/moduli.hpp"
#include "hopflab/repcheck.hpp"
#include "hopflab/symmetry.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>

using namespace hopflab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool ok;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_{std::chrono::steady_clock::now()};
};

std::string fmt(double v, int digits = 3) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

Verdict hopf_parallelism() {
    Stopwatch clock;
    double worst[3] = {0, 0, 0};
    for (int t = 0; t < 100; ++t) {
        Rng rng = make_stream(1001, 1, static_cast<std::uint64_t>(t));
        const auto c1 = hopf::complex_hopf_fiber(random_unit_vector(rng, 3));
        const auto c2 = hopf::complex_hopf_fiber(random_unit_vector(rng, 3));
        worst[0] = std::max(worst[0], hopf::fiber_distance(c1, c2, 256).spread());
        const auto q1 = hopf::quaternionic_hopf_fiber(random_unit_vector(rng, 7));
        const auto q2 = hopf::quaternionic_hopf_fiber(random_unit_vector(rng, 7));
        worst[1] = std::max(worst[1], hopf::fiber_distance(q1, q2, 256).spread());
        const auto o1 = hopf::octonionic_hopf_fiber(hopf::octonionic_hopf_map(random_unit_vector(rng, 15)));
        const auto o2 = hopf::octonionic_hopf_fiber(hopf::octonionic_hopf_map(random_unit_vector(rng, 15)));
        worst[2] = std::max(worst[2], hopf::fiber_distance(o1, o2, 256).spread());
    }
    const double s = clock.seconds();
    const bool ok = worst[0] < 1e-3 && worst[1] < 1e-3 && worst[2] < 1e-3 && s < 60;
    return {ok, "worst spread S3 " + fmt(worst[0]) + ", S7 " + fmt(worst[1]) + ", S15 " + fmt(worst[2]) + " in " +
                    fmt(s) + " s"};
}

Verdict disjointness() {
    Stopwatch clock;
    double min_angle = kPi;
    int distinct = 0;
    for (int t = 0; t < 10000; ++t) {
        Rng rng = make_stream(1002, 1, static_cast<std::uint64_t>(t));
        const UnitVector x = random_unit_vector(rng, 3), y = random_unit_vector(rng, 3);
        if (hopf::same_base_point(hopf::complex_base_point(x), hopf::complex_base_point(y))) continue;
        ++distinct;
        min_angle = std::min(min_angle, hopf::smallest_principal_angle(hopf::complex_hopf_fiber(x).basis(),
                                                                       hopf::complex_hopf_fiber(y).basis()));
    }
    const double s = clock.seconds();
    return {min_angle > 1e-6 && distinct == 10000 && s < 10,
            std::to_string(distinct) + " pairs, smallest angle " + fmt(min_angle) + " in " + fmt(s) + " s"};
}

Verdict moduli_round_trip() {
    Stopwatch clock;
    double worst = 0;
    Rng rng = make_stream(1003, 1);
    for (int t = 0; t < 10000; ++t) {
        const auto p = grassmann::random_plane(rng);
        worst = std::max(worst, grassmann::projector_difference(p, grassmann::moduli_to_plane(grassmann::plane_to_moduli(p))));
    }
    const double s = clock.seconds();
    return {worst < 1e-12 && s < 5, "worst projector residual " + fmt(worst) + " in " + fmt(s) + " s"};
}

Verdict constant_map_is_hopf() {
    const auto fib = moduli::fibration_from_map(moduli::constant_map(Vec3(1, 0, 0)));
    double worst = 0;
    Rng rng = make_stream(1004, 1);
    for (int t = 0; t < 1000; ++t) {
        const auto f = fib(random_unit_vector(rng, 2).coords());
        const auto h = hopf::complex_hopf_fiber(UnitVector::normalize(f.basis().col(0)));
        worst = std::max(worst, hopf::span_difference(f, h));
    }
    return {worst < 1e-9, "worst projector difference " + fmt(worst)};
}

Verdict homogeneity_obstruction() {
    const auto f = moduli::polar_contraction(0.5);
    const auto validation = moduli::validate_distance_decreasing(f, 10000, 1005);
    const auto disjoint = moduli::check_fibers_disjoint(moduli::GreatCircleFibration(f, moduli::GraphFactor::First), 10000, 1005);
    const Vec3 pole(0, 0, 1), at_pi3(std::sin(kPi / 3), 0, std::cos(kPi / 3));
    const auto scan = moduli::homogeneity_scan(f, {pole, at_pi3});
    const auto e_pole = moduli::ellipse(moduli::differential(f, pole));
    const auto e_pi3 = moduli::ellipse(moduli::differential(f, at_pi3));
    // the azimuthal singular value moves from 0.5 to 1/sqrt(3); at pi/3 it is the major axis
    const bool values = std::abs(e_pole.sigma_minor - 0.5) < 1e-4 && std::abs(e_pole.sigma_major - 0.5) < 1e-4 &&
                        std::abs(e_pi3.sigma_major - 0.57735) < 1e-4 && std::abs(e_pi3.sigma_minor - 0.5) < 1e-4;
    const bool ok = validation.ok && disjoint.ok && !scan.constant_axes && values;
    return {ok, "ratio " + fmt(validation.worst_ratio) + ", min angle " + fmt(disjoint.min_angle) +
                    ", constant_axes " + (scan.constant_axes ? "true" : "false") + ", sigma(pole) " +
                    fmt(e_pole.sigma_minor, 6) + "/" + fmt(e_pole.sigma_major, 6) + ", sigma(pi/3) " +
                    fmt(e_pi3.sigma_minor, 6) + "/" + fmt(e_pi3.sigma_major, 6)};
}

Verdict trichotomy() {
    using moduli::RoundMapVerdict;
    bool ok = true;
    auto verdict = [](double r) {
        return moduli::round_map_classifier(moduli::homogeneity_report(std::vector<std::pair<double, double>>(5, {r, r})));
    };
    ok = ok && verdict(0.0) == RoundMapVerdict::Hopf;
    ok = ok && verdict(1.0) == RoundMapVerdict::DistancePreservingExcluded;
    for (double r : {0.001 + 1e-9, 0.1, 0.5, 0.9, 0.998}) ok = ok && verdict(r) == RoundMapVerdict::CurvatureExcluded;
    return {ok, "r = 0 -> hopf, r = 1 -> distance-preserving-excluded, r in (0,1) -> curvature-excluded"};
}

Verdict curvature_lemma() {
    const double formula = moduli::curvature_from_structure_constants(-1, 0);
    const double half_plane = moduli::numeric_frame_curvature(moduli::upper_half_plane_metric(),
                                                             moduli::upper_half_plane_frame(), Eigen::Vector2d(0.3, 1.2));
    const double sphere = moduli::numeric_frame_curvature(moduli::round_sphere_metric(), moduli::round_sphere_frame(),
                                                         Eigen::Vector2d(1.0, 0.4));
    Rng rng = make_stream(1007, 1);
    std::uniform_real_distribution<double> u(-100, 100);
    bool nonpositive = true;
    for (int t = 0; t < 100000; ++t) nonpositive = nonpositive && moduli::curvature_from_structure_constants(u(rng), u(rng)) <= 0.0;
    const bool ok = formula == -1 && std::abs(half_plane - formula) < 1e-3 && std::abs(sphere - 1) < 1e-3 && nonpositive;
    return {ok, "formula " + fmt(formula) + ", half-plane " + fmt(half_plane, 8) + ", sphere " +
                    fmt(sphere, 8) + ", 1e5 samples nonpositive: " + (nonpositive ? "yes" : "no")};
}

Verdict frobenius_schur() {
    using namespace repcheck;
    Stopwatch clock;
    const auto su2 = fs_indicator(defining_character(GroupId::SU2), GroupSampler(GroupId::SU2), 100000, 1008);
    const auto su3 = fs_indicator(defining_character(GroupId::SU3), GroupSampler(GroupId::SU3), 100000, 1008);
    const auto so3 = fs_indicator(*named_character(GroupId::SO3, "vector"), GroupSampler(GroupId::SO3), 100000, 1008);
    const auto triv = fs_indicator(trivial_character(), GroupSampler(GroupId::SU2), 100000, 1008);
    const double s = clock.seconds();
    const bool ok = std::abs(su2.estimate + 1) < 0.05 && std::abs(su3.estimate) < 0.05 &&
                    std::abs(so3.estimate - 1) < 0.05 && triv.estimate == 1.0 && s < 120;
    return {ok, "SU2 " + fmt(su2.estimate) + ", SU3 " + fmt(su3.estimate) + ", SO3 " + fmt(so3.estimate) +
                    ", trivial " + fmt(triv.estimate) + " in " + fmt(s) + " s"};
}

Verdict tensor_types() {
    using namespace repcheck;
    const auto chi = defining_character(GroupId::SU2);
    const GroupSampler g(GroupId::SU2);
    const auto r = tensor_type_check(chi, g, chi, g, 100000, 1009);
    const double gap = std::abs(r.grid_tensor - r.grid_product);
    return {std::abs(r.indicator_tensor - 1) < 0.05 && gap < 1e-12,
            "tensor indicator " + fmt(r.indicator_tensor) + ", grid factorization gap " + fmt(gap) + " (m = " +
                std::to_string(r.grid) + ")"};
}

Verdict homogeneity_witnesses() {
    const auto hopf = symmetry::hopf_s3();
    double worst_hopf = 0;
    for (int t = 0; t < 1000; ++t) {
        Rng rng = make_stream(1010, 1, static_cast<std::uint64_t>(t));
        const UnitVector x = random_unit_vector(rng, 3), y = random_unit_vector(rng, 3);
        worst_hopf = std::max(worst_hopf, symmetry::image_residual(hopf(x), symmetry::hopf_transitivity_witness(x, y), hopf(y)));
    }
    const auto screw = symmetry::screw_transitivity_check(symmetry::figure1_fibration(1.0), 1000, 1010);
    return {worst_hopf < 1e-9 && screw.worst_residual < 1e-9,
            "Hopf " + fmt(worst_hopf) + ", screw " + fmt(screw.worst_residual)};
}

Verdict double_cover() {
    double sign = 0, hom = 0;
    for (int t = 0; t < 1000; ++t) {
        Rng rng = make_stream(1011, 1, static_cast<std::uint64_t>(t));
        const IsometrySO4 g = haar_so4(rng), h = haar_so4(rng);
        sign = std::max(sign, (g.matrix() - IsometrySO4{-g.left, -g.right}.matrix()).cwiseAbs().maxCoeff());
        const auto [gp, gm] = grassmann::so4_to_so3xso3(g);
        const auto [hp, hm] = grassmann::so4_to_so3xso3(h);
        const auto [cp, cm] = grassmann::so4_to_so3xso3(g.compose(h));
        hom = std::max({hom, (cp - gp * hp).cwiseAbs().maxCoeff(), (cm - gm * hm).cwiseAbs().maxCoeff()});
    }
    return {sign < 1e-12 && hom < 1e-9, "sign ambiguity " + fmt(sign) + ", homomorphism defect " + fmt(hom)};
}

std::pair<int, std::string> capture(const std::string& args) {
    const std::string cmd = std::string(HOPFLAB_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    while (const std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    return {pclose(pipe), out};
}

Verdict cli_determinism() {
    const std::regex timestamp("\"timestamp\": \"[^\"]*\"");
    int compared = 0, identical = 0;
    for (const char* args : {"fibers --family octonionic --dim 15 --count 4 --grid 16 --seed 12",
                             "validate-map --map polar-contraction:0.5 --pairs 500 --seed 12",
                             "fs --group SU3 --n 5000 --seed 12", "homogeneity --target figure1:1 --trials 200 --seed 12"}) {
        const auto a = capture(args), b = capture(args);
        ++compared;
        if (!a.second.empty() && a.first == b.first &&
            std::regex_replace(a.second, timestamp, "") == std::regex_replace(b.second, timestamp, ""))
            ++identical;
    }
    return {identical == compared, std::to_string(identical) + "/" + std::to_string(compared) + " commands byte-identical"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"hopf fibers are parallel", hopf_parallelism},
        {"hopf fibers are disjoint", disjointness},
        {"plane/moduli round trip", moduli_round_trip},
        {"constant map gives the hopf fibration", constant_map_is_hopf},
        {"polar contraction is not locally homogeneous", homogeneity_obstruction},
        {"round map trichotomy", trichotomy},
        {"nonpositive curvature formula", curvature_lemma},
        {"frobenius-schur indicators", frobenius_schur},
        {"tensor product of quaternionic types", tensor_types},
        {"fiberwise homogeneity witnesses", homogeneity_witnesses},
        {"SU(2) x SU(2) double cover of SO(4)", double_cover},
        {"CLI determinism", cli_determinism},
    };
    int failures = 0, index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Verdict v{false, ""};
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.ok;
        std::cout << (v.ok ? "PASS" : "FAIL") << "  [" << index << "] " << name << ": " << v.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failures;
}
