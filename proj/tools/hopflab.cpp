#include "hopflab/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace hopflab::cli;

struct Common {
    std::uint64_t seed{1};
    std::string out;
    std::string format{"json"};
};

void emit(const Common& c, const std::string& text) {
    if (c.out.empty())
        std::cout << text;
    else
        write_atomically(c.out, text);
}

std::string render(const Common& c, RunReport report) {
    report.timestamp = utc_timestamp();
    return c.format == "csv" ? report_to_csv(report) : to_json(report).dump(2) + "\n";
}

std::string render(const Common& c, const FiberPolylineFile& file) {
    return c.format == "csv" ? polylines_to_csv(file) : to_json(file).dump() + "\n";
}

std::uint64_t default_seed() {
    const char* env = std::getenv("HOPFLAB_DEFAULT_SEED");
    if (!env || !*env) return 1;
    std::uint64_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw UsageError("HOPFLAB_DEFAULT_SEED is not an unsigned integer");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hopflab: Hopf fibrations and great circle fibrations of S^3"};
    app.set_version_flag("--version", std::string(kToolkitVersion));
    app.require_subcommand(1);

    Common common;
    std::optional<std::uint64_t> seed_flag;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed_flag, "random seed (default: $HOPFLAB_DEFAULT_SEED or 1)");
        sub->add_option("--out", common.out, "output path (default: stdout)");
        sub->add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    };

    FibersOptions fibers;
    std::string family = "complex", projection = "none";
    auto* cmd_f = app.add_subcommand("fibers", "sample Hopf fibers as polylines");
    add_common(cmd_f);
    cmd_f->add_option("--family", family)->check(CLI::IsMember({"complex", "quaternionic", "octonionic"}));
    cmd_f->add_option("--dim", fibers.sphere_dim, "sphere dimension");
    cmd_f->add_option("--count", fibers.count);
    cmd_f->add_option("--grid", fibers.grid, "points per polyline");
    cmd_f->add_option("--projection", projection)->check(CLI::IsMember({"none", "stereographic"}));

    std::string map_spec;
    std::size_t pairs = 2000;
    auto* cmd_v = app.add_subcommand("validate-map", "build a great circle fibration from a map and check it");
    add_common(cmd_v);
    cmd_v->add_option("--map", map_spec, "constant[:x,y,z] | polar-contraction:<lambda> | identity")->required();
    cmd_v->add_option("--pairs", pairs);

    std::string group, rep = "defining";
    std::size_t n = 100000;
    auto* cmd_s = app.add_subcommand("fs", "Monte Carlo Frobenius-Schur indicator");
    add_common(cmd_s);
    cmd_s->add_option("--group", group, "SU2 | SO3 | U1 | SU3 | Sp2, or GxH")->required();
    cmd_s->add_option("--rep", rep, "trivial | defining | vector | conjugate-defining | adjoint, or r1,r2");
    cmd_s->add_option("--n", n, "number of Haar samples");

    std::string target;
    int trials = 1000;
    auto* cmd_h = app.add_subcommand("homogeneity", "fiberwise homogeneity witness checks");
    add_common(cmd_h);
    cmd_h->add_option("--target", target, "hopf-s3 | figure1[:alpha]")->required();
    cmd_h->add_option("--trials", trials);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        common.seed = seed_flag ? *seed_flag : default_seed();
        if (cmd_f->parsed()) {
            fibers.family = parse_family(family);
            fibers.stereographic = projection == "stereographic";
            fibers.seed = common.seed;
            emit(common, render(common, cmd_fibers(fibers)));
            return kExitOk;
        }
        CommandResult result;
        if (cmd_v->parsed()) result = cmd_validate_map(map_spec, pairs, common.seed);
        else if (cmd_s->parsed()) result = cmd_fs(group, rep, n, common.seed);
        else result = cmd_homogeneity(target, trials, common.seed);
        emit(common, render(common, result.report));
        return result.exit_code;
    } catch (const UsageError& e) {
        std::cerr << "hopflab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const hopflab::PreconditionError& e) {
        std::cerr << "hopflab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "hopflab: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}
