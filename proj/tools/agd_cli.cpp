// Command-line front end: reduce (bracket artifacts per chart), potential
// (either route, with cross-route agreement as a bug trap), verify (golden
// suites) and central (numeric central-invariant tables).
//
// Exit codes: 0 success, 1 usage error, 2 unsupported input, 3 internal
// consistency failure.

#include <CLI11.hpp>

#include <iostream>

#include "agd/engine.hpp"

using namespace agd;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitUnsupported = 2;
constexpr int kExitInternal = 3;

struct CommonOpts {
    int rank = 3;
    std::string chart = "u";
    std::string route = "ds";
    std::string root = "plus";
    std::string format = "text";
    std::string cache_dir;
    std::string set = "all";
    int samples = 10;
};

RootChoice root_of(const CommonOpts& o) {
    return o.root == "minus" ? RootChoice::minus : RootChoice::plus;
}

Cache cache_of(const CommonOpts& o) {
    return Cache(o.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(o.cache_dir));
}

int check_rank(int r) {
    if (r < 2) {
        std::cerr << "unsupported rank " << r << ": need r >= 2\n";
        return kExitUnsupported;
    }
    if (r > 5) {
        std::cerr << "unsupported rank " << r << ": desk-scale cap is r <= 5\n";
        return kExitUnsupported;
    }
    return 0;
}

const LocalBracket& bracket_for_chart(const DsRoute& route, const std::string& chart) {
    if (chart == "u") return route.Bu;
    if (chart == "z") return route.Bz;
    if (chart == "s") return route.Bs;
    if (chart == "t") return route.Bt;
    throw std::domain_error("unknown chart " + chart);
}

void emit_bracket(const std::string& payload, const std::string& format) {
    if (format == "json") {
        std::cout << payload << "\n";
        return;
    }
    LocalBracket B = bracket_from_json(payload);
    if (format == "latex")
        std::cout << bracket_to_latex(B);
    else
        std::cout << bracket_to_text(B);
}

int cmd_reduce(const CommonOpts& o) {
    if (int rc = check_rank(o.rank)) return rc;
    Cache cache = cache_of(o);
    std::string key = std::string(kEngineVersion) + "_r" + std::to_string(o.rank) + "_" +
                      o.chart + "_b2";
    std::string payload;
    if (auto hit = cache.load(key)) {
        payload = *hit;
    } else {
        DsRoute route = run_ds_route(o.rank, o.rank <= 3);
        payload = bracket_to_json(bracket_for_chart(route, o.chart));
        cache.store(key, payload);
    }
    emit_bracket(payload, o.format);
    return 0;
}

void emit_potential(const FrobeniusPotential& F, const std::string& route,
                    const std::string& format) {
    if (format == "json") {
        std::cout << "{\"route\": \"" << route << "\", \"potential\": " << potential_to_json(F)
                  << "}\n";
    } else if (format == "latex") {
        std::cout << "% route: " << route << "\n" << potential_to_latex(F) << "\n";
    } else {
        std::cout << "route: " << route << "\n";
        std::cout << "F = " << to_string(F.poly) << " + (" << F.logcoeff.str() << ")*(t"
                  << F.rank << ")^2*log(t" << F.rank << ")\n";
    }
}

int cmd_potential(const CommonOpts& o) {
    if (int rc = check_rank(o.rank)) return rc;
    Cache cache = cache_of(o);
    auto compute = [&](const std::string& route) {
        std::string key = std::string(kEngineVersion) + "_r" + std::to_string(o.rank) + "_" +
                          route + "_potential";
        if (auto hit = cache.load(key)) return potential_from_json(*hit);
        FrobeniusPotential F = route == "orbit" ? run_orbit_route(o.rank).potential
                                                : run_ds_route(o.rank, false).potential;
        cache.store(key, potential_to_json(F));
        return F;
    };
    if (o.route == "both") {
        FrobeniusPotential ds = compute("ds"), orbit = compute("orbit");
        if (!(ds.poly == orbit.poly) || !(ds.logcoeff == orbit.logcoeff)) {
            std::cerr << "route disagreement: ds and orbit potentials differ\n";
            return kExitInternal;
        }
        std::cout << "routes agree\n";
        emit_potential(ds, "both", o.format);
        return 0;
    }
    emit_potential(compute(o.route), o.route, o.format);
    return 0;
}

int cmd_verify(const CommonOpts& o) {
    auto items = run_verify_set(o.set, root_of(o));
    bool all = true;
    for (auto& it : items) {
        std::cout << (it.pass ? "PASS" : "FAIL") << "  " << it.name;
        if (!it.pass && !it.detail.empty()) std::cout << "  [" << it.detail << "]";
        std::cout << "\n";
        all = all && it.pass;
    }
    std::cout << (all ? "all checks passed\n" : "some checks failed\n");
    return all ? 0 : kExitInternal;
}

int cmd_chart(const CommonOpts& o) {
    if (int rc = check_rank(o.rank)) return rc;
    DsRoute route = run_ds_route(o.rank, false);
    const Chart* chart = nullptr;
    if (o.chart == "z") chart = &route.u_to_z;
    else if (o.chart == "s") chart = &route.z_to_s;
    else if (o.chart == "t") chart = &route.s_to_t;
    else {
        std::cerr << "chart subcommand prints z (from u), s (from z) or t (from s)\n";
        return kExitUsage;
    }
    if (o.format == "json")
        std::cout << chart_to_json(*chart) << "\n";
    else if (o.format == "latex")
        std::cout << chart_to_latex(*chart);
    else
        std::cout << chart_to_text(*chart);
    return 0;
}

int cmd_central(const CommonOpts& o) {
    if (int rc = check_rank(o.rank)) return rc;
    DsRoute route = run_ds_route(o.rank, false);
    std::mt19937_64 rng(0xce17a1);
    if (o.format == "json") std::cout << "[\n";
    for (int s = 0; s < o.samples; ++s) {
        auto rep = central_invariants_sampled(o.rank, route.Bt, route.B1t, rng, root_of(o));
        if (o.format == "json") {
            std::cout << central_report_to_json(rep) << (s + 1 < o.samples ? ",\n" : "\n");
            continue;
        }
        if (s == 0) std::cout << "rank " << o.rank << ", " << o.samples << " samples\n";
        for (size_t i = 0; i < rep.roots.size(); ++i) {
            std::cout << "  a_" << i + 1 << " = (" << rep.roots[i].re << ", " << rep.roots[i].im
                      << ")   c_" << i + 1 << " = (" << rep.values[i].re << ", "
                      << rep.values[i].im << ")\n";
        }
        std::cout << "\n";
    }
    if (o.format == "json") std::cout << "]\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Adler-Gelfand-Dickey pipeline on the Slodowy slice of gl_r"};
    app.require_subcommand(1);
    CommonOpts o;

    auto add_common = [&](CLI::App* sub, bool with_rank) {
        if (with_rank) sub->add_option("--rank", o.rank, "rank r >= 2 (desk cap 5)");
        sub->add_option("--root", o.root, "alpha embedding root: plus|minus")
            ->check(CLI::IsMember({"plus", "minus"}));
        sub->add_option("--format", o.format, "output format: text|json|latex")
            ->check(CLI::IsMember({"text", "json", "latex"}));
        sub->add_option("--cache-dir", o.cache_dir, "cache directory (default AGD_CACHE_DIR)");
    };

    CLI::App* reduce = app.add_subcommand("reduce", "second bracket in a chart");
    add_common(reduce, true);
    reduce->add_option("--chart", o.chart, "chart: u|z|s|t")
        ->check(CLI::IsMember({"u", "z", "s", "t"}));

    CLI::App* pot = app.add_subcommand("potential", "Dubrovin-Frobenius potential");
    add_common(pot, true);
    pot->add_option("--route", o.route, "route: ds|orbit|both")
        ->check(CLI::IsMember({"ds", "orbit", "both"}));

    CLI::App* verify = app.add_subcommand("verify", "golden verification suite");
    add_common(verify, false);
    verify->add_option("--set", o.set, "verification set: gl2|gl3|gl4|all")
        ->check(CLI::IsMember({"gl2", "gl3", "gl4", "all"}));

    CLI::App* chart = app.add_subcommand("chart", "print a coordinate chart");
    add_common(chart, true);
    chart->add_option("--chart", o.chart, "chart: z|s|t")
        ->check(CLI::IsMember({"z", "s", "t"}));

    CLI::App* central = app.add_subcommand("central", "numeric central invariants");
    add_common(central, true);
    central->add_option("--samples", o.samples, "number of sample points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (reduce->parsed()) return cmd_reduce(o);
        if (pot->parsed()) return cmd_potential(o);
        if (verify->parsed()) return cmd_verify(o);
        if (chart->parsed()) return cmd_chart(o);
        if (central->parsed()) return cmd_central(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
