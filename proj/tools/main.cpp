#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "entmap/version.hpp"

using namespace entmap::cli;

int main(int argc, char** argv) {
    CLI::App app{"bipartite entanglement measures, ordering comparisons, and "
                 "LOCC trajectories on the two-measure map"};
    app.set_version_flag("--version", std::string("entmap ") + entmap::kVersion);
    app.require_subcommand(1);

    // measure
    std::string measure_file, measure_ids, measure_out;
    auto* measure = app.add_subcommand("measure", "evaluate measures on a state file");
    measure->add_option("state", measure_file, "state file (JSON)")->required();
    measure->add_option("--measures", measure_ids,
                        "comma list (En,LogEn,C,Ef,Er,E); default: all applicable");
    measure->add_option("--out", measure_out, "write results as JSON");

    // map
    EnsembleFlags map_flags;
    std::string map_measures = "En,Ef", map_csv, map_svg;
    auto* map = app.add_subcommand("map", "scatter an ensemble on the two-measure map");
    map->add_option("--dims", map_flags.dims, "subsystem dims dA,dB")->capture_default_str();
    map->add_option("--kind", map_flags.kind, "pure|mixed")->capture_default_str();
    map->add_option("--rank", map_flags.ranks, "rank or comma list, cycled (mixed only)");
    map->add_option("--count", map_flags.count, "ensemble size")->required();
    map->add_option("--seed", map_flags.seed, "ensemble seed")->capture_default_str();
    map->add_option("--measures", map_measures, "measure pair A,B")->capture_default_str();
    map->add_option("--workers", map_flags.workers, "worker threads")->capture_default_str();
    map->add_option("--out", map_csv, "CSV output path");
    map->add_option("--svg", map_svg, "SVG output path");

    // find-discordant
    EnsembleFlags find_flags;
    std::string find_measures = "Ef,En", find_json, find_csv;
    double find_tol = 0.0;
    auto* find = app.add_subcommand("find-discordant",
                                    "search an ensemble for measure-order reversals");
    find->add_option("--dims", find_flags.dims)->capture_default_str();
    find->add_option("--kind", find_flags.kind, "pure|mixed")->capture_default_str();
    find->add_option("--rank", find_flags.ranks, "rank or comma list, cycled");
    find->add_option("--count", find_flags.count, "ensemble size")->required();
    find->add_option("--seed", find_flags.seed)->capture_default_str();
    find->add_option("--measures", find_measures, "measure pair A,B")->capture_default_str();
    find->add_option("--tol", find_tol, "tie tolerance (default: per-measure)");
    find->add_option("--workers", find_flags.workers)->capture_default_str();
    find->add_option("--out", find_json, "JSON report path");
    find->add_option("--csv", find_csv, "per-state values CSV path");

    // trajectory
    TrajectoryFlags traj_flags;
    auto* traj = app.add_subcommand("trajectory",
                                    "walk a state down the map under random local ops");
    traj->add_option("--start", traj_flags.start_file, "start state file (JSON)");
    traj->add_option("--dims", traj_flags.dims, "dims for a random start")
        ->capture_default_str();
    traj->add_option("--seed", traj_flags.seed)->capture_default_str();
    traj->add_option("--steps", traj_flags.steps)->capture_default_str();
    traj->add_option("--measures", traj_flags.measures)->capture_default_str();
    traj->add_option("--step-kind", traj_flags.step_kind, "channel|measurement-average")
        ->capture_default_str();
    traj->add_option("--kraus", traj_flags.n_kraus, "Kraus operators per step")
        ->capture_default_str();
    traj->add_option("--background", traj_flags.background,
                     "background ensemble size for the SVG");
    traj->add_option("--background-rank", traj_flags.background_ranks,
                     "background rank list");
    traj->add_option("--out", traj_flags.out_csv, "CSV output path");
    traj->add_option("--svg", traj_flags.out_svg, "SVG output path");

    // verify-axioms
    VerifyFlags verify_flags;
    auto* verify = app.add_subcommand(
        "verify-axioms", "run the measure property suites (zero on separable states, "
                         "local-unitary invariance, LOCC monotonicity)");
    verify->add_option("--trials-separable", verify_flags.trials_separable, "separable-state trials")
        ->capture_default_str();
    verify->add_option("--trials-unitary", verify_flags.trials_unitary, "local-unitary trials")
        ->capture_default_str();
    verify->add_option("--trials-monotone", verify_flags.trials_monotone, "monotonicity trials")
        ->capture_default_str();
    verify->add_option("--seed", verify_flags.seed)->capture_default_str();
    verify->add_flag("--skip-er", verify_flags.skip_er,
                     "skip the relative-entropy optimizer rows");
    verify->add_flag("--inject-canary", verify_flags.inject_canary,
                     "add a deliberately broken measure; the suite must fail");
    verify->add_option("--out", verify_flags.out_json, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        if (*measure) return cmd_measure(measure_file, measure_ids, measure_out);
        if (*map) return cmd_map(map_flags, map_measures, map_csv, map_svg);
        if (*find)
            return cmd_find_discordant(find_flags, find_measures, find_tol, find_json,
                                       find_csv);
        if (*traj) return cmd_trajectory(traj_flags);
        if (*verify) return cmd_verify_axioms(verify_flags);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
