#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "entmap/locc.hpp"
#include "entmap/rng.hpp"
#include "entmap/version.hpp"
#include "report_io.hpp"
#include "svg_writer.hpp"

namespace entmap::cli {

namespace {

using nlohmann::json;

const MeasureId kExactMeasures[] = {MeasureId::Negativity, MeasureId::LogNegativity,
                                    MeasureId::Concurrence,
                                    MeasureId::EntanglementOfFormation};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::pair<MeasureId, MeasureId> parse_measure_pair(const std::string& spec) {
    const auto parts = split(spec, ',');
    if (parts.size() != 2)
        throw Error("expected two comma-separated measures, got \"" + spec + "\"");
    return {parse_measure(parts[0]), parse_measure(parts[1])};
}

json ensemble_config(const EnsembleParams& p) {
    json j;
    j["dims"] = {p.dims.a, p.dims.b};
    j["kind"] = p.kind == EnsembleKind::Pure ? "pure" : "mixed";
    j["ranks"] = p.ranks;
    j["count"] = p.count;
    j["seed"] = p.seed;
    return j;
}

json fingerprint_json(const StateFingerprint& fp) {
    json j;
    j["dims"] = {fp.dims.a, fp.dims.b};
    j["kind"] = fp.kind == EnsembleKind::Pure ? "pure" : "mixed";
    j["rank"] = fp.rank;
    j["campaign_seed"] = fp.campaign_seed;
    j["index"] = fp.index;
    j["state_seed"] = fp.state_seed;
    return j;
}

std::string values_csv(const json& config, MeasureId idA, MeasureId idB,
                       const std::vector<std::array<double, 2>>& values) {
    std::ostringstream csv;
    csv << config_header(config) << '\n';
    csv << "index," << measure_name(idA) << ',' << measure_name(idB) << '\n';
    for (std::size_t i = 0; i < values.size(); ++i)
        csv << i << ',' << format_double(values[i][0]) << ',' << format_double(values[i][1])
            << '\n';
    return csv.str();
}

DensityMatrix random_entangled_start(Dims dims, std::uint64_t seed) {
    // deterministic rejection walk through a dedicated seed subspace
    for (std::uint64_t attempt = 0;; ++attempt) {
        const PureState psi = random_pure(dims, derive_seed(seed, 1000000 + attempt));
        const DensityMatrix rho = psi.projector();
        if (negativity(rho).value > 1e-3) {
            log_debug("start state accepted after " + std::to_string(attempt + 1) +
                      " attempt(s)");
            return rho;
        }
    }
}

struct SuiteRow {
    std::string property;
    std::string measure;
    std::size_t trials;
    double max_violation;
    double tolerance;
    bool pass;
};

void print_row(const SuiteRow& r) {
    std::printf("[%s] %s / %s: max violation %.3g (tolerance %.0e, %zu trials)\n",
                r.pass ? "pass" : "FAIL", r.property.c_str(), r.measure.c_str(),
                r.max_violation, r.tolerance, r.trials);
}

} // namespace

MeasureId parse_measure(const std::string& name) {
    const auto id = measure_from_string(name);
    if (!id) throw Error("unknown measure \"" + name + "\"");
    return *id;
}

Dims parse_dims(const std::string& spec) {
    const auto parts = split(spec, ',');
    if (parts.size() != 2) throw Error("expected dims as dA,dB, got \"" + spec + "\"");
    try {
        const long a = std::stol(parts[0]);
        const long b = std::stol(parts[1]);
        if (a < 1 || b < 1) throw Error("dims must be >= 1");
        return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
    } catch (const std::logic_error&) {
        throw Error("cannot parse dims \"" + spec + "\"");
    }
}

std::vector<std::size_t> parse_ranks(const std::string& spec, Dims dims) {
    std::vector<std::size_t> ranks;
    if (spec.empty()) return ranks;
    for (const auto& part : split(spec, ',')) {
        try {
            const long r = std::stol(part);
            if (r < 1 || static_cast<std::size_t>(r) > dims.total())
                throw Error("rank " + part + " outside 1.." + std::to_string(dims.total()));
            ranks.push_back(static_cast<std::size_t>(r));
        } catch (const std::logic_error&) {
            throw Error("cannot parse rank list \"" + spec + "\"");
        }
    }
    return ranks;
}

EnsembleParams EnsembleFlags::to_params() const {
    EnsembleParams p;
    p.dims = parse_dims(dims);
    if (kind == "pure")
        p.kind = EnsembleKind::Pure;
    else if (kind == "mixed")
        p.kind = EnsembleKind::Mixed;
    else
        throw Error("kind must be pure or mixed, got \"" + kind + "\"");
    p.ranks = parse_ranks(ranks, p.dims);
    p.count = count;
    p.seed = seed;
    return p;
}

int cmd_measure(const std::string& state_file, const std::string& measures,
                const std::string& out_json) {
    const State state = load_state(state_file);
    const bool pure = std::holds_alternative<PureState>(state);
    const Dims dims = pure ? std::get<PureState>(state).dims()
                           : std::get<DensityMatrix>(state).dims();

    std::vector<MeasureId> ids;
    if (measures.empty()) {
        for (MeasureId id :
             {MeasureId::Negativity, MeasureId::LogNegativity, MeasureId::Concurrence,
              MeasureId::EntanglementOfFormation, MeasureId::EntropyOfEntanglement,
              MeasureId::RelativeEntropyOfEntanglement})
            if (applicable(id, dims, pure)) ids.push_back(id);
    } else {
        for (const auto& name : split(measures, ',')) ids.push_back(parse_measure(name));
    }

    json results = json::array();
    std::printf("%-28s %-22s %-6s %s\n", "measure", "value", "kind", "note");
    for (MeasureId id : ids) {
        const MeasureValue mv = pure ? evaluate(id, std::get<PureState>(state))
                                     : evaluate(id, std::get<DensityMatrix>(state));
        std::string note;
        if ((id == MeasureId::Negativity || id == MeasureId::LogNegativity) &&
            mv.value <= 1e-10)
            note = "PPT";
        if (mv.bound == BoundKind::UpperBound && !mv.trace.converged)
            note += (note.empty() ? "" : "; ") + std::string("optimizer not converged");
        std::printf("%-28s %-22s %-6s %s\n", std::string(measure_name(id)).c_str(),
                    format_double(mv.value).c_str(),
                    mv.bound == BoundKind::Exact ? "exact" : "upper", note.c_str());
        json row;
        row["measure"] = std::string(measure_name(id));
        row["value"] = mv.value;
        row["bound"] = mv.bound == BoundKind::Exact ? "exact" : "upper";
        if (!note.empty()) row["note"] = note;
        if (mv.bound == BoundKind::UpperBound) {
            row["optimizer"] = {{"iterations", mv.trace.iterations},
                                {"restarts", mv.trace.restarts},
                                {"best_objective", mv.trace.best_objective},
                                {"converged", mv.trace.converged}};
        }
        results.push_back(row);
    }

    if (!out_json.empty()) {
        json config;
        config["command"] = "measure";
        config["state_file"] = state_file;
        json payload;
        payload["results"] = results;
        write_json_report(out_json, config, payload);
    }
    return 0;
}

int cmd_map(const EnsembleFlags& flags, const std::string& measures,
            const std::string& out_csv, const std::string& out_svg) {
    const EnsembleParams params = flags.to_params();
    const auto [idA, idB] = parse_measure_pair(measures);

    json config = ensemble_config(params);
    config["command"] = "map";
    config["measures"] = {std::string(measure_name(idA)), std::string(measure_name(idB))};

    const auto values = evaluate_ensemble(params, idA, idB, {}, flags.workers);
    log_info("evaluated " + std::to_string(values.size()) + " states");

    if (!out_csv.empty()) write_text_file(out_csv, values_csv(config, idA, idB, values));

    if (!out_svg.empty()) {
        SvgPlot plot;
        plot.x_label = measure_name(idA);
        plot.y_label = measure_name(idB);
        plot.config = config;
        plot.scatter.assign(values.begin(), values.end());
        write_text_file(out_svg, plot.render());
    }
    std::printf("map: %zu states, measures (%s, %s)\n", values.size(),
                std::string(measure_name(idA)).c_str(),
                std::string(measure_name(idB)).c_str());
    return 0;
}

int cmd_find_discordant(const EnsembleFlags& flags, const std::string& measures,
                        double tol, const std::string& out_json,
                        const std::string& out_csv) {
    const EnsembleParams params = flags.to_params();
    const auto [idA, idB] = parse_measure_pair(measures);

    CompareTolerances tolerances;
    tolerances.tau_a = tol > 0.0 ? tol : default_tie_tolerance(idA);
    tolerances.tau_b = tol > 0.0 ? tol : default_tie_tolerance(idB);

    json config = ensemble_config(params);
    config["command"] = "find-discordant";
    config["measures"] = {std::string(measure_name(idA)), std::string(measure_name(idB))};
    config["tie_tolerance"] = {tolerances.tau_a, tolerances.tau_b};

    const CampaignResult res =
        find_discordant(params, idA, idB, tolerances, {}, flags.workers);

    std::size_t robust = 0;
    for (const auto& r : res.records) robust += r.robust ? 1 : 0;

    if (!out_json.empty()) {
        json payload;
        payload["stats"] = {{"states", res.stats.states},
                            {"pairs_checked", res.stats.pairs_checked},
                            {"concordant", res.stats.concordant},
                            {"discordant", res.stats.discordant},
                            {"tied", res.stats.tied},
                            {"discordant_fraction", res.stats.discordant_fraction},
                            {"kendall_tau", res.stats.kendall_tau},
                            {"robust_records", robust}};
        json records = json::array();
        for (const auto& r : res.records) {
            json rec;
            rec["first"] = fingerprint_json(r.first);
            rec["second"] = fingerprint_json(r.second);
            rec["values"] = {{"eA_first", r.eA_first},
                             {"eB_first", r.eB_first},
                             {"eA_second", r.eA_second},
                             {"eB_second", r.eB_second}};
            rec["robust"] = r.robust;
            records.push_back(rec);
        }
        payload["records"] = records;
        write_json_report(out_json, config, payload);
    }
    if (!out_csv.empty()) write_text_file(out_csv, values_csv(config, idA, idB, res.values));

    std::printf("pairs=%zu discordant=%zu discordant_fraction=%s kendall_tau=%s "
                "records=%zu robust=%zu\n",
                res.stats.pairs_checked, res.stats.discordant,
                format_double(res.stats.discordant_fraction).c_str(),
                format_double(res.stats.kendall_tau).c_str(), res.records.size(), robust);
    return 0;
}

int cmd_trajectory(const TrajectoryFlags& flags) {
    const auto [idA, idB] = parse_measure_pair(flags.measures);

    DensityMatrix start = [&] {
        if (!flags.start_file.empty()) {
            const State s = load_state(flags.start_file);
            if (const auto* psi = std::get_if<PureState>(&s)) return psi->projector();
            return std::get<DensityMatrix>(s);
        }
        return random_entangled_start(parse_dims(flags.dims), flags.seed);
    }();

    TrajectoryOptions opts;
    opts.n_kraus = flags.n_kraus;
    if (flags.step_kind == "channel")
        opts.step_kind = StepKind::Channel;
    else if (flags.step_kind == "measurement-average")
        opts.step_kind = StepKind::MeasurementAverage;
    else
        throw Error("step kind must be channel or measurement-average");

    json config;
    config["command"] = "trajectory";
    config["dims"] = {start.dims().a, start.dims().b};
    config["start"] = flags.start_file.empty() ? "seed" : flags.start_file;
    config["seed"] = flags.seed;
    config["steps"] = flags.steps;
    config["measures"] = {std::string(measure_name(idA)), std::string(measure_name(idB))};
    config["step_kind"] = flags.step_kind;
    config["n_kraus"] = flags.n_kraus;

    const Trajectory traj = trajectory(start, flags.steps, idA, idB, flags.seed, opts);

    double max_increase = 0.0;
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
        max_increase = std::max(max_increase, traj.points[i].eA - traj.points[i - 1].eA);
        max_increase = std::max(max_increase, traj.points[i].eB - traj.points[i - 1].eB);
    }

    if (!flags.out_csv.empty()) {
        std::ostringstream csv;
        csv << config_header(config) << '\n';
        csv << "step," << measure_name(idA) << ',' << measure_name(idB) << ",op\n";
        for (std::size_t i = 0; i < traj.points.size(); ++i) {
            csv << i << ',' << format_double(traj.points[i].eA) << ','
                << format_double(traj.points[i].eB) << ','
                << (i == 0 ? std::string("start") : traj.steps[i - 1]) << '\n';
        }
        write_text_file(flags.out_csv, csv.str());
    }

    if (!flags.out_svg.empty()) {
        SvgPlot plot;
        plot.x_label = measure_name(idA);
        plot.y_label = measure_name(idB);
        plot.config = config;
        if (flags.background > 0) {
            EnsembleFlags bg;
            bg.dims = flags.dims;
            bg.count = flags.background;
            bg.ranks = flags.background_ranks;
            bg.seed = derive_seed(flags.seed, 0xB6);
            const auto values = evaluate_ensemble(bg.to_params(), idA, idB);
            plot.scatter.assign(values.begin(), values.end());
        }
        for (const auto& p : traj.points) plot.path.push_back({p.eA, p.eB});
        write_text_file(flags.out_svg, plot.render());
    }

    const bool exact_pair = idA != MeasureId::RelativeEntropyOfEntanglement &&
                            idB != MeasureId::RelativeEntropyOfEntanglement;
    const bool monotone = max_increase <= 1e-9;
    std::printf("trajectory: %zu steps, lower-left monotone: %s (max increase %s)\n",
                traj.steps.size(), monotone ? "yes" : "NO",
                format_double(max_increase).c_str());
    if (exact_pair && !monotone) return 1;
    return 0;
}

int cmd_verify_axioms(const VerifyFlags& flags) {
    if (flags.trials_separable == 0 || flags.trials_unitary == 0 || flags.trials_monotone == 0)
        throw Error("verify-axioms: trial counts must be positive");

    std::vector<SuiteRow> rows;

    { // measures vanish on explicit separable mixtures
        double max_exact = 0.0;
        double max_er = 0.0;
        for (std::size_t i = 0; i < flags.trials_separable; ++i) {
            const DensityMatrix rho =
                random_separable({2, 2}, 1 + i % 16, derive_seed(flags.seed, i));
            for (MeasureId id : kExactMeasures)
                max_exact = std::max(max_exact, evaluate(id, rho).value);
            if (!flags.skip_er) {
                ErOptions opts;
                opts.restarts = 2;
                opts.seed = derive_seed(flags.seed, 500000 + i);
                max_er = std::max(
                    max_er, relative_entropy_of_entanglement(rho, opts).value.value);
            }
        }
        rows.push_back({"zero-on-separable", "exact measures", flags.trials_separable, max_exact,
                        1e-9, max_exact <= 1e-9});
        if (!flags.skip_er)
            rows.push_back({"zero-on-separable", "relative-entropy (upper bound)",
                            flags.trials_separable, max_er, 1e-3, max_er <= 1e-3});
    }

    { // local unitary invariance
        for (MeasureId id : kExactMeasures) {
            double max_dev = 0.0;
            for (std::size_t i = 0; i < flags.trials_unitary; ++i) {
                const DensityMatrix rho =
                    random_mixed({2, 2}, 1 + i % 4, derive_seed(flags.seed, 100000 + i));
                const DensityMatrix rotated = apply_local_unitary(
                    rho, random_local_unitary(2, derive_seed(flags.seed, 200000 + 2 * i)),
                    random_local_unitary(2, derive_seed(flags.seed, 200001 + 2 * i)));
                max_dev = std::max(max_dev, std::abs(evaluate(id, rotated).value -
                                                     evaluate(id, rho).value));
            }
            rows.push_back({"local-unitary-invariance", std::string(measure_name(id)),
                            flags.trials_unitary, max_dev, 1e-8, max_dev <= 1e-8});
        }
    }

    { // monotone under local channels and selective measurements
        double max_channel[4] = {};
        double canary_max = 0.0;
        for (std::size_t i = 0; i < flags.trials_monotone; ++i) {
            const DensityMatrix rho =
                random_mixed({2, 2}, 1 + i % 4, derive_seed(flags.seed, 300000 + i));
            const Side side = i % 2 ? Side::B : Side::A;
            const KrausChannel ch = random_local_channel(
                2, 1 + i % 3, derive_seed(flags.seed, 400000 + i), side);
            for (int m = 0; m < 4; ++m) {
                const TrialResult t = monotonicity_trial(rho, ch, kExactMeasures[m]);
                max_channel[m] = std::max(max_channel[m], t.violation);
                if (flags.inject_canary && m == 0) {
                    // deliberately broken measure E' = -negativity: every
                    // strictly decreasing step is a violation of E'
                    canary_max = std::max(canary_max, t.before - t.after);
                }
            }
        }
        for (int m = 0; m < 4; ++m)
            rows.push_back({"locc-monotonicity (channel)",
                            std::string(measure_name(kExactMeasures[m])), flags.trials_monotone,
                            max_channel[m], 1e-9, max_channel[m] <= 1e-9});

        double max_meas_en = 0.0, max_meas_ef = 0.0;
        for (std::size_t i = 0; i < flags.trials_monotone; ++i) {
            const DensityMatrix rho =
                random_mixed({2, 2}, 1 + i % 4, derive_seed(flags.seed, 600000 + i));
            SelectiveMeasurement meas;
            meas.povm_a =
                random_local_channel(2, 2, derive_seed(flags.seed, 700000 + i)).operators();
            max_meas_en = std::max(
                max_meas_en, monotonicity_trial(rho, meas, MeasureId::Negativity).violation);
            max_meas_ef = std::max(
                max_meas_ef,
                monotonicity_trial(rho, meas, MeasureId::EntanglementOfFormation).violation);
        }
        rows.push_back({"locc-monotonicity (measurement avg)", "negativity", flags.trials_monotone,
                        max_meas_en, 1e-9, max_meas_en <= 1e-9});
        rows.push_back({"locc-monotonicity (measurement avg)", "entanglement-of-formation",
                        flags.trials_monotone, max_meas_ef, 1e-9, max_meas_ef <= 1e-9});

        if (flags.inject_canary)
            rows.push_back({"locc-monotonicity (channel)", "canary (-negativity)",
                            flags.trials_monotone, canary_max, 1e-9, canary_max <= 1e-9});
    }

    bool all_pass = true;
    json results = json::array();
    for (const auto& r : rows) {
        print_row(r);
        all_pass = all_pass && r.pass;
        results.push_back({{"property", r.property},
                           {"measure", r.measure},
                           {"trials", r.trials},
                           {"max_violation", r.max_violation},
                           {"tolerance", r.tolerance},
                           {"pass", r.pass}});
    }

    if (!flags.out_json.empty()) {
        json config;
        config["command"] = "verify-axioms";
        config["trials"] = {flags.trials_separable, flags.trials_unitary, flags.trials_monotone};
        config["seed"] = flags.seed;
        config["skip_er"] = flags.skip_er;
        config["inject_canary"] = flags.inject_canary;
        json payload;
        payload["results"] = results;
        payload["pass"] = all_pass;
        write_json_report(flags.out_json, config, payload);
    }

    std::printf("verify-axioms: %s\n", all_pass ? "all properties hold" : "VIOLATIONS FOUND");
    return all_pass ? 0 : 1;
}

} // namespace entmap::cli
