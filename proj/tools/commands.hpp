#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entmap/ordering.hpp"

namespace entmap::cli {

/// Shared ensemble flags; to_params() validates and throws Error on bad
/// combinations (exit code 2 at the top level).
struct EnsembleFlags {
    std::string dims = "2,2";
    std::string kind = "mixed";
    std::string ranks;          // comma list, cycled by index; empty = full rank
    std::size_t count = 0;
    std::uint64_t seed = 0;
    std::size_t workers = 1;

    EnsembleParams to_params() const;
};

MeasureId parse_measure(const std::string& name);
Dims parse_dims(const std::string& spec);
std::vector<std::size_t> parse_ranks(const std::string& spec, Dims dims);

int cmd_measure(const std::string& state_file, const std::string& measures,
                const std::string& out_json);

int cmd_map(const EnsembleFlags& flags, const std::string& measures,
            const std::string& out_csv, const std::string& out_svg);

int cmd_find_discordant(const EnsembleFlags& flags, const std::string& measures,
                        double tol, const std::string& out_json,
                        const std::string& out_csv);

struct TrajectoryFlags {
    std::string start_file;     // empty: random entangled pure start from seed
    std::string dims = "2,2";
    std::uint64_t seed = 0;
    std::size_t steps = 10;
    std::string measures = "En,Ef";
    std::string step_kind = "channel"; // or "measurement-average"
    std::size_t n_kraus = 2;
    std::size_t background = 0; // background ensemble size for the svg
    std::string background_ranks;
    std::string out_csv;
    std::string out_svg;
};

int cmd_trajectory(const TrajectoryFlags& flags);

struct VerifyFlags {
    std::size_t trials_separable = 200;
    std::size_t trials_unitary = 200;
    std::size_t trials_monotone = 1000;
    std::uint64_t seed = 1;
    bool skip_er = false;
    bool inject_canary = false; // deliberate broken measure, must be caught
    std::string out_json;
};

int cmd_verify_axioms(const VerifyFlags& flags);

} // namespace entmap::cli
