#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "entmap/measures.hpp"

namespace entmap {

enum class Ordering { Concordant, Discordant, Tied };

/// Outcome of comparing a state pair under two measures. With deltas
/// dX = X(rho_i) - X(rho_j):
///   Tied        iff |dA| <= tauA or |dB| <= tauB
///   Concordant  iff both deltas clear their tolerance and share a sign
///   Discordant  iff both clear and the signs differ
/// A discordant pair is LOCC-incomparable: neither state can reach the
/// other, or some monotone would have to increase.
struct OrderingVerdict {
    Ordering kind = Ordering::Tied;
    double delta_a = 0.0;
    double delta_b = 0.0;
    double tau_a = 0.0;
    double tau_b = 0.0;
};

struct CompareTolerances {
    double tau_a = 1e-6;
    double tau_b = 1e-6;
};

/// Value-level comparator; all state-level overloads funnel through this.
OrderingVerdict compare_values(double eA_i, double eA_j, double eB_i, double eB_j,
                               CompareTolerances tol);

OrderingVerdict compare(const DensityMatrix& rho_i, const DensityMatrix& rho_j,
                        MeasureId idA, MeasureId idB, CompareTolerances tol,
                        const EvalOptions& opts = {});
OrderingVerdict compare(const PureState& psi_i, const PureState& psi_j,
                        MeasureId idA, MeasureId idB, CompareTolerances tol,
                        const EvalOptions& opts = {});

/// Eigenvalues of the reduced state, sorted descending; sums to 1.
std::vector<double> schmidt_coefficients(const PureState& psi);

enum class Convertibility { Forward, Backward, Both, Incomparable };

/// True iff x is majorized by y: every partial sum of the descending
/// rearrangement of x is <= the matching sum for y, within tol.
bool majorized_by(const std::vector<double>& x, const std::vector<double>& y,
                  double tol = 1e-9);

/// Deterministic pure-state convertibility (Nielsen criterion): psi -> phi
/// under LOCC iff schmidt(psi) is majorized by schmidt(phi).
Convertibility pure_locc_convertible(const PureState& psi, const PureState& phi);

enum class EnsembleKind { Pure, Mixed };

/// Recipe for a deterministic ensemble of sampled states. State i is drawn
/// from seed derive_seed(seed, i); mixed states use ranks[i % ranks.size()]
/// (empty ranks means full rank).
struct EnsembleParams {
    Dims dims{2, 2};
    EnsembleKind kind = EnsembleKind::Mixed;
    std::vector<std::size_t> ranks{};
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

/// Enough to rebuild one sampled state exactly.
struct StateFingerprint {
    Dims dims{2, 2};
    EnsembleKind kind = EnsembleKind::Mixed;
    std::size_t rank = 0; // 0 for pure
    std::uint64_t campaign_seed = 0;
    std::size_t index = 0;
    std::uint64_t state_seed = 0;
};

StateFingerprint fingerprint(const EnsembleParams& params, std::size_t index);
DensityMatrix reconstruct(const StateFingerprint& fp);

struct DiscordanceRecord {
    StateFingerprint first;
    StateFingerprint second;
    double eA_first = 0.0, eB_first = 0.0;
    double eA_second = 0.0, eB_second = 0.0;
    // Still discordant when both tie tolerances are inflated tenfold;
    // guards against optimizer noise manufacturing a reversal.
    bool robust = false;
};

struct CampaignStats {
    std::size_t states = 0;
    std::size_t pairs_checked = 0;
    std::size_t concordant = 0;
    std::size_t discordant = 0;
    std::size_t tied = 0;
    double discordant_fraction = 0.0;
    double kendall_tau = 0.0; // (C - D) / (C + D) over non-tied pairs; 1 if none differ
};

struct CampaignResult {
    CampaignStats stats;
    std::vector<DiscordanceRecord> records;
    std::vector<std::array<double, 2>> values; // per-state (eA, eB)
};

/// Evaluate both measures on every state of the ensemble. Worker threads
/// split by state index; results are positional, so the outcome does not
/// depend on the worker count.
std::vector<std::array<double, 2>> evaluate_ensemble(const EnsembleParams& params,
                                                     MeasureId idA, MeasureId idB,
                                                     const EvalOptions& opts = {},
                                                     std::size_t workers = 1);

/// Exhaustive pairwise ordering comparison over a sampled ensemble.
/// Discordant pairs come back as reconstructible records (capped at
/// max_records; counting always covers every pair).
CampaignResult find_discordant(const EnsembleParams& params, MeasureId idA,
                               MeasureId idB, CompareTolerances tol,
                               const EvalOptions& opts = {}, std::size_t workers = 1,
                               std::size_t max_records = 1000);

} // namespace entmap
