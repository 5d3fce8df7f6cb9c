#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "entmap/measures.hpp"

namespace entmap {

/// Trace-preserving channel acting on one subsystem, given by Kraus
/// operators: sum_k K_k^dagger K_k = I to 1e-10.
class KrausChannel {
public:
    KrausChannel(std::vector<CMatrix> operators, Side side);

    const std::vector<CMatrix>& operators() const { return ops_; }
    Side side() const { return side_; }
    std::size_t local_dim() const { return ops_.front().rows(); }

private:
    std::vector<CMatrix> ops_;
    Side side_;
};

/// Haar-random d x d unitary (same construction as states' random_unitary,
/// re-exported here as the LOCC building block).
CMatrix random_local_unitary(std::size_t d, std::uint64_t seed);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger. Inputs checked unitary to 1e-10.
DensityMatrix apply_local_unitary(const DensityMatrix& rho, const CMatrix& u_a,
                                  const CMatrix& u_b);

/// Random local channel: the n_kraus d x d blocks of a Haar isometry
/// (first d columns of a Haar unitary of size n_kraus*d). n_kraus = 1
/// degenerates to a single unitary.
KrausChannel random_local_channel(std::size_t d, std::size_t n_kraus, std::uint64_t seed,
                                  Side side = Side::A);

/// sum_k (K (x) I) rho (K (x) I)^dagger, or I (x) K for side B.
DensityMatrix apply_local_channel(const DensityMatrix& rho, const KrausChannel& channel);

struct MeasurementOutcome {
    double probability = 0.0;
    DensityMatrix state;
};

/// One selective measurement round on side A with classically communicated
/// outcome: p_k = Tr[(M_k (x) I) rho (M_k (x) I)^dagger], normalized
/// post-measurement states, optional per-outcome correction unitary on B.
/// Outcomes with p < 1e-12 are dropped (probabilities stay as measured).
std::vector<MeasurementOutcome> selective_measurement(
    const DensityMatrix& rho, const std::vector<CMatrix>& povm_a,
    const std::vector<CMatrix>* corrections_b = nullptr);

struct SelectiveMeasurement {
    std::vector<CMatrix> povm_a;
    std::vector<CMatrix> corrections_b; // empty = no correction
};

using LoccOp = std::variant<KrausChannel, SelectiveMeasurement>;

/// One monotonicity check: after = E(channel(rho)) for channels, or the
/// outcome average sum_k p_k E(rho_k) for selective measurements.
/// violation = max(0, after - before).
struct TrialResult {
    double before = 0.0;
    double after = 0.0;
    double violation = 0.0;
};

TrialResult monotonicity_trial(const DensityMatrix& rho, const LoccOp& op, MeasureId id,
                               const EvalOptions& opts = {});

struct MapPoint {
    double eA = 0.0;
    double eB = 0.0;
    std::string fingerprint; // how the state at this point was produced
};

enum class StepKind { Channel, MeasurementAverage };

/// A path on the two-measure map: steps random local operations alternating
/// sides A, B, A, ... with one MapPoint per visited state.
/// points.size() == steps.size() + 1.
struct Trajectory {
    MeasureId idA;
    MeasureId idB;
    std::vector<MapPoint> points;
    std::vector<std::string> steps;
};

struct TrajectoryOptions {
    std::size_t n_kraus = 2; // operators per random step
    StepKind step_kind = StepKind::Channel;
    EvalOptions eval{};
};

/// For MeasurementAverage steps the plotted point is the outcome-averaged
/// pair (sum p_k E_A(rho_k), sum p_k E_B(rho_k)) and the walk continues from
/// the averaged state, so the path stays a single curve either way.
Trajectory trajectory(const DensityMatrix& rho0, std::size_t steps, MeasureId idA,
                      MeasureId idB, std::uint64_t seed,
                      const TrajectoryOptions& opts = {});

} // namespace entmap
