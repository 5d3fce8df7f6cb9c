#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "entmap/states.hpp"

namespace entmap {

enum class MeasureId {
    Negativity,
    LogNegativity,
    Concurrence,
    EntanglementOfFormation,
    RelativeEntropyOfEntanglement,
    EntropyOfEntanglement,
};

enum class BoundKind { Exact, UpperBound };

/// Summary of the optimizer run behind an upper-bound value. Zero for
/// closed-form measures.
struct OptimizerTrace {
    int iterations = 0; // coordinate-descent sweeps, summed over restarts
    int restarts = 0;
    double best_objective = 0.0;
    bool converged = true; // false if no restart met the improvement tolerance
};

struct MeasureValue {
    MeasureId id;
    double value = 0.0;
    BoundKind bound = BoundKind::Exact;
    OptimizerTrace trace{};
};

/// Mixture of product states sigma = sum_k w_k |a_k><a_k| (x) |b_k><b_k|.
/// Weights live on the simplex; local vectors are unit norm.
struct SeparableAnsatz {
    Dims dims{2, 2};
    std::vector<double> weights;
    std::vector<cvector> a; // each of length dA
    std::vector<cvector> b; // each of length dB

    CMatrix assemble() const;
};

struct ErOptions {
    std::size_t terms = 0;   // 0 -> (dA*dB)^2, enough for any separable state
    int restarts = 5;
    int max_iters = 2000;    // coordinate-descent sweeps per restart
    double tol = 1e-7;       // relative improvement over 50 sweeps
    std::uint64_t seed = 0;  // restart initialization
    double stop_when_below = 1e-5; // skip remaining restarts below this value
};

struct ErResult {
    MeasureValue value;     // bound = UpperBound
    SeparableAnsatz argmin; // best separable state found
};

struct EvalOptions {
    ErOptions er{};
};

/// N = (||rho^{T_B}||_1 - 1)/2, equal to the absolute sum of negative
/// partial-transpose eigenvalues. Both routes are computed and must agree
/// to 1e-10.
MeasureValue negativity(const DensityMatrix& rho);

/// log2 ||rho^{T_B}||_1 = log2(2N + 1). Zero iff PPT.
MeasureValue log_negativity(const DensityMatrix& rho);

/// Two-qubit concurrence, C = max(0, l1 - l2 - l3 - l4) with l_i the
/// descending square roots of eig(rho (sy (x) sy) rho* (sy (x) sy))
/// (Wootters closed form). Requires dims (2,2).
MeasureValue concurrence(const DensityMatrix& rho);

/// E_f = h((1 + sqrt(1 - C^2))/2) for two qubits; monotone in concurrence.
MeasureValue entanglement_of_formation(const DensityMatrix& rho);

/// Entropy of the reduced state of a pure state, in ebits.
MeasureValue entropy_of_entanglement(const PureState& psi);

/// S(rho||sigma) = Tr[rho log2 rho] - Tr[rho log2 sigma], eigenvalues of
/// sigma floored at kLogFloor inside the log.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Upper bound on the relative entropy of entanglement: minimizes
/// S(rho||sigma) over a mixture-of-product-states ansatz by seeded
/// multi-restart coordinate pattern search. Returns the bound and the
/// best separable state found; never claims exactness.
ErResult relative_entropy_of_entanglement(const DensityMatrix& rho,
                                          const ErOptions& opts = {});

/// Binary entropy, base 2. Symmetric under x -> 1-x by construction.
double binary_entropy(double x);

/// Uniform dispatch. Throws NotApplicableError when the measure does not
/// apply to the state's kind or dimensions.
MeasureValue evaluate(MeasureId id, const DensityMatrix& rho, const EvalOptions& opts = {});
MeasureValue evaluate(MeasureId id, const PureState& psi, const EvalOptions& opts = {});

bool applicable(MeasureId id, Dims dims, bool pure);

std::string_view measure_name(MeasureId id);
std::optional<MeasureId> measure_from_string(std::string_view name);

/// Comparison tie tolerance appropriate for a measure: 1e-6 for closed-form
/// measures, widened for optimized upper bounds.
double default_tie_tolerance(MeasureId id, const ErOptions& opts = {});

} // namespace entmap
