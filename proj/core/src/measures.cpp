#include "entmap/measures.hpp"

#include <algorithm>
#include <cmath>

namespace entmap {

namespace {

constexpr double kDualRouteTol = 1e-10;
constexpr double kClampTol = 1e-12;

double clamp_measure(double v, const char* who) {
    if (v >= 0.0) return v;
    if (v >= -kClampTol) return 0.0;
    throw Error(std::string(who) + ": value below -1e-12, internal inconsistency");
}

void require_two_qubits(const DensityMatrix& rho, const char* who) {
    if (!(rho.dims() == Dims{2, 2}))
        throw WrongDimensionsError(std::string(who) + ": requires dims (2,2)");
}

// sigma_y (x) sigma_y, the two-qubit spin flip.
CMatrix spin_flip_matrix() {
    return CMatrix::from_rows({{0, 0, 0, -1},
                               {0, 0, 1, 0},
                               {0, 1, 0, 0},
                               {-1, 0, 0, 0}});
}

double entropy_base2(const std::vector<double>& probs) {
    double s = 0.0;
    for (double p : probs)
        if (p > kLogFloor) s -= p * std::log2(p);
    return s;
}

} // namespace

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw OutOfRangeError("binary_entropy: x must be in [0,1]");
    if (x > 0.5) x = 1.0 - x; // exact h(x) == h(1-x)
    if (x == 0.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

MeasureValue negativity(const DensityMatrix& rho) {
    const CMatrix pt = partial_transpose(rho.mat(), rho.dims(), Side::B);
    const EigResult eig = hermitian_eig(pt);
    double neg_sum = 0.0, abs_sum = 0.0;
    for (double v : eig.values) {
        abs_sum += std::abs(v);
        if (v < 0.0) neg_sum -= v;
    }
    const double via_norm = (abs_sum - 1.0) / 2.0;
    if (std::abs(via_norm - neg_sum) > kDualRouteTol)
        throw Error("negativity: trace-norm and eigenvalue routes disagree");
    return {MeasureId::Negativity, clamp_measure(via_norm, "negativity"), BoundKind::Exact};
}

MeasureValue log_negativity(const DensityMatrix& rho) {
    const double n = negativity(rho).value;
    const double v = std::log2(2.0 * n + 1.0);
    return {MeasureId::LogNegativity, clamp_measure(v, "log_negativity"), BoundKind::Exact};
}

MeasureValue concurrence(const DensityMatrix& rho) {
    require_two_qubits(rho, "concurrence");
    // With rho = V M V^dagger, the spin-flipped spectrum lambda_i equals the
    // singular values of the complex symmetric matrix
    //   tau_ij = sqrt(mu_i mu_j) <e_i| S |e_j^*>,   S = sigma_y (x) sigma_y.
    // Zero eigenvalues of rho zero out whole rows of tau, so rank-deficient
    // states keep exact zero lambdas instead of sqrt-amplified eigensolver
    // noise.
    const CMatrix flip = spin_flip_matrix();
    const EigResult eig = hermitian_eig(rho.mat());
    const double mu_max = std::max(eig.values.back(), 0.0);
    double root[4];
    for (int i = 0; i < 4; ++i) {
        const double mu = eig.values[i];
        root[i] = (mu > 1e-14 * mu_max) ? std::sqrt(mu) : 0.0;
    }
    CMatrix tau(4, 4);
    for (int i = 0; i < 4; ++i) {
        if (root[i] == 0.0) continue;
        for (int j = 0; j < 4; ++j) {
            if (root[j] == 0.0) continue;
            complex a{};
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    a += std::conj(eig.vectors(r, i)) * flip(r, c) *
                         std::conj(eig.vectors(c, j));
            tau(i, j) = root[i] * root[j] * a;
        }
    }
    EigResult sv = hermitian_eig(tau.adjoint() * tau);
    double lambda[4];
    for (int i = 0; i < 4; ++i)
        lambda[i] = std::sqrt(std::max(sv.values[3 - i], 0.0)); // descending
    const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    return {MeasureId::Concurrence, std::max(0.0, c), BoundKind::Exact};
}

MeasureValue entanglement_of_formation(const DensityMatrix& rho) {
    require_two_qubits(rho, "entanglement_of_formation");
    const double c = concurrence(rho).value;
    const double x = (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0;
    return {MeasureId::EntanglementOfFormation, binary_entropy(x), BoundKind::Exact};
}

MeasureValue entropy_of_entanglement(const PureState& psi) {
    const CMatrix proj = CMatrix::outer(psi.vec(), psi.vec());
    const EigResult ma = hermitian_eig(partial_trace(proj, psi.dims(), Side::A));
    const double s = entropy_base2(ma.values);
    return {MeasureId::EntropyOfEntanglement, clamp_measure(s, "entropy_of_entanglement"),
            BoundKind::Exact};
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (!(rho.dims() == sigma.dims()))
        throw DimensionMismatchError("relative_entropy: dims differ");
    const EigResult er = hermitian_eig(rho.mat());
    double tr_rho_log_rho = 0.0;
    for (double v : er.values)
        if (v > kLogFloor) tr_rho_log_rho += v * std::log2(v);
    const CMatrix log_sigma = matrix_log2(sigma.mat());
    const complex cross = (rho.mat() * log_sigma).trace();
    return tr_rho_log_rho - cross.real();
}

MeasureValue evaluate(MeasureId id, const DensityMatrix& rho, const EvalOptions& opts) {
    switch (id) {
        case MeasureId::Negativity:
            return negativity(rho);
        case MeasureId::LogNegativity:
            return log_negativity(rho);
        case MeasureId::Concurrence:
            if (!(rho.dims() == Dims{2, 2}))
                throw NotApplicableError("concurrence: only defined here for dims (2,2)");
            return concurrence(rho);
        case MeasureId::EntanglementOfFormation:
            if (!(rho.dims() == Dims{2, 2}))
                throw NotApplicableError(
                    "entanglement_of_formation: only defined here for dims (2,2)");
            return entanglement_of_formation(rho);
        case MeasureId::RelativeEntropyOfEntanglement:
            return relative_entropy_of_entanglement(rho, opts.er).value;
        case MeasureId::EntropyOfEntanglement:
            throw NotApplicableError(
                "entropy_of_entanglement: defined for pure states only");
    }
    throw Error("evaluate: unknown measure id");
}

MeasureValue evaluate(MeasureId id, const PureState& psi, const EvalOptions& opts) {
    if (id == MeasureId::EntropyOfEntanglement) return entropy_of_entanglement(psi);
    return evaluate(id, psi.projector(), opts);
}

bool applicable(MeasureId id, Dims dims, bool pure) {
    switch (id) {
        case MeasureId::Negativity:
        case MeasureId::LogNegativity:
        case MeasureId::RelativeEntropyOfEntanglement:
            return true;
        case MeasureId::Concurrence:
        case MeasureId::EntanglementOfFormation:
            return dims == Dims{2, 2};
        case MeasureId::EntropyOfEntanglement:
            return pure;
    }
    return false;
}

std::string_view measure_name(MeasureId id) {
    switch (id) {
        case MeasureId::Negativity: return "negativity";
        case MeasureId::LogNegativity: return "log-negativity";
        case MeasureId::Concurrence: return "concurrence";
        case MeasureId::EntanglementOfFormation: return "entanglement-of-formation";
        case MeasureId::RelativeEntropyOfEntanglement: return "relative-entropy";
        case MeasureId::EntropyOfEntanglement: return "entropy-of-entanglement";
    }
    return "?";
}

std::optional<MeasureId> measure_from_string(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    if (s == "en" || s == "negativity") return MeasureId::Negativity;
    if (s == "logen" || s == "log-negativity" || s == "log_negativity")
        return MeasureId::LogNegativity;
    if (s == "c" || s == "concurrence") return MeasureId::Concurrence;
    if (s == "ef" || s == "entanglement-of-formation" || s == "formation")
        return MeasureId::EntanglementOfFormation;
    if (s == "er" || s == "relative-entropy" || s == "relative_entropy")
        return MeasureId::RelativeEntropyOfEntanglement;
    if (s == "e" || s == "entropy" || s == "entropy-of-entanglement")
        return MeasureId::EntropyOfEntanglement;
    return std::nullopt;
}

double default_tie_tolerance(MeasureId id, const ErOptions& opts) {
    if (id == MeasureId::RelativeEntropyOfEntanglement)
        return std::max(1e-6, 10.0 * opts.tol);
    return 1e-6;
}

} // namespace entmap
