#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "entmap/linalg.hpp"

namespace entmap {

struct ValidationReport {
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;   // |tr - 1|
    double min_eigenvalue = 0.0;
    double norm_defect = 0.0;    // pure states: | ||v|| - 1 |
    bool dims_match = true;
    bool pass = false;

    std::string describe() const;
};

class ValidationError : public Error {
public:
    ValidationError(const std::string& what, ValidationReport rep)
        : Error(what), report(rep) {}
    ValidationReport report;
};

/// Tolerances a density matrix must meet: Hermitian to 1e-10, unit trace to
/// 1e-10, smallest eigenvalue >= -1e-10.
ValidationReport validate_density(const CMatrix& mat, Dims dims);
/// Unit norm to 1e-12 and length dA*dB.
ValidationReport validate_pure(const cvector& vec, Dims dims);

/// Bipartite mixed state. Construction validates; instances are always valid.
class DensityMatrix {
public:
    DensityMatrix(CMatrix mat, Dims dims);

    const CMatrix& mat() const { return mat_; }
    Dims dims() const { return dims_; }

private:
    CMatrix mat_;
    Dims dims_;
};

/// Bipartite pure state vector, composite index a*dB + b.
class PureState {
public:
    PureState(cvector vec, Dims dims);

    const cvector& vec() const { return vec_; }
    Dims dims() const { return dims_; }

    /// |psi><psi| as a DensityMatrix.
    DensityMatrix projector() const;

private:
    cvector vec_;
    Dims dims_;
};

ValidationReport validate(const DensityMatrix& rho);
ValidationReport validate(const PureState& psi);

/// The four Bell states, k = 0..3: Phi+, Phi-, Psi+, Psi-.
PureState bell(int k);

/// p |Psi-><Psi-| + (1-p) I/4, p in [0,1]. Separable iff p <= 1/3.
DensityMatrix werner(double p);

/// The 3x3 bound entangled state built from the five-vector "tiles"
/// unextendible product basis: rho = (I - sum |psi_i><psi_i|) / 4.
/// PPT but entangled (realignment norm above 1).
DensityMatrix tiles_upb_state();

/// Haar-random pure state: normalized vector of iid standard complex normals.
PureState random_pure(Dims dims, std::uint64_t seed);

/// Product of two independent Haar-random local pure states.
PureState random_product_pure(Dims dims, std::uint64_t seed);

/// Induced-measure mixed state rho = G G^dagger / tr with G a (dA*dB) x rank
/// complex Ginibre matrix. rank = dA*dB gives the Hilbert-Schmidt ensemble.
DensityMatrix random_mixed(Dims dims, std::size_t rank, std::uint64_t seed);

/// Explicit convex mixture of `terms` random product states; separable by
/// construction. Weights are a flat Dirichlet sample.
DensityMatrix random_separable(Dims dims, std::size_t terms, std::uint64_t seed);

/// Haar-random unitary, d x d: QR of a Ginibre matrix via modified
/// Gram-Schmidt (positive diagonal R, so Q is Haar). Defect <= 1e-12.
CMatrix random_unitary(std::size_t d, std::uint64_t seed);

using State = std::variant<DensityMatrix, PureState>;

/// JSON state file, schema:
///   {"dims":[dA,dB],"kind":"mixed"|"pure","entries":[[re,im],...],"label":"..."}
/// entries row-major, composite index a*dB + b. Numbers round-trip exactly.
State load_state(const std::filesystem::path& path);
void save_state(const DensityMatrix& rho, const std::filesystem::path& path,
                const std::string& label = "");
void save_state(const PureState& psi, const std::filesystem::path& path,
                const std::string& label = "");

} // namespace entmap
