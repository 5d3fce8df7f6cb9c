#include "entmap/states.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "entmap/rng.hpp"

namespace entmap {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigTol = 1e-10;
constexpr double kNormTol = 1e-12;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

} // namespace

std::string ValidationReport::describe() const {
    std::ostringstream os;
    os << (pass ? "pass" : "fail")
       << " (hermiticity defect " << hermiticity_defect
       << ", trace defect " << trace_defect
       << ", min eigenvalue " << min_eigenvalue
       << ", norm defect " << norm_defect
       << ", dims " << (dims_match ? "ok" : "mismatch") << ")";
    return os.str();
}

ValidationReport validate_density(const CMatrix& mat, Dims dims) {
    ValidationReport rep;
    rep.dims_match = mat.square() && mat.rows() == dims.total();
    if (!rep.dims_match) return rep;
    rep.hermiticity_defect = mat.hermiticity_defect();
    rep.trace_defect = std::abs(mat.trace() - complex(1.0));
    if (rep.hermiticity_defect <= kHermTol) {
        rep.min_eigenvalue = hermitian_eig(mat).values.front();
    } else {
        rep.min_eigenvalue = -1.0; // not meaningful for a non-Hermitian candidate
    }
    rep.pass = rep.hermiticity_defect <= kHermTol && rep.trace_defect <= kTraceTol &&
               rep.min_eigenvalue >= -kEigTol;
    return rep;
}

ValidationReport validate_pure(const cvector& vec, Dims dims) {
    ValidationReport rep;
    rep.dims_match = vec.size() == dims.total() && dims.total() >= 1;
    if (!rep.dims_match) return rep;
    rep.norm_defect = std::abs(norm(vec) - 1.0);
    rep.pass = rep.norm_defect <= kNormTol;
    return rep;
}

DensityMatrix::DensityMatrix(CMatrix mat, Dims dims)
    : mat_(std::move(mat)), dims_(dims) {
    const ValidationReport rep = validate_density(mat_, dims_);
    if (!rep.pass)
        throw ValidationError("DensityMatrix: " + rep.describe(), rep);
}

PureState::PureState(cvector vec, Dims dims) : vec_(std::move(vec)), dims_(dims) {
    const ValidationReport rep = validate_pure(vec_, dims_);
    if (!rep.pass)
        throw ValidationError("PureState: " + rep.describe(), rep);
}

DensityMatrix PureState::projector() const {
    return DensityMatrix(CMatrix::outer(vec_, vec_), dims_);
}

ValidationReport validate(const DensityMatrix& rho) {
    return validate_density(rho.mat(), rho.dims());
}

ValidationReport validate(const PureState& psi) {
    return validate_pure(psi.vec(), psi.dims());
}

PureState bell(int k) {
    if (k < 0 || k > 3) throw OutOfRangeError("bell: k must be 0..3");
    cvector v(4, 0.0);
    switch (k) {
        case 0: v[0] = kInvSqrt2; v[3] = kInvSqrt2; break;  // Phi+
        case 1: v[0] = kInvSqrt2; v[3] = -kInvSqrt2; break; // Phi-
        case 2: v[1] = kInvSqrt2; v[2] = kInvSqrt2; break;  // Psi+
        case 3: v[1] = kInvSqrt2; v[2] = -kInvSqrt2; break; // Psi-
    }
    return PureState(std::move(v), {2, 2});
}

DensityMatrix werner(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw OutOfRangeError("werner: p must be in [0,1]");
    const PureState psi_minus = bell(3);
    CMatrix m = CMatrix::outer(psi_minus.vec(), psi_minus.vec()) * complex(p);
    const double bg = (1.0 - p) / 4.0;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) += bg;
    return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix tiles_upb_state() {
    auto ket = [](std::size_t i) {
        cvector v(3, 0.0);
        v[i] = 1.0;
        return v;
    };
    auto minus = [&](std::size_t i, std::size_t j) {
        cvector v(3, 0.0);
        v[i] = kInvSqrt2;
        v[j] = -kInvSqrt2;
        return v;
    };
    const double third = 1.0 / std::sqrt(3.0);
    const cvector uniform = {third, third, third};
    const std::vector<cvector> tiles = {
        kron(ket(0), minus(0, 1)),
        kron(ket(2), minus(1, 2)),
        kron(minus(0, 1), ket(2)),
        kron(minus(1, 2), ket(0)),
        kron(uniform, uniform),
    };
    CMatrix m = CMatrix::identity(9);
    for (const auto& t : tiles) {
        const CMatrix p = CMatrix::outer(t, t);
        for (std::size_t i = 0; i < m.entries().size(); ++i)
            m.entries()[i] -= p.entries()[i];
    }
    m *= complex(0.25);
    return DensityMatrix(std::move(m), {3, 3});
}

PureState random_pure(Dims dims, std::uint64_t seed) {
    Prng rng(seed);
    cvector v(dims.total());
    for (auto& x : v) x = rng.cnormal();
    return PureState(normalized(v), dims);
}

PureState random_product_pure(Dims dims, std::uint64_t seed) {
    Prng rng(seed);
    cvector a(dims.a), b(dims.b);
    for (auto& x : a) x = rng.cnormal();
    for (auto& x : b) x = rng.cnormal();
    return PureState(kron(normalized(a), normalized(b)), dims);
}

DensityMatrix random_mixed(Dims dims, std::size_t rank, std::uint64_t seed) {
    const std::size_t d = dims.total();
    if (rank < 1 || rank > d)
        throw OutOfRangeError("random_mixed: rank must be in 1..dA*dB");
    Prng rng(seed);
    const CMatrix g = rng.ginibre(d, rank);
    CMatrix m = g * g.adjoint();
    const double tr = m.trace().real();
    m *= complex(1.0 / tr);
    // Exactly Hermitian by symmetrizing away rounding in g g^dagger.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            const complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    return DensityMatrix(std::move(m), dims);
}

DensityMatrix random_separable(Dims dims, std::size_t terms, std::uint64_t seed) {
    if (terms < 1) throw OutOfRangeError("random_separable: need at least one term");
    Prng rng(seed);
    // Flat Dirichlet weights via normalized exponentials.
    std::vector<double> w(terms);
    double wsum = 0.0;
    for (auto& x : w) {
        x = -std::log(1.0 - rng.uniform());
        wsum += x;
    }
    CMatrix m = CMatrix::zero(dims.total(), dims.total());
    for (std::size_t k = 0; k < terms; ++k) {
        cvector a(dims.a), b(dims.b);
        for (auto& x : a) x = rng.cnormal();
        for (auto& x : b) x = rng.cnormal();
        const cvector prod = kron(normalized(a), normalized(b));
        const CMatrix proj = CMatrix::outer(prod, prod);
        const double wk = w[k] / wsum;
        for (std::size_t i = 0; i < m.entries().size(); ++i)
            m.entries()[i] += wk * proj.entries()[i];
    }
    return DensityMatrix(std::move(m), dims);
}

CMatrix random_unitary(std::size_t d, std::uint64_t seed) {
    if (d < 1) throw OutOfRangeError("random_unitary: d must be >= 1");
    Prng rng(seed);
    CMatrix g = rng.ginibre(d, d);
    // Modified Gram-Schmidt, two passes for orthogonality at the 1e-15 level.
    CMatrix q(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        cvector col(d);
        for (std::size_t i = 0; i < d; ++i) col[i] = g(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cvector qk(d);
                for (std::size_t i = 0; i < d; ++i) qk[i] = q(i, k);
                const complex proj = inner(qk, col);
                for (std::size_t i = 0; i < d; ++i) col[i] -= proj * qk[i];
            }
        }
        col = normalized(col);
        for (std::size_t i = 0; i < d; ++i) q(i, j) = col[i];
    }
    return q;
}

namespace {

using nlohmann::json;

json state_file_json(const CMatrix& entries_source, Dims dims, const char* kind,
                     const std::string& label) {
    json entries = json::array();
    for (const complex& v : entries_source.entries())
        entries.push_back({v.real(), v.imag()});
    json j;
    j["dims"] = {dims.a, dims.b};
    j["kind"] = kind;
    j["entries"] = std::move(entries);
    if (!label.empty()) j["label"] = label;
    return j;
}

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("save_state: cannot open " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace

State load_state(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("load_state: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("load_state: " + path.string() + ": " + e.what());
    }
    try {
        if (!j.is_object() || !j.contains("dims") || !j.contains("kind") ||
            !j.contains("entries"))
            throw ParseError("load_state: missing dims/kind/entries");
        const auto dims_arr = j.at("dims");
        if (!dims_arr.is_array() || dims_arr.size() != 2)
            throw ParseError("load_state: dims must be [dA, dB]");
        Dims dims{dims_arr.at(0).get<std::size_t>(), dims_arr.at(1).get<std::size_t>()};
        if (dims.a < 1 || dims.b < 1)
            throw ParseError("load_state: dims must be >= 1");
        const std::string kind = j.at("kind").get<std::string>();
        cvector entries;
        for (const auto& e : j.at("entries")) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("load_state: entries must be [re, im] pairs");
            entries.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        }
        const std::size_t d = dims.total();
        if (kind == "pure") {
            if (entries.size() != d)
                throw ParseError("load_state: pure state needs dA*dB entries");
            return PureState(std::move(entries), dims);
        }
        if (kind == "mixed") {
            if (entries.size() != d * d)
                throw ParseError("load_state: mixed state needs (dA*dB)^2 entries");
            return DensityMatrix(CMatrix(d, d, std::move(entries)), dims);
        }
        throw ParseError("load_state: kind must be \"pure\" or \"mixed\"");
    } catch (const json::exception& e) {
        throw ParseError("load_state: " + path.string() + ": " + e.what());
    }
}

void save_state(const DensityMatrix& rho, const std::filesystem::path& path,
                const std::string& label) {
    write_json(state_file_json(rho.mat(), rho.dims(), "mixed", label), path);
}

void save_state(const PureState& psi, const std::filesystem::path& path,
                const std::string& label) {
    CMatrix row(1, psi.vec().size(), psi.vec());
    write_json(state_file_json(row, psi.dims(), "pure", label), path);
}

} // namespace entmap
