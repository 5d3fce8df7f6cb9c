#include "entmap/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "entmap/rng.hpp"

namespace entmap {

OrderingVerdict compare_values(double eA_i, double eA_j, double eB_i, double eB_j,
                               CompareTolerances tol) {
    if (!(tol.tau_a > 0.0) || !(tol.tau_b > 0.0))
        throw OutOfRangeError("compare: tie tolerances must be positive");
    OrderingVerdict v;
    v.delta_a = eA_i - eA_j;
    v.delta_b = eB_i - eB_j;
    v.tau_a = tol.tau_a;
    v.tau_b = tol.tau_b;
    if (std::abs(v.delta_a) <= tol.tau_a || std::abs(v.delta_b) <= tol.tau_b)
        v.kind = Ordering::Tied;
    else if ((v.delta_a > 0.0) == (v.delta_b > 0.0))
        v.kind = Ordering::Concordant;
    else
        v.kind = Ordering::Discordant;
    return v;
}

OrderingVerdict compare(const DensityMatrix& rho_i, const DensityMatrix& rho_j,
                        MeasureId idA, MeasureId idB, CompareTolerances tol,
                        const EvalOptions& opts) {
    return compare_values(evaluate(idA, rho_i, opts).value, evaluate(idA, rho_j, opts).value,
                          evaluate(idB, rho_i, opts).value, evaluate(idB, rho_j, opts).value,
                          tol);
}

OrderingVerdict compare(const PureState& psi_i, const PureState& psi_j,
                        MeasureId idA, MeasureId idB, CompareTolerances tol,
                        const EvalOptions& opts) {
    return compare_values(evaluate(idA, psi_i, opts).value, evaluate(idA, psi_j, opts).value,
                          evaluate(idB, psi_i, opts).value, evaluate(idB, psi_j, opts).value,
                          tol);
}

std::vector<double> schmidt_coefficients(const PureState& psi) {
    const CMatrix proj = CMatrix::outer(psi.vec(), psi.vec());
    EigResult eig = hermitian_eig(partial_trace(proj, psi.dims(), Side::A));
    std::vector<double> coeffs;
    const std::size_t n = std::min(psi.dims().a, psi.dims().b);
    for (auto it = eig.values.rbegin(); it != eig.values.rend(); ++it)
        coeffs.push_back(std::max(0.0, *it));
    coeffs.resize(n); // the rest are exact zeros of the rank-deficient marginal
    return coeffs;
}

bool majorized_by(const std::vector<double>& x, const std::vector<double>& y, double tol) {
    if (x.size() != y.size())
        throw DimensionMismatchError("majorized_by: length mismatch");
    std::vector<double> xs = x, ys = y;
    std::sort(xs.begin(), xs.end(), std::greater<>());
    std::sort(ys.begin(), ys.end(), std::greater<>());
    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        px += xs[i];
        py += ys[i];
        if (px > py + tol) return false;
    }
    return true;
}

Convertibility pure_locc_convertible(const PureState& psi, const PureState& phi) {
    if (!(psi.dims() == phi.dims()))
        throw DimensionMismatchError("pure_locc_convertible: dims differ");
    const std::vector<double> s_psi = schmidt_coefficients(psi);
    const std::vector<double> s_phi = schmidt_coefficients(phi);
    const bool forward = majorized_by(s_psi, s_phi);
    const bool backward = majorized_by(s_phi, s_psi);
    if (forward && backward) return Convertibility::Both;
    if (forward) return Convertibility::Forward;
    if (backward) return Convertibility::Backward;
    return Convertibility::Incomparable;
}

StateFingerprint fingerprint(const EnsembleParams& params, std::size_t index) {
    StateFingerprint fp;
    fp.dims = params.dims;
    fp.kind = params.kind;
    fp.campaign_seed = params.seed;
    fp.index = index;
    fp.state_seed = derive_seed(params.seed, index);
    if (params.kind == EnsembleKind::Mixed)
        fp.rank = params.ranks.empty() ? params.dims.total()
                                       : params.ranks[index % params.ranks.size()];
    return fp;
}

DensityMatrix reconstruct(const StateFingerprint& fp) {
    if (fp.kind == EnsembleKind::Pure)
        return random_pure(fp.dims, fp.state_seed).projector();
    return random_mixed(fp.dims, fp.rank, fp.state_seed);
}

std::vector<std::array<double, 2>> evaluate_ensemble(const EnsembleParams& params,
                                                     MeasureId idA, MeasureId idB,
                                                     const EvalOptions& opts,
                                                     std::size_t workers) {
    std::vector<std::array<double, 2>> values(params.count);
    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const StateFingerprint fp = fingerprint(params, i);
            if (params.kind == EnsembleKind::Pure) {
                const PureState psi = random_pure(fp.dims, fp.state_seed);
                values[i] = {evaluate(idA, psi, opts).value, evaluate(idB, psi, opts).value};
            } else {
                const DensityMatrix rho = reconstruct(fp);
                values[i] = {evaluate(idA, rho, opts).value, evaluate(idB, rho, opts).value};
            }
        }
    };
    if (workers <= 1 || params.count < 2) {
        eval_range(0, params.count);
    } else {
        const std::size_t n_threads = std::min(workers, params.count);
        std::vector<std::thread> pool;
        const std::size_t chunk = (params.count + n_threads - 1) / n_threads;
        for (std::size_t t = 0; t < n_threads; ++t) {
            const std::size_t b = t * chunk;
            const std::size_t e = std::min(params.count, b + chunk);
            if (b < e) pool.emplace_back(eval_range, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return values;
}

CampaignResult find_discordant(const EnsembleParams& params, MeasureId idA, MeasureId idB,
                               CompareTolerances tol, const EvalOptions& opts,
                               std::size_t workers, std::size_t max_records) {
    if (params.count < 2)
        throw OutOfRangeError("find_discordant: ensemble count must be >= 2");

    CampaignResult res;
    res.values = evaluate_ensemble(params, idA, idB, opts, workers);

    const CompareTolerances inflated{10.0 * tol.tau_a, 10.0 * tol.tau_b};
    res.stats.states = params.count;
    for (std::size_t i = 0; i < params.count; ++i) {
        for (std::size_t j = i + 1; j < params.count; ++j) {
            const OrderingVerdict v = compare_values(res.values[i][0], res.values[j][0],
                                                     res.values[i][1], res.values[j][1], tol);
            ++res.stats.pairs_checked;
            switch (v.kind) {
                case Ordering::Concordant: ++res.stats.concordant; break;
                case Ordering::Tied: ++res.stats.tied; break;
                case Ordering::Discordant: {
                    ++res.stats.discordant;
                    if (res.records.size() < max_records) {
                        DiscordanceRecord rec;
                        rec.first = fingerprint(params, i);
                        rec.second = fingerprint(params, j);
                        rec.eA_first = res.values[i][0];
                        rec.eB_first = res.values[i][1];
                        rec.eA_second = res.values[j][0];
                        rec.eB_second = res.values[j][1];
                        rec.robust = compare_values(rec.eA_first, rec.eA_second, rec.eB_first,
                                                    rec.eB_second, inflated)
                                         .kind == Ordering::Discordant;
                        res.records.push_back(rec);
                    }
                    break;
                }
            }
        }
    }
    res.stats.discordant_fraction =
        res.stats.pairs_checked == 0
            ? 0.0
            : static_cast<double>(res.stats.discordant) /
                  static_cast<double>(res.stats.pairs_checked);
    const std::size_t decisive = res.stats.concordant + res.stats.discordant;
    res.stats.kendall_tau =
        decisive == 0 ? 1.0
                      : (static_cast<double>(res.stats.concordant) -
                         static_cast<double>(res.stats.discordant)) /
                            static_cast<double>(decisive);
    return res;
}

} // namespace entmap
