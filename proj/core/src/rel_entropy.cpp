#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "entmap/measures.hpp"
#include "entmap/rng.hpp"
#include "jacobi_detail.hpp"

// Upper bound on the relative entropy of entanglement.
//
// sigma is parameterized as a mixture of M product states. Flattened real
// parameter vector, per term: one weight parameter u (w_k = u_k^2 / sum u^2),
// then re/im pairs for the local A vector, then for the local B vector
// (vectors normalized inside the objective, so the parameterization is
// unconstrained). The objective S(rho||sigma) is minimized by coordinate
// pattern search: greedy +/-step polls over every coordinate, halving the
// step when a full sweep yields no improvement. Multi-restart with seeded
// deterministic initializers; the reported value is an upper bound always.

namespace entmap {

namespace {

constexpr double kInitialStep = 0.25;
constexpr double kMinStep = 1e-6;
constexpr int kImprovementWindow = 50; // sweeps

struct ErWorkspace {
    Dims dims;
    std::size_t d = 0;        // dA*dB
    std::size_t terms = 0;    // M
    std::size_t per_term = 0; // 1 + 2dA + 2dB
    const CMatrix* rho = nullptr;
    double tr_rho_log_rho = 0.0;

    // scratch (reused across objective evaluations; no allocation in eval)
    std::vector<double> w;
    cvector prod, sigma, vec, rho_v;

    ErWorkspace(const DensityMatrix& state, std::size_t m)
        : dims(state.dims()), d(state.dims().total()), terms(m),
          per_term(1 + 2 * state.dims().a + 2 * state.dims().b),
          rho(&state.mat()) {
        const EigResult eig = hermitian_eig(*rho);
        for (double v : eig.values)
            if (v > kLogFloor) tr_rho_log_rho += v * std::log2(v);
        w.resize(terms);
        prod.resize(d);
        sigma.resize(d * d);
        vec.resize(d * d);
        rho_v.resize(d);
    }

    std::size_t param_count() const { return terms * per_term; }

    double eval(const std::vector<double>& x) {
        const std::size_t dA = dims.a, dB = dims.b;
        double usum = 0.0;
        for (std::size_t k = 0; k < terms; ++k) {
            const double u = x[k * per_term];
            w[k] = u * u;
            usum += w[k];
        }
        if (usum < 1e-300) {
            std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(terms));
        } else {
            for (auto& v : w) v /= usum;
        }

        std::fill(sigma.begin(), sigma.end(), complex{});
        for (std::size_t k = 0; k < terms; ++k) {
            if (w[k] == 0.0) continue;
            const double* p = x.data() + k * per_term + 1;
            double na = 0.0, nb = 0.0;
            for (std::size_t i = 0; i < 2 * dA; ++i) na += p[i] * p[i];
            const double* pb = p + 2 * dA;
            for (std::size_t i = 0; i < 2 * dB; ++i) nb += pb[i] * pb[i];

            for (std::size_t ia = 0; ia < dA; ++ia) {
                const complex av = na < 1e-300 ? complex(ia == 0 ? 1.0 : 0.0)
                                               : complex(p[2 * ia], p[2 * ia + 1]);
                for (std::size_t ib = 0; ib < dB; ++ib) {
                    const complex bv = nb < 1e-300
                                           ? complex(ib == 0 ? 1.0 : 0.0)
                                           : complex(pb[2 * ib], pb[2 * ib + 1]);
                    prod[ia * dB + ib] = av * bv;
                }
            }
            const double scale = w[k] / ((na < 1e-300 ? 1.0 : na) * (nb < 1e-300 ? 1.0 : nb));
            for (std::size_t i = 0; i < d; ++i) {
                const complex pi = prod[i];
                for (std::size_t j = i; j < d; ++j)
                    sigma[i * d + j] += scale * pi * std::conj(prod[j]);
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            sigma[i * d + i] = complex(sigma[i * d + i].real(), 0.0);
            for (std::size_t j = i + 1; j < d; ++j)
                sigma[j * d + i] = std::conj(sigma[i * d + j]);
        }

        std::fill(vec.begin(), vec.end(), complex{});
        for (std::size_t i = 0; i < d; ++i) vec[i * d + i] = 1.0;
        detail::jacobi_hermitian(d, sigma.data(), vec.data());

        // S(rho||sigma) = Tr rho log rho - sum_k log2(lam_k) <v_k|rho|v_k>
        double cross = 0.0;
        const CMatrix& r = *rho;
        for (std::size_t k = 0; k < d; ++k) {
            const double lam = sigma[k * d + k].real();
            const double lg = std::log2(std::max(lam, kLogFloor));
            double q = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                complex s{};
                for (std::size_t j = 0; j < d; ++j) s += r(i, j) * vec[j * d + k];
                q += (std::conj(vec[i * d + k]) * s).real();
            }
            cross += lg * q;
        }
        return tr_rho_log_rho - cross;
    }

    SeparableAnsatz decode(const std::vector<double>& x) const {
        const std::size_t dA = dims.a, dB = dims.b;
        SeparableAnsatz ans;
        ans.dims = dims;
        double usum = 0.0;
        std::vector<double> weights(terms);
        for (std::size_t k = 0; k < terms; ++k) {
            const double u = x[k * per_term];
            weights[k] = u * u;
            usum += weights[k];
        }
        for (std::size_t k = 0; k < terms; ++k) {
            const double wk = usum < 1e-300 ? 1.0 / static_cast<double>(terms)
                                            : weights[k] / usum;
            const double* p = x.data() + k * per_term + 1;
            cvector a(dA), b(dB);
            double na = 0.0, nb = 0.0;
            for (std::size_t i = 0; i < dA; ++i) {
                a[i] = complex(p[2 * i], p[2 * i + 1]);
                na += std::norm(a[i]);
            }
            const double* pb = p + 2 * dA;
            for (std::size_t i = 0; i < dB; ++i) {
                b[i] = complex(pb[2 * i], pb[2 * i + 1]);
                nb += std::norm(b[i]);
            }
            if (na < 1e-300) { a.assign(dA, 0.0); a[0] = 1.0; } else a = normalized(a);
            if (nb < 1e-300) { b.assign(dB, 0.0); b[0] = 1.0; } else b = normalized(b);
            ans.weights.push_back(wk);
            ans.a.push_back(std::move(a));
            ans.b.push_back(std::move(b));
        }
        return ans;
    }
};

void write_term(std::vector<double>& x, const ErWorkspace& ws, std::size_t k,
                double weight, const cvector& a, const cvector& b) {
    double* p = x.data() + k * ws.per_term;
    p[0] = std::sqrt(std::max(weight, 0.0));
    for (std::size_t i = 0; i < ws.dims.a; ++i) {
        p[1 + 2 * i] = a[i].real();
        p[1 + 2 * i + 1] = a[i].imag();
    }
    double* pb = p + 1 + 2 * ws.dims.a;
    for (std::size_t i = 0; i < ws.dims.b; ++i) {
        pb[2 * i] = b[i].real();
        pb[2 * i + 1] = b[i].imag();
    }
}

cvector basis_vector(std::size_t d, std::size_t i) {
    cvector v(d, 0.0);
    v[i % d] = 1.0;
    return v;
}

void pad_remaining_terms(std::vector<double>& x, const ErWorkspace& ws, std::size_t from) {
    for (std::size_t k = from; k < ws.terms; ++k)
        write_term(x, ws, k, 0.0, basis_vector(ws.dims.a, k),
                   basis_vector(ws.dims.b, k / ws.dims.a));
}

// sigma_0 = rho_A (x) rho_B, written as the dA*dB product terms of the
// marginal eigenbases (heaviest weights first when M cannot hold them all).
std::vector<double> init_product_of_marginals(const ErWorkspace& ws,
                                              const DensityMatrix& rho) {
    const EigResult ea = hermitian_eig(partial_trace(rho.mat(), rho.dims(), Side::A));
    const EigResult eb = hermitian_eig(partial_trace(rho.mat(), rho.dims(), Side::B));
    struct Term { double w; std::size_t i, j; };
    std::vector<Term> order;
    for (std::size_t i = 0; i < ws.dims.a; ++i)
        for (std::size_t j = 0; j < ws.dims.b; ++j)
            order.push_back({std::max(0.0, ea.values[i]) * std::max(0.0, eb.values[j]), i, j});
    std::stable_sort(order.begin(), order.end(),
                     [](const Term& l, const Term& r) { return l.w > r.w; });

    std::vector<double> x(ws.param_count(), 0.0);
    const std::size_t fill = std::min<std::size_t>(ws.terms, order.size());
    for (std::size_t k = 0; k < fill; ++k) {
        cvector a(ws.dims.a), b(ws.dims.b);
        for (std::size_t r = 0; r < ws.dims.a; ++r) a[r] = ea.vectors(r, order[k].i);
        for (std::size_t r = 0; r < ws.dims.b; ++r) b[r] = eb.vectors(r, order[k].j);
        write_term(x, ws, k, order[k].w, a, b);
    }
    pad_remaining_terms(x, ws, fill);
    return x;
}

// One product term per eigenvector of rho: weight lam_i, local vectors the
// leading Schmidt pair of the eigenvector.
std::vector<double> init_eigen_products(const ErWorkspace& ws, const DensityMatrix& rho) {
    const EigResult eig = hermitian_eig(rho.mat());
    std::vector<double> x(ws.param_count(), 0.0);
    const std::size_t dA = ws.dims.a, dB = ws.dims.b;

    std::size_t k = 0;
    for (std::size_t e = dA * dB; e-- > 0 && k < ws.terms;) { // descending eigenvalues
        const double lam = eig.values[e];
        if (lam <= 0.0) continue;
        CMatrix mat(dA, dB);
        for (std::size_t ia = 0; ia < dA; ++ia)
            for (std::size_t ib = 0; ib < dB; ++ib)
                mat(ia, ib) = eig.vectors(ia * dB + ib, e);
        const EigResult left = hermitian_eig(mat * mat.adjoint());
        cvector a(dA);
        for (std::size_t r = 0; r < dA; ++r) a[r] = left.vectors(r, dA - 1);
        cvector bt = mat.adjoint().apply(a); // sigma * conj(b)
        if (norm(bt) < 1e-12) bt = basis_vector(dB, 0);
        cvector b(dB);
        for (std::size_t r = 0; r < dB; ++r) b[r] = std::conj(bt[r]);
        write_term(x, ws, k++, lam, a, normalized(b));
    }
    pad_remaining_terms(x, ws, k);
    return x;
}

std::vector<double> init_random(const ErWorkspace& ws, std::uint64_t seed) {
    Prng rng(seed);
    std::vector<double> x(ws.param_count());
    for (std::size_t k = 0; k < ws.terms; ++k) {
        double* p = x.data() + k * ws.per_term;
        p[0] = 0.3 + 0.7 * rng.uniform();
        for (std::size_t i = 1; i < ws.per_term; ++i) p[i] = rng.normal();
    }
    return x;
}

struct RestartOutcome {
    std::vector<double> x;
    double f = std::numeric_limits<double>::infinity();
    int sweeps = 0;
    bool converged = false;
};

RestartOutcome coordinate_descent(ErWorkspace& ws, std::vector<double> x,
                                  const ErOptions& opts) {
    RestartOutcome out;
    double f = ws.eval(x);
    double step = kInitialStep;
    std::vector<double> history{f};

    int sweep = 0;
    for (; sweep < opts.max_iters; ++sweep) {
        if (f <= opts.stop_when_below) {
            out.converged = true; // deep inside the target band already
            break;
        }
        bool improved = false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double old = x[i];
            x[i] = old + step;
            double fc = ws.eval(x);
            if (fc < f) {
                f = fc;
                improved = true;
                continue;
            }
            x[i] = old - step;
            fc = ws.eval(x);
            if (fc < f) {
                f = fc;
                improved = true;
                continue;
            }
            x[i] = old;
        }
        history.push_back(f);
        if (!improved) {
            step *= 0.5;
            if (step < kMinStep) {
                out.converged = true; // poll steps exhausted
                ++sweep;
                break;
            }
        }
        if (history.size() > kImprovementWindow) {
            // Improvement measured against the O(1) objective scale, so the
            // window also closes when descending toward zero.
            const double prev = history[history.size() - 1 - kImprovementWindow];
            if (prev - f <= opts.tol * std::max(std::abs(prev), 1.0)) {
                out.converged = true;
                ++sweep;
                break;
            }
        }
    }
    out.x = std::move(x);
    out.f = f;
    out.sweeps = sweep;
    return out;
}

} // namespace

CMatrix SeparableAnsatz::assemble() const {
    CMatrix m(dims.total(), dims.total());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const cvector p = kron(a[k], b[k]);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j)
                m(i, j) += weights[k] * p[i] * std::conj(p[j]);
    }
    return m;
}

ErResult relative_entropy_of_entanglement(const DensityMatrix& rho, const ErOptions& opts) {
    if (opts.restarts < 1) throw OutOfRangeError("relative_entropy_of_entanglement: restarts >= 1");
    if (opts.max_iters < 1) throw OutOfRangeError("relative_entropy_of_entanglement: max_iters >= 1");
    const std::size_t d = rho.dims().total();
    const std::size_t m = opts.terms == 0 ? d * d : opts.terms;
    if (m < 1) throw OutOfRangeError("relative_entropy_of_entanglement: terms >= 1");

    ErWorkspace ws(rho, m);

    RestartOutcome best;
    int total_sweeps = 0;
    int restarts_run = 0;
    bool any_converged = false;

    for (int r = 0; r < opts.restarts; ++r) {
        std::vector<double> x0;
        if (r == 0)
            x0 = init_product_of_marginals(ws, rho);
        else if (r == 1)
            x0 = init_eigen_products(ws, rho);
        else
            x0 = init_random(ws, derive_seed(opts.seed, static_cast<std::uint64_t>(r)));

        RestartOutcome out = coordinate_descent(ws, std::move(x0), opts);
        ++restarts_run;
        total_sweeps += out.sweeps;
        any_converged = any_converged || out.converged;
        if (out.f < best.f) best = std::move(out);
        if (best.f <= opts.stop_when_below) break;
    }

    double value = best.f;
    if (value < 0.0) {
        if (value < -1e-9)
            throw Error("relative_entropy_of_entanglement: objective below -1e-9");
        value = 0.0;
    }

    MeasureValue mv;
    mv.id = MeasureId::RelativeEntropyOfEntanglement;
    mv.value = value;
    mv.bound = BoundKind::UpperBound;
    mv.trace = {total_sweeps, restarts_run, best.f, any_converged};
    return {mv, ws.decode(best.x)};
}

} // namespace entmap
