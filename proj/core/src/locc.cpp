#include "entmap/locc.hpp"

#include <cmath>
#include <sstream>

#include "entmap/rng.hpp"

namespace entmap {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kCompletenessTol = 1e-10;
constexpr double kProbabilityFloor = 1e-12;

double completeness_defect(const std::vector<CMatrix>& ops) {
    const std::size_t d = ops.front().cols();
    CMatrix sum(d, d);
    for (const auto& k : ops) sum += k.adjoint() * k;
    return max_abs_diff(sum, CMatrix::identity(d));
}

CMatrix embed(const CMatrix& op, Side side, Dims dims) {
    return side == Side::A ? kron(op, CMatrix::identity(dims.b))
                           : kron(CMatrix::identity(dims.a), op);
}

// Symmetrize and renormalize away the rounding left by a sandwich product,
// then revalidate through the DensityMatrix constructor.
DensityMatrix make_state(CMatrix m, Dims dims) {
    const std::size_t d = dims.total();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            const complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    const double tr = m.trace().real();
    if (tr < 1e-13) throw Error("make_state: vanishing trace");
    if (std::abs(tr - 1.0) > 1e-14) m *= complex(1.0 / tr);
    return DensityMatrix(std::move(m), dims);
}

struct Branch {
    double probability;
    DensityMatrix state;
};

// Selective branches of a Kraus set embedded on one side; probabilities as
// measured, branches below the floor dropped.
std::vector<Branch> branch_states(const DensityMatrix& rho, const std::vector<CMatrix>& ops,
                                  Side side) {
    std::vector<Branch> branches;
    for (const auto& op : ops) {
        const CMatrix mk = embed(op, side, rho.dims());
        CMatrix post = mk * rho.mat() * mk.adjoint();
        const double p = post.trace().real();
        if (p < kProbabilityFloor) continue;
        post *= complex(1.0 / p);
        branches.push_back({p, make_state(std::move(post), rho.dims())});
    }
    return branches;
}

} // namespace

KrausChannel::KrausChannel(std::vector<CMatrix> operators, Side side)
    : ops_(std::move(operators)), side_(side) {
    if (ops_.empty())
        throw OutOfRangeError("KrausChannel: need at least one operator");
    const std::size_t d = ops_.front().rows();
    for (const auto& k : ops_)
        if (!k.square() || k.rows() != d)
            throw DimensionMismatchError("KrausChannel: operators must be square, equal size");
    const double defect = completeness_defect(ops_);
    if (defect > kCompletenessTol)
        throw IncompletePovmError("KrausChannel: sum K^dagger K deviates from I by " +
                                  std::to_string(defect));
}

CMatrix random_local_unitary(std::size_t d, std::uint64_t seed) {
    return random_unitary(d, seed);
}

DensityMatrix apply_local_unitary(const DensityMatrix& rho, const CMatrix& u_a,
                                  const CMatrix& u_b) {
    const Dims dims = rho.dims();
    if (!u_a.square() || u_a.rows() != dims.a || !u_b.square() || u_b.rows() != dims.b)
        throw DimensionMismatchError("apply_local_unitary: operator sizes must match dims");
    for (const CMatrix* u : {&u_a, &u_b})
        if (max_abs_diff(u->adjoint() * *u, CMatrix::identity(u->rows())) > kUnitaryTol)
            throw NotUnitaryError("apply_local_unitary: U^dagger U deviates from I");
    const CMatrix u = kron(u_a, u_b);
    return make_state(u * rho.mat() * u.adjoint(), dims);
}

KrausChannel random_local_channel(std::size_t d, std::size_t n_kraus, std::uint64_t seed,
                                  Side side) {
    if (d < 1 || n_kraus < 1)
        throw OutOfRangeError("random_local_channel: d and n_kraus must be >= 1");
    const CMatrix big = random_unitary(n_kraus * d, seed);
    std::vector<CMatrix> ops;
    for (std::size_t k = 0; k < n_kraus; ++k) {
        CMatrix block(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                block(i, j) = big(k * d + i, j); // first d columns: a Haar isometry
        ops.push_back(std::move(block));
    }
    return KrausChannel(std::move(ops), side);
}

DensityMatrix apply_local_channel(const DensityMatrix& rho, const KrausChannel& channel) {
    const Dims dims = rho.dims();
    const std::size_t expect = channel.side() == Side::A ? dims.a : dims.b;
    if (channel.local_dim() != expect)
        throw DimensionMismatchError("apply_local_channel: channel dimension mismatch");
    CMatrix out(dims.total(), dims.total());
    for (const auto& k : channel.operators()) {
        const CMatrix kk = embed(k, channel.side(), dims);
        out += kk * rho.mat() * kk.adjoint();
    }
    return make_state(std::move(out), dims);
}

std::vector<MeasurementOutcome> selective_measurement(
    const DensityMatrix& rho, const std::vector<CMatrix>& povm_a,
    const std::vector<CMatrix>* corrections_b) {
    const Dims dims = rho.dims();
    if (povm_a.empty()) throw IncompletePovmError("selective_measurement: empty POVM");
    for (const auto& m : povm_a)
        if (!m.square() || m.rows() != dims.a)
            throw DimensionMismatchError("selective_measurement: operator size mismatch");
    const double defect = completeness_defect(povm_a);
    if (defect > kCompletenessTol)
        throw IncompletePovmError("selective_measurement: POVM completeness defect " +
                                  std::to_string(defect));
    if (corrections_b && corrections_b->size() != povm_a.size())
        throw DimensionMismatchError(
            "selective_measurement: one correction per outcome required");

    std::vector<MeasurementOutcome> outcomes;
    double total = 0.0;
    std::size_t k = 0;
    for (const auto& m : povm_a) {
        const CMatrix mk = embed(m, Side::A, dims);
        CMatrix post = mk * rho.mat() * mk.adjoint();
        const double p = post.trace().real();
        ++k;
        if (p < kProbabilityFloor) continue; // dropped branch
        total += p;
        post *= complex(1.0 / p);
        DensityMatrix state = make_state(std::move(post), dims);
        if (corrections_b)
            state = apply_local_unitary(state, CMatrix::identity(dims.a),
                                        (*corrections_b)[k - 1]);
        outcomes.push_back({p, std::move(state)});
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw IncompletePovmError("selective_measurement: outcome probabilities sum to " +
                                  std::to_string(total));
    return outcomes;
}

TrialResult monotonicity_trial(const DensityMatrix& rho, const LoccOp& op, MeasureId id,
                               const EvalOptions& opts) {
    TrialResult res;
    res.before = evaluate(id, rho, opts).value;
    if (const auto* ch = std::get_if<KrausChannel>(&op)) {
        res.after = evaluate(id, apply_local_channel(rho, *ch), opts).value;
    } else {
        const auto& meas = std::get<SelectiveMeasurement>(op);
        const auto outcomes = selective_measurement(
            rho, meas.povm_a, meas.corrections_b.empty() ? nullptr : &meas.corrections_b);
        double avg = 0.0;
        for (const auto& o : outcomes)
            avg += o.probability * evaluate(id, o.state, opts).value;
        res.after = avg;
    }
    res.violation = std::max(0.0, res.after - res.before);
    return res;
}

Trajectory trajectory(const DensityMatrix& rho0, std::size_t steps, MeasureId idA,
                      MeasureId idB, std::uint64_t seed, const TrajectoryOptions& opts) {
    Trajectory traj;
    traj.idA = idA;
    traj.idB = idB;

    DensityMatrix current = rho0;
    traj.points.push_back({evaluate(idA, current, opts.eval).value,
                           evaluate(idB, current, opts.eval).value, "start"});

    for (std::size_t s = 0; s < steps; ++s) {
        const Side side = (s % 2 == 0) ? Side::A : Side::B;
        const std::size_t local_d = side == Side::A ? current.dims().a : current.dims().b;
        const std::uint64_t step_seed = derive_seed(seed, s);
        const KrausChannel channel = random_local_channel(local_d, opts.n_kraus, step_seed, side);

        std::ostringstream desc;
        desc << (opts.step_kind == StepKind::Channel ? "channel" : "measurement")
             << " side=" << (side == Side::A ? 'A' : 'B') << " kraus=" << opts.n_kraus
             << " seed=" << step_seed;
        traj.steps.push_back(desc.str());

        std::ostringstream fp;
        fp << "start+" << (s + 1) << " ops";

        if (opts.step_kind == StepKind::Channel) {
            current = apply_local_channel(current, channel);
            traj.points.push_back({evaluate(idA, current, opts.eval).value,
                                   evaluate(idB, current, opts.eval).value, fp.str()});
        } else {
            // Outcome-averaged point; the walk continues from the averaged
            // state so the map shows one curve, not a branching tree.
            const auto branches = branch_states(current, channel.operators(), side);
            double eA = 0.0, eB = 0.0;
            for (const auto& br : branches) {
                eA += br.probability * evaluate(idA, br.state, opts.eval).value;
                eB += br.probability * evaluate(idB, br.state, opts.eval).value;
            }
            current = apply_local_channel(current, channel);
            traj.points.push_back({eA, eB, fp.str()});
        }
    }
    return traj;
}

} // namespace entmap
