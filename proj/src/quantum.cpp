#include "qbell/quantum.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "qbell/errors.hpp"
#include "qbell/tolerances.hpp"

namespace qbell {

namespace {

Matrix pauli_matrix(char c) {
    Matrix m(2, 2);
    switch (c) {
        case 'I': m.at(0, 0) = 1.0; m.at(1, 1) = 1.0; break;
        case 'X': m.at(0, 1) = 1.0; m.at(1, 0) = 1.0; break;
        case 'Y': m.at(0, 1) = cxd{0.0, -1.0}; m.at(1, 0) = cxd{0.0, 1.0}; break;
        case 'Z': m.at(0, 0) = 1.0; m.at(1, 1) = -1.0; break;
        default:
            throw LabelError(std::string("pauli_word: invalid character '") + c +
                             "' (expected one of I, X, Y, Z)");
    }
    return m;
}

std::string outcomes_to_string(const Outcomes& o) {
    std::string s;
    for (int v : o) s += (v > 0 ? "+1" : "-1");
    return s;
}

}  // namespace

StateVector::StateVector(CVec amps) : amplitudes(std::move(amps)) {
    const std::size_t d = amplitudes.size();
    if (d != 2 && d != 4 && d != 8)
        throw DimensionError("StateVector: dimension " + std::to_string(d) +
                             " is not 2^n for n in {1,2,3}");
    double s = 0.0;
    for (const cxd& a : amplitudes) s += std::norm(a);
    if (std::abs(s - 1.0) > tol::scalar)
        throw ProbabilityError("StateVector: squared norm " + std::to_string(s) +
                               " deviates from 1 beyond 1e-12");
}

std::size_t StateVector::qubits() const {
    std::size_t n = 0, d = dim();
    while (d > 1) { d >>= 1; ++n; }
    return n;
}

Observable::Observable(std::string lbl, Matrix m)
    : label(std::move(lbl)), matrix(std::move(m)) {
    if (matrix.rows() != matrix.cols())
        throw DimensionError("Observable '" + label + "': matrix is not square");
    if (!matrix.is_hermitian(tol::scalar))
        throw ValidationError("Observable '" + label + "': matrix is not Hermitian within 1e-12");
}

OutcomeDistribution::OutcomeDistribution(std::map<Outcomes, double> probs)
    : entries(std::move(probs)) {
    if (entries.empty())
        throw ProbabilityError("OutcomeDistribution: no entries");
    double sum = 0.0;
    const std::size_t arity = entries.begin()->first.size();
    for (auto& [o, p] : entries) {
        if (o.size() != arity)
            throw ProbabilityError("OutcomeDistribution: mixed outcome-tuple lengths");
        for (int v : o)
            if (v != 1 && v != -1)
                throw ProbabilityError("OutcomeDistribution: outcome entries must be ±1");
        if (p < 0.0) {
            if (p < tol::prob_clamp)
                throw ProbabilityError("OutcomeDistribution: probability " + std::to_string(p) +
                                       " at " + outcomes_to_string(o) + " below clamp floor");
            p = 0.0;  // floating-point underflow, not a physics signal
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol::scalar)
        throw ProbabilityError("OutcomeDistribution: probabilities sum to " +
                               std::to_string(sum) + ", expected 1 within 1e-12");
}

double OutcomeDistribution::prob(const Outcomes& o) const {
    auto it = entries.find(o);
    return it == entries.end() ? 0.0 : it->second;
}

std::size_t OutcomeDistribution::arity() const { return entries.begin()->first.size(); }

MeasurementContext::MeasurementContext(std::vector<Observable> obs,
                                       std::vector<std::pair<Outcomes, CVec>> basis)
    : observables(std::move(obs)), eigenbasis(std::move(basis)) {
    if (observables.empty())
        throw ValidationError("MeasurementContext: no observables");
    const std::size_t d = observables.front().dim();
    for (const Observable& o : observables)
        if (o.dim() != d)
            throw DimensionError("MeasurementContext: observable '" + o.label +
                                 "' has dimension " + std::to_string(o.dim()) +
                                 ", expected " + std::to_string(d));
    for (std::size_t i = 0; i < observables.size(); ++i)
        for (std::size_t j = i + 1; j < observables.size(); ++j)
            if (commutator_norm(observables[i], observables[j]) >= tol::structure)
                throw CommutationError("MeasurementContext: '" + observables[i].label +
                                       "' and '" + observables[j].label + "' do not commute");
    // Distinct labels and orthonormal vectors.
    for (std::size_t i = 0; i < eigenbasis.size(); ++i) {
        if (eigenbasis[i].second.size() != d)
            throw DimensionError("MeasurementContext: eigenvector length mismatch");
        for (std::size_t j = i + 1; j < eigenbasis.size(); ++j) {
            if (eigenbasis[i].first == eigenbasis[j].first)
                throw DegeneracyError("MeasurementContext: duplicate eigenvalue tuple " +
                                          outcomes_to_string(eigenbasis[i].first),
                                      {{eigenbasis[i].first, 2}});
            if (std::abs(inner(eigenbasis[i].second, eigenbasis[j].second)) > tol::structure)
                throw ValidationError("MeasurementContext: eigenvectors not orthogonal within 1e-10");
        }
        if (std::abs(norm(eigenbasis[i].second) - 1.0) > tol::structure)
            throw ValidationError("MeasurementContext: eigenvector not unit within 1e-10");
    }
}

Observable pauli_word(const std::string& label) {
    if (label.empty() || label.size() > 3)
        throw LabelError("pauli_word: label \"" + label + "\" must have 1-3 characters");
    Matrix m = pauli_matrix(label[0]);
    for (std::size_t i = 1; i < label.size(); ++i) m = kron(m, pauli_matrix(label[i]));
    return Observable(label, std::move(m));
}

double commutator_norm(const Observable& a, const Observable& b) {
    if (a.dim() != b.dim())
        throw DimensionError("commutator_norm: '" + a.label + "' (dim " +
                             std::to_string(a.dim()) + ") vs '" + b.label + "' (dim " +
                             std::to_string(b.dim()) + ")");
    return (a.matrix * b.matrix - b.matrix * a.matrix).max_abs();
}

bool is_commuting(const Observable& a, const Observable& b) {
    return commutator_norm(a, b) < tol::structure;
}

MeasurementContext joint_eigenbasis(const std::vector<Observable>& observables) {
    if (observables.empty())
        throw ValidationError("joint_eigenbasis: no observables");
    const std::size_t d = observables.front().dim();
    const Matrix id = Matrix::identity(d);
    for (const Observable& o : observables) {
        if (o.dim() != d)
            throw DimensionError("joint_eigenbasis: observable '" + o.label +
                                 "' has dimension " + std::to_string(o.dim()) +
                                 ", expected " + std::to_string(d));
        if ((o.matrix * o.matrix).distance(id) > tol::structure)
            throw ValidationError("joint_eigenbasis: '" + o.label +
                                  "' does not square to the identity");
    }
    for (std::size_t i = 0; i < observables.size(); ++i)
        for (std::size_t j = i + 1; j < observables.size(); ++j)
            if (commutator_norm(observables[i], observables[j]) >= tol::structure)
                throw CommutationError("joint_eigenbasis: '" + observables[i].label +
                                       "' and '" + observables[j].label +
                                       "' do not commute (norm " +
                                       std::to_string(commutator_norm(observables[i],
                                                                      observables[j])) + ")");

    const std::size_t k = observables.size();
    std::vector<std::pair<Outcomes, CVec>> basis;
    std::vector<std::pair<Outcomes, int>> multiplicities;
    bool degenerate = false;

    for (std::size_t idx = 0; idx < (std::size_t{1} << k); ++idx) {
        Outcomes tuple(k);
        Matrix projector = id;
        for (std::size_t j = 0; j < k; ++j) {
            const int sign = (idx >> (k - 1 - j)) & 1 ? -1 : 1;
            tuple[j] = sign;
            projector = projector * ((id + observables[j].matrix * cxd{double(sign), 0.0}) * cxd{0.5, 0.0});
        }
        const double tr = projector.trace().real();
        const int rank = static_cast<int>(std::lround(tr));
        if (std::abs(tr - rank) > 1e-6)
            throw InvariantError("joint_eigenbasis: projector trace " + std::to_string(tr) +
                                 " is not near an integer");
        multiplicities.emplace_back(tuple, rank);
        if (rank != 1) {
            degenerate = true;
            continue;
        }
        // Rank-one projector: any nonzero column spans the eigenspace.
        std::size_t best = 0;
        double best_norm = -1.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double n = norm(projector.column(j));
            if (n > best_norm) { best_norm = n; best = j; }
        }
        CVec vec = normalized(projector.column(best));
        for (cxd& a : vec)  // scrub -0.0 components for reproducible serialization
            a = cxd{a.real() == 0.0 ? 0.0 : a.real(), a.imag() == 0.0 ? 0.0 : a.imag()};
        // Phase convention: first non-negligible amplitude real-positive.
        for (const cxd& a : vec) {
            if (std::abs(a) > 1e-8) {
                const cxd phase = std::conj(a) / std::abs(a);
                for (cxd& x : vec) x *= phase;
                break;
            }
        }
        basis.emplace_back(std::move(tuple), std::move(vec));
    }

    if (degenerate) {
        std::string msg = "joint_eigenbasis: eigenvalue tuples are degenerate (not a CSCO):";
        for (const auto& [tuple, mult] : multiplicities)
            if (mult != 1)
                msg += " " + outcomes_to_string(tuple) + " x" + std::to_string(mult);
        throw DegeneracyError(msg, std::move(multiplicities));
    }
    return MeasurementContext(observables, std::move(basis));
}

OutcomeDistribution measure(const StateVector& state, const MeasurementContext& context) {
    if (state.dim() != context.dim())
        throw DimensionError("measure: state dimension " + std::to_string(state.dim()) +
                             " vs context dimension " + std::to_string(context.dim()));
    std::map<Outcomes, double> probs;
    for (const auto& [tuple, vec] : context.eigenbasis)
        probs[tuple] = std::norm(inner(vec, state.amplitudes));
    return OutcomeDistribution(std::move(probs));
}

OutcomeDistribution outcome_sign_distribution(const StateVector& state,
                                              const Observable& obs) {
    if (state.dim() != obs.dim())
        throw DimensionError("outcome_sign_distribution: state dimension " +
                             std::to_string(state.dim()) + " vs observable dimension " +
                             std::to_string(obs.dim()));
    if ((obs.matrix * obs.matrix).distance(Matrix::identity(obs.dim())) > tol::structure)
        throw ValidationError("outcome_sign_distribution: '" + obs.label +
                              "' does not square to the identity");
    const double expectation = inner(state.amplitudes, obs.matrix.apply(state.amplitudes)).real();
    double p_plus = (1.0 + expectation) / 2.0;
    if (p_plus < 0.0 && p_plus >= tol::prob_clamp) p_plus = 0.0;
    if (p_plus > 1.0 && p_plus <= 1.0 - tol::prob_clamp) p_plus = 1.0;
    return OutcomeDistribution({{{+1}, p_plus}, {{-1}, 1.0 - p_plus}});
}

Observable spin_observable(double theta) {
    Matrix m(2, 2);
    m.at(0, 1) = cxd{std::cos(theta), -std::sin(theta)};
    m.at(1, 0) = cxd{std::cos(theta), std::sin(theta)};
    return Observable("sigma(" + std::to_string(theta) + ")", std::move(m));
}

StateVector singlet_state() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector({cxd{0.0, 0.0}, cxd{r, 0.0}, cxd{-r, 0.0}, cxd{0.0, 0.0}});
}

StateVector ghz_state() {
    const MeasurementContext csco =
        joint_eigenbasis({pauli_word("XYY"), pauli_word("YXY"), pauli_word("YYX")});
    for (const auto& [tuple, vec] : csco.eigenbasis)
        if (tuple == Outcomes{+1, +1, +1}) return StateVector(vec);
    throw InvariantError("ghz_state: (+1,+1,+1) eigenvector not found");
}

}  // namespace qbell
