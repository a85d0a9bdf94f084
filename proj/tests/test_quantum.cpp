#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qbell/errors.hpp"
#include "qbell/quantum.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace qbell;

namespace {

const double pi = std::numbers::pi;

std::vector<std::string> all_pauli_words() {
    const std::string chars = "IXYZ";
    std::vector<std::string> words;
    for (char a : chars) {
        words.push_back({a});
        for (char b : chars) {
            words.push_back({a, b});
            for (char c : chars) words.push_back({a, b, c});
        }
    }
    return words;
}

}  // namespace

TEST_CASE("pauli_word basics") {
    const Observable z = pauli_word("Z");
    CHECK(z.dim() == 2);
    CHECK(z.matrix.at(0, 0) == cxd{1.0, 0.0});
    CHECK(z.matrix.at(1, 1) == cxd{-1.0, 0.0});
    CHECK(z.matrix.at(0, 1) == cxd{0.0, 0.0});

    const Observable xx = pauli_word("XX");
    CHECK((xx.matrix * xx.matrix).distance(Matrix::identity(4)) < 1e-12);

    CHECK_THROWS_AS(pauli_word("XQZ"), LabelError);
    CHECK_THROWS_AS(pauli_word(""), LabelError);
    CHECK_THROWS_AS(pauli_word("XXXX"), LabelError);
}

TEST_CASE("every pauli word is hermitian, involutory, traceless unless identity") {
    for (const std::string& w : all_pauli_words()) {
        const Observable o = pauli_word(w);
        CHECK(o.matrix.is_hermitian(1e-12));
        CHECK((o.matrix * o.matrix).distance(Matrix::identity(o.dim())) < 1e-12);
        const bool is_identity = w.find_first_not_of('I') == std::string::npos;
        if (is_identity)
            CHECK(std::abs(o.matrix.trace() - cxd{double(o.dim()), 0.0}) < 1e-12);
        else
            CHECK(std::abs(o.matrix.trace()) < 1e-12);
    }
}

TEST_CASE("ghz operator algebra: XXX = -(XYY)(YXY)(YYX)") {
    const Matrix product =
        pauli_word("XYY").matrix * pauli_word("YXY").matrix * pauli_word("YYX").matrix;
    CHECK((product * cxd{-1.0, 0.0}).distance(pauli_word("XXX").matrix) < 1e-12);
}

TEST_CASE("commutator_norm") {
    CHECK(commutator_norm(pauli_word("XYY"), pauli_word("YXY")) < 1e-12);
    CHECK(commutator_norm(pauli_word("XYY"), pauli_word("YYX")) < 1e-12);
    CHECK(commutator_norm(pauli_word("YXY"), pauli_word("YYX")) < 1e-12);
    CHECK(commutator_norm(pauli_word("XXX"), pauli_word("XYY")) < 1e-12);
    CHECK(commutator_norm(pauli_word("XXX"), pauli_word("YXY")) < 1e-12);
    CHECK(commutator_norm(pauli_word("XXX"), pauli_word("YYX")) < 1e-12);

    // [X, Y] = 2iZ, so the largest entry magnitude is 2.
    const double xy = commutator_norm(pauli_word("X"), pauli_word("Y"));
    CHECK(xy == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(xy > 0.0);
    CHECK_FALSE(is_commuting(pauli_word("X"), pauli_word("Y")));

    CHECK_THROWS_AS(commutator_norm(pauli_word("X"), pauli_word("XX")), DimensionError);
}

TEST_CASE("joint_eigenbasis of a single-qubit Z") {
    const MeasurementContext ctx = joint_eigenbasis({pauli_word("Z")});
    REQUIRE(ctx.eigenbasis.size() == 2);
    CHECK(ctx.eigenbasis[0].first == Outcomes{+1});
    CHECK(std::abs(ctx.eigenbasis[0].second[0] - cxd{1.0, 0.0}) < 1e-12);
    CHECK(ctx.eigenbasis[1].first == Outcomes{-1});
    CHECK(std::abs(ctx.eigenbasis[1].second[1] - cxd{1.0, 0.0}) < 1e-12);
}

TEST_CASE("joint_eigenbasis of the GHZ CSCO") {
    const MeasurementContext ctx =
        joint_eigenbasis({pauli_word("XYY"), pauli_word("YXY"), pauli_word("YYX")});
    REQUIRE(ctx.eigenbasis.size() == 8);

    // Labels exhaust {±1}^3.
    std::set<Outcomes> labels;
    for (const auto& [tuple, vec] : ctx.eigenbasis) labels.insert(tuple);
    CHECK(labels.size() == 8);

    // Each vector is a simultaneous eigenvector with the labeled eigenvalues.
    for (const auto& [tuple, vec] : ctx.eigenbasis)
        for (std::size_t j = 0; j < 3; ++j) {
            const CVec image = ctx.observables[j].matrix.apply(vec);
            for (std::size_t i = 0; i < 8; ++i)
                CHECK(std::abs(image[i] - cxd{double(tuple[j]), 0.0} * vec[i]) < 1e-10);
        }
}

TEST_CASE("joint_eigenbasis rejects non-commuting input") {
    CHECK_THROWS_AS(joint_eigenbasis({pauli_word("X"), pauli_word("Y")}),
                    CommutationError);
}

TEST_CASE("joint_eigenbasis reports degeneracy instead of failing silently") {
    try {
        joint_eigenbasis({pauli_word("XXY")});
        FAIL("expected DegeneracyError");
    } catch (const DegeneracyError& e) {
        REQUIRE(e.multiplicities.size() == 2);
        CHECK(e.multiplicities[0].second == 4);
        CHECK(e.multiplicities[1].second == 4);
    }
}

TEST_CASE("eigenvector phase convention: first non-negligible amplitude real-positive") {
    for (const auto& obs : {std::vector<Observable>{pauli_word("Y")},
                            std::vector<Observable>{pauli_word("XYY"), pauli_word("YXY"),
                                                    pauli_word("YYX")}}) {
        for (const auto& [tuple, vec] : joint_eigenbasis(obs).eigenbasis) {
            for (const cxd& a : vec) {
                if (std::abs(a) > 1e-8) {
                    CHECK(a.imag() == doctest::Approx(0.0).epsilon(1e-12));
                    CHECK(a.real() > 0.0);
                    break;
                }
            }
        }
    }
}

TEST_CASE("psi_in is the (+1,+1,+1) eigenvector and a -1 eigenvector of XXX") {
    const StateVector psi = ghz_state();
    REQUIRE(psi.dim() == 8);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(psi.amplitudes[0] - cxd{r, 0.0}) < 1e-12);
    CHECK(std::abs(psi.amplitudes[7] - cxd{-r, 0.0}) < 1e-12);
    for (std::size_t i = 1; i < 7; ++i) CHECK(std::abs(psi.amplitudes[i]) < 1e-12);

    const std::vector<std::pair<std::string, double>> expected = {
        {"XYY", +1.0}, {"YXY", +1.0}, {"YYX", +1.0}, {"XXX", -1.0}};
    for (const auto& [word, eig] : expected) {
        const CVec image = pauli_word(word).matrix.apply(psi.amplitudes);
        for (std::size_t i = 0; i < 8; ++i)
            CHECK(std::abs(image[i] - cxd{eig, 0.0} * psi.amplitudes[i]) < 1e-12);
    }
}

TEST_CASE("measure |0> in the Z context") {
    const MeasurementContext ctx = joint_eigenbasis({pauli_word("Z")});
    const OutcomeDistribution d =
        measure(StateVector({cxd{1.0, 0.0}, cxd{0.0, 0.0}}), ctx);
    CHECK(d.prob({+1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.prob({-1}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("measure rejects dimension mismatch") {
    const MeasurementContext ctx = joint_eigenbasis({pauli_word("Z")});
    CHECK_THROWS_AS(measure(singlet_state(), ctx), DimensionError);
}

TEST_CASE("spin_observable endpoints and properties") {
    CHECK(spin_observable(0.0).matrix.distance(pauli_word("X").matrix) < 1e-12);
    CHECK(spin_observable(pi / 2).matrix.distance(pauli_word("Y").matrix) < 1e-12);

    const Observable diag = spin_observable(pi / 4);
    const Matrix expected =
        (pauli_word("X").matrix + pauli_word("Y").matrix) * cxd{1.0 / std::sqrt(2.0), 0.0};
    CHECK(diag.matrix.distance(expected) < 1e-12);
    // Involution implies eigenvalues ±1 for a traceless Hermitian matrix.
    CHECK((diag.matrix * diag.matrix).distance(Matrix::identity(2)) < 1e-12);
    CHECK(std::abs(diag.matrix.trace()) < 1e-12);
}

TEST_CASE("singlet measurement matches (1 - ab cos(x-y))/4 and the oracle") {
    const StateVector psi = singlet_state();
    CHECK(norm(psi.amplitudes) == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int trial = 0; trial < 25; ++trial) {
        const double x = angle(rng), y = angle(rng);
        const Observable ox = spin_observable(x), oy = spin_observable(y);
        const MeasurementContext ctx = joint_eigenbasis(
            {Observable("a:" + ox.label, kron(ox.matrix, Matrix::identity(2))),
             Observable("b:" + oy.label, kron(Matrix::identity(2), oy.matrix))});
        const OutcomeDistribution d = measure(psi, ctx);
        double correlation = 0.0;
        for (int a : {+1, -1})
            for (int b : {+1, -1}) {
                const double closed = (1.0 - a * b * std::cos(x - y)) / 4.0;
                CHECK(std::abs(d.prob({a, b}) - closed) < 1e-12);
                CHECK(std::abs(d.prob({a, b}) - oracle::singlet_prob(x, y, a, b)) < 1e-12);
                correlation += a * b * d.prob({a, b});
            }
        CHECK(std::abs(correlation - (-std::cos(x - y))) < 1e-12);
    }
}

TEST_CASE("singlet is invariant under equal rotations on both qubits") {
    const StateVector psi = singlet_state();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int trial = 0; trial < 10; ++trial) {
        // U = exp(-i theta/2 n·sigma) built as cos(t/2) I - i sin(t/2) n·sigma.
        const double t = angle(rng), nx = angle(rng), ny = angle(rng), nz = angle(rng);
        const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
        Matrix u = Matrix::identity(2) * cxd{std::cos(t / 2), 0.0};
        const Matrix axis = pauli_word("X").matrix * cxd{nx / nn, 0.0} +
                            pauli_word("Y").matrix * cxd{ny / nn, 0.0} +
                            pauli_word("Z").matrix * cxd{nz / nn, 0.0};
        u = u - axis * cxd{0.0, std::sin(t / 2)};
        const StateVector rotated(kron(u, u).apply(psi.amplitudes));

        const double x = angle(rng), y = angle(rng);
        const MeasurementContext ctx = joint_eigenbasis(
            {Observable("a", kron(spin_observable(x).matrix, Matrix::identity(2))),
             Observable("b", kron(Matrix::identity(2), spin_observable(y).matrix))});
        const OutcomeDistribution before = measure(psi, ctx);
        const OutcomeDistribution after = measure(rotated, ctx);
        for (int a : {+1, -1})
            for (int b : {+1, -1})
                CHECK(std::abs(before.prob({a, b}) - after.prob({a, b})) < 1e-12);
    }
}

TEST_CASE("measuring XXX on psi_in via a completed CSCO") {
    // XXX is degenerate alone; complete it with XYY and YXY.
    const MeasurementContext ctx =
        joint_eigenbasis({pauli_word("XXX"), pauli_word("XYY"), pauli_word("YXY")});
    const OutcomeDistribution d = measure(ghz_state(), ctx);
    for (const auto& [tuple, p] : d.entries)
        if (tuple[0] == +1) CHECK(p < 1e-12);  // xxx = +1 never occurs
    double p_minus = 0.0;
    for (const auto& [tuple, p] : d.entries)
        if (tuple[0] == -1) p_minus += p;
    CHECK(p_minus == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single-observable distributions agree with joint-context products") {
    const StateVector psi = ghz_state();
    const OutcomeDistribution via_projector =
        outcome_sign_distribution(psi, pauli_word("XYY"));
    CHECK(via_projector.prob({+1}) == doctest::Approx(1.0).epsilon(1e-12));

    const OutcomeDistribution xxx = outcome_sign_distribution(psi, pauli_word("XXX"));
    CHECK(xxx.prob({-1}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the four operators outside the defining CSCO give random results on psi_in") {
    const StateVector psi = ghz_state();
    for (const char* word : {"XXY", "XYX", "YXX", "YYY"}) {
        const OutcomeDistribution d = outcome_sign_distribution(psi, pauli_word(word));
        CHECK(std::abs(d.prob({+1}) - 0.5) < 1e-12);
        CHECK(std::abs(d.prob({-1}) - 0.5) < 1e-12);
    }
    // YYX by contrast sits in the defining CSCO: outcome certain.
    const OutcomeDistribution yyx = outcome_sign_distribution(psi, pauli_word("YYX"));
    CHECK(yyx.prob({+1}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("measure over a joint eigenbasis is normalized for random states") {
    std::mt19937_64 rng(42);
    const MeasurementContext two = joint_eigenbasis(
        {Observable("a", kron(spin_observable(0.3).matrix, Matrix::identity(2))),
         Observable("b", kron(Matrix::identity(2), spin_observable(-0.9).matrix))});
    const MeasurementContext three =
        joint_eigenbasis({pauli_word("XYY"), pauli_word("YXY"), pauli_word("YYX")});
    for (int trial = 0; trial < 100; ++trial) {
        for (const MeasurementContext* ctx : {&two, &three}) {
            const StateVector psi =
                gen::random_state(rng, ctx->dim() == 4 ? 2 : 3);
            const OutcomeDistribution d = measure(psi, *ctx);
            double sum = 0.0;
            for (const auto& [o, p] : d.entries) {
                CHECK(p >= 0.0);
                sum += p;
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("StateVector and OutcomeDistribution invariants") {
    CHECK_THROWS_AS(StateVector({cxd{1.0, 0.0}, cxd{1.0, 0.0}}), ProbabilityError);
    CHECK_THROWS_AS(StateVector(CVec(3, cxd{0.5, 0.0})), DimensionError);

    CHECK_THROWS_AS(OutcomeDistribution({{{+1}, 0.5}, {{-1}, 0.4}}), ProbabilityError);
    CHECK_THROWS_AS(OutcomeDistribution({{{+1}, 1.1}, {{-1}, -0.1}}), ProbabilityError);
    // Clamp window: -1e-15 is underflow noise, not an error.
    const OutcomeDistribution clamped({{{+1}, 1.0 + 1e-15}, {{-1}, -1e-15}});
    CHECK(clamped.prob({-1}) == 0.0);
}
