#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qbell/errors.hpp"
#include "qbell/theories.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace qbell;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("singlet table matches the closed form entrywise") {
    const QuantumModel model = singlet_model(0.0, pi / 2, pi / 4, -pi / 4);
    const ConditionalTable table = table_from_quantum(model);
    for (const SettingTuple& st : table.scenario.setting_tuples()) {
        const double x = model.party_settings[0][st[0]].angle;
        const double y = model.party_settings[1][st[1]].angle;
        for (int a : {+1, -1})
            for (int b : {+1, -1}) {
                const double closed = (1.0 - a * b * std::cos(x - y)) / 4.0;
                CHECK(std::abs(table.entry(0, st).prob({a, b}) - closed) < 1e-12);
            }
    }
}

TEST_CASE("ghz table matches (1 - abc cos(u+v+w))/8 entrywise, and the oracle") {
    const ConditionalTable table = table_from_quantum(ghz_model());
    const double angles[2] = {0.0, pi / 2};
    for (const SettingTuple& st : table.scenario.setting_tuples()) {
        const double u = angles[st[0]], v = angles[st[1]], w = angles[st[2]];
        for (int a : {+1, -1})
            for (int b : {+1, -1})
                for (int c : {+1, -1}) {
                    const double p = table.entry(0, st).prob({a, b, c});
                    const double closed = (1.0 - a * b * c * std::cos(u + v + w)) / 8.0;
                    CHECK(std::abs(p - closed) < 1e-12);
                    CHECK(std::abs(p - oracle::ghz_prob(u, v, w, a, b, c)) < 1e-12);
                }
    }
}

TEST_CASE("the opposite-parity GHZ state satisfies the + sign variant") {
    // (|000> + |111>)/sqrt(2) has xyy = yxy = yyx = -1 and xxx = +1, so its
    // table is (1 + abc cos(u+v+w))/8; useful as a sign cross-check.
    const double r = 1.0 / std::sqrt(2.0);
    CVec amps(8, cxd{0.0, 0.0});
    amps[0] = cxd{r, 0.0};
    amps[7] = cxd{r, 0.0};
    const std::vector<Setting> xy = {{"X", 0.0}, {"Y", pi / 2}};
    const ConditionalTable table =
        table_from_quantum(QuantumModel(StateVector(amps), {xy, xy, xy}));
    const double angles[2] = {0.0, pi / 2};
    for (const SettingTuple& st : table.scenario.setting_tuples()) {
        const double sum = angles[st[0]] + angles[st[1]] + angles[st[2]];
        for (int a : {+1, -1})
            for (int b : {+1, -1})
                for (int c : {+1, -1})
                    CHECK(std::abs(table.entry(0, st).prob({a, b, c}) -
                                   (1.0 + a * b * c * std::cos(sum)) / 8.0) < 1e-12);
    }
}

TEST_CASE("product state table factorizes and passes PC") {
    CVec amps(4, cxd{0.0, 0.0});
    amps[0] = cxd{1.0, 0.0};  // |00>
    const ConditionalTable table = table_from_quantum(
        QuantumModel(StateVector(amps), {{{"x1", 0.3}, {"x2", 1.1}},
                                         {{"y1", -0.4}, {"y2", 0.9}}}));
    CHECK(check_PC(table).holds);
    CHECK(check_factorization(table).max_violation < 1e-12);
}

TEST_CASE("table_from_quantum validates the party count") {
    CHECK_THROWS_AS(QuantumModel(singlet_state(), {{{"x", 0.0}}}), ValidationError);
}

TEST_CASE("table_from_lhv: deterministic strategy gives a point mass per cell") {
    DeterministicStrategy strat;
    strat.outcome_by_setting = {{{"x1", +1}, {"x2", -1}}, {{"y1", -1}, {"y2", +1}}};
    const ConditionalTable table =
        table_from_lhv(lhv_from_strategies({{"x1", "x2"}, {"y1", "y2"}}, {{1.0, strat}}));
    CHECK(table.entry(0, {0, 0}).prob({+1, -1}) == 1.0);
    CHECK(table.entry(0, {1, 1}).prob({-1, +1}) == 1.0);
}

TEST_CASE("mixture of two opposite strategies correlates perfectly at equal settings") {
    DeterministicStrategy up, down;
    up.outcome_by_setting = {{{"x1", +1}, {"x2", +1}}, {{"y1", +1}, {"y2", +1}}};
    down.outcome_by_setting = {{{"x1", -1}, {"x2", -1}}, {{"y1", -1}, {"y2", -1}}};
    const ConditionalTable table = table_from_lhv(
        lhv_from_strategies({{"x1", "x2"}, {"y1", "y2"}}, {{0.5, up}, {0.5, down}}));

    // E = +1 for every setting pair, yet each lambda cell factorizes.
    const BellResult bell = chsh(table, 0, 1, 0, 1);
    CHECK(bell.e11 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bell.e22 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check_factorization(table).holds);
}

TEST_CASE("random stochastic local models pass all three condition checks") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const ConditionalTable table =
            table_from_lhv(gen::random_lhv(rng, trial % 2 == 0 ? 2 : 3));
        CHECK(check_EL(table).holds);
        CHECK(check_PC(table).holds);
        CHECK(check_factorization(table).holds);
    }
}

TEST_CASE("chsh at the canonical angles reaches the Tsirelson point") {
    const ConditionalTable table = table_from_quantum(
        singlet_model(kCanonicalChshAngles[0], kCanonicalChshAngles[1],
                      kCanonicalChshAngles[2], kCanonicalChshAngles[3]));
    const BellResult bell = chsh(table, 0, 1, 0, 1);
    CHECK(std::abs(std::abs(bell.s) - kQuantumBound) < 1e-9);
    CHECK(std::abs(bell.s - (bell.e11 + bell.e12 + bell.e21 - bell.e22)) < 1e-12);
    CHECK(std::abs(bell.s_best) >= std::abs(bell.s));
}

TEST_CASE("chsh of deterministic strategies: every E is ±1 and |S| <= 2") {
    const DeterministicChshReport report = enumerate_deterministic_chsh();
    REQUIRE(report.strategies.size() == 16);
    CHECK(report.max_abs_s == 2.0);  // exact ±1 arithmetic
    for (const DeterministicChshEntry& entry : report.strategies) {
        const ConditionalTable table = table_from_lhv(
            lhv_from_strategies({{"x1", "x2"}, {"y1", "y2"}}, {{1.0, entry.strategy}}));
        const BellResult bell = chsh(table, 0, 1, 0, 1);
        for (double e : {bell.e11, bell.e12, bell.e21, bell.e22})
            CHECK(std::abs(std::abs(e) - 1.0) < 1e-12);
        CHECK(std::abs(bell.s - entry.s) < 1e-12);
        CHECK(std::abs(bell.s) <= 2.0 + 1e-12);
    }
}

TEST_CASE("strategies answering +1 everywhere give S = 2") {
    for (const DeterministicChshEntry& entry : enumerate_deterministic_chsh().strategies) {
        bool all_plus = true;
        for (const auto& party : entry.strategy.outcome_by_setting)
            for (const auto& [setting, v] : party) all_plus &= (v == +1);
        if (all_plus) CHECK(entry.s == 2.0);
    }
}

TEST_CASE("random mixtures of deterministic strategies satisfy |S| <= 2") {
    const DeterministicChshReport report = enumerate_deterministic_chsh();
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<double, DeterministicStrategy>> weighted;
        double sum = 0.0;
        for (const DeterministicChshEntry& e : report.strategies) {
            const double w = u(rng);
            weighted.emplace_back(w, e.strategy);
            sum += w;
        }
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weighted.size(); ++i) {
            weighted[i].first /= sum;
            acc += weighted[i].first;
        }
        weighted.back().first = 1.0 - acc;
        const ConditionalTable table =
            table_from_lhv(lhv_from_strategies({{"x1", "x2"}, {"y1", "y2"}}, weighted));
        CHECK(std::abs(chsh(table, 0, 1, 0, 1).s) <= 2.0 + 1e-12);
    }
}

TEST_CASE("chsh rejects missing setting pairs and wrong scenarios") {
    const ConditionalTable table = table_from_quantum(
        QuantumModel(singlet_state(), {{{"x", 0.0}}, {{"y", 0.0}}}));
    CHECK_THROWS_AS(chsh(table, 0, 1, 0, 1), TableError);
    CHECK_THROWS_AS(chsh(table_from_quantum(ghz_model()), 0, 1, 0, 1), ValidationError);
}

TEST_CASE("ghz_parity_check on psi_in") {
    const GhzParityReport report = ghz_parity_check(ghz_model());
    REQUIRE(report.lines.size() == 4);
    CHECK(report.lines[0].word == "XYY");
    CHECK(std::abs(report.lines[0].p_product_plus - 1.0) < 1e-12);
    CHECK(report.lines[0].certain_product == +1);
    CHECK(report.lines[1].certain_product == +1);
    CHECK(report.lines[2].certain_product == +1);
    CHECK(report.lines[3].word == "XXX");
    CHECK(std::abs(report.lines[3].p_product_plus) < 1e-12);
    CHECK(report.lines[3].certain_product == -1);

    CHECK(report.quantum_certainties);
    CHECK(report.consistent_assignments == 8);  // 64 / 2^3 constraints
    CHECK(report.all_force_xxx_plus);
    CHECK(report.contradiction);
}

TEST_CASE("ghz_parity_check rejects a state that is not psi_in") {
    CVec amps(8, cxd{0.0, 0.0});
    amps[0] = cxd{1.0, 0.0};
    const std::vector<Setting> xy = {{"X", 0.0}, {"Y", pi / 2}};
    CHECK_THROWS_AS(ghz_parity_check(QuantumModel(StateVector(amps), {xy, xy, xy})),
                    StateError);
}

TEST_CASE("no local model can reproduce all four GHZ certainties") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        LocalHVModel lhv = gen::random_lhv(rng, 3);
        lhv = LocalHVModel(3, {{"X", "Y"}, {"X", "Y"}, {"X", "Y"}},
                           [&] {  // remap the generated responses onto X/Y labels
                               std::vector<LhvLambda> ls = lhv.lambdas;
                               for (LhvLambda& l : ls)
                                   for (auto& resp : l.response_plus) {
                                       std::map<std::string, double> renamed;
                                       renamed["X"] = resp.at("s0");
                                       renamed["Y"] = resp.at("s1");
                                       resp = std::move(renamed);
                                   }
                               return ls;
                           }());
        const GhzParityReport report = ghz_parity_check(table_from_lhv(lhv));
        CHECK_FALSE(report.quantum_certainties);
        CHECK_FALSE(report.contradiction);
    }

    // Even optimal deterministic assignments satisfy at most three of the
    // four parity constraints; scan all 64.
    std::size_t best = 0;
    for (std::size_t bits = 0; bits < 64; ++bits) {
        const int xa = bits & 1 ? -1 : +1, ya = bits & 2 ? -1 : +1;
        const int xb = bits & 4 ? -1 : +1, yb = bits & 8 ? -1 : +1;
        const int xc = bits & 16 ? -1 : +1, yc = bits & 32 ? -1 : +1;
        std::size_t satisfied = 0;
        if (xa * yb * yc == +1) ++satisfied;
        if (ya * xb * yc == +1) ++satisfied;
        if (ya * yb * xc == +1) ++satisfied;
        if (xa * xb * xc == -1) ++satisfied;
        best = std::max(best, satisfied);
    }
    CHECK(best == 3);
}

TEST_CASE("ghz conditional ladder values") {
    const GhzLadderReport report = ghz_conditional_ladder(ghz_model());
    CHECK(report.max_dev_unconditioned < 1e-12);
    CHECK(report.max_dev_single < 1e-12);
    CHECK(report.max_dev_double < 1e-12);
    REQUIRE(report.rows.size() == 8);
    for (const GhzLadderRow& row : report.rows) CHECK_FALSE(row.extrapolation);
}

TEST_CASE("ghz ladder marks continuous angles as extrapolation and still matches") {
    const std::vector<Setting> settings = {{"X", 0.0}, {"t", 0.7}};
    const ConditionalTable table = table_from_quantum(
        QuantumModel(ghz_state(), {settings, settings, settings}));
    const GhzLadderReport report = ghz_conditional_ladder(table);
    CHECK(report.max_dev_double < 1e-12);
    bool any_extrapolation = false;
    for (const GhzLadderRow& row : report.rows) any_extrapolation |= row.extrapolation;
    CHECK(any_extrapolation);
}

TEST_CASE("quantum tables are non-signaling for random states and settings") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 30; ++trial) {
        const QuantumModel model = gen::random_quantum_model(rng, trial % 2 == 0 ? 2 : 3);
        CHECK(check_EL(table_from_quantum(model)).max_violation < 1e-12);
    }
}

TEST_CASE("optimal_chsh_angles recovers the Tsirelson bound") {
    const OptimalAngles best = optimal_chsh_angles();
    CHECK(std::abs(best.phi - pi / 4) < 1e-5);
    CHECK(std::abs(best.s_abs - kQuantumBound) < 1e-9);
}

TEST_CASE("random angle quadruples never exceed the Tsirelson bound") {
    CHECK(max_abs_s_random_sweep(500, 4242) <= kQuantumBound + 1e-9);
}

TEST_CASE("chsh_phi_sweep brackets the optimum") {
    const std::vector<ChshSweepPoint> sweep = chsh_phi_sweep(0.1, pi / 2 - 0.1, 20);
    REQUIRE(sweep.size() == 20);
    double best = 0.0;
    for (const ChshSweepPoint& pt : sweep) best = std::max(best, std::abs(pt.bell.s));
    CHECK(best <= kQuantumBound + 1e-9);
    CHECK(best > 2.0);  // the family passes through the violating region
}

TEST_CASE("pc_violation_sweep matches |cos(delta)|/2") {
    for (const auto& [delta, v] : pc_violation_sweep(0.0, pi, 30))
        CHECK(std::abs(v - std::abs(std::cos(delta)) / 2.0) < 1e-9);
}

TEST_CASE("sampled tables are reproducible and converge") {
    const ConditionalTable exact = table_from_quantum(
        singlet_model(kCanonicalChshAngles[0], kCanonicalChshAngles[1],
                      kCanonicalChshAngles[2], kCanonicalChshAngles[3]));
    const std::uint64_t shots = 1000000;
    const ConditionalTable s1 = sample_table(exact, shots, 9001);
    const ConditionalTable s2 = sample_table(exact, shots, 9001);
    for (const auto& [key, dist] : s1.table)
        for (const auto& [o, p] : dist.entries)
            CHECK(p == s2.entry(key.first, key.second).prob(o));  // bitwise

    const BellResult exact_bell = chsh(exact, 0, 1, 0, 1);
    const BellResult sampled_bell = chsh(s1, 0, 1, 0, 1);
    // 5-sigma binomial bound per correlation: sigma = sqrt(1 - E^2) / sqrt(N).
    const std::array<double, 4> exact_es = {exact_bell.e11, exact_bell.e12,
                                            exact_bell.e21, exact_bell.e22};
    const std::array<double, 4> sampled_es = {sampled_bell.e11, sampled_bell.e12,
                                              sampled_bell.e21, sampled_bell.e22};
    for (std::size_t k = 0; k < 4; ++k) {
        const double sigma =
            std::sqrt(1.0 - exact_es[k] * exact_es[k]) / std::sqrt(double(shots));
        CHECK(std::abs(exact_es[k] - sampled_es[k]) < 5.0 * sigma);
    }

    CHECK_THROWS_AS(sample_table(exact, 0, 1), ValidationError);
}
