#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qbell/errors.hpp"
#include "qbell/serialize.hpp"
#include "qbell/theories.hpp"
#include "generators.hpp"

using namespace qbell;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("state round trip is bit-exact") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = gen::random_state(rng, 1 + trial % 3);
        const StateVector back = state_from_json(json::parse(to_json(psi).dump()));
        REQUIRE(back.dim() == psi.dim());
        for (std::size_t i = 0; i < psi.dim(); ++i)
            CHECK(back.amplitudes[i] == psi.amplitudes[i]);  // bitwise
    }
}

TEST_CASE("observable round trip is bit-exact, including awkward doubles") {
    Matrix m(2, 2);
    m.at(0, 0) = cxd{1.0 / 3.0, 0.0};
    m.at(0, 1) = cxd{pi, -std::sqrt(2.0)};
    m.at(1, 0) = std::conj(m.at(0, 1));
    m.at(1, 1) = cxd{-0.1, 0.0};
    const Observable obs("awkward", m);
    const Observable back = observable_from_json(json::parse(to_json(obs).dump()));
    CHECK(back.label == obs.label);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(back.matrix.at(i, j) == obs.matrix.at(i, j));
}

TEST_CASE("outcome keys") {
    CHECK(outcome_key({+1, -1}) == "+1-1");
    CHECK(outcomes_from_key("+1+1-1") == Outcomes{+1, +1, -1});
    CHECK_THROWS_AS(outcomes_from_key("+2"), ValidationError);
    CHECK_THROWS_AS(outcomes_from_key(""), ValidationError);
}

TEST_CASE("conditional table round trip preserves every probability bitwise") {
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 10; ++trial) {
        const ConditionalTable table = gen::random_table(rng, trial % 2 == 0 ? 2 : 3);
        const ConditionalTable back = table_from_json(json::parse(to_json(table).dump()));
        REQUIRE(back.scenario.parties == table.scenario.parties);
        for (const auto& [key, dist] : table.table)
            for (const auto& [o, p] : dist.entries)
                CHECK(back.entry(key.first, key.second).prob(o) == p);
    }
}

TEST_CASE("condition report serialization carries the witness") {
    const ConditionalTable table = table_from_quantum(
        QuantumModel(singlet_state(), {{{"x", pi / 4}}, {{"y", 0.0}}}));
    const json j = to_json(check_PC(table));
    CHECK(j.at("condition") == "PC");
    CHECK(j.at("holds") == false);
    CHECK(j.contains("witness"));
    CHECK(j.at("witness").contains("detail"));

    const json ok = to_json(check_EL(table));
    CHECK(ok.at("holds") == true);
    CHECK_FALSE(ok.contains("witness"));
}

TEST_CASE("bell result serialization includes both bounds") {
    const ConditionalTable table = table_from_quantum(
        singlet_model(kCanonicalChshAngles[0], kCanonicalChshAngles[1],
                      kCanonicalChshAngles[2], kCanonicalChshAngles[3]));
    const json j = to_json(chsh(table, 0, 1, 0, 1));
    CHECK(j.at("bound_classical") == 2.0);
    CHECK(j.at("bound_quantum").get<double>() == kQuantumBound);
    CHECK(j.at("correlations").size() == 4);
}

TEST_CASE("geometry serialization and CSV layout") {
    const Geometry g = default_epr_geometry(2.0);
    const json j = to_json(g);
    REQUIRE(j.at("events").size() == 6);
    CHECK(j.at("events")[0].at("label") == "SOURCE");
    CHECK(j.at("events")[0].at("payload")[0] == "lambda");

    const std::string csv = geometry_csv(g);
    CHECK(csv.rfind("label,t,pos\n", 0) == 0);
    CHECK(csv.find("SOURCE,0,0") != std::string::npos);
    CHECK(csv.find("VERIFY,2,0") != std::string::npos);
}

TEST_CASE("lhv model file parsing") {
    const json good = json::parse(R"([
      {"weight": 0.5,
       "responses": {"a": {"x1": {"+1": 1.0}, "x2": {"+1": 0.0}},
                      "b": {"y1": {"+1": 1.0}, "y2": {"+1": 1.0}}}},
      {"weight": 0.5,
       "responses": {"a": {"x1": {"+1": 0.25}, "x2": {"+1": 0.75}},
                      "b": {"y1": {"+1": 0.5}, "y2": {"+1": 0.5}}}}
    ])");
    const LocalHVModel model = lhv_model_from_json(good);
    CHECK(model.parties == 2);
    CHECK(model.setting_labels[0] == std::vector<std::string>{"x1", "x2"});
    const ConditionalTable table = table_from_lhv(model);
    CHECK(check_factorization(table).holds);

    // Missing response: the error names entry index, party and setting.
    json bad = good;
    bad[1]["responses"]["b"].erase("y2");
    try {
        lhv_model_from_json(bad);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("entry 1") != std::string::npos);
        CHECK(msg.find("y2") != std::string::npos);
    }

    CHECK_THROWS_AS(lhv_model_from_json(json::object()), ValidationError);

    json contradictory = good;
    contradictory[0]["responses"]["a"]["x1"]["-1"] = 0.5;  // +1 already 1.0
    CHECK_THROWS_AS(lhv_model_from_json(contradictory), ValidationError);
}

TEST_CASE("ghz reports serialize") {
    const GhzParityReport parity = ghz_parity_check(ghz_model());
    const json j = to_json(parity);
    CHECK(j.at("contradiction") == true);
    CHECK(j.at("parity").size() == 4);

    const GhzLadderReport ladder = ghz_conditional_ladder(ghz_model());
    CHECK(to_json(ladder).at("rows").size() == 8);
}
