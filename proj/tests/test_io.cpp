#include <doctest.h>

#include <sstream>

#include "nlocal/io.hpp"
#include "test_helpers.hpp"

using namespace nlocal;
using nlohmann::json;

TEST_CASE("state json round-trip") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const TwoQubitState rho = random_state(seed);
        const TwoQubitState back = state_from_json(state_to_json(rho));
        CHECK(back.matrix().max_abs_diff(rho.matrix()) == 0.0);
    }
}

TEST_CASE("state loader validates invariants") {
    json bad = state_to_json(bell_phi_plus());
    bad["re"][0][0] = 0.9;  // trace off
    CHECK_THROWS_AS(state_from_json(bad), std::invalid_argument);

    json not_hermitian = state_to_json(bell_phi_plus());
    not_hermitian["im"][0][3] = 0.4;  // breaks conjugate symmetry
    CHECK_THROWS_AS(state_from_json(not_hermitian), std::invalid_argument);

    CHECK_THROWS_AS(state_from_json(json{{"re", json::array()}}), std::invalid_argument);
}

TEST_CASE("ensemble json supports named constructors") {
    const json j = json::array({json{{"name", "bell"}},
                                json{{"name", "gamma"}},
                                json{{"name", "werner"}, {"v", 0.5}},
                                json{{"name", "colored"}, {"t1", 0.25}},
                                json{{"name", "random"}, {"seed", 9}}});
    const SourceEnsemble ensemble = ensemble_from_json(j);
    REQUIRE(ensemble.size() == 5);
    CHECK(ensemble[0].matrix().max_abs_diff(bell_phi_plus().matrix()) == 0.0);
    CHECK(ensemble[1].matrix().max_abs_diff(classical_gamma().matrix()) == 0.0);
    CHECK(ensemble[2].matrix().max_abs_diff(werner(0.5).matrix()) == 0.0);
    CHECK(ensemble[4].matrix().max_abs_diff(random_state(9).matrix()) == 0.0);

    CHECK_THROWS_AS(ensemble_from_json(json::array({json{{"name", "nope"}}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(ensemble_from_json(json::object()), std::invalid_argument);

    // round-trip through raw matrices
    const SourceEnsemble back = ensemble_from_json(ensemble_to_json(ensemble));
    REQUIRE(back.size() == 5);
    CHECK(back[2].matrix().max_abs_diff(ensemble[2].matrix()) == 0.0);
}

TEST_CASE("strategy json round-trip") {
    Rng rng(71);
    for (const Topology& t : {Topology::star(3), Topology::chain(3)}) {
        const NetworkStrategy s = testutil::random_strategy(t, rng);
        const json j = strategy_to_json(s);
        CHECK(j.at("slots").size() == 6);  // 2n qubit slots
        const NetworkStrategy back = strategy_from_json(j);
        CHECK(back.topology == s.topology);
        for (int i = 0; i < t.n; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            CHECK(back.a_side[k].on_input_0.x == s.a_side[k].on_input_0.x);
            CHECK(back.a_side[k].on_input_1.y == s.a_side[k].on_input_1.y);
            CHECK(back.b_side[k].on_input_0.z == s.b_side[k].on_input_0.z);
        }
    }
}

TEST_CASE("strategy json reports party labels and rejects gaps") {
    const SourceEnsemble bells = {bell_phi_plus(), bell_phi_plus()};
    const json star = strategy_to_json(theorem1_star_strategy(bells));
    bool saw_central = false, saw_a1 = false;
    for (const json& slot : star.at("slots")) {
        if (slot.at("party") == "C") saw_central = true;
        if (slot.at("party") == "A1") saw_a1 = true;
    }
    CHECK(saw_central);
    CHECK(saw_a1);

    json truncated = star;
    truncated["slots"].erase(0);
    CHECK_THROWS_AS(strategy_from_json(truncated), std::invalid_argument);
}

TEST_CASE("table csv round-trip at full precision") {
    const SourceEnsemble bells = {bell_phi_plus(), bell_phi_plus()};
    const CorrelationTable table = make_table(bells, theorem1_star_strategy(bells));
    const std::string csv = table_to_csv(table);
    CHECK(csv.rfind("input_bits,value", 0) == 0);

    std::istringstream in(csv);
    const CorrelationTable back = table_from_csv(Topology::star(2), in);
    for (std::size_t i = 0; i < table.values().size(); ++i)
        CHECK(back.values()[i] == table.values()[i]);
}

TEST_CASE("table csv with std_error column and error paths") {
    const SourceEnsemble bells = {bell_phi_plus(), bell_phi_plus()};
    const CorrelationTable table = make_table(bells, theorem1_star_strategy(bells));
    const std::vector<double> errs(8, 0.01);
    const std::string csv = table_to_csv(table, &errs);
    CHECK(csv.find(",std_error") != std::string::npos);

    std::istringstream with_err(csv);
    const CorrelationTable back = table_from_csv(Topology::star(2), with_err);
    CHECK(back.values()[0] == table.values()[0]);

    std::istringstream incomplete("input_bits,value\n000,0.5\n");
    CHECK_THROWS_AS(table_from_csv(Topology::star(2), incomplete), std::invalid_argument);

    std::istringstream garbage("input_bits,value\nxyz,0.5\n");
    CHECK_THROWS_AS(table_from_csv(Topology::star(2), garbage), std::invalid_argument);
}

TEST_CASE("score report json carries scores, flags and witnesses") {
    const SourceEnsemble ensemble = {bell_phi_plus(), classical_gamma(), bell_phi_plus()};
    const Topology t = Topology::chain(3);
    const json j = report_to_json(t, score_report(t, ensemble));
    CHECK(j.at("s_local_max").get<double>() == doctest::Approx(std::sqrt(2.0)));
    CHECK(j.at("s_mub_max").get<double>() == doctest::Approx(1.0));
    CHECK(j.contains("equality_flags"));
    CHECK(j.at("witness_local").at("slots").size() == 6);
    const NetworkStrategy witness = strategy_from_json(j.at("witness_local"));
    CHECK(witness.topology.n == 3);
}
