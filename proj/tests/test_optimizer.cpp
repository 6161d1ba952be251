#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nlocal/closedform.hpp"
#include "nlocal/optimizer.hpp"
#include "test_helpers.hpp"

using namespace nlocal;

namespace {

const double kSqrt2 = std::sqrt(2.0);

SourceEnsemble random_ensemble(int n, std::uint64_t base) {
    SourceEnsemble ensemble;
    for (int i = 0; i < n; ++i)
        ensemble.push_back(random_state(base + static_cast<std::uint64_t>(i)));
    return ensemble;
}

OptimizerConfig quick_config(std::uint64_t seed = 0) {
    OptimizerConfig config;
    config.restarts = 8;
    config.max_iterations = 1500;
    config.seed = seed;
    return config;
}

}  // namespace

TEST_CASE("angle encode/decode round-trips") {
    Rng rng(51);
    for (int trial = 0; trial < 500; ++trial) {
        const BlochVector v = testutil::random_bloch(rng);
        const SphericalAngles a = encode_angles(v);
        const BlochVector w = decode_angles(a.theta, a.phi);
        CHECK(std::abs(v.x - w.x) < 1e-12);
        CHECK(std::abs(v.y - w.y) < 1e-12);
        CHECK(std::abs(v.z - w.z) < 1e-12);
    }
    const SphericalAngles pole = encode_angles(BlochVector::z_axis());
    CHECK(pole.theta == 0.0);
    CHECK(pole.phi == 0.0);
}

TEST_CASE("optimizer config validation") {
    OptimizerConfig bad;
    bad.restarts = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = OptimizerConfig{};
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = OptimizerConfig{};
    bad.max_iterations = -1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("CHSH optimization reaches the Horodecki value") {
    const OptimizationResult result = optimize_chsh(werner(0.9), quick_config(1));
    CHECK(result.best_score == doctest::Approx(1.8 * kSqrt2).epsilon(1e-3));
    CHECK(result.best_score <= 1.8 * kSqrt2 + 1e-9);
}

TEST_CASE("star Bell x gamma separation instance") {
    const SourceEnsemble ensemble = {bell_phi_plus(), classical_gamma()};

    OptimizerConfig config = quick_config(2);
    const OptimizationResult free_result = optimize(Topology::star(2), ensemble, config);
    CHECK(free_result.best_score == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-3));

    config.restriction = Restriction::mub_central;
    const OptimizationResult mub_result = optimize(Topology::star(2), ensemble, config);
    CHECK(mub_result.best_score == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(mub_result.best_score <= free_result.best_score + 1e-9);
}

TEST_CASE("optimizer soundness and attainment on random ensembles") {
    for (std::uint64_t base = 0; base < 6; ++base) {
        const int n = 1 + static_cast<int>(base % 3);
        const SourceEnsemble ensemble = random_ensemble(n, 6000 + base * 10);
        OptimizerConfig config = quick_config(base);

        const double closed_star = max_star_local(ensemble).value;
        const OptimizationResult star = optimize(Topology::star(n), ensemble, config);
        CHECK(star.best_score <= closed_star + 1e-9);
        CHECK(star.best_score >= closed_star - 1e-3);

        config.restriction = Restriction::mub_central;
        const OptimizationResult star_mub = optimize(Topology::star(n), ensemble, config);
        CHECK(star_mub.best_score <= max_star_mub(ensemble) + 1e-9);
        CHECK(star_mub.best_score >= max_star_mub(ensemble) - 1e-3);
        CHECK(star_mub.best_score <= star.best_score + 1e-9);

        if (n >= 2) {
            config.restriction = Restriction::free_observables;
            const double closed_chain = max_chain_local(ensemble).value;
            const OptimizationResult chain = optimize(Topology::chain(n), ensemble, config);
            CHECK(chain.best_score <= closed_chain + 1e-9);
            CHECK(chain.best_score >= closed_chain - 1e-3);

            config.restriction = Restriction::mub_central;
            const OptimizationResult chain_mub = optimize(Topology::chain(n), ensemble, config);
            CHECK(chain_mub.best_score <= max_chain_mub(ensemble) + 1e-9);
            CHECK(chain_mub.best_score >= max_chain_mub(ensemble) - 1e-3);
            CHECK(chain_mub.best_score <= chain.best_score + 1e-9);
        }
    }
}

TEST_CASE("optimizer result invariants") {
    const SourceEnsemble ensemble = random_ensemble(2, 6100);
    const OptimizerConfig config = quick_config(3);
    const OptimizationResult result = optimize(Topology::star(2), ensemble, config);

    // re-evaluation of the returned strategy reproduces the score
    CHECK(std::abs(strategy_score(ensemble, result.best_strategy) - result.best_score) < 1e-12);
    CHECK(static_cast<int>(result.restart_scores.size()) == config.restarts);
    for (double s : result.restart_scores) CHECK(s <= result.best_score);

    // MUB run: returned strategy evaluates on the original ensemble
    OptimizerConfig mub = config;
    mub.restriction = Restriction::mub_central;
    const OptimizationResult mr = optimize(Topology::star(2), ensemble, mub);
    CHECK(std::abs(strategy_score(ensemble, mr.best_strategy) - mr.best_score) < 1e-12);
}

TEST_CASE("optimizer is deterministic per seed") {
    const SourceEnsemble ensemble = random_ensemble(2, 6200);
    const OptimizerConfig config = quick_config(9);
    const OptimizationResult a = optimize(Topology::star(2), ensemble, config);
    const OptimizationResult b = optimize(Topology::star(2), ensemble, config);
    CHECK(a.best_score == b.best_score);
    CHECK(a.iterations_used == b.iterations_used);
    REQUIRE(a.restart_scores.size() == b.restart_scores.size());
    for (std::size_t i = 0; i < a.restart_scores.size(); ++i)
        CHECK(a.restart_scores[i] == b.restart_scores[i]);
    for (std::size_t i = 0; i < a.best_strategy.a_side.size(); ++i) {
        CHECK(a.best_strategy.a_side[i].on_input_0.x == b.best_strategy.a_side[i].on_input_0.x);
        CHECK(a.best_strategy.b_side[i].on_input_1.z == b.best_strategy.b_side[i].on_input_1.z);
    }
}

TEST_CASE("grid oracle certifies the CHSH optimum") {
    CHECK(grid_oracle_chsh(bell_phi_plus(), 360) >= 2.0 * kSqrt2 - 5e-4);
    CHECK(grid_oracle_chsh(bell_phi_plus(), 360) <= 2.0 * kSqrt2 + 1e-12);
    for (int res : {16, 64, 128})
        CHECK(grid_oracle_chsh(classical_gamma(), res) <= 2.0 + 1e-12);
}

TEST_CASE("grid oracle approaches the star closed form") {
    const SourceEnsemble ensemble = {werner(0.85), werner(0.85)};
    const double closed = max_star_local(ensemble).value;
    CHECK(closed == doctest::Approx(0.85 * kSqrt2).epsilon(1e-12));
    const double grid = grid_oracle(Topology::star(2), ensemble, 90);
    CHECK(grid <= closed + 1e-12);
    CHECK(grid >= closed - 2e-3);
}

TEST_CASE("grid oracle is monotone under refinement and respects the budget") {
    const SourceEnsemble ensemble = random_ensemble(2, 6300);
    double prev = 0.0;
    for (int res : {8, 16, 32}) {
        const double value = grid_oracle(Topology::star(2), ensemble, res);
        CHECK(value >= prev - 1e-15);
        prev = value;
    }
    CHECK_THROWS_AS(grid_oracle(Topology::star(3), random_ensemble(3, 6400), 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(grid_oracle(Topology::star(2), ensemble, 1), std::invalid_argument);

    // chain route stays within budget at the same resolution
    const SourceEnsemble chain3 = random_ensemble(3, 6500);
    const double chain_grid = grid_oracle(Topology::chain(3), chain3, 24);
    CHECK(chain_grid <= max_chain_local(chain3).value + 1e-12);
}

TEST_CASE("optimizer trace records per-iteration progress") {
    const std::string path = "/tmp/nlocal_trace_test.csv";
    OptimizerConfig config = quick_config(4);
    config.restarts = 2;
    config.trace_path = path;
    optimize(Topology::star(1), {werner(0.8)}, config);

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "restart,iteration,score");
    int rows = 0;
    int restart, iteration;
    double score, prev = -1.0;
    int prev_restart = -1;
    char comma;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        row >> restart;
        row >> comma >> iteration;
        row >> comma >> score;
        if (restart != prev_restart) prev = -1.0;  // trace restarts fresh
        CHECK(score >= prev);                      // best value never degrades
        prev = score;
        prev_restart = restart;
        ++rows;
    }
    CHECK(rows > 2);
    std::remove(path.c_str());
}

TEST_CASE("grid oracle confirms a non-Bell Horodecki value") {
    // triple (0.8, 0.8, -0.8) realized by werner(0.8)
    const double closed = max_chsh(singular_triple(werner(0.8)));
    CHECK(closed == doctest::Approx(1.6 * kSqrt2).epsilon(1e-12));
    const double grid = grid_oracle_chsh(werner(0.8), 180);
    CHECK(grid <= closed + 1e-12);
    CHECK(grid >= closed - 1e-3);
}
