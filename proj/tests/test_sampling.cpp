#include <doctest.h>

#include <cmath>

#include "nlocal/sampling.hpp"
#include "test_helpers.hpp"

using namespace nlocal;

TEST_CASE("sample_pair deterministic outcomes") {
    const ShotEstimate bell =
        sample_pair(bell_phi_plus(), BlochVector::z_axis(), BlochVector::z_axis(), 1000, 1);
    CHECK(bell.mean == 1.0);
    CHECK(bell.std_error == 0.0);
    CHECK(bell.shots == 1000);

    CHECK_THROWS_AS(
        sample_pair(bell_phi_plus(), BlochVector::z_axis(), BlochVector::z_axis(), 0, 1),
        std::invalid_argument);
}

TEST_CASE("sample_pair symmetric coin stays near zero") {
    const ShotEstimate est =
        sample_pair(classical_gamma(), BlochVector::x_axis(), BlochVector::x_axis(), 100000, 7);
    CHECK(est.std_error > 0.0);
    CHECK(std::abs(est.mean) < 5.0 * est.std_error);
}

TEST_CASE("sample_pair estimates a werner correlator") {
    const ShotEstimate est =
        sample_pair(werner(0.6), BlochVector::z_axis(), BlochVector::z_axis(), 1000000, 11);
    CHECK(std::abs(est.mean - 0.6) < 5.0 * est.std_error);
    CHECK(est.std_error == doctest::Approx(std::sqrt(1.0 - 0.36) / 1000.0).epsilon(0.05));
}

TEST_CASE("sample_pair is deterministic per seed") {
    const ShotEstimate a =
        sample_pair(werner(0.4), BlochVector::x_axis(), BlochVector::z_axis(), 5000, 42);
    const ShotEstimate b =
        sample_pair(werner(0.4), BlochVector::x_axis(), BlochVector::z_axis(), 5000, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("estimate_scores matches the exact theorem value") {
    const SourceEnsemble bells = {bell_phi_plus(), bell_phi_plus()};
    const NetworkStrategy strategy = theorem1_star_strategy(bells);
    const EstimatedScores est = estimate_scores(Topology::star(2), bells, strategy, 1000000, 3);
    CHECK(std::abs(est.score.mean - std::sqrt(2.0)) < 5.0 * est.score.std_error);
    CHECK(est.score.std_error > 0.0);
    CHECK(est.table.values().size() == 8);
    CHECK(est.std_errors.size() == 8);

    CHECK_THROWS_AS(estimate_scores(Topology::star(2), bells, strategy, 0, 3),
                    std::invalid_argument);
}

TEST_CASE("estimate_scores respects the n-local bound for classical sources") {
    Rng rng(61);
    for (int trial = 0; trial < 5; ++trial) {
        const SourceEnsemble ensemble = {testutil::random_classical_state(rng),
                                         testutil::random_classical_state(rng)};
        const NetworkStrategy strategy = testutil::random_strategy(Topology::star(2), rng);
        const EstimatedScores est =
            estimate_scores(Topology::star(2), ensemble, strategy, 10000,
                            static_cast<std::uint64_t>(trial));
        CHECK(est.score.mean <= 1.0 + 5.0 * est.score.std_error);
    }
}

TEST_CASE("estimate_scores is deterministic per seed") {
    const SourceEnsemble ensemble = {werner(0.8), werner(0.8)};
    const NetworkStrategy strategy = theorem1_star_strategy(ensemble);
    const EstimatedScores a = estimate_scores(Topology::star(2), ensemble, strategy, 20000, 5);
    const EstimatedScores b = estimate_scores(Topology::star(2), ensemble, strategy, 20000, 5);
    CHECK(a.score.mean == b.score.mean);
    CHECK(a.score.std_error == b.score.std_error);
    for (std::size_t i = 0; i < a.table.values().size(); ++i)
        CHECK(a.table.values()[i] == b.table.values()[i]);
}

TEST_CASE("estimator error shrinks like shots^(-1/2)") {
    const double exact = 0.6;
    std::vector<double> log_shots, log_err;
    for (long shots : {1000L, 10000L, 100000L, 1000000L}) {
        double mean_abs_err = 0.0;
        const int reps = 8;
        for (int rep = 0; rep < reps; ++rep) {
            const ShotEstimate est =
                sample_pair(werner(0.6), BlochVector::z_axis(), BlochVector::z_axis(), shots,
                            static_cast<std::uint64_t>(100 + rep));
            mean_abs_err += std::abs(est.mean - exact);
        }
        mean_abs_err /= reps;
        log_shots.push_back(std::log10(static_cast<double>(shots)));
        log_err.push_back(std::log10(mean_abs_err));
    }
    // least-squares slope of log err vs log shots
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(log_shots.size());
    for (std::size_t i = 0; i < log_shots.size(); ++i) {
        sx += log_shots[i];
        sy += log_err[i];
        sxx += log_shots[i] * log_shots[i];
        sxy += log_shots[i] * log_err[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(slope < -0.25);
    CHECK(slope > -0.75);
}

TEST_CASE("chain sampling covers the shared central input") {
    const SourceEnsemble ensemble = {bell_phi_plus(), classical_gamma(), bell_phi_plus()};
    const NetworkStrategy strategy = theorem2_chain_strategy(ensemble);
    const EstimatedScores est = estimate_scores(Topology::chain(3), ensemble, strategy, 200000, 9);
    CHECK(std::abs(est.score.mean - std::sqrt(2.0)) < 5.0 * est.score.std_error);
    CHECK(est.table.values().size() == 8);
}
