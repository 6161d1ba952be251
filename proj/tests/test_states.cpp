#include <doctest.h>

#include <cmath>

#include "nlocal/closedform.hpp"
#include "nlocal/states.hpp"
#include "test_helpers.hpp"

using namespace nlocal;

namespace {

Mat4 phi_plus_matrix() {
    Mat4 m;
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
}

}  // namespace

TEST_CASE("correlation matrix of the named states") {
    CHECK(correlation_matrix(bell_phi_plus()).max_abs_diff(RealMatrix3::diag(1, -1, 1)) < 1e-14);
    CHECK(correlation_matrix(classical_gamma()).max_abs_diff(RealMatrix3::diag(0, 0, 1)) < 1e-14);

    Mat4 mixed;
    for (int i = 0; i < 4; ++i) mixed(i, i) = 0.25;
    CHECK(correlation_matrix(TwoQubitState::from_matrix(mixed)).max_abs_diff(RealMatrix3{}) <
          1e-14);
}

TEST_CASE("singular triples of the named states") {
    const SingularTriple bell = singular_triple(bell_phi_plus());
    CHECK(bell.tau0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bell.tau1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bell.tau2 == doctest::Approx(-1.0).epsilon(1e-12));

    const SingularTriple gamma = singular_triple(classical_gamma());
    CHECK(gamma.tau0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma.tau1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(gamma.tau2 == doctest::Approx(0.0).epsilon(1e-12));

    for (double v : {0.3, 0.7, 1.0}) {
        const SingularTriple w = singular_triple(werner(v));
        CHECK(w.tau0 == doctest::Approx(v).epsilon(1e-12));
        CHECK(w.tau1 == doctest::Approx(v).epsilon(1e-12));
        CHECK(w.tau2 == doctest::Approx(-v).epsilon(1e-12));
    }
}

TEST_CASE("canonical form leaves Bell-diagonal states alone") {
    const CanonicalForm cf = canonical_form(bell_diagonal(0.5, -0.3, 0.8));
    CHECK(cf.va.max_abs_diff(Mat2::identity()) < 1e-12);
    CHECK(cf.vb.max_abs_diff(Mat2::identity()) < 1e-12);

    const CanonicalForm gamma = canonical_form(classical_gamma());
    CHECK(gamma.state.matrix().max_abs_diff(classical_gamma().matrix()) < 1e-12);
}

TEST_CASE("canonical form diagonalizes locally rotated Bell states") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat2 u = testutil::random_unitary(rng);
        const Mat2 v = testutil::random_unitary(rng);
        const Mat4 uv = kron(u, v);
        const TwoQubitState rotated =
            TwoQubitState::from_matrix(uv * bell_phi_plus().matrix() * uv.adjoint());

        const CanonicalForm cf = canonical_form(rotated);
        const RealMatrix3 t = correlation_matrix(cf.state);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (r != c) CHECK(std::abs(t(r, c)) < 1e-9);
        CHECK(t(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(t(1, 1) == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(t(2, 2) == doctest::Approx(1.0).epsilon(1e-9));

        // the reported unitaries must reproduce the canonical state
        const Mat4 w = kron(cf.va, cf.vb);
        CHECK((w * rotated.matrix() * w.adjoint()).max_abs_diff(cf.state.matrix()) < 1e-9);
    }
}

TEST_CASE("bell_diagonal constructors") {
    CHECK(bell_diagonal(1, -1, 1).matrix().max_abs_diff(phi_plus_matrix()) < 1e-14);

    Mat4 mixed;
    for (int i = 0; i < 4; ++i) mixed(i, i) = 0.25;
    CHECK(bell_diagonal(0, 0, 0).matrix().max_abs_diff(mixed) < 1e-14);

    Mat4 gamma;
    gamma(0, 0) = gamma(3, 3) = 0.5;
    CHECK(bell_diagonal(0, 0, 1).matrix().max_abs_diff(gamma) < 1e-14);

    CHECK_THROWS_AS(bell_diagonal(1, 1, 1), std::invalid_argument);
}

TEST_CASE("noise model constructors") {
    CHECK(werner(1.0).matrix().max_abs_diff(phi_plus_matrix()) < 1e-14);
    CHECK_THROWS_AS(werner(1.5), std::invalid_argument);
    CHECK_THROWS_AS(colored(-0.1), std::invalid_argument);

    const SingularTriple g = singular_triple(colored(0.0));
    CHECK(g.tau0 == doctest::Approx(1.0));
    CHECK(g.tau1 == doctest::Approx(0.0));

    const SingularTriple b = singular_triple(colored(1.0));
    CHECK(b.tau0 == doctest::Approx(1.0));
    CHECK(b.tau1 == doctest::Approx(1.0));
    CHECK(b.tau2 == doctest::Approx(-1.0));
    const HermitianEig4 eig = hermitian_eig(colored(1.0).matrix());
    CHECK(eig.values[0] >= -1e-12);
}

TEST_CASE("random states are valid and distinct") {
    const TwoQubitState a = random_state(1);
    const TwoQubitState b = random_state(2);
    CHECK(std::abs(a.matrix().trace() - cplx(1.0, 0.0)) < 1e-12);
    CHECK(a.matrix().max_abs_diff(b.matrix()) > 0.0);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const HermitianEig4 eig = hermitian_eig(random_state(seed).matrix());
        CHECK(eig.values[0] >= -1e-12);
    }

    // deterministic per seed
    CHECK(random_state(7).matrix().max_abs_diff(random_state(7).matrix()) == 0.0);
}

TEST_CASE("state validation rejects bad matrices") {
    Mat4 not_hermitian;
    not_hermitian(0, 1) = 1.0;
    not_hermitian(0, 0) = 1.0;
    CHECK_THROWS_AS(TwoQubitState::from_matrix(not_hermitian), std::invalid_argument);

    Mat4 wrong_trace;
    wrong_trace(0, 0) = 2.0;
    CHECK_THROWS_AS(TwoQubitState::from_matrix(wrong_trace), std::invalid_argument);

    Mat4 negative;
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(TwoQubitState::from_matrix(negative), std::invalid_argument);
}

TEST_CASE("triple invariants over random states") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const SingularTriple tau = singular_triple(random_state(seed));
        CHECK(tau.tau0 <= 1.0 + 1e-10);
        CHECK(tau.tau0 >= tau.tau1);
        CHECK(tau.tau1 >= std::abs(tau.tau2));
        CHECK(tau.tau2 >= -1.0 - 1e-10);
        CHECK(tau.tau0 * tau.tau0 + tau.tau1 * tau.tau1 + tau.tau2 * tau.tau2 <= 3.0 + 1e-10);
    }
}

TEST_CASE("canonical form preserves the singular triple") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const TwoQubitState rho = random_state(seed);
        const SingularTriple before = singular_triple(rho);
        const SingularTriple after = singular_triple(canonical_form(rho).state);
        CHECK(std::abs(before.tau0 - after.tau0) < 1e-10);
        CHECK(std::abs(before.tau1 - after.tau1) < 1e-10);
        CHECK(std::abs(before.tau2 - after.tau2) < 1e-10);
    }
}

TEST_CASE("bell_diagonal round-trips its correlation target") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        // sample a PSD triple by rejection
        const double tx = rng.uniform(-1, 1), ty = rng.uniform(-1, 1), tz = rng.uniform(-1, 1);
        try {
            const TwoQubitState rho = bell_diagonal(tx, ty, tz);
            const RealMatrix3 t = correlation_matrix(rho);
            CHECK(std::abs(t(0, 0) - tx) < 1e-12);
            CHECK(std::abs(t(1, 1) - ty) < 1e-12);
            CHECK(std::abs(t(2, 2) - tz) < 1e-12);
        } catch (const std::invalid_argument&) {
            // unphysical draw, fine
        }
    }
}

TEST_CASE("nonlocality threshold matches tau0^2 + tau1^2 > 1") {
    // boundary: werner at 1/sqrt(2) has tau0^2 + tau1^2 = 1 exactly
    CHECK(max_chsh(singular_triple(werner(1.0 / std::sqrt(2.0)))) ==
          doctest::Approx(2.0).epsilon(1e-12));
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const SingularTriple tau = singular_triple(random_state(seed));
        const bool violates = max_chsh(tau) > 2.0;
        const bool threshold = tau.tau0 * tau.tau0 + tau.tau1 * tau.tau1 > 1.0;
        CHECK(violates == threshold);
    }
    CHECK(max_chsh(singular_triple(classical_gamma())) == doctest::Approx(2.0));
    CHECK(max_chsh(singular_triple(bell_phi_plus())) > 2.0);
}
