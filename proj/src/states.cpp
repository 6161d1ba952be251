#include "nlocal/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nlocal/rng.hpp"

namespace nlocal {

TwoQubitState TwoQubitState::from_matrix(const Mat4& rho) {
    if (!rho.is_hermitian(1e-10))
        throw std::invalid_argument("TwoQubitState: matrix is not Hermitian");
    const cplx tr = rho.trace();
    if (std::abs(tr - cplx(1.0, 0.0)) > 1e-10)
        throw std::invalid_argument("TwoQubitState: trace is not 1 (got " +
                                    std::to_string(tr.real()) + ")");
    const HermitianEig4 eig = hermitian_eig(rho);
    if (eig.values[0] < -1e-10)
        throw std::invalid_argument("TwoQubitState: not positive semidefinite, eigenvalue " +
                                    std::to_string(eig.values[0]));
    return TwoQubitState(rho);
}

RealMatrix3 correlation_matrix(const TwoQubitState& rho) {
    const Mat2 paulis[3] = {sigma_x(), sigma_y(), sigma_z()};
    RealMatrix3 t;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            t(k, l) = expectation(kron(paulis[k], paulis[l]), rho.matrix());
    return t;
}

SingularTriple singular_triple(const TwoQubitState& rho) {
    return signed_svd3(correlation_matrix(rho)).tau;
}

CanonicalForm canonical_form(const TwoQubitState& rho) {
    const SignedSvd3 svd = signed_svd3(correlation_matrix(rho));
    const Mat2 va = so3_to_su2(svd.ra);
    const Mat2 vb = so3_to_su2(svd.rb);
    const Mat4 u = kron(va, vb);
    const Mat4 rotated = u * rho.matrix() * u.adjoint();
    return CanonicalForm{TwoQubitState::from_matrix(rotated), va, vb};
}

TwoQubitState bell_diagonal(double tx, double ty, double tz) {
    // Bell-basis eigenvalues; all four sign patterns have sign product -1.
    const double eigs[4] = {
        0.25 * (1.0 + tx - ty + tz),   // |phi+>
        0.25 * (1.0 - tx + ty + tz),   // |phi->
        0.25 * (1.0 + tx + ty - tz),   // |psi+>
        0.25 * (1.0 - tx - ty - tz),   // |psi->
    };
    for (double lambda : eigs)
        if (lambda < -1e-12)
            throw std::invalid_argument("bell_diagonal: unphysical triple, eigenvalue " +
                                        std::to_string(lambda));

    Mat4 rho;
    const Mat2 id = Mat2::identity();
    rho = 0.25 * (kron(id, id) + tx * kron(sigma_x(), sigma_x()) +
                  ty * kron(sigma_y(), sigma_y()) + tz * kron(sigma_z(), sigma_z()));
    return TwoQubitState::from_matrix(rho);
}

TwoQubitState bell_phi_plus() { return bell_diagonal(1.0, -1.0, 1.0); }

TwoQubitState werner(double v) {
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("werner: v outside [0, 1]");
    return bell_diagonal(v, -v, v);
}

TwoQubitState colored(double t1) {
    if (t1 < 0.0 || t1 > 1.0) throw std::invalid_argument("colored: t1 outside [0, 1]");
    return bell_diagonal(t1, -t1, 1.0);
}

TwoQubitState classical_gamma() { return bell_diagonal(0.0, 0.0, 1.0); }

TwoQubitState random_state(std::uint64_t seed) {
    Rng rng(seed);
    Mat4 g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = cplx(rng.gaussian(), rng.gaussian());
    Mat4 rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho = (1.0 / tr) * rho;
    // symmetrize away the last ulps so validation tolerances never bind
    for (int r = 0; r < 4; ++r)
        for (int c = r; c < 4; ++c) {
            const cplx avg = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
            rho(r, c) = avg;
            rho(c, r) = std::conj(avg);
        }
    return TwoQubitState::from_matrix(rho);
}

}  // namespace nlocal
