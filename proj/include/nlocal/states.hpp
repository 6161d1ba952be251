#pragma once

#include <cstdint>
#include <vector>

#include "nlocal/linalg.hpp"

namespace nlocal {

/// Two-qubit density matrix in the |00>,|01>,|10>,|11> basis.
/// Construction validates Hermiticity, unit trace and positivity.
class TwoQubitState {
  public:
    static TwoQubitState from_matrix(const Mat4& rho);

    const Mat4& matrix() const { return rho_; }

  private:
    explicit TwoQubitState(const Mat4& rho) : rho_(rho) {}
    Mat4 rho_;
};

using SourceEnsemble = std::vector<TwoQubitState>;

/// Pauli-Pauli correlation matrix T(k,l) = <sigma_k x sigma_l>.
RealMatrix3 correlation_matrix(const TwoQubitState& rho);

SingularTriple singular_triple(const TwoQubitState& rho);

struct CanonicalForm {
    TwoQubitState state;  // correlation matrix diag(tau1, tau2, tau0)
    Mat2 va;
    Mat2 vb;
};

/// Local-unitary form with diagonal correlation matrix:
/// state = (va x vb) rho (va x vb)^dag.
CanonicalForm canonical_form(const TwoQubitState& rho);

/// Bell-diagonal state with correlation matrix diag(tx, ty, tz).
/// Throws (reporting the offending eigenvalue) if the triple is unphysical.
TwoQubitState bell_diagonal(double tx, double ty, double tz);

TwoQubitState bell_phi_plus();          // correlation diag(1, -1, 1)
TwoQubitState werner(double v);         // v |phi+><phi+| + (1-v) I/4
TwoQubitState colored(double t1);       // correlation diag(t1, -t1, 1)
TwoQubitState classical_gamma();        // correlation diag(0, 0, 1)

/// Hilbert-Schmidt distributed mixed state, deterministic per seed.
TwoQubitState random_state(std::uint64_t seed);

}  // namespace nlocal
