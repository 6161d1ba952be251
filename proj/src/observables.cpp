#include "nlocal/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace nlocal {

namespace {

BlochVector rotate(const Rotation3& r, const BlochVector& v) {
    const auto w = r.apply({v.x, v.y, v.z});
    return BlochVector{w[0], w[1], w[2]};
}

DichotomicObservable rotate(const Rotation3& r, const DichotomicObservable& o) {
    return DichotomicObservable{rotate(r, o.on_input_0), rotate(r, o.on_input_1)};
}

/// Weighted x-z vector (w0 z + (-1)^x w1 x)/norm with the shared degenerate
/// fallback to z.
MubObservable weighted_xz(double w0, double w1, int x) {
    const double norm = std::hypot(w0, w1);
    if (norm == 0.0) return MubObservable{BlochVector::z_axis(), true};
    const double sx = (x ? -1.0 : 1.0) * w1 / norm;
    return MubObservable{BlochVector::unit(sx, 0.0, w0 / norm), false};
}

}  // namespace

BlochVector BlochVector::unit(double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("BlochVector: vector is not unit norm");
    return BlochVector{x, y, z};
}

BlochVector BlochVector::normalized(double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm == 0.0) throw std::invalid_argument("BlochVector: cannot normalize zero vector");
    return BlochVector{x / norm, y / norm, z / norm};
}

Mat2 observable(const BlochVector& a) {
    const double norm = std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("observable: Bloch vector is not unit norm");
    Mat2 m;
    m(0, 0) = cplx(a.z, 0.0);
    m(0, 1) = cplx(a.x, -a.y);
    m(1, 0) = cplx(a.x, a.y);
    m(1, 1) = cplx(-a.z, 0.0);
    return m;
}

void NetworkStrategy::validate() const {
    const std::size_t n = static_cast<std::size_t>(topology.n);
    if (a_side.size() != n || b_side.size() != n)
        throw std::invalid_argument("NetworkStrategy: slot count does not match topology");
}

ChshPair chsh_optimal_pair(const SingularTriple& tau, ChshVariant variant) {
    const double norm = std::hypot(tau.tau0, tau.tau1);
    if (norm == 0.0) {
        const DichotomicObservable zz{BlochVector::z_axis(), BlochVector::z_axis()};
        return ChshPair{zz, zz, true};
    }
    const DichotomicObservable mub{BlochVector::z_axis(), BlochVector::x_axis()};
    const DichotomicObservable weighted{
        BlochVector::unit(tau.tau1 / norm, 0.0, tau.tau0 / norm),
        BlochVector::unit(-tau.tau1 / norm, 0.0, tau.tau0 / norm)};
    if (variant == ChshVariant::mub_on_A) return ChshPair{mub, weighted, false};
    return ChshPair{weighted, mub, false};
}

MubObservable mub_star_external(const SourceEnsemble& ensemble, int x) {
    if (ensemble.empty()) throw std::invalid_argument("mub_star_external: empty ensemble");
    const double inv_n = 1.0 / static_cast<double>(ensemble.size());
    double w0 = 1.0, w1 = 1.0;
    for (const TwoQubitState& rho : ensemble) {
        const SingularTriple tau = singular_triple(rho);
        w0 *= std::pow(tau.tau0, inv_n);
        w1 *= std::pow(tau.tau1, inv_n);
    }
    return weighted_xz(w0, w1, x);
}

std::vector<BlochVector> mub_central_star(int n, int z) {
    if (n < 1) throw std::invalid_argument("mub_central_star: n must be >= 1");
    return std::vector<BlochVector>(static_cast<std::size_t>(n),
                                    z ? BlochVector::x_axis() : BlochVector::z_axis());
}

MubObservable mub_chain_external(const SourceEnsemble& ensemble, int x) {
    if (ensemble.empty()) throw std::invalid_argument("mub_chain_external: empty ensemble");
    double w0 = 1.0, w1 = 1.0;
    for (const TwoQubitState& rho : ensemble) {
        const SingularTriple tau = singular_triple(rho);
        w0 *= std::sqrt(tau.tau0);
        w1 *= std::sqrt(tau.tau1);
    }
    return weighted_xz(w0, w1, x);
}

std::pair<BlochVector, BlochVector> mub_chain_central(int z) {
    const BlochVector v = z ? BlochVector::x_axis() : BlochVector::z_axis();
    return {v, v};
}

NetworkStrategy theorem1_star_strategy(const SourceEnsemble& ensemble) {
    NetworkStrategy s;
    s.topology = Topology::star(static_cast<int>(ensemble.size()));
    for (const TwoQubitState& rho : ensemble) {
        const SignedSvd3 svd = signed_svd3(correlation_matrix(rho));
        const ChshPair pair = chsh_optimal_pair(svd.tau, ChshVariant::mub_on_A);
        s.a_side.push_back(rotate(svd.ra.transposed(), pair.alice));
        s.b_side.push_back(rotate(svd.rb.transposed(), pair.bob));
    }
    return s;
}

NetworkStrategy theorem2_chain_strategy(const SourceEnsemble& ensemble) {
    const int n = static_cast<int>(ensemble.size());
    NetworkStrategy s;
    s.topology = Topology::chain(n);
    for (int i = 0; i < n; ++i) {
        const SignedSvd3 svd = signed_svd3(correlation_matrix(ensemble[i]));
        const DichotomicObservable zz{BlochVector::z_axis(), BlochVector::z_axis()};
        if (i == 0) {
            const ChshPair pair = chsh_optimal_pair(svd.tau, ChshVariant::mub_on_A);
            s.a_side.push_back(rotate(svd.ra.transposed(), pair.alice));
            s.b_side.push_back(rotate(svd.rb.transposed(), pair.bob));
        } else if (i == n - 1) {
            // swapped family: the external party B^n holds the MUB pair
            const ChshPair pair = chsh_optimal_pair(svd.tau, ChshVariant::mub_on_B);
            s.a_side.push_back(rotate(svd.ra.transposed(), pair.alice));
            s.b_side.push_back(rotate(svd.rb.transposed(), pair.bob));
        } else {
            s.a_side.push_back(rotate(svd.ra.transposed(), zz));
            s.b_side.push_back(rotate(svd.rb.transposed(), zz));
        }
    }
    return s;
}

NetworkStrategy mub_star_strategy(const SourceEnsemble& ensemble) {
    const int n = static_cast<int>(ensemble.size());
    NetworkStrategy s;
    s.topology = Topology::star(n);
    const DichotomicObservable external{mub_star_external(ensemble, 0).vec,
                                        mub_star_external(ensemble, 1).vec};
    const DichotomicObservable central{BlochVector::z_axis(), BlochVector::x_axis()};
    for (const TwoQubitState& rho : ensemble) {
        const SignedSvd3 svd = signed_svd3(correlation_matrix(rho));
        s.a_side.push_back(rotate(svd.ra.transposed(), external));
        s.b_side.push_back(rotate(svd.rb.transposed(), central));
    }
    return s;
}

NetworkStrategy mub_chain_strategy(const SourceEnsemble& ensemble) {
    const int n = static_cast<int>(ensemble.size());
    NetworkStrategy s;
    s.topology = Topology::chain(n);
    const DichotomicObservable external{mub_chain_external(ensemble, 0).vec,
                                        mub_chain_external(ensemble, 1).vec};
    const DichotomicObservable central{BlochVector::z_axis(), BlochVector::x_axis()};
    for (int i = 0; i < n; ++i) {
        const SignedSvd3 svd = signed_svd3(correlation_matrix(ensemble[i]));
        s.a_side.push_back(rotate(svd.ra.transposed(), i == 0 ? external : central));
        s.b_side.push_back(rotate(svd.rb.transposed(), i == n - 1 ? external : central));
    }
    return s;
}

}  // namespace nlocal
