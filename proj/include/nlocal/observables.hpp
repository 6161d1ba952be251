#pragma once

#include <vector>

#include "nlocal/linalg.hpp"
#include "nlocal/states.hpp"
#include "nlocal/topology.hpp"

namespace nlocal {

/// Unit vector on the Bloch sphere.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    /// Validates unit norm within 1e-12.
    static BlochVector unit(double x, double y, double z);
    /// Normalizes a nonzero vector.
    static BlochVector normalized(double x, double y, double z);

    static BlochVector z_axis() { return BlochVector{0.0, 0.0, 1.0}; }
    static BlochVector x_axis() { return BlochVector{1.0, 0.0, 0.0}; }
};

/// a.sigma: Hermitian, traceless, eigenvalues +-1.
Mat2 observable(const BlochVector& a);

/// Pair of +-1 observables selected by a binary input.
struct DichotomicObservable {
    BlochVector on_input_0;
    BlochVector on_input_1;

    const BlochVector& select(int bit) const { return bit ? on_input_1 : on_input_0; }
};

/// One dichotomic observable per qubit slot; a_side[i]/b_side[i] measure the
/// A/B qubit of source i. Input wiring is fixed by the topology: star drives
/// a_side[i] by x_i and every b_side by the central z; chain drives a_side[0]
/// by x, b_side[n-1] by y, and all interior slots by the shared central z.
struct NetworkStrategy {
    Topology topology;
    std::vector<DichotomicObservable> a_side;
    std::vector<DichotomicObservable> b_side;

    void validate() const;
};

enum class ChshVariant { mub_on_A, mub_on_B };

struct ChshPair {
    DichotomicObservable alice;
    DichotomicObservable bob;
    bool degenerate = false;  // tau0 = tau1 = 0, vectors collapsed to z
};

/// Optimal CHSH observables for a canonical state with the given triple.
/// mub_on_A: A_x in {sigma_z, sigma_x}, B_y = (t0 sz + t1 (-1)^y sx)/norm.
/// mub_on_B: the swapped family.
ChshPair chsh_optimal_pair(const SingularTriple& tau, ChshVariant variant);

struct MubObservable {
    BlochVector vec;
    bool degenerate = false;
};

/// External star observable under the MUB central restriction:
/// normalize((prod tau0)^(1/n) z + (-1)^x (prod tau1)^(1/n) x).
MubObservable mub_star_external(const SourceEnsemble& ensemble, int x);

/// Central star slots: all z for input 0, all x for input 1.
std::vector<BlochVector> mub_central_star(int n, int z);

/// External chain observable: normalize(prod sqrt(tau0) z + (-1)^x prod sqrt(tau1) x).
MubObservable mub_chain_external(const SourceEnsemble& ensemble, int x);

/// Central chain slots for one party: (z, z) or (x, x).
std::pair<BlochVector, BlochVector> mub_chain_central(int z);

/// Per-source optimal CHSH strategy (mub_on_A variant) rotated into the frame
/// of each source. Evaluates exactly to the maximal star score.
NetworkStrategy theorem1_star_strategy(const SourceEnsemble& ensemble);

/// sigma_z x sigma_z on interior sources, CHSH-style end observables rotated
/// into each end source's frame. Evaluates exactly to the maximal chain score.
NetworkStrategy theorem2_chain_strategy(const SourceEnsemble& ensemble);

/// Witness strategies for the MUB-restricted maxima (central slots are the
/// mutually unbiased pair in each source's canonical frame).
NetworkStrategy mub_star_strategy(const SourceEnsemble& ensemble);
NetworkStrategy mub_chain_strategy(const SourceEnsemble& ensemble);

}  // namespace nlocal
