#pragma once

#include <utility>
#include <vector>

#include "nlocal/observables.hpp"
#include "nlocal/states.hpp"
#include "nlocal/topology.hpp"

namespace nlocal {

/// Maximal CHSH score 2 sqrt(tau0^2 + tau1^2).
double max_chsh(const SingularTriple& tau);

/// Geometric-mean bound (1/2) prod_i max_chsh(tau_i)^{1/n}.
double star_upper_bound(const SourceEnsemble& ensemble);

struct ClosedFormMax {
    double value = 0.0;
    NetworkStrategy witness;
};

/// Maximal n-local star score over local qubit observables; equals the
/// geometric-mean bound, witnessed by the per-source optimal CHSH strategy.
ClosedFormMax max_star_local(const SourceEnsemble& ensemble);

/// Maximal star score when the central party measures the mutually unbiased
/// products: sqrt(prod tau0^{2/n} + prod tau1^{2/n}).
double max_star_mub(const SourceEnsemble& ensemble);

struct Lemma1Flags {
    bool condition1 = false;  // z-independence per source
    bool condition2 = false;  // source-independence per z
    bool condition3 = false;  // some source has both correlators zero
    bool any() const { return condition1 || condition2 || condition3; }
};

/// Equality conditions for the geometric-mean bound, evaluated on the
/// per-source CHSH-combo expectations <O_z>_i (one pair per source).
Lemma1Flags lemma1_conditions(const std::vector<std::pair<double, double>>& correlators);

/// tau_{i,0} = tau_{i,1} for all i, identical (tau0, tau1) across sources, or
/// some source fully degenerate.
bool corollary1_equality(const SourceEnsemble& ensemble);

struct Corollary2Values {
    double s_star = 0.0;      // S*_{(n-k)-Star}(rest)^{(n-k)/n}
    double s_mub_bound = 1.0; // MUB-restricted score cannot exceed 1
};

/// First k sources must be classical (triple (1, 0, 0) after
/// canonicalization).
Corollary2Values corollary2_values(int k, const SourceEnsemble& ensemble);

/// Interior sources have tau0 = tau1 and the end pair satisfies 2-star MUB
/// equality.
bool corollary3_equality(const SourceEnsemble& ensemble);

/// S*_{2-Star}(rho_1 x rho_n) prod_{i=2}^{n-1} sqrt(tau_{i,0}); n >= 2.
double chain_upper_bound(const SourceEnsemble& ensemble);

/// Maximal n-local chain score; equals the bound, witnessed by sigma_z x
/// sigma_z interior observables and optimal CHSH ends.
ClosedFormMax max_chain_local(const SourceEnsemble& ensemble);

/// sqrt(prod tau0 + prod tau1) under mutually unbiased central observables.
double max_chain_mub(const SourceEnsemble& ensemble);

/// Everything the CLI reports for one ensemble/topology.
struct ScoreReport {
    double s_local_max = 0.0;
    double s_mub_max = 0.0;
    double upper_bound = 0.0;
    bool corollary_equality = false;  // Corollary 1 (star) or 3 (chain)
    Lemma1Flags lemma1;               // star only; evaluated on the witness
    NetworkStrategy witness_local;
    NetworkStrategy witness_mub;
};

ScoreReport score_report(const Topology& topology, const SourceEnsemble& ensemble);

}  // namespace nlocal
