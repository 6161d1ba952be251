#include "nlocal/closedform.hpp"

#include <cmath>
#include <stdexcept>

#include "nlocal/networks.hpp"

namespace nlocal {

namespace {

constexpr double kFlagTol = 1e-10;

std::vector<SingularTriple> triples_of(const SourceEnsemble& ensemble) {
    std::vector<SingularTriple> taus;
    taus.reserve(ensemble.size());
    for (const TwoQubitState& rho : ensemble) taus.push_back(singular_triple(rho));
    return taus;
}

}  // namespace

double max_chsh(const SingularTriple& tau) {
    return 2.0 * std::hypot(tau.tau0, tau.tau1);
}

double star_upper_bound(const SourceEnsemble& ensemble) {
    if (ensemble.empty()) throw std::invalid_argument("star_upper_bound: empty ensemble");
    const double inv_n = 1.0 / static_cast<double>(ensemble.size());
    double prod = 1.0;
    for (const TwoQubitState& rho : ensemble) prod *= std::pow(max_chsh(singular_triple(rho)), inv_n);
    return 0.5 * prod;
}

ClosedFormMax max_star_local(const SourceEnsemble& ensemble) {
    return ClosedFormMax{star_upper_bound(ensemble), theorem1_star_strategy(ensemble)};
}

double max_star_mub(const SourceEnsemble& ensemble) {
    if (ensemble.empty()) throw std::invalid_argument("max_star_mub: empty ensemble");
    const double exponent = 2.0 / static_cast<double>(ensemble.size());
    double p0 = 1.0, p1 = 1.0;
    for (const TwoQubitState& rho : ensemble) {
        const SingularTriple tau = singular_triple(rho);
        p0 *= std::pow(tau.tau0, exponent);
        p1 *= std::pow(tau.tau1, exponent);
    }
    return std::sqrt(p0 + p1);
}

Lemma1Flags lemma1_conditions(const std::vector<std::pair<double, double>>& correlators) {
    if (correlators.empty()) throw std::invalid_argument("lemma1_conditions: no correlators");
    Lemma1Flags flags;

    flags.condition1 = true;
    for (const auto& [c0, c1] : correlators)
        if (std::abs(c0 - c1) > kFlagTol) flags.condition1 = false;

    flags.condition2 = true;
    for (const auto& [c0, c1] : correlators) {
        if (std::abs(c0 - correlators.front().first) > kFlagTol) flags.condition2 = false;
        if (std::abs(c1 - correlators.front().second) > kFlagTol) flags.condition2 = false;
    }

    for (const auto& [c0, c1] : correlators)
        if (std::abs(c0) <= kFlagTol && std::abs(c1) <= kFlagTol) flags.condition3 = true;

    return flags;
}

bool corollary1_equality(const SourceEnsemble& ensemble) {
    const auto taus = triples_of(ensemble);

    bool cond1 = true;
    for (const SingularTriple& t : taus)
        if (std::abs(t.tau0 - t.tau1) > kFlagTol) cond1 = false;
    if (cond1) return true;

    bool cond2 = true;
    for (const SingularTriple& t : taus) {
        if (std::abs(t.tau0 - taus.front().tau0) > kFlagTol) cond2 = false;
        if (std::abs(t.tau1 - taus.front().tau1) > kFlagTol) cond2 = false;
    }
    if (cond2) return true;

    for (const SingularTriple& t : taus)
        if (t.tau0 <= kFlagTol && t.tau1 <= kFlagTol) return true;
    return false;
}

Corollary2Values corollary2_values(int k, const SourceEnsemble& ensemble) {
    const int n = static_cast<int>(ensemble.size());
    if (k < 1 || k > n) throw std::invalid_argument("corollary2_values: k outside [1, n]");
    for (int i = 0; i < k; ++i) {
        const SingularTriple tau = singular_triple(ensemble[static_cast<std::size_t>(i)]);
        if (std::abs(tau.tau0 - 1.0) > kFlagTol || tau.tau1 > kFlagTol)
            throw std::invalid_argument("corollary2_values: source " + std::to_string(i) +
                                        " is not classical (triple must be (1, 0, 0))");
    }
    Corollary2Values out;
    if (k == n) {
        out.s_star = 1.0;
        return out;
    }
    const SourceEnsemble rest(ensemble.begin() + k, ensemble.end());
    const double exponent = static_cast<double>(n - k) / static_cast<double>(n);
    out.s_star = std::pow(star_upper_bound(rest), exponent);
    return out;
}

bool corollary3_equality(const SourceEnsemble& ensemble) {
    const int n = static_cast<int>(ensemble.size());
    if (n < 2) throw std::invalid_argument("corollary3_equality: chain needs n >= 2");
    const auto taus = triples_of(ensemble);
    for (int i = 1; i + 1 < n; ++i)
        if (std::abs(taus[static_cast<std::size_t>(i)].tau0 -
                     taus[static_cast<std::size_t>(i)].tau1) > kFlagTol)
            return false;
    const SourceEnsemble ends = {ensemble.front(), ensemble.back()};
    return std::abs(star_upper_bound(ends) - max_star_mub(ends)) <= kFlagTol;
}

double chain_upper_bound(const SourceEnsemble& ensemble) {
    const int n = static_cast<int>(ensemble.size());
    if (n < 2) throw std::invalid_argument("chain_upper_bound: chain needs n >= 2");
    const SourceEnsemble ends = {ensemble.front(), ensemble.back()};
    double bound = star_upper_bound(ends);
    for (int i = 1; i + 1 < n; ++i)
        bound *= std::sqrt(singular_triple(ensemble[static_cast<std::size_t>(i)]).tau0);
    return bound;
}

ClosedFormMax max_chain_local(const SourceEnsemble& ensemble) {
    return ClosedFormMax{chain_upper_bound(ensemble), theorem2_chain_strategy(ensemble)};
}

double max_chain_mub(const SourceEnsemble& ensemble) {
    if (ensemble.size() < 2) throw std::invalid_argument("max_chain_mub: chain needs n >= 2");
    double p0 = 1.0, p1 = 1.0;
    for (const TwoQubitState& rho : ensemble) {
        const SingularTriple tau = singular_triple(rho);
        p0 *= tau.tau0;
        p1 *= tau.tau1;
    }
    return std::sqrt(p0 + p1);
}

ScoreReport score_report(const Topology& topology, const SourceEnsemble& ensemble) {
    if (ensemble.size() != static_cast<std::size_t>(topology.n))
        throw std::invalid_argument("score_report: ensemble size does not match topology");
    ScoreReport report;
    if (topology.kind == TopologyKind::Star) {
        const ClosedFormMax local = max_star_local(ensemble);
        report.s_local_max = local.value;
        report.s_mub_max = max_star_mub(ensemble);
        report.upper_bound = star_upper_bound(ensemble);
        report.corollary_equality = corollary1_equality(ensemble);
        report.witness_local = local.witness;
        report.witness_mub = mub_star_strategy(ensemble);

        // per-source CHSH-combo expectations of the witness strategy
        std::vector<std::pair<double, double>> correlators;
        for (std::size_t i = 0; i < ensemble.size(); ++i) {
            double combo[2];
            for (int z = 0; z < 2; ++z) {
                const BlochVector& bz = report.witness_local.b_side[i].select(z);
                combo[z] = pair_correlator(ensemble[i], report.witness_local.a_side[i].on_input_0, bz) +
                           (z ? -1.0 : 1.0) *
                               pair_correlator(ensemble[i], report.witness_local.a_side[i].on_input_1, bz);
            }
            correlators.emplace_back(combo[0], combo[1]);
        }
        report.lemma1 = lemma1_conditions(correlators);
    } else {
        const ClosedFormMax local = max_chain_local(ensemble);
        report.s_local_max = local.value;
        report.s_mub_max = max_chain_mub(ensemble);
        report.upper_bound = chain_upper_bound(ensemble);
        report.corollary_equality = corollary3_equality(ensemble);
        report.witness_local = local.witness;
        report.witness_mub = mub_chain_strategy(ensemble);
    }
    return report;
}

}  // namespace nlocal
