#include "nlocal/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlocal/rng.hpp"

namespace nlocal {

namespace {

constexpr int kBootstrapResamples = 200;

/// P(+1) for the product observable via its +1 eigenspace projector.
double plus_probability(const TwoQubitState& rho, const BlochVector& a, const BlochVector& b) {
    const Mat4 obs = kron(observable(a), observable(b));
    const HermitianEig4 eig = hermitian_eig(obs);

    Mat4 projector;
    int multiplicity = 0;
    for (int k = 0; k < 4; ++k) {
        if (std::abs(eig.values[k] - 1.0) < 1e-9) {
            ++multiplicity;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    projector(r, c) += eig.vectors(r, k) * std::conj(eig.vectors(c, k));
        } else if (std::abs(eig.values[k] + 1.0) >= 1e-9) {
            throw std::logic_error("sample_pair: product observable eigenvalue is not +-1");
        }
    }
    if (multiplicity != 2)
        throw std::logic_error("sample_pair: +1 eigenspace multiplicity is not 2");

    cplx t = 0.0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) t += projector(r, c) * rho.matrix()(c, r);
    return std::clamp(t.real(), 0.0, 1.0);
}

ShotEstimate estimate_from_counts(long positives, long shots) {
    ShotEstimate est;
    est.shots = shots;
    est.mean = static_cast<double>(2 * positives - shots) / static_cast<double>(shots);
    if (shots > 1) {
        const double var =
            static_cast<double>(shots) * (1.0 - est.mean * est.mean) / static_cast<double>(shots - 1);
        est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(shots));
    }
    return est;
}

}  // namespace

ShotEstimate sample_pair(const TwoQubitState& rho, const BlochVector& a, const BlochVector& b,
                         long shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_pair: shots must be >= 1");
    const double p = plus_probability(rho, a, b);
    FastRng rng(seed);
    long positives = 0;
    for (long s = 0; s < shots; ++s)
        if (rng.bernoulli(p)) ++positives;
    return estimate_from_counts(positives, shots);
}

EstimatedScores estimate_scores(const Topology& topology, const SourceEnsemble& ensemble,
                                const NetworkStrategy& strategy, long shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("estimate_scores: shots must be >= 1");
    strategy.validate();
    if (!(strategy.topology == topology))
        throw std::invalid_argument("estimate_scores: strategy topology mismatch");
    if (ensemble.size() != static_cast<std::size_t>(topology.n))
        throw std::invalid_argument("estimate_scores: ensemble size does not match topology");

    const int n = topology.n;
    const int ext_bits = topology.kind == TopologyKind::Star ? n : 2;
    const int points = CorrelationTable::size_for(topology);

    std::vector<long> counts(static_cast<std::size_t>(points));
    std::vector<double> values(static_cast<std::size_t>(points));

    for (int idx = 0; idx < points; ++idx) {
        NetworkInputs in;
        in.central = idx & 1;
        in.external.resize(static_cast<std::size_t>(ext_bits));
        for (int b = 0; b < ext_bits; ++b)
            in.external[static_cast<std::size_t>(b)] = (idx >> (ext_bits - b)) & 1;

        // per-source +1 probabilities for this input assignment
        std::vector<double> probs;
        probs.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const std::size_t s = static_cast<std::size_t>(i);
            int a_bit, b_bit;
            if (topology.kind == TopologyKind::Star) {
                a_bit = in.external[s];
                b_bit = in.central;
            } else {
                a_bit = (i == 0) ? in.external[0] : in.central;
                b_bit = (i == n - 1) ? in.external[1] : in.central;
            }
            probs.push_back(plus_probability(ensemble[s], strategy.a_side[s].select(a_bit),
                                             strategy.b_side[s].select(b_bit)));
        }

        FastRng rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(idx)));
        long positives = 0;
        for (long s = 0; s < shots; ++s) {
            int parity = 1;
            for (double p : probs)
                if (!rng.bernoulli(p)) parity = -parity;
            if (parity > 0) ++positives;
        }
        counts[static_cast<std::size_t>(idx)] = positives;
        values[static_cast<std::size_t>(idx)] =
            static_cast<double>(2 * positives - shots) / static_cast<double>(shots);
    }

    CorrelationTable table(topology, values);
    const auto score_of = [&](const CorrelationTable& t) {
        return topology.kind == TopologyKind::Star ? star_score(t, n) : chain_score(t, n);
    };

    EstimatedScores out{ShotEstimate{}, table, {}};
    out.score.shots = shots;
    out.score.mean = score_of(table);
    out.std_errors.resize(static_cast<std::size_t>(points));
    for (int idx = 0; idx < points; ++idx)
        out.std_errors[static_cast<std::size_t>(idx)] =
            estimate_from_counts(counts[static_cast<std::size_t>(idx)], shots).std_error;

    // Nonparametric bootstrap over per-shot parities: resampling with
    // replacement from an empirical +-1 sample with k positives is a binomial
    // redraw at rate k/shots.
    std::vector<std::vector<double>> resampled(
        static_cast<std::size_t>(points), std::vector<double>(kBootstrapResamples));
    for (int idx = 0; idx < points; ++idx) {
        const double p_hat =
            static_cast<double>(counts[static_cast<std::size_t>(idx)]) / static_cast<double>(shots);
        FastRng rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(idx) + 1));
        for (int r = 0; r < kBootstrapResamples; ++r) {
            long pos = 0;
            for (long s = 0; s < shots; ++s)
                if (rng.bernoulli(p_hat)) ++pos;
            resampled[static_cast<std::size_t>(idx)][static_cast<std::size_t>(r)] =
                static_cast<double>(2 * pos - shots) / static_cast<double>(shots);
        }
    }

    std::vector<double> boot_scores(kBootstrapResamples);
    std::vector<double> boot_values(static_cast<std::size_t>(points));
    for (int r = 0; r < kBootstrapResamples; ++r) {
        for (int idx = 0; idx < points; ++idx)
            boot_values[static_cast<std::size_t>(idx)] =
                resampled[static_cast<std::size_t>(idx)][static_cast<std::size_t>(r)];
        boot_scores[static_cast<std::size_t>(r)] = score_of(CorrelationTable(topology, boot_values));
    }
    double mean = 0.0;
    for (double s : boot_scores) mean += s;
    mean /= kBootstrapResamples;
    double var = 0.0;
    for (double s : boot_scores) var += (s - mean) * (s - mean);
    out.score.std_error = std::sqrt(var / (kBootstrapResamples - 1));
    return out;
}

}  // namespace nlocal
