#pragma once

#include <cstdint>
#include <vector>

#include "nlocal/networks.hpp"

namespace nlocal {

struct ShotEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long shots = 0;
};

/// Draws `shots` parity outcomes +-1 with P(+) = tr(P_plus rho) where P_plus
/// projects onto the +1 eigenspace of observable(a) x observable(b).
/// std_error is the sample standard deviation over sqrt(shots).
ShotEstimate sample_pair(const TwoQubitState& rho, const BlochVector& a, const BlochVector& b,
                         long shots, std::uint64_t seed);

struct EstimatedScores {
    ShotEstimate score;               // star or chain score with bootstrap error
    CorrelationTable table;           // estimated correlators
    std::vector<double> std_errors;   // per table entry
};

/// Samples every input point with its own derived sub-seed and propagates the
/// score error by nonparametric bootstrap over per-shot parities (200
/// resamples).
EstimatedScores estimate_scores(const Topology& topology, const SourceEnsemble& ensemble,
                                const NetworkStrategy& strategy, long shots, std::uint64_t seed);

}  // namespace nlocal
