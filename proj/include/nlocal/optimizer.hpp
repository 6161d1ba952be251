#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlocal/networks.hpp"

namespace nlocal {

/// Polar/azimuth pair defining a Bloch vector; the optimization domain is one
/// pair per qubit slot per input bit.
struct SphericalAngles {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2*pi)
};

SphericalAngles encode_angles(const BlochVector& v);
BlochVector decode_angles(double theta, double phi);

enum class Restriction { free_observables, mub_central };

struct OptimizerConfig {
    int restarts = 32;
    int max_iterations = 2000;
    double tolerance = 1e-9;  // simplex size
    std::uint64_t seed = 0;
    Restriction restriction = Restriction::free_observables;
    std::string trace_path;  // optional CSV trace (restart, iteration, score)

    void validate() const;
};

struct OptimizationResult {
    double best_score = 0.0;
    NetworkStrategy best_strategy;
    std::vector<double> restart_scores;
    long iterations_used = 0;
};

/// Multi-start Nelder-Mead maximization of the n-local score over all local
/// qubit observables (restart 0 warm-starts from the closed-form strategy).
/// With Restriction::mub_central the central slots are frozen to the z/x pair
/// in each source's canonical frame and only external slots are optimized.
OptimizationResult optimize(const Topology& topology, const SourceEnsemble& ensemble,
                            const OptimizerConfig& config);

/// CHSH maximization for a single source: 2 x the Star(1) score.
OptimizationResult optimize_chsh(const TwoQubitState& rho, const OptimizerConfig& config);

/// Exhaustive x-z-plane grid over the external slot-input angles with the
/// exact central best response at each point; a lower-bound certificate,
/// monotone nondecreasing under grid refinement. Budget: star res^(2n) <= 1e8,
/// chain res^4 <= 1e8.
double grid_oracle(const Topology& topology, const SourceEnsemble& ensemble, int resolution);

/// 2 x the Star(1) grid value.
double grid_oracle_chsh(const TwoQubitState& rho, int resolution);

}  // namespace nlocal
