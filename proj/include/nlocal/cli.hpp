#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace nlocal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCertification = 2;
inline constexpr int kExitInvalid = 3;

enum class Figure { star_colored, star_constant_chsh, chain_colored, chain_white };

Figure figure_from_name(const std::string& name);

struct SweepConfig {
    Figure figure = Figure::star_colored;
    int n = 12;
    int k = 6;        // star_colored only
    int points = 21;
    std::uint64_t seed = 0;
    std::string out_path;  // empty writes to stdout
};

/// Scores an ensemble/strategy config file and prints the closed-form maxima
/// and equality flags alongside the table, factored and direct evaluations.
int run_score(const std::string& config_path, bool json_output, std::ostream& out,
              std::ostream& err);

/// Optimizer-vs-closed-form certification over random ensembles; nonzero exit
/// if any attainment gap exceeds 1e-3 or any soundness excess exceeds 1e-9.
int run_certify(int n, int trials, std::uint64_t seed, bool json_output, std::ostream& out,
                std::ostream& err);

/// Figure sweeps as CSV (sweep parameter, s_local_max, s_mub_max).
int run_sweep(const SweepConfig& config, std::ostream& err);

}  // namespace nlocal::cli
