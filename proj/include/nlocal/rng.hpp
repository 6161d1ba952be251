#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nlocal {

/// splitmix64 step; also used to derive independent sub-streams from a seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic sub-seed for stream `index` of a base seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x2545f4914f6cdd1dULL * (index + 1));
    return splitmix64(s);
}

/// Minimal splitmix64 engine for shot-sampling loops where the draw count is
/// large; deterministic and cross-platform like Rng below.
class FastRng {
  public:
    explicit FastRng(std::uint64_t seed) : state_(seed) {}

    double uniform() { return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::uint64_t state_;
};

/// Seeded RNG producing doubles from raw mt19937_64 output, so results are
/// identical across platforms (std distributions are implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller; no rejection, deterministic per seed.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace nlocal
