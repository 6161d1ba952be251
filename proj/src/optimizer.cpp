#include "nlocal/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <stdexcept>

#include "nlocal/closedform.hpp"
#include "nlocal/rng.hpp"

namespace nlocal {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Factored-score evaluation against precomputed correlation matrices,
/// allocation-free so the simplex loop stays cheap.
class ScoreEvaluator {
  public:
    ScoreEvaluator(const Topology& t, const SourceEnsemble& ensemble) : topology_(t) {
        corr_.reserve(ensemble.size());
        for (const TwoQubitState& rho : ensemble) corr_.push_back(correlation_matrix(rho));
    }

    explicit ScoreEvaluator(const Topology& t, std::vector<RealMatrix3> corr)
        : topology_(t), corr_(std::move(corr)) {}

    double eval(const NetworkStrategy& s) const {
        double score = 0.0;
        const int n = topology_.n;
        if (topology_.kind == TopologyKind::Star) {
            for (int z = 0; z < 2; ++z) {
                double prod = 1.0;
                for (int i = 0; i < n; ++i)
                    prod *= 0.5 * combo_corr(i, s.a_side[static_cast<std::size_t>(i)], z,
                                             s.b_side[static_cast<std::size_t>(i)].select(z));
                score += root_mag(prod, n);
            }
        } else {
            for (int z = 0; z < 2; ++z) {
                double j = 0.5 * combo_corr(0, s.a_side[0], z, s.b_side[0].select(z));
                for (int i = 1; i < n - 1; ++i) {
                    const std::size_t k = static_cast<std::size_t>(i);
                    j *= pair(i, s.a_side[k].select(z), s.b_side[k].select(z));
                }
                const std::size_t last = static_cast<std::size_t>(n - 1);
                j *= 0.5 * combo_corr_b(n - 1, s.a_side[last].select(z), z, s.b_side[last]);
                score += root_mag(j, 2);
            }
        }
        return score;
    }

  private:
    static double root_mag(double v, int n) {
        if (v == 0.0) return 0.0;
        return std::pow(std::abs(v), 1.0 / static_cast<double>(n));
    }

    double pair(int i, const BlochVector& a, const BlochVector& b) const {
        const RealMatrix3& t = corr_[static_cast<std::size_t>(i)];
        const double wx = t(0, 0) * b.x + t(0, 1) * b.y + t(0, 2) * b.z;
        const double wy = t(1, 0) * b.x + t(1, 1) * b.y + t(1, 2) * b.z;
        const double wz = t(2, 0) * b.x + t(2, 1) * b.y + t(2, 2) * b.z;
        return a.x * wx + a.y * wy + a.z * wz;
    }

    double combo_corr(int i, const DichotomicObservable& a, int z, const BlochVector& b) const {
        const double sign = z ? -1.0 : 1.0;
        const BlochVector combo{a.on_input_0.x + sign * a.on_input_1.x,
                                a.on_input_0.y + sign * a.on_input_1.y,
                                a.on_input_0.z + sign * a.on_input_1.z};
        return pair(i, combo, b);
    }

    double combo_corr_b(int i, const BlochVector& a, int z, const DichotomicObservable& b) const {
        const double sign = z ? -1.0 : 1.0;
        const BlochVector combo{b.on_input_0.x + sign * b.on_input_1.x,
                                b.on_input_0.y + sign * b.on_input_1.y,
                                b.on_input_0.z + sign * b.on_input_1.z};
        return pair(i, a, combo);
    }

    Topology topology_;
    std::vector<RealMatrix3> corr_;
};

/// Which slot-inputs are optimized, and where they live in the strategy.
struct SlotRef {
    bool a_side;
    int source;
    int input;
};

std::vector<SlotRef> free_slots(const Topology& t, Restriction restriction) {
    std::vector<SlotRef> refs;
    const int n = t.n;
    if (t.kind == TopologyKind::Star) {
        for (int i = 0; i < n; ++i)
            for (int in = 0; in < 2; ++in) refs.push_back({true, i, in});
        if (restriction == Restriction::free_observables)
            for (int i = 0; i < n; ++i)
                for (int in = 0; in < 2; ++in) refs.push_back({false, i, in});
    } else {
        for (int in = 0; in < 2; ++in) refs.push_back({true, 0, in});
        for (int in = 0; in < 2; ++in) refs.push_back({false, n - 1, in});
        if (restriction == Restriction::free_observables) {
            for (int i = 1; i < n; ++i)
                for (int in = 0; in < 2; ++in) refs.push_back({true, i, in});
            for (int i = 0; i < n - 1; ++i)
                for (int in = 0; in < 2; ++in) refs.push_back({false, i, in});
        }
    }
    return refs;
}

void write_params(NetworkStrategy& s, const std::vector<SlotRef>& refs,
                  const std::vector<double>& params) {
    for (std::size_t k = 0; k < refs.size(); ++k) {
        const BlochVector v = decode_angles(params[2 * k], params[2 * k + 1]);
        const SlotRef& r = refs[k];
        DichotomicObservable& slot =
            (r.a_side ? s.a_side : s.b_side)[static_cast<std::size_t>(r.source)];
        (r.input ? slot.on_input_1 : slot.on_input_0) = v;
    }
}

std::vector<double> read_params(const NetworkStrategy& s, const std::vector<SlotRef>& refs) {
    std::vector<double> params(2 * refs.size());
    for (std::size_t k = 0; k < refs.size(); ++k) {
        const SlotRef& r = refs[k];
        const DichotomicObservable& slot =
            (r.a_side ? s.a_side : s.b_side)[static_cast<std::size_t>(r.source)];
        const SphericalAngles ang = encode_angles(r.input ? slot.on_input_1 : slot.on_input_0);
        params[2 * k] = ang.theta;
        params[2 * k + 1] = ang.phi;
    }
    return params;
}

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    std::vector<double> trace;  // best value per iteration, when requested
};

/// Standard Nelder-Mead maximization; terminates on simplex size or budget.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double step, int max_iterations,
                             double tolerance, bool record_trace = false) {
    const std::size_t d = x0.size();
    std::vector<std::vector<double>> xs(d + 1, x0);
    std::vector<double> fs(d + 1);
    for (std::size_t i = 0; i < d; ++i) xs[i + 1][i] += step;
    for (std::size_t i = 0; i <= d; ++i) fs[i] = f(xs[i]);

    const auto order = [&] {
        std::vector<std::size_t> idx(d + 1);
        for (std::size_t i = 0; i <= d; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fs[a] > fs[b]; });
        std::vector<std::vector<double>> nxs(d + 1);
        std::vector<double> nfs(d + 1);
        for (std::size_t i = 0; i <= d; ++i) {
            nxs[i] = std::move(xs[idx[i]]);
            nfs[i] = fs[idx[i]];
        }
        xs = std::move(nxs);
        fs = std::move(nfs);
    };

    NelderMeadResult result;
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        order();
        if (record_trace) result.trace.push_back(fs[0]);

        double size = 0.0;
        for (std::size_t i = 1; i <= d; ++i)
            for (std::size_t k = 0; k < d; ++k) size = std::max(size, std::abs(xs[i][k] - xs[0][k]));
        if (size < tolerance) break;

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) centroid[k] += xs[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        const auto blend = [&](double t) {
            std::vector<double> p(d);
            for (std::size_t k = 0; k < d; ++k) p[k] = centroid[k] + t * (xs[d][k] - centroid[k]);
            return p;
        };

        const std::vector<double> reflected = blend(-1.0);
        const double fr = f(reflected);
        if (fr > fs[0]) {
            const std::vector<double> expanded = blend(-2.0);
            const double fe = f(expanded);
            if (fe > fr) {
                xs[d] = expanded;
                fs[d] = fe;
            } else {
                xs[d] = reflected;
                fs[d] = fr;
            }
            continue;
        }
        if (fr > fs[d - 1]) {
            xs[d] = reflected;
            fs[d] = fr;
            continue;
        }
        const std::vector<double> contracted = blend(0.5);
        const double fc = f(contracted);
        if (fc > fs[d]) {
            xs[d] = contracted;
            fs[d] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= d; ++i) {  // shrink toward the best vertex
            for (std::size_t k = 0; k < d; ++k) xs[i][k] = xs[0][k] + 0.5 * (xs[i][k] - xs[0][k]);
            fs[i] = f(xs[i]);
        }
    }
    order();
    result.x = xs[0];
    result.f = fs[0];
    result.iterations = iter;
    return result;
}

NetworkStrategy all_z_strategy(const Topology& t) {
    NetworkStrategy s;
    s.topology = t;
    const DichotomicObservable zz{BlochVector::z_axis(), BlochVector::z_axis()};
    s.a_side.assign(static_cast<std::size_t>(t.n), zz);
    s.b_side.assign(static_cast<std::size_t>(t.n), zz);
    return s;
}

BlochVector rotate(const Rotation3& r, const BlochVector& v) {
    const auto w = r.apply({v.x, v.y, v.z});
    return BlochVector{w[0], w[1], w[2]};
}

}  // namespace

SphericalAngles encode_angles(const BlochVector& v) {
    SphericalAngles a;
    a.theta = std::acos(std::clamp(v.z, -1.0, 1.0));
    a.phi = (v.x == 0.0 && v.y == 0.0) ? 0.0 : std::atan2(v.y, v.x);
    if (a.phi < 0.0) a.phi += 2.0 * kPi;
    return a;
}

BlochVector decode_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return BlochVector{st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

void OptimizerConfig::validate() const {
    if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("OptimizerConfig: max_iterations must be >= 1");
    if (tolerance <= 0.0) throw std::invalid_argument("OptimizerConfig: tolerance must be positive");
}

OptimizationResult optimize(const Topology& topology, const SourceEnsemble& ensemble,
                            const OptimizerConfig& config) {
    config.validate();
    if (ensemble.size() != static_cast<std::size_t>(topology.n))
        throw std::invalid_argument("optimize: ensemble size does not match topology");

    const bool mub = config.restriction == Restriction::mub_central;

    // Under the MUB restriction, work in each source's canonical frame where
    // the frozen central observables are literally z and x.
    std::vector<Rotation3> ra, rb;
    std::vector<RealMatrix3> corr;
    for (const TwoQubitState& rho : ensemble) {
        const RealMatrix3 t = correlation_matrix(rho);
        if (mub) {
            const SignedSvd3 svd = signed_svd3(t);
            ra.push_back(svd.ra);
            rb.push_back(svd.rb);
            corr.push_back(RealMatrix3::diag(svd.tau.tau1, svd.tau.tau2, svd.tau.tau0));
        } else {
            corr.push_back(t);
        }
    }
    const ScoreEvaluator evaluator(topology, corr);

    NetworkStrategy workspace = all_z_strategy(topology);
    if (mub) {
        const DichotomicObservable central{BlochVector::z_axis(), BlochVector::x_axis()};
        const int n = topology.n;
        if (topology.kind == TopologyKind::Star) {
            for (auto& slot : workspace.b_side) slot = central;
        } else {
            for (int i = 1; i < n; ++i) workspace.a_side[static_cast<std::size_t>(i)] = central;
            for (int i = 0; i < n - 1; ++i) workspace.b_side[static_cast<std::size_t>(i)] = central;
        }
    }

    const std::vector<SlotRef> refs = free_slots(topology, config.restriction);
    const std::size_t dims = 2 * refs.size();

    const auto objective = [&](const std::vector<double>& params) {
        write_params(workspace, refs, params);
        return evaluator.eval(workspace);
    };

    // Warm start: closed-form witness. For MUB runs the canonical-frame
    // externals are the weighted x-z vectors; for free runs the Theorem
    // strategy already lives in the actual frame.
    NetworkStrategy warm;
    if (topology.kind == TopologyKind::Star)
        warm = mub ? mub_star_strategy(ensemble) : theorem1_star_strategy(ensemble);
    else
        warm = mub ? mub_chain_strategy(ensemble) : theorem2_chain_strategy(ensemble);
    if (mub) {
        // strategies are built in the actual frame; map external slots back
        for (std::size_t i = 0; i < ensemble.size(); ++i) {
            warm.a_side[i].on_input_0 = rotate(ra[i], warm.a_side[i].on_input_0);
            warm.a_side[i].on_input_1 = rotate(ra[i], warm.a_side[i].on_input_1);
            warm.b_side[i].on_input_0 = rotate(rb[i], warm.b_side[i].on_input_0);
            warm.b_side[i].on_input_1 = rotate(rb[i], warm.b_side[i].on_input_1);
        }
    }

    OptimizationResult result;
    result.best_score = -1.0;
    std::vector<double> best_params;

    std::ofstream trace;
    if (!config.trace_path.empty()) {
        trace.open(config.trace_path);
        if (!trace) throw std::invalid_argument("optimize: cannot open trace file");
        trace << "restart,iteration,score\n";
    }

    for (int restart = 0; restart < config.restarts; ++restart) {
        std::vector<double> start(dims);
        if (restart == 0) {
            start = read_params(warm, refs);
        } else {
            Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(restart)));
            for (std::size_t k = 0; k < refs.size(); ++k) {
                start[2 * k] = std::acos(1.0 - 2.0 * rng.uniform());  // sphere-uniform polar
                start[2 * k + 1] = 2.0 * kPi * rng.uniform();
            }
        }
        const NelderMeadResult nm = nelder_mead(objective, start, 0.25, config.max_iterations,
                                                config.tolerance, trace.is_open());
        if (trace.is_open()) {
            trace << std::setprecision(17);
            for (std::size_t i = 0; i < nm.trace.size(); ++i)
                trace << restart << "," << i << "," << nm.trace[i] << "\n";
        }
        result.restart_scores.push_back(nm.f);
        result.iterations_used += nm.iterations;
        if (nm.f > result.best_score) {
            result.best_score = nm.f;
            best_params = nm.x;
        }
    }

    write_params(workspace, refs, best_params);
    result.best_strategy = workspace;
    if (mub) {
        // return the strategy in the actual frame of the input ensemble
        for (std::size_t i = 0; i < ensemble.size(); ++i) {
            auto& a = result.best_strategy.a_side[i];
            auto& b = result.best_strategy.b_side[i];
            a.on_input_0 = rotate(ra[i].transposed(), a.on_input_0);
            a.on_input_1 = rotate(ra[i].transposed(), a.on_input_1);
            b.on_input_0 = rotate(rb[i].transposed(), b.on_input_0);
            b.on_input_1 = rotate(rb[i].transposed(), b.on_input_1);
        }
    }
    return result;
}

OptimizationResult optimize_chsh(const TwoQubitState& rho, const OptimizerConfig& config) {
    OptimizationResult result = optimize(Topology::star(1), {rho}, config);
    result.best_score *= 2.0;
    for (double& s : result.restart_scores) s *= 2.0;
    return result;
}

namespace {

double best_response_norm(const RealMatrix3& t_transposed, const BlochVector& c) {
    const auto w = t_transposed * std::array<double, 3>{c.x, c.y, c.z};
    return std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
}

}  // namespace

double grid_oracle(const Topology& topology, const SourceEnsemble& ensemble, int resolution) {
    if (resolution < 2) throw std::invalid_argument("grid_oracle: resolution must be >= 2");
    if (ensemble.size() != static_cast<std::size_t>(topology.n))
        throw std::invalid_argument("grid_oracle: ensemble size does not match topology");

    const int n = topology.n;
    const double budget = 1e8;
    const int outer_angles = topology.kind == TopologyKind::Star ? 2 * n : 4;
    if (std::pow(static_cast<double>(resolution), outer_angles) > budget)
        throw std::invalid_argument("grid_oracle: budget exceeded");

    std::vector<double> cos_t(static_cast<std::size_t>(resolution));
    std::vector<double> sin_t(static_cast<std::size_t>(resolution));
    for (int k = 0; k < resolution; ++k) {
        const double theta = 2.0 * kPi * k / resolution;
        cos_t[static_cast<std::size_t>(k)] = std::cos(theta);
        sin_t[static_cast<std::size_t>(k)] = std::sin(theta);
    }

    const std::size_t pairs = static_cast<std::size_t>(resolution) * resolution;

    // Per source and central input: best central response to the gridded
    // external x-z combo (A_0 + (-1)^z A_1), a valid feasible value.
    const auto combo_table = [&](const RealMatrix3& t, int z) {
        const RealMatrix3 tt = t.transposed();
        std::vector<double> out(pairs);
        const double sign = z ? -1.0 : 1.0;
        for (int k0 = 0; k0 < resolution; ++k0)
            for (int k1 = 0; k1 < resolution; ++k1) {
                const BlochVector combo{
                    sin_t[static_cast<std::size_t>(k0)] + sign * sin_t[static_cast<std::size_t>(k1)],
                    0.0,
                    cos_t[static_cast<std::size_t>(k0)] + sign * cos_t[static_cast<std::size_t>(k1)]};
                out[static_cast<std::size_t>(k0) * resolution + k1] =
                    0.5 * best_response_norm(tt, combo);
            }
        return out;
    };

    double best = 0.0;
    if (topology.kind == TopologyKind::Star) {
        std::vector<std::array<std::vector<double>, 2>> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const RealMatrix3 t = correlation_matrix(ensemble[static_cast<std::size_t>(i)]);
            v[static_cast<std::size_t>(i)] = {combo_table(t, 0), combo_table(t, 1)};
        }
        const double inv_n = 1.0 / static_cast<double>(n);
        std::function<void(int, double, double)> recurse = [&](int i, double p0, double p1) {
            if (i == n) {
                best = std::max(best, std::pow(p0, inv_n) + std::pow(p1, inv_n));
                return;
            }
            const auto& v0 = v[static_cast<std::size_t>(i)][0];
            const auto& v1 = v[static_cast<std::size_t>(i)][1];
            for (std::size_t k = 0; k < pairs; ++k) recurse(i + 1, p0 * v0[k], p1 * v1[k]);
        };
        recurse(0, 1.0, 1.0);
    } else {
        const RealMatrix3 t1 = correlation_matrix(ensemble.front());
        const RealMatrix3 tn = correlation_matrix(ensemble.back());
        double mid = 1.0;
        for (int i = 1; i < n - 1; ++i)
            mid *= singular_triple(ensemble[static_cast<std::size_t>(i)]).tau0;
        // source n's external combo sits on the B side; transpose swaps roles
        const std::array<std::vector<double>, 2> v1 = {combo_table(t1, 0), combo_table(t1, 1)};
        const std::array<std::vector<double>, 2> vn = {combo_table(tn.transposed(), 0),
                                                       combo_table(tn.transposed(), 1)};
        for (std::size_t ka = 0; ka < pairs; ++ka)
            for (std::size_t kb = 0; kb < pairs; ++kb) {
                const double s = std::sqrt(v1[0][ka] * mid * vn[0][kb]) +
                                 std::sqrt(v1[1][ka] * mid * vn[1][kb]);
                best = std::max(best, s);
            }
    }
    return best;
}

double grid_oracle_chsh(const TwoQubitState& rho, int resolution) {
    return 2.0 * grid_oracle(Topology::star(1), {rho}, resolution);
}

}  // namespace nlocal
