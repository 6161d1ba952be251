#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "nlocal/closedform.hpp"
#include "nlocal/io.hpp"
#include "nlocal/networks.hpp"
#include "nlocal/optimizer.hpp"
#include "nlocal/sampling.hpp"
#include "nlocal/states.hpp"

namespace py = pybind11;
using namespace nlocal;

namespace {

using PyMatrix = std::vector<std::vector<cplx>>;

PyMatrix to_py(const Mat4& m) {
    PyMatrix out(4, std::vector<cplx>(4));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = m(r, c);
    return out;
}

TwoQubitState from_py(const PyMatrix& m) {
    if (m.size() != 4) throw std::invalid_argument("state matrix must be 4x4");
    Mat4 out;
    for (int r = 0; r < 4; ++r) {
        if (m[static_cast<std::size_t>(r)].size() != 4)
            throw std::invalid_argument("state matrix must be 4x4");
        for (int c = 0; c < 4; ++c)
            out(r, c) = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return TwoQubitState::from_matrix(out);
}

SourceEnsemble ensemble_from_py(const std::vector<PyMatrix>& states) {
    SourceEnsemble ensemble;
    for (const PyMatrix& m : states) ensemble.push_back(from_py(m));
    return ensemble;
}

Topology topology_from(const std::string& kind, int n) {
    if (kind == "star") return Topology::star(n);
    if (kind == "chain") return Topology::chain(n);
    throw std::invalid_argument("topology must be 'star' or 'chain'");
}

OptimizerConfig config_from(int restarts, int max_iterations, double tolerance,
                            std::uint64_t seed, const std::string& restriction) {
    OptimizerConfig config;
    config.restarts = restarts;
    config.max_iterations = max_iterations;
    config.tolerance = tolerance;
    config.seed = seed;
    if (restriction == "free")
        config.restriction = Restriction::free_observables;
    else if (restriction == "mub_central")
        config.restriction = Restriction::mub_central;
    else
        throw std::invalid_argument("restriction must be 'free' or 'mub_central'");
    return config;
}

}  // namespace

PYBIND11_MODULE(nlocal, m) {
    m.doc() = "Maximal n-local star/chain scores for two-qubit sources";

    m.def("bell", [] { return to_py(bell_phi_plus().matrix()); });
    m.def("classical_gamma", [] { return to_py(classical_gamma().matrix()); });
    m.def("werner", [](double v) { return to_py(werner(v).matrix()); }, py::arg("v"));
    m.def("colored", [](double t1) { return to_py(colored(t1).matrix()); }, py::arg("t1"));
    m.def(
        "bell_diagonal",
        [](double tx, double ty, double tz) { return to_py(bell_diagonal(tx, ty, tz).matrix()); },
        py::arg("tx"), py::arg("ty"), py::arg("tz"));
    m.def(
        "random_state", [](std::uint64_t seed) { return to_py(random_state(seed).matrix()); },
        py::arg("seed"));

    m.def(
        "singular_triple",
        [](const PyMatrix& rho) {
            const SingularTriple tau = singular_triple(from_py(rho));
            return py::make_tuple(tau.tau0, tau.tau1, tau.tau2);
        },
        py::arg("rho"));

    m.def(
        "max_chsh",
        [](const PyMatrix& rho) { return max_chsh(singular_triple(from_py(rho))); },
        py::arg("rho"));

    m.def(
        "max_star_local",
        [](const std::vector<PyMatrix>& states) {
            return max_star_local(ensemble_from_py(states)).value;
        },
        py::arg("states"));
    m.def(
        "max_star_mub",
        [](const std::vector<PyMatrix>& states) { return max_star_mub(ensemble_from_py(states)); },
        py::arg("states"));
    m.def(
        "max_chain_local",
        [](const std::vector<PyMatrix>& states) {
            return max_chain_local(ensemble_from_py(states)).value;
        },
        py::arg("states"));
    m.def(
        "max_chain_mub",
        [](const std::vector<PyMatrix>& states) { return max_chain_mub(ensemble_from_py(states)); },
        py::arg("states"));

    m.def(
        "score_report",
        [](const std::string& kind, const std::vector<PyMatrix>& states) {
            const Topology t = topology_from(kind, static_cast<int>(states.size()));
            const ScoreReport report = score_report(t, ensemble_from_py(states));
            py::dict out;
            out["s_local_max"] = report.s_local_max;
            out["s_mub_max"] = report.s_mub_max;
            out["upper_bound"] = report.upper_bound;
            out["corollary_equality"] = report.corollary_equality;
            return out;
        },
        py::arg("topology"), py::arg("states"));

    m.def(
        "theorem_strategy_score",
        [](const std::string& kind, const std::vector<PyMatrix>& states) {
            const SourceEnsemble ensemble = ensemble_from_py(states);
            const Topology t = topology_from(kind, static_cast<int>(ensemble.size()));
            const NetworkStrategy strategy = t.kind == TopologyKind::Star
                                                 ? theorem1_star_strategy(ensemble)
                                                 : theorem2_chain_strategy(ensemble);
            return strategy_score(ensemble, strategy);
        },
        py::arg("topology"), py::arg("states"));

    m.def(
        "optimize",
        [](const std::string& kind, const std::vector<PyMatrix>& states, int restarts,
           int max_iterations, double tolerance, std::uint64_t seed,
           const std::string& restriction) {
            const SourceEnsemble ensemble = ensemble_from_py(states);
            const Topology t = topology_from(kind, static_cast<int>(ensemble.size()));
            const OptimizationResult result = optimize(
                t, ensemble, config_from(restarts, max_iterations, tolerance, seed, restriction));
            py::dict out;
            out["best_score"] = result.best_score;
            out["restart_scores"] = result.restart_scores;
            out["iterations_used"] = result.iterations_used;
            out["strategy"] = strategy_to_json(result.best_strategy).dump();
            return out;
        },
        py::arg("topology"), py::arg("states"), py::arg("restarts") = 32,
        py::arg("max_iterations") = 2000, py::arg("tolerance") = 1e-9, py::arg("seed") = 0,
        py::arg("restriction") = "free");

    m.def(
        "optimize_chsh",
        [](const PyMatrix& rho, int restarts, int max_iterations, double tolerance,
           std::uint64_t seed) {
            const OptimizationResult result = optimize_chsh(
                from_py(rho), config_from(restarts, max_iterations, tolerance, seed, "free"));
            return result.best_score;
        },
        py::arg("rho"), py::arg("restarts") = 32, py::arg("max_iterations") = 2000,
        py::arg("tolerance") = 1e-9, py::arg("seed") = 0);

    m.def(
        "grid_oracle",
        [](const std::string& kind, const std::vector<PyMatrix>& states, int resolution) {
            const SourceEnsemble ensemble = ensemble_from_py(states);
            return grid_oracle(topology_from(kind, static_cast<int>(ensemble.size())), ensemble,
                               resolution);
        },
        py::arg("topology"), py::arg("states"), py::arg("resolution"));

    m.def(
        "sample_pair",
        [](const PyMatrix& rho, const std::vector<double>& a, const std::vector<double>& b,
           long shots, std::uint64_t seed) {
            const ShotEstimate est =
                sample_pair(from_py(rho), BlochVector::unit(a.at(0), a.at(1), a.at(2)),
                            BlochVector::unit(b.at(0), b.at(1), b.at(2)), shots, seed);
            return py::make_tuple(est.mean, est.std_error, est.shots);
        },
        py::arg("rho"), py::arg("a"), py::arg("b"), py::arg("shots"), py::arg("seed") = 0);
}
