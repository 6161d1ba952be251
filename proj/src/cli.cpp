#include "nlocal/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "nlocal/closedform.hpp"
#include "nlocal/io.hpp"
#include "nlocal/optimizer.hpp"
#include "nlocal/rng.hpp"

namespace nlocal::cli {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string figure_name(Figure f) {
    switch (f) {
        case Figure::star_colored: return "star_colored";
        case Figure::star_constant_chsh: return "star_constant_chsh";
        case Figure::chain_colored: return "chain_colored";
        case Figure::chain_white: return "chain_white";
    }
    return "?";
}

SourceEnsemble sweep_ensemble(const SweepConfig& config, double param) {
    SourceEnsemble ensemble;
    switch (config.figure) {
        case Figure::star_colored:
            // k damped sources keep tau0 = 1 while tau1 = param; rest are Bell
            for (int i = 0; i < config.k; ++i) ensemble.push_back(colored(param));
            for (int i = config.k; i < config.n; ++i) ensemble.push_back(bell_phi_plus());
            break;
        case Figure::star_constant_chsh: {
            // constant half-CHSH beta with tau0^2 spread evenly over
            // [beta^2/2, min(1, beta^2)]
            const double beta_sq = param * param;
            const double lo = 0.5 * beta_sq;
            const double hi = std::min(1.0, beta_sq);
            for (int i = 0; i < config.n; ++i) {
                const double f = config.n > 1 ? static_cast<double>(i) / (config.n - 1) : 0.0;
                const double t0_sq = lo + f * (hi - lo);
                const double t1_sq = std::max(beta_sq - t0_sq, 0.0);
                ensemble.push_back(bell_diagonal(std::sqrt(t1_sq), -std::sqrt(t1_sq), std::sqrt(t0_sq)));
            }
            break;
        }
        case Figure::chain_colored:
            // Bell ends; interior sources keep tau0^2 = 1 while tau1^2 = param
            ensemble.push_back(bell_phi_plus());
            for (int i = 1; i + 1 < config.n; ++i) ensemble.push_back(colored(std::sqrt(param)));
            ensemble.push_back(bell_phi_plus());
            break;
        case Figure::chain_white: {
            // tau0^2 = 3/4 + tau1^2/4 on every source
            const double t1 = std::sqrt(param);
            const double t0 = std::sqrt(0.75 + 0.25 * param);
            for (int i = 0; i < config.n; ++i) ensemble.push_back(bell_diagonal(t1, -t1, t0));
            break;
        }
    }
    return ensemble;
}

struct SweepRange {
    double lo, hi;
    const char* param_name;
};

SweepRange sweep_range(Figure f) {
    switch (f) {
        case Figure::star_colored: return {0.0, 1.0, "tau1"};
        case Figure::star_constant_chsh: return {1.0, 1.1, "beta_star"};
        case Figure::chain_colored: return {0.0, 1.0, "tau1_sq"};
        case Figure::chain_white: return {0.0, 1.0, "tau1_sq"};
    }
    return {0.0, 1.0, "param"};
}

struct StrategyScores {
    double table = 0.0;
    double factored = 0.0;
    double direct = 0.0;
    bool has_direct = false;
    double chsh = 0.0;
    bool has_chsh = false;
};

StrategyScores evaluate_strategy(const Topology& topology, const SourceEnsemble& ensemble,
                                 const NetworkStrategy& strategy) {
    StrategyScores s;
    const CorrelationTable table = make_table(ensemble, strategy);
    s.table = topology.kind == TopologyKind::Star ? star_score(table, topology.n)
                                                  : chain_score(table, topology.n);
    s.factored = strategy_score(ensemble, strategy);
    if (topology.n <= 4) {
        const int ext_bits = topology.kind == TopologyKind::Star ? topology.n : 2;
        std::vector<double> values(static_cast<std::size_t>(CorrelationTable::size_for(topology)));
        for (int idx = 0; idx < static_cast<int>(values.size()); ++idx) {
            NetworkInputs in;
            in.central = idx & 1;
            in.external.resize(static_cast<std::size_t>(ext_bits));
            for (int b = 0; b < ext_bits; ++b)
                in.external[static_cast<std::size_t>(b)] = (idx >> (ext_bits - b)) & 1;
            values[static_cast<std::size_t>(idx)] = direct_correlator(ensemble, strategy, in);
        }
        const CorrelationTable direct_table(topology, std::move(values));
        s.direct = topology.kind == TopologyKind::Star ? star_score(direct_table, topology.n)
                                                       : chain_score(direct_table, topology.n);
        s.has_direct = true;
    }
    if (topology.kind == TopologyKind::Star && topology.n == 1) {
        s.chsh = chsh_score(table);
        s.has_chsh = true;
    }
    return s;
}

}  // namespace

Figure figure_from_name(const std::string& name) {
    if (name == "star_colored") return Figure::star_colored;
    if (name == "star_constant_chsh") return Figure::star_constant_chsh;
    if (name == "chain_colored") return Figure::chain_colored;
    if (name == "chain_white") return Figure::chain_white;
    throw std::invalid_argument("unknown sweep figure '" + name + "'");
}

int run_score(const std::string& config_path, bool json_output, std::ostream& out,
              std::ostream& err) {
    json config;
    Topology topology = Topology::star(1);
    SourceEnsemble ensemble;
    NetworkStrategy strategy;
    ScoreReport report;
    try {
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("cannot open config file '" + config_path + "'");
        in >> config;

        const json& topo = config.at("topology");
        const std::string kind = topo.at("kind").get<std::string>();
        const int n = topo.at("n").get<int>();
        topology = kind == "star" ? Topology::star(n) : Topology::chain(n);

        if (config.contains("ensemble_file")) {
            std::ifstream ens(config.at("ensemble_file").get<std::string>());
            if (!ens) throw std::invalid_argument("cannot open ensemble file");
            json j;
            ens >> j;
            ensemble = ensemble_from_json(j);
        } else {
            ensemble = ensemble_from_json(config.at("ensemble"));
        }
        if (ensemble.empty()) throw std::invalid_argument("ensemble is empty");
        if (ensemble.size() != static_cast<std::size_t>(topology.n))
            throw std::invalid_argument("ensemble size does not match topology");

        report = score_report(topology, ensemble);

        if (!config.contains("strategy")) {
            strategy = report.witness_local;
        } else if (config.at("strategy").is_string()) {
            const std::string name = config.at("strategy").get<std::string>();
            if (name == "theorem")
                strategy = report.witness_local;
            else if (name == "mub")
                strategy = report.witness_mub;
            else {
                std::ifstream strat(name);
                if (!strat) throw std::invalid_argument("cannot open strategy file '" + name + "'");
                json j;
                strat >> j;
                strategy = strategy_from_json(j);
            }
        } else {
            strategy = strategy_from_json(config.at("strategy"));
        }
        if (!(strategy.topology == topology))
            throw std::invalid_argument("strategy topology does not match config topology");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    const StrategyScores scores = evaluate_strategy(topology, ensemble, strategy);

    if (json_output) {
        json j = report_to_json(topology, report);
        j["strategy_score"] = {{"table", scores.table}, {"factored", scores.factored}};
        if (scores.has_direct) j["strategy_score"]["direct"] = scores.direct;
        if (scores.has_chsh) j["strategy_score"]["chsh"] = scores.chsh;
        out << j.dump(2) << "\n";
        return kExitOk;
    }

    out << std::setprecision(12);
    out << "topology: " << (topology.kind == TopologyKind::Star ? "star" : "chain")
        << " n=" << topology.n << "\n";
    out << "strategy score (table):    " << scores.table << "\n";
    out << "strategy score (factored): " << scores.factored << "\n";
    if (scores.has_direct) out << "strategy score (direct):   " << scores.direct << "\n";
    if (scores.has_chsh) out << "chsh score:                " << scores.chsh << "\n";
    out << "s_local_max:  " << report.s_local_max << "\n";
    out << "s_mub_max:    " << report.s_mub_max << "\n";
    out << "upper_bound:  " << report.upper_bound << "\n";
    out << "equality_flags: corollary=" << (report.corollary_equality ? "true" : "false");
    if (topology.kind == TopologyKind::Star)
        out << " lemma1_c1=" << (report.lemma1.condition1 ? "true" : "false")
            << " lemma1_c2=" << (report.lemma1.condition2 ? "true" : "false")
            << " lemma1_c3=" << (report.lemma1.condition3 ? "true" : "false");
    out << "\n";
    return kExitOk;
}

int run_certify(int n, int trials, std::uint64_t seed, bool json_output, std::ostream& out,
                std::ostream& err) {
    if (n < 1 || n > 3) {
        err << "error: certify supports n in [1, 3]\n";
        return kExitInvalid;
    }
    if (trials < 1) {
        err << "error: trials must be >= 1\n";
        return kExitInvalid;
    }

    OptimizerConfig config;
    config.seed = seed;

    struct Gap {
        double attainment = 0.0;  // closed form minus best score (positive = shortfall)
        double excess = 0.0;      // best score above closed form
    };
    Gap star_free, star_mub, chain_free, chain_mub;

    const auto track = [](Gap& g, double best, double closed) {
        g.attainment = std::max(g.attainment, closed - best);
        g.excess = std::max(g.excess, best - closed);
    };

    for (int t = 0; t < trials; ++t) {
        SourceEnsemble ensemble;
        for (int i = 0; i < n; ++i)
            ensemble.push_back(random_state(derive_seed(seed, 1000 + 100 * static_cast<std::uint64_t>(t) + static_cast<std::uint64_t>(i))));

        config.restriction = Restriction::free_observables;
        track(star_free, optimize(Topology::star(n), ensemble, config).best_score,
              max_star_local(ensemble).value);
        config.restriction = Restriction::mub_central;
        track(star_mub, optimize(Topology::star(n), ensemble, config).best_score,
              max_star_mub(ensemble));

        if (n >= 2) {
            config.restriction = Restriction::free_observables;
            track(chain_free, optimize(Topology::chain(n), ensemble, config).best_score,
                  max_chain_local(ensemble).value);
            config.restriction = Restriction::mub_central;
            track(chain_mub, optimize(Topology::chain(n), ensemble, config).best_score,
                  max_chain_mub(ensemble));
        }
    }

    const double worst_attainment =
        std::max({star_free.attainment, star_mub.attainment, chain_free.attainment, chain_mub.attainment});
    const double worst_excess =
        std::max({star_free.excess, star_mub.excess, chain_free.excess, chain_mub.excess});
    const bool pass = worst_attainment <= 1e-3 && worst_excess <= 1e-9;

    if (json_output) {
        json j{{"n", n},
               {"trials", trials},
               {"seed", seed},
               {"star_free", {{"attainment_gap", star_free.attainment}, {"excess", star_free.excess}}},
               {"star_mub", {{"attainment_gap", star_mub.attainment}, {"excess", star_mub.excess}}},
               {"pass", pass}};
        if (n >= 2) {
            j["chain_free"] = {{"attainment_gap", chain_free.attainment}, {"excess", chain_free.excess}};
            j["chain_mub"] = {{"attainment_gap", chain_mub.attainment}, {"excess", chain_mub.excess}};
        }
        out << j.dump(2) << "\n";
    } else {
        out << std::setprecision(6) << std::scientific;
        out << "certify n=" << n << " trials=" << trials << " seed=" << seed << "\n";
        out << "star  free: gap=" << star_free.attainment << " excess=" << star_free.excess << "\n";
        out << "star  mub:  gap=" << star_mub.attainment << " excess=" << star_mub.excess << "\n";
        if (n >= 2) {
            out << "chain free: gap=" << chain_free.attainment << " excess=" << chain_free.excess << "\n";
            out << "chain mub:  gap=" << chain_mub.attainment << " excess=" << chain_mub.excess << "\n";
        }
        out << (pass ? "PASS" : "FAIL") << "\n";
    }
    return pass ? kExitOk : kExitCertification;
}

int run_sweep(const SweepConfig& config, std::ostream& err) {
    try {
        if (config.points < 2) throw std::invalid_argument("sweep needs at least 2 grid points");
        if (config.n < 1) throw std::invalid_argument("sweep needs n >= 1");
        if (config.figure == Figure::star_colored && (config.k < 0 || config.k > config.n))
            throw std::invalid_argument("star_colored needs 0 <= k <= n");
        if ((config.figure == Figure::chain_colored || config.figure == Figure::chain_white) &&
            config.n < 2)
            throw std::invalid_argument("chain sweeps need n >= 2");

        const SweepRange range = sweep_range(config.figure);
        std::ostringstream body;
        body << std::setprecision(17);
        for (int p = 0; p < config.points; ++p) {
            const double param =
                range.lo + (range.hi - range.lo) * static_cast<double>(p) / (config.points - 1);
            const SourceEnsemble ensemble = sweep_ensemble(config, param);
            double s_local, s_mub;
            if (config.figure == Figure::star_colored ||
                config.figure == Figure::star_constant_chsh) {
                s_local = max_star_local(ensemble).value;
                s_mub = max_star_mub(ensemble);
            } else {
                s_local = max_chain_local(ensemble).value;
                s_mub = max_chain_mub(ensemble);
            }
            body << param << "," << s_local << "," << s_mub << "\n";
        }

        std::ostringstream head;
        head << "figure=" << figure_name(config.figure) << " n=" << config.n << " k=" << config.k
             << " points=" << config.points;
        std::ostringstream csv;
        csv << "# config_hash=" << std::hex << fnv1a(head.str()) << std::dec
            << " seed=" << config.seed << "\n";
        csv << range.param_name << ",s_local_max,s_mub_max\n";
        csv << body.str();

        if (config.out_path.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream out(config.out_path);
            if (!out) throw std::invalid_argument("cannot open output file '" + config.out_path + "'");
            out << csv.str();
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}

}  // namespace nlocal::cli
