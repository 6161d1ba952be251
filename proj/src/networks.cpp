#include "nlocal/networks.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlocal {

namespace {

int parity(const std::vector<int>& bits) {
    int p = 0;
    for (int b : bits) p ^= (b & 1);
    return p;
}

void check_star(const CorrelationTable& table, int n) {
    if (table.topology().kind != TopologyKind::Star || table.topology().n != n)
        throw std::invalid_argument("score: table does not cover a Star(n) input domain");
}

void check_chain(const CorrelationTable& table, int n) {
    if (table.topology().kind != TopologyKind::Chain || table.topology().n != n)
        throw std::invalid_argument("score: table does not cover a Chain(n) input domain");
}

/// Input bits that drive the two slots of source i under the given topology.
struct SlotInputs {
    int a_bit;
    int b_bit;
};

SlotInputs slot_inputs(const Topology& t, const NetworkInputs& in, int source) {
    if (t.kind == TopologyKind::Star) return {in.external[static_cast<std::size_t>(source)], in.central};
    const int a_bit = (source == 0) ? in.external[0] : in.central;
    const int b_bit = (source == t.n - 1) ? in.external[1] : in.central;
    return {a_bit, b_bit};
}

double root_magnitude(double value, int n) {
    // |value|^{1/n} with 0^{1/n} = 0
    if (value == 0.0) return 0.0;
    return std::pow(std::abs(value), 1.0 / static_cast<double>(n));
}

}  // namespace

CorrelationTable::CorrelationTable(Topology topology, std::vector<double> values)
    : topology_(topology), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != size_for(topology_))
        throw std::invalid_argument("CorrelationTable: incomplete table");
    for (double v : values_)
        if (v < -1.0 - 1e-9 || v > 1.0 + 1e-9)
            throw std::invalid_argument("CorrelationTable: correlator outside [-1, 1]");
}

int CorrelationTable::size_for(const Topology& t) {
    return t.kind == TopologyKind::Star ? (1 << (t.n + 1)) : 8;
}

int CorrelationTable::index_for(const Topology& t, const NetworkInputs& in) {
    const std::size_t want = t.kind == TopologyKind::Star ? static_cast<std::size_t>(t.n) : 2u;
    if (in.external.size() != want)
        throw std::invalid_argument("CorrelationTable: wrong external input count");
    int idx = 0;
    for (int b : in.external) idx = (idx << 1) | (b & 1);
    return (idx << 1) | (in.central & 1);
}

double CorrelationTable::value(const NetworkInputs& in) const {
    return values_[static_cast<std::size_t>(index_for(topology_, in))];
}

std::string CorrelationTable::key_for(int index) const {
    const int bits = topology_.kind == TopologyKind::Star ? topology_.n + 1 : 3;
    std::string key(static_cast<std::size_t>(bits), '0');
    for (int i = 0; i < bits; ++i)
        if (index & (1 << (bits - 1 - i))) key[static_cast<std::size_t>(i)] = '1';
    return key;
}

double pair_correlator(const TwoQubitState& rho, const BlochVector& a, const BlochVector& b) {
    return expectation(kron(observable(a), observable(b)), rho.matrix());
}

double network_correlator(const SourceEnsemble& ensemble, const NetworkStrategy& strategy,
                          const NetworkInputs& inputs) {
    strategy.validate();
    if (ensemble.size() != static_cast<std::size_t>(strategy.topology.n))
        throw std::invalid_argument("network_correlator: ensemble size does not match topology");
    double product = 1.0;
    for (int i = 0; i < strategy.topology.n; ++i) {
        const SlotInputs si = slot_inputs(strategy.topology, inputs, i);
        const std::size_t s = static_cast<std::size_t>(i);
        product *= pair_correlator(ensemble[s], strategy.a_side[s].select(si.a_bit),
                                   strategy.b_side[s].select(si.b_bit));
    }
    return product;
}

double direct_correlator(const SourceEnsemble& ensemble, const NetworkStrategy& strategy,
                         const NetworkInputs& inputs) {
    strategy.validate();
    const int n = strategy.topology.n;
    if (n > 4) throw std::invalid_argument("direct_correlator: n > 4 not supported");
    if (ensemble.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("direct_correlator: ensemble size does not match topology");

    DynMatrix obs;
    DynMatrix rho;
    for (int i = 0; i < n; ++i) {
        const SlotInputs si = slot_inputs(strategy.topology, inputs, i);
        const std::size_t s = static_cast<std::size_t>(i);
        const DynMatrix pair_obs = to_dyn(kron(observable(strategy.a_side[s].select(si.a_bit)),
                                               observable(strategy.b_side[s].select(si.b_bit))));
        const DynMatrix pair_rho = to_dyn(ensemble[s].matrix());
        obs = (i == 0) ? pair_obs : kron(obs, pair_obs);
        rho = (i == 0) ? pair_rho : kron(rho, pair_rho);
    }
    const cplx t = trace_product(obs, rho);
    if (std::abs(t.imag()) > 1e-10)
        throw std::runtime_error("direct_correlator: imaginary residual above tolerance");
    return t.real();
}

CorrelationTable make_table(const SourceEnsemble& ensemble, const NetworkStrategy& strategy) {
    const Topology& t = strategy.topology;
    const int ext_bits = t.kind == TopologyKind::Star ? t.n : 2;
    std::vector<double> values(static_cast<std::size_t>(CorrelationTable::size_for(t)));
    for (int idx = 0; idx < static_cast<int>(values.size()); ++idx) {
        NetworkInputs in;
        in.central = idx & 1;
        in.external.resize(static_cast<std::size_t>(ext_bits));
        for (int b = 0; b < ext_bits; ++b)
            in.external[static_cast<std::size_t>(b)] = (idx >> (ext_bits - b)) & 1;
        values[static_cast<std::size_t>(idx)] = network_correlator(ensemble, strategy, in);
    }
    return CorrelationTable(t, std::move(values));
}

double chsh_score(const CorrelationTable& table) {
    check_star(table, 1);
    double s = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const double sign = (x & y) ? -1.0 : 1.0;
            s += sign * table.value(NetworkInputs{{x}, y});
        }
    return s;
}

double star_I(const CorrelationTable& table, int n, int z) {
    check_star(table, n);
    double sum = 0.0;
    NetworkInputs in;
    in.central = z;
    in.external.resize(static_cast<std::size_t>(n));
    for (int ext = 0; ext < (1 << n); ++ext) {
        for (int b = 0; b < n; ++b)
            in.external[static_cast<std::size_t>(b)] = (ext >> (n - 1 - b)) & 1;
        const double sign = (z && parity(in.external)) ? -1.0 : 1.0;
        sum += sign * table.value(in);
    }
    return sum / static_cast<double>(1 << n);
}

double star_score(const CorrelationTable& table, int n) {
    return root_magnitude(star_I(table, n, 0), n) + root_magnitude(star_I(table, n, 1), n);
}

double chain_J(const CorrelationTable& table, int n, int z) {
    check_chain(table, n);
    double sum = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const double sign = (z && ((x + y) & 1)) ? -1.0 : 1.0;
            sum += sign * table.value(NetworkInputs{{x, y}, z});
        }
    return 0.25 * sum;
}

double chain_score(const CorrelationTable& table, int n) {
    return root_magnitude(chain_J(table, n, 0), 2) + root_magnitude(chain_J(table, n, 1), 2);
}

double strategy_score(const SourceEnsemble& ensemble, const NetworkStrategy& strategy) {
    strategy.validate();
    const Topology& t = strategy.topology;
    if (ensemble.size() != static_cast<std::size_t>(t.n))
        throw std::invalid_argument("strategy_score: ensemble size does not match topology");

    std::vector<RealMatrix3> corr;
    corr.reserve(ensemble.size());
    for (const TwoQubitState& rho : ensemble) corr.push_back(correlation_matrix(rho));

    const auto pair_value = [&](int i, const BlochVector& a, const BlochVector& b) {
        const auto w = corr[static_cast<std::size_t>(i)] * std::array<double, 3>{b.x, b.y, b.z};
        return a.x * w[0] + a.y * w[1] + a.z * w[2];
    };

    double score = 0.0;
    if (t.kind == TopologyKind::Star) {
        for (int z = 0; z < 2; ++z) {
            double prod = 1.0;
            for (int i = 0; i < t.n; ++i) {
                const std::size_t s = static_cast<std::size_t>(i);
                const BlochVector& a0 = strategy.a_side[s].on_input_0;
                const BlochVector& a1 = strategy.a_side[s].on_input_1;
                const double sign = z ? -1.0 : 1.0;
                const BlochVector combo{a0.x + sign * a1.x, a0.y + sign * a1.y,
                                        a0.z + sign * a1.z};
                prod *= 0.5 * pair_value(i, combo, strategy.b_side[s].select(z));
            }
            score += root_magnitude(prod, t.n);
        }
    } else {
        for (int z = 0; z < 2; ++z) {
            const double sign = z ? -1.0 : 1.0;
            const BlochVector& a0 = strategy.a_side[0].on_input_0;
            const BlochVector& a1 = strategy.a_side[0].on_input_1;
            const BlochVector a_combo{a0.x + sign * a1.x, a0.y + sign * a1.y, a0.z + sign * a1.z};
            double j = 0.5 * pair_value(0, a_combo, strategy.b_side[0].select(z));
            for (int i = 1; i < t.n - 1; ++i) {
                const std::size_t s = static_cast<std::size_t>(i);
                j *= pair_value(i, strategy.a_side[s].select(z), strategy.b_side[s].select(z));
            }
            const std::size_t last = static_cast<std::size_t>(t.n - 1);
            const BlochVector& b0 = strategy.b_side[last].on_input_0;
            const BlochVector& b1 = strategy.b_side[last].on_input_1;
            const BlochVector b_combo{b0.x + sign * b1.x, b0.y + sign * b1.y, b0.z + sign * b1.z};
            j *= 0.5 * pair_value(t.n - 1, strategy.a_side[last].select(z), b_combo);
            score += root_magnitude(j, 2);
        }
    }
    return score;
}

}  // namespace nlocal
