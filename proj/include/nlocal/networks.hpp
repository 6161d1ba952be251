#pragma once

#include <vector>

#include "nlocal/observables.hpp"
#include "nlocal/states.hpp"
#include "nlocal/topology.hpp"

namespace nlocal {

/// One input bit per external party plus the shared central input.
/// Star: external has n bits. Chain: external = {x, y}, central drives every
/// interior party.
struct NetworkInputs {
    std::vector<int> external;
    int central = 0;
};

/// Complete table of network correlators over the input domain.
/// Star(n) rows are keyed x_1..x_n z (first bit most significant); chain rows
/// are keyed x y z.
class CorrelationTable {
  public:
    CorrelationTable(Topology topology, std::vector<double> values);

    static int size_for(const Topology& t);
    static int index_for(const Topology& t, const NetworkInputs& in);

    const Topology& topology() const { return topology_; }
    double value(const NetworkInputs& in) const;
    const std::vector<double>& values() const { return values_; }
    std::string key_for(int index) const;

  private:
    Topology topology_;
    std::vector<double> values_;
};

/// <observable(a) x observable(b)>_rho via the 4x4 trace.
double pair_correlator(const TwoQubitState& rho, const BlochVector& a, const BlochVector& b);

/// Product of per-source pair correlators with each slot's observable selected
/// by its party's input bit.
double network_correlator(const SourceEnsemble& ensemble, const NetworkStrategy& strategy,
                          const NetworkInputs& inputs);

/// Single trace against the full 4^n-dimensional observable; independent
/// cross-check of the factored route. n <= 4 only.
double direct_correlator(const SourceEnsemble& ensemble, const NetworkStrategy& strategy,
                         const NetworkInputs& inputs);

CorrelationTable make_table(const SourceEnsemble& ensemble, const NetworkStrategy& strategy);

/// CHSH functional sum_{x,y} (-1)^{xy} <A_x x B_y> of a Star(1) table.
double chsh_score(const CorrelationTable& table);

/// I_{n,z} = 2^-n sum_{x in B^n} (-1)^{z * parity(x)} <O_{x,z}>.
double star_I(const CorrelationTable& table, int n, int z);
/// S = sum_z |I_{n,z}|^{1/n}.
double star_score(const CorrelationTable& table, int n);

/// J_{n,z} = 1/4 sum_{x,y} (-1)^{z(x+y)} <O_{x,y,z}>.
double chain_J(const CorrelationTable& table, int n, int z);
/// S = sum_z |J_{n,z}|^{1/2}.
double chain_score(const CorrelationTable& table, int n);

/// Score of a strategy through the factored route (fast path used by the
/// optimizer); equals the table-based score for factored strategies.
double strategy_score(const SourceEnsemble& ensemble, const NetworkStrategy& strategy);

}  // namespace nlocal
