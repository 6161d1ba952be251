#pragma once

#include <stdexcept>

namespace nlocal {

enum class TopologyKind { Star, Chain };

/// Star(n): n external parties A^1..A^n plus one central party measuring all
/// n B-side qubits with a shared input. Chain(n): external parties A^1 and
/// B^n; central party j holds B^j and A^{j+1} under one input.
struct Topology {
    TopologyKind kind = TopologyKind::Star;
    int n = 1;

    static Topology star(int n) {
        if (n < 1) throw std::invalid_argument("Topology: star needs n >= 1");
        return Topology{TopologyKind::Star, n};
    }
    static Topology chain(int n) {
        if (n < 2) throw std::invalid_argument("Topology: chain needs n >= 2");
        return Topology{TopologyKind::Chain, n};
    }

    int party_count() const { return n + 1; }

    bool operator==(const Topology& o) const { return kind == o.kind && n == o.n; }
};

}  // namespace nlocal
