#include "nlocal/io.hpp"

#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace nlocal {

using nlohmann::json;

namespace {

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json vec_to_json(const BlochVector& v) { return json::array({v.x, v.y, v.z}); }

BlochVector vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("strategy: Bloch vector must be a 3-element array");
    return BlochVector::unit(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

std::string party_name(const Topology& t, bool a_side, int source) {
    if (t.kind == TopologyKind::Star)
        return a_side ? "A" + std::to_string(source + 1) : "C";
    if (a_side) return source == 0 ? "A" : "C" + std::to_string(source);
    return source == t.n - 1 ? "B" : "C" + std::to_string(source + 1);
}

}  // namespace

json state_to_json(const TwoQubitState& rho) {
    json re = json::array(), im = json::array();
    for (int r = 0; r < 4; ++r) {
        json re_row = json::array(), im_row = json::array();
        for (int c = 0; c < 4; ++c) {
            re_row.push_back(rho.matrix()(r, c).real());
            im_row.push_back(rho.matrix()(r, c).imag());
        }
        re.push_back(re_row);
        im.push_back(im_row);
    }
    return json{{"re", re}, {"im", im}};
}

TwoQubitState state_from_json(const json& j) {
    if (!j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("state: expected {\"re\": 4x4, \"im\": 4x4}");
    Mat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            m(r, c) = cplx(j["re"].at(r).at(c).get<double>(), j["im"].at(r).at(c).get<double>());
    return TwoQubitState::from_matrix(m);
}

SourceEnsemble ensemble_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("ensemble: expected an array of states");
    SourceEnsemble ensemble;
    for (const json& entry : j) {
        if (entry.contains("name")) {
            const std::string name = entry["name"].get<std::string>();
            if (name == "bell")
                ensemble.push_back(bell_phi_plus());
            else if (name == "gamma")
                ensemble.push_back(classical_gamma());
            else if (name == "werner")
                ensemble.push_back(werner(entry.at("v").get<double>()));
            else if (name == "colored")
                ensemble.push_back(colored(entry.at("t1").get<double>()));
            else if (name == "bell_diagonal")
                ensemble.push_back(bell_diagonal(entry.at("tx").get<double>(),
                                                 entry.at("ty").get<double>(),
                                                 entry.at("tz").get<double>()));
            else if (name == "random")
                ensemble.push_back(random_state(entry.at("seed").get<std::uint64_t>()));
            else
                throw std::invalid_argument("ensemble: unknown state constructor '" + name + "'");
        } else {
            ensemble.push_back(state_from_json(entry));
        }
    }
    return ensemble;
}

json ensemble_to_json(const SourceEnsemble& ensemble) {
    json out = json::array();
    for (const TwoQubitState& rho : ensemble) out.push_back(state_to_json(rho));
    return out;
}

json strategy_to_json(const NetworkStrategy& strategy) {
    strategy.validate();
    json slots = json::array();
    for (int side = 0; side < 2; ++side) {
        const bool a_side = side == 0;
        const auto& list = a_side ? strategy.a_side : strategy.b_side;
        for (int i = 0; i < strategy.topology.n; ++i) {
            const auto& slot = list[static_cast<std::size_t>(i)];
            slots.push_back(json{{"party", party_name(strategy.topology, a_side, i)},
                                 {"source", i + 1},
                                 {"side", a_side ? "A" : "B"},
                                 {"input0", vec_to_json(slot.on_input_0)},
                                 {"input1", vec_to_json(slot.on_input_1)}});
        }
    }
    return json{{"topology", strategy.topology.kind == TopologyKind::Star ? "star" : "chain"},
                {"n", strategy.topology.n},
                {"slots", slots}};
}

NetworkStrategy strategy_from_json(const json& j) {
    const std::string kind = j.at("topology").get<std::string>();
    const int n = j.at("n").get<int>();
    NetworkStrategy s;
    if (kind == "star")
        s.topology = Topology::star(n);
    else if (kind == "chain")
        s.topology = Topology::chain(n);
    else
        throw std::invalid_argument("strategy: unknown topology '" + kind + "'");

    s.a_side.resize(static_cast<std::size_t>(n));
    s.b_side.resize(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(2 * n), false);
    for (const json& slot : j.at("slots")) {
        const int source = slot.at("source").get<int>() - 1;
        if (source < 0 || source >= n)
            throw std::invalid_argument("strategy: slot source out of range");
        const bool a_side = slot.at("side").get<std::string>() == "A";
        auto& target = (a_side ? s.a_side : s.b_side)[static_cast<std::size_t>(source)];
        target.on_input_0 = vec_from_json(slot.at("input0"));
        target.on_input_1 = vec_from_json(slot.at("input1"));
        seen[static_cast<std::size_t>(2 * source + (a_side ? 0 : 1))] = true;
    }
    for (bool b : seen)
        if (!b) throw std::invalid_argument("strategy: missing qubit slot");
    return s;
}

std::string table_to_csv(const CorrelationTable& table, const std::vector<double>* std_errors) {
    if (std_errors && std_errors->size() != table.values().size())
        throw std::invalid_argument("table_to_csv: std_error column size mismatch");
    std::ostringstream out;
    out << "input_bits,value";
    if (std_errors) out << ",std_error";
    out << "\n";
    for (std::size_t i = 0; i < table.values().size(); ++i) {
        out << table.key_for(static_cast<int>(i)) << "," << format_value(table.values()[i]);
        if (std_errors) out << "," << format_value((*std_errors)[i]);
        out << "\n";
    }
    return out.str();
}

CorrelationTable table_from_csv(const Topology& topology, std::istream& in) {
    std::vector<double> values(static_cast<std::size_t>(CorrelationTable::size_for(topology)));
    std::vector<bool> seen(values.size(), false);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("input_bits", 0) == 0) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("table csv: malformed line '" + line + "'");
        const std::string bits = line.substr(0, comma);
        std::string rest = line.substr(comma + 1);
        const std::size_t comma2 = rest.find(',');
        if (comma2 != std::string::npos) rest = rest.substr(0, comma2);

        int idx = 0;
        for (char c : bits) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("table csv: bad input bits '" + bits + "'");
            idx = (idx << 1) | (c - '0');
        }
        const int expected_bits = topology.kind == TopologyKind::Star ? topology.n + 1 : 3;
        if (static_cast<int>(bits.size()) != expected_bits)
            throw std::invalid_argument("table csv: wrong input width '" + bits + "'");
        values[static_cast<std::size_t>(idx)] = std::stod(rest);
        seen[static_cast<std::size_t>(idx)] = true;
    }
    for (bool b : seen)
        if (!b) throw std::invalid_argument("table csv: incomplete table");
    return CorrelationTable(topology, std::move(values));
}

json report_to_json(const Topology& topology, const ScoreReport& report) {
    json flags{{"corollary_equality", report.corollary_equality}};
    if (topology.kind == TopologyKind::Star) {
        flags["lemma1_condition1"] = report.lemma1.condition1;
        flags["lemma1_condition2"] = report.lemma1.condition2;
        flags["lemma1_condition3"] = report.lemma1.condition3;
    }
    return json{{"topology", topology.kind == TopologyKind::Star ? "star" : "chain"},
                {"n", topology.n},
                {"s_local_max", report.s_local_max},
                {"s_mub_max", report.s_mub_max},
                {"upper_bound", report.upper_bound},
                {"equality_flags", flags},
                {"witness_local", strategy_to_json(report.witness_local)},
                {"witness_mub", strategy_to_json(report.witness_mub)}};
}

}  // namespace nlocal
