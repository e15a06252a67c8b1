// Copyright 2026 The flagbridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON forms of topologies, layouts, faults, FT reports, decoder tables and
// run manifests.

#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "flagbridge/ft_check.hpp"
#include "flagbridge/monte_carlo.hpp"
#include "flagbridge/mapping.hpp"
#include "json.hpp"

namespace flagbridge {

using json = nlohmann::json;

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::uint64_t parse_hex64(const std::string& s) {
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &pos, 16);
    } catch (const std::exception&) {
        throw ParseError("bad hex value \"" + s + "\"");
    }
    if (pos != s.size()) {
        throw ParseError("bad hex value \"" + s + "\"");
    }
    return v;
}

/// Hashes of the canonical text forms, for run manifests.
inline std::string code_hash(const StabilizerCode& code) {
    std::ostringstream os;
    write_code(os, code);
    return hex64(fnv1a64(os.str()));
}

inline std::string circuits_hash(const std::vector<Circuit>& circuits) {
    std::ostringstream os;
    write_circuits(os, circuits);
    return hex64(fnv1a64(os.str()));
}

// ---- topology and layout ----

inline json to_json(const DeviceTopology& t) {
    json edges = json::array();
    for (auto [a, b] : t.edges) {
        edges.push_back({a, b});
    }
    return {{"name", t.name}, {"n", t.n}, {"edges", edges}};
}

inline DeviceTopology topology_from_json(const json& j) {
    DeviceTopology t;
    try {
        t.name = j.at("name").get<std::string>();
        t.n = j.at("n").get<std::size_t>();
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw ParseError("topology edge must be a pair of nodes");
            }
            t.edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
        }
    } catch (const json::exception& ex) {
        throw ParseError(std::string("topology json: ") + ex.what());
    }
    validate_topology(t);
    return t;
}

inline DeviceTopology read_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open topology file " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw ParseError(path + ": " + ex.what());
    }
    return topology_from_json(j);
}

/// Layouts are objects from circuit qubit (decimal string) to device node.
inline json to_json(const Layout& l) {
    json j = json::object();
    for (std::size_t q = 0; q < l.node.size(); ++q) {
        j[std::to_string(q)] = l.node[q];
    }
    return j;
}

inline Layout layout_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("layout json must map circuit qubits to device nodes");
    }
    std::map<std::size_t, std::uint32_t> entries;
    try {
        for (const auto& [k, v] : j.items()) {
            std::size_t pos = 0;
            const auto q = std::stoul(k, &pos);
            if (pos != k.size()) {
                throw ParseError("layout key \"" + k + "\" is not a qubit index");
            }
            entries[q] = v.get<std::uint32_t>();
        }
    } catch (const json::exception& ex) {
        throw ParseError(std::string("layout json: ") + ex.what());
    } catch (const ParseError&) {
        throw;
    } catch (const std::logic_error&) {
        throw ParseError("layout keys must be qubit indices");
    }
    Layout l;
    for (const auto& [q, v] : entries) {
        if (q != l.node.size()) {
            throw LayoutError("layout does not assign circuit qubit " + std::to_string(l.node.size()));
        }
        l.node.push_back(v);
    }
    return l;
}

inline json to_json(const LayoutReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) {
        v.push_back({{"circuit", x.circuit}, {"timestep", x.timestep}, {"control", x.control}, {"target", x.target}});
    }
    return {{"ok", r.ok}, {"violations", v}};
}

// ---- faults and FT reports ----

inline json fault_json(const Fault& f, const std::vector<Circuit>& circuits) {
    return {{"kind", to_string(f.kind)},
            {"round", f.round},
            {"circuit", f.circuit},
            {"timestep", f.timestep},
            {"index", f.index},
            {"code", f.code},
            {"qubits", fault_qubits(f, circuits)},
            {"description", describe(f, circuits)}};
}

inline json sf_json(const SyndromeFlagString& sf, const SfLayout& layout) {
    return {{"round1", bit_string(sf.round1, layout.bits_per_round)},
            {"round2", bit_string(sf.round2, layout.bits_per_round)},
            {"trigger", sf.trigger}};
}

inline json record_json(const FaultRecord& r, const ProtocolEngine& engine) {
    return {{"fault", fault_json(r.fault, engine.circuits())},
            {"residual", r.residual.str()},
            {"sf", sf_json(r.sf, engine.layout())}};
}

inline json to_json(const FtReport& rep, const ProtocolEngine& engine) {
    json cex = json::array();
    for (const auto& c : rep.counterexamples) {
        cex.push_back({{"kind", to_string(c.kind)},
                       {"first", record_json(c.first, engine)},
                       {"second", record_json(c.second, engine)}});
    }
    return {{"procedure", engine.procedure().name},
            {"fault_tolerant", rep.fault_tolerant},
            {"faults", rep.faults},
            {"signatures", rep.signatures},
            {"counterexamples", cex}};
}

// ---- decoder tables ----

/// Keys are hex words. Bit i of `s2` is the i-th syndrome bit of round 2 in
/// circuit order; bit i of `flags` is the i-th flag of the trigger circuit
/// in ascending qubit order.
inline json to_json(const LookupTables& lut) {
    json t1 = json::object();
    for (const auto& [s2, p] : lut.table1) {
        t1[hex64(s2)] = p.str();
    }
    json t2 = json::array();
    for (const auto& [k, p] : lut.table2) {
        t2.push_back({{"circuit", k.circuit}, {"flags", hex64(k.flags)}, {"s2", hex64(k.s2)}, {"correction", p.str()}});
    }
    return {{"n", lut.n},
            {"syndrome_bits", lut.syndrome_bits},
            {"flag_bits", lut.flag_bits},
            {"bit_order",
             "bit i of s2 = i-th round-2 syndrome bit in circuit order; bit i of flags = i-th flag qubit "
             "(ascending) of the trigger circuit"},
            {"table1", t1},
            {"table2", t2}};
}

inline LookupTables lut_from_json(const json& j) {
    LookupTables lut;
    try {
        lut.n = j.at("n").get<std::size_t>();
        lut.syndrome_bits = j.at("syndrome_bits").get<std::size_t>();
        lut.flag_bits = j.at("flag_bits").get<std::vector<std::size_t>>();
        for (const auto& [k, v] : j.at("table1").items()) {
            lut.table1.emplace(parse_hex64(k), PauliString::parse(v.get<std::string>()));
        }
        for (const auto& e : j.at("table2")) {
            DecoderKey key;
            key.circuit = e.at("circuit").get<std::uint32_t>();
            key.flags = parse_hex64(e.at("flags").get<std::string>());
            key.s2 = parse_hex64(e.at("s2").get<std::string>());
            lut.table2.emplace(key, PauliString::parse(e.at("correction").get<std::string>()));
        }
    } catch (const json::exception& ex) {
        throw ParseError(std::string("decoder json: ") + ex.what());
    }
    return lut;
}

// ---- run manifest ----

inline constexpr const char* kVersion = "0.1.0";

struct RunManifest {
    std::string command;
    std::string mapping;
    std::string code_hash;
    std::string circuits_hash;
    std::vector<double> p;
    std::vector<double> pI_ratio;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string output;
};

inline json to_json(const RunManifest& m) {
    return {{"command", m.command},   {"mapping", m.mapping}, {"code_hash", m.code_hash},
            {"circuits_hash", m.circuits_hash}, {"p", m.p},   {"pI_ratio", m.pI_ratio},
            {"shots", m.shots},       {"seed", m.seed},       {"workers", m.workers},
            {"shot_block", kShotBlock}, {"output", m.output}, {"version", kVersion}};
}

}  // namespace flagbridge
