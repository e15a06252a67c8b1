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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flagbridge/flag_bridge.hpp"
#include "flagbridge/mapping.hpp"
#include "flagbridge/protocol.hpp"

namespace flagbridge {

/// A shipped circuit set together with its placement on a device.
struct Mapping {
    std::string name;
    QecProcedure procedure;
    Layout layout;
    DeviceTopology topology;
};

namespace detail {

// Steane plaquettes; generator g < 3 is X on plaquette g, g >= 3 is Z on
// plaquette g - 3.
inline const std::vector<std::vector<std::uint32_t>>& steane_plaquettes() {
    static const std::vector<std::vector<std::uint32_t>> p = {{0, 1, 2, 3}, {1, 2, 4, 5}, {2, 3, 5, 6}};
    return p;
}

inline std::vector<QubitRole> with_data(std::size_t nd, std::vector<QubitRole> anc) {
    std::vector<QubitRole> r(nd, QubitRole::Data);
    for (auto a : anc) {
        r.push_back(a);
    }
    return r;
}

inline const char* plaquette_name(std::size_t g) {
    static const char* names[] = {"XA", "XB", "XC", "ZA", "ZB", "ZC"};
    return names[g];
}

// One flag, one syndrome: encode, couplings alternating flag/syndrome, decode.
inline Circuit two_ancilla_block(const std::string& name, const std::vector<QubitRole>& roles,
                                 const PauliString& check, std::uint32_t s, std::uint32_t f,
                                 const std::vector<std::uint32_t>& on_f, const std::vector<std::uint32_t>& on_s) {
    FlagBridgeSpec spec;
    spec.name = name;
    spec.roles = roles;
    spec.checks = {check};
    spec.syndrome_qubits = {s};
    spec.flag_qubits = {f};
    spec.encoding_edges = {{f, s}};
    spec.program.push_back(FlagBridgeSpec::encode(0));
    for (std::size_t i = 0; i < std::max(on_f.size(), on_s.size()); ++i) {
        if (i < on_f.size()) {
            spec.couplings.push_back({on_f[i], f, 0});
            spec.program.push_back(FlagBridgeSpec::couple(spec.couplings.size() - 1));
        }
        if (i < on_s.size()) {
            spec.couplings.push_back({on_s[i], s, 0});
            spec.program.push_back(FlagBridgeSpec::couple(spec.couplings.size() - 1));
        }
    }
    spec.program.push_back(FlagBridgeSpec::decode(0));
    return build_flag_bridge(spec);
}

// Steane c1: one two-ancilla block per generator, Z checks first. on_f[p]
// lists the data of plaquette p coupled to its flag; the rest go to the
// syndrome qubit. Ancillas: s = 7 + 2p, f = 8 + 2p.
inline std::vector<Circuit> steane_c1(const std::vector<std::vector<std::uint32_t>>& on_f) {
    const auto code = steane();
    const auto roles = with_data(7, {QubitRole::Syndrome, QubitRole::Flag, QubitRole::Syndrome, QubitRole::Flag,
                                     QubitRole::Syndrome, QubitRole::Flag});
    const auto& P = steane_plaquettes();
    std::vector<Circuit> out;
    for (std::size_t g : {3, 4, 5, 0, 1, 2}) {
        const std::size_t p = g % 3;
        std::vector<std::uint32_t> on_s;
        for (auto q : P[p]) {
            if (std::find(on_f[p].begin(), on_f[p].end(), q) == on_f[p].end()) {
                on_s.push_back(q);
            }
        }
        const auto s = static_cast<std::uint32_t>(7 + 2 * p);
        out.push_back(two_ancilla_block(plaquette_name(g), roles, code.generators[g], s, s + 1, on_f[p], on_s));
    }
    return out;
}

// Two checks bridged by one flag (qubit 7) to syndromes 8 and 9. The flag
// carries the data shared by both plaquettes.
inline Circuit steane_double(const std::vector<QubitRole>& roles, std::size_t g1, std::size_t g2) {
    const auto code = steane();
    const auto& P = steane_plaquettes();
    const auto& a = P[g1 % 3];
    const auto& b = P[g2 % 3];
    std::vector<std::uint32_t> shared, only_a, only_b;
    for (auto q : a) {
        (std::find(b.begin(), b.end(), q) != b.end() ? shared : only_a).push_back(q);
    }
    for (auto q : b) {
        if (std::find(a.begin(), a.end(), q) == a.end()) {
            only_b.push_back(q);
        }
    }
    FlagBridgeSpec spec;
    spec.name = std::string(plaquette_name(g1)) + plaquette_name(g2);
    spec.roles = roles;
    spec.checks = {code.generators[g1], code.generators[g2]};
    spec.syndrome_qubits = {8, 9};
    spec.flag_qubits = {7};
    spec.encoding_edges = {{7, 8}, {7, 9}};
    spec.program = {FlagBridgeSpec::encode(0), FlagBridgeSpec::encode(1)};
    auto add = [&](std::uint32_t d, std::uint32_t anc) {
        spec.couplings.push_back({d, anc, 0});
        spec.program.push_back(FlagBridgeSpec::couple(spec.couplings.size() - 1));
    };
    for (std::size_t i = 0; i < 2; ++i) {
        add(only_a[i], 8);
        add(only_b[i], 9);
        add(shared[i], 7);
    }
    spec.program.push_back(FlagBridgeSpec::decode(1));
    spec.program.push_back(FlagBridgeSpec::decode(0));
    return build_flag_bridge(spec);
}

// Single check on syndrome 10 with flags 11, 12, ... holder[i] names the
// ancilla (0 = syndrome, j = flag 10 + j) of the i-th plaquette qubit.
// Couplings go round-robin over ancillas, highest first.
inline Circuit steane_single(const std::vector<QubitRole>& roles, std::size_t g, const std::vector<int>& holder,
                             int nflags) {
    const auto code = steane();
    const auto& P = steane_plaquettes();
    FlagBridgeSpec spec;
    spec.name = plaquette_name(g);
    spec.roles = roles;
    spec.checks = {code.generators[g]};
    spec.syndrome_qubits = {10};
    for (int j = 1; j <= nflags; ++j) {
        spec.flag_qubits.push_back(static_cast<std::uint32_t>(10 + j));
        spec.encoding_edges.push_back({static_cast<std::uint32_t>(10 + j), 10});
        spec.program.push_back(FlagBridgeSpec::encode(static_cast<std::size_t>(j - 1)));
    }
    std::vector<std::vector<std::uint32_t>> per(static_cast<std::size_t>(nflags + 1));
    for (std::size_t i = 0; i < 4; ++i) {
        per[static_cast<std::size_t>(holder[i])].push_back(P[g % 3][i]);
    }
    for (std::size_t r = 0; r < 4; ++r) {
        for (int a = nflags; a >= 0; --a) {
            if (r < per[static_cast<std::size_t>(a)].size()) {
                spec.couplings.push_back({per[static_cast<std::size_t>(a)][r], static_cast<std::uint32_t>(10 + a), 0});
                spec.program.push_back(FlagBridgeSpec::couple(spec.couplings.size() - 1));
            }
        }
    }
    for (int j = nflags; j >= 1; --j) {
        spec.program.push_back(FlagBridgeSpec::decode(static_cast<std::size_t>(j - 1)));
    }
    return build_flag_bridge(spec);
}

// Steane c2: plaquettes B and C share a bridged circuit, A is measured alone.
inline std::vector<Circuit> steane_c2(const std::vector<int>& holder, int nflags) {
    std::vector<QubitRole> anc = {QubitRole::Flag, QubitRole::Syndrome, QubitRole::Syndrome, QubitRole::Syndrome};
    for (int j = 0; j < nflags; ++j) {
        anc.push_back(QubitRole::Flag);
    }
    const auto roles = with_data(7, anc);
    std::vector<Circuit> out;
    for (std::size_t off : {3, 0}) {
        out.push_back(steane_double(roles, off + 1, off + 2));
        out.push_back(steane_single(roles, off, holder, nflags));
    }
    return out;
}

// Steane c3: all three checks of one type bridged by a single flag (7) to
// syndromes 8, 9, 10. The flag couples to data 1 while only A is encoded,
// to data 2 while all three are, and to data 5 after A is decoded.
inline std::vector<Circuit> steane_c3() {
    const auto code = steane();
    const auto roles = with_data(7, {QubitRole::Flag, QubitRole::Syndrome, QubitRole::Syndrome, QubitRole::Syndrome});
    const std::vector<std::vector<std::uint32_t>> on_s = {{0, 3}, {1, 4}, {3, 6}};
    std::vector<Circuit> out;
    for (std::size_t off : {3, 0}) {
        FlagBridgeSpec spec;
        spec.name = off == 3 ? "Z" : "X";
        spec.roles = roles;
        spec.checks = {code.generators[off], code.generators[off + 1], code.generators[off + 2]};
        spec.syndrome_qubits = {8, 9, 10};
        spec.flag_qubits = {7};
        spec.encoding_edges = {{7, 8}, {7, 9}, {7, 10}};
        auto encode = [&](std::size_t j) {
            spec.program.push_back(FlagBridgeSpec::encode(j));
            for (auto d : on_s[j]) {
                spec.couplings.push_back({d, static_cast<std::uint32_t>(8 + j), 0});
                spec.program.push_back(FlagBridgeSpec::couple(spec.couplings.size() - 1));
            }
        };
        auto flag = [&](std::uint32_t d) {
            spec.couplings.push_back({d, 7, 0});
            spec.program.push_back(FlagBridgeSpec::couple(spec.couplings.size() - 1));
        };
        encode(0);
        flag(1);
        encode(1);
        encode(2);
        flag(2);
        spec.program.push_back(FlagBridgeSpec::decode(0));
        flag(5);
        spec.program.push_back(FlagBridgeSpec::decode(1));
        spec.program.push_back(FlagBridgeSpec::decode(2));
        out.push_back(build_flag_bridge(spec));
    }
    return out;
}

// Five-qubit checks: syndrome s with flags bridged over part of the
// couplings. `order` lists (data, ancilla) in program order; the flags are
// encoded before coupling `enc_at` and decoded after coupling `dec_at - 1`.
inline Circuit windowed_block(const std::string& name, const std::vector<QubitRole>& roles, const PauliString& check,
                              std::uint32_t s, const std::vector<std::uint32_t>& flags,
                              const std::vector<std::pair<std::uint32_t, std::uint32_t>>& order, std::size_t enc_at,
                              std::size_t dec_at) {
    FlagBridgeSpec spec;
    spec.name = name;
    spec.roles = roles;
    spec.checks = {check};
    spec.syndrome_qubits = {s};
    spec.flag_qubits = flags;
    for (auto f : flags) {
        spec.encoding_edges.push_back({f, s});
    }
    for (std::size_t i = 0; i <= order.size(); ++i) {
        if (i == enc_at) {
            for (std::size_t j = 0; j < flags.size(); ++j) {
                spec.program.push_back(FlagBridgeSpec::encode(j));
            }
        }
        if (i == dec_at) {
            for (std::size_t j = flags.size(); j > 0; --j) {
                spec.program.push_back(FlagBridgeSpec::decode(j - 1));
            }
        }
        if (i < order.size()) {
            spec.couplings.push_back({order[i].first, order[i].second, 0});
            spec.program.push_back(FlagBridgeSpec::couple(i));
        }
    }
    return build_flag_bridge(spec);
}

}  // namespace detail

/// Bare one-ancilla-per-check Steane extraction (ancilla 7 + g for generator
/// g, Z checks first). Not fault tolerant.
inline QecProcedure steane_bare() {
    const auto code = steane();
    const auto roles = detail::with_data(7, std::vector<QubitRole>(6, QubitRole::Syndrome));
    QecProcedure proc{"steane-bare", code, {}};
    for (std::size_t g : {3, 4, 5, 0, 1, 2}) {
        proc.circuits.push_back(build_bare_check(detail::plaquette_name(g), roles, code.generators[g],
                                                 static_cast<std::uint32_t>(7 + g),
                                                 detail::steane_plaquettes()[g % 3]));
    }
    return proc;
}

inline Mapping steane_c1_l1() {
    return {"steane-c1-L1",
            {"steane-c1-L1", steane(), detail::steane_c1({{0}, {1, 2}, {2, 3}})},
            {{15, 1, 4, 3, 16, 12, 14, 9, 0, 5, 10, 7, 11}},
            surface17()};
}

inline Mapping steane_c1_l2() {
    return {"steane-c1-L2",
            {"steane-c1-L2", steane(), detail::steane_c1({{2, 3}, {4, 5}, {5, 6}})},
            {{9, 4, 7, 1, 13, 11, 0, 3, 2, 8, 12, 6, 5}},
            ibm20()};
}

inline Mapping steane_c2_l1() {
    return {"steane-c2-L1",
            {"steane-c2-L1", steane(), detail::steane_c2({0, 2, 0, 1}, 2)},
            {{8, 10, 4, 11, 13, 0, 15, 9, 1, 3, 12, 7, 5}},
            surface17()};
}

inline Mapping steane_c2_l2() {
    return {"steane-c2-L2",
            {"steane-c2-L2", steane(), detail::steane_c2({1, 1, 0, 0}, 1)},
            {{13, 4, 7, 11, 9, 1, 5, 2, 3, 6, 12, 8}},
            ibm20()};
}

inline Mapping steane_c3_l2() {
    return {"steane-c3-L2",
            {"steane-c3-L2", steane(), detail::steane_c3()},
            {{8, 2, 5, 12, 0, 10, 16, 6, 7, 1, 11}},
            ibm20()};
}

/// Standard distance-3 rotated surface code extraction: one circuit, all
/// eight ancillas in parallel. X ancillas visit NW, NE, SW, SE; Z ancillas
/// NW, SW, NE, SE.
inline Mapping sc_d3() {
    const auto code = rotated_surface_d3();
    const auto roles = detail::with_data(9, std::vector<QubitRole>(8, QubitRole::Syndrome));
    constexpr std::uint32_t kNone = ~0U;
    // Data qubit touched by each ancilla in CNOT slots 0..3.
    const std::uint32_t slots[8][4] = {
        {0, 1, 3, 4},              // X bulk (0,0)
        {1, 4, 2, 5},              // Z bulk (0,1)
        {3, 6, 4, 7},              // Z bulk (1,0)
        {4, 5, 7, 8},              // X bulk (1,1)
        {kNone, kNone, 1, 2},      // X top
        {6, 7, kNone, kNone},      // X bottom
        {kNone, kNone, 0, 3},      // Z left
        {5, 8, kNone, kNone},      // Z right
    };
    Circuit c;
    c.name = "SC";
    c.roles = roles;
    c.timesteps.resize(8);
    for (std::uint32_t a = 0; a < 8; ++a) {
        const std::uint32_t q = 9 + a;
        const bool x_type = code.generators[a].xs() != 0;
        c.timesteps[0].push_back(Gate::prep(q));
        if (x_type) {
            c.timesteps[1].push_back(Gate::h(q));
            c.timesteps[6].push_back(Gate::h(q));
        }
        for (std::size_t k = 0; k < 4; ++k) {
            const auto d = slots[a][k];
            if (d == kNone) {
                continue;
            }
            c.timesteps[2 + k].push_back(x_type ? Gate::cnot(q, d, CnotClass::S) : Gate::cnot(d, q, CnotClass::S));
        }
        c.timesteps[7].push_back(Gate::meas(q));
        c.measured_checks.push_back({q, code.generators[a]});
    }
    Layout layout;
    for (std::uint32_t q = 0; q < 17; ++q) {
        layout.node.push_back(q);
    }
    return {"sc-d3", {"sc-d3", code, {c}}, layout, surface17()};
}

/// Five-qubit code with the three-ancilla block: syndrome 5 bridged to
/// flags 6 and 7, reused by all four checks.
inline Mapping fivequbit_ibm16() {
    const auto code = five_qubit();
    const auto roles = detail::with_data(5, {QubitRole::Syndrome, QubitRole::Flag, QubitRole::Flag});
    const std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> orders = {
        {{0, 6}, {1, 7}, {2, 7}, {3, 5}},
        {{1, 7}, {2, 7}, {3, 5}, {4, 6}},
        {{0, 6}, {2, 7}, {3, 5}, {4, 6}},
        {{0, 6}, {1, 7}, {3, 5}, {4, 6}},
    };
    const std::size_t dec_at[4] = {3, 4, 4, 4};
    QecProcedure proc{"fivequbit-ibm16", code, {}};
    for (std::size_t g = 0; g < 4; ++g) {
        proc.circuits.push_back(detail::windowed_block("S" + std::to_string(g), roles, code.generators[g], 5, {6, 7},
                                                       orders[g], 0, dec_at[g]));
    }
    return {"fivequbit-ibm16", proc, {{0, 4, 12, 13, 14, 2, 1, 3}}, ibm16()};
}

/// Same block as fivequbit-ibm16. Its interaction graph is a tree rooted at
/// the syndrome, so it fits the bipartite Surface-17 lattice exactly; a
/// two-ancilla block always closes an odd cycle there.
inline Mapping fivequbit_surface17() {
    auto proc = fivequbit_ibm16().procedure;
    proc.name = "fivequbit-surface17";
    return {"fivequbit-surface17", proc, {{0, 7, 8, 10, 1, 4, 9, 12}}, surface17()};
}

inline const std::vector<std::string>& builtin_mapping_names() {
    static const std::vector<std::string> names = {"steane-c1-L1", "steane-c1-L2", "steane-c2-L1",
                                                   "steane-c2-L2", "steane-c3-L2", "sc-d3",
                                                   "fivequbit-surface17", "fivequbit-ibm16"};
    return names;
}

inline Mapping builtin_mapping(const std::string& name) {
    if (name == "steane-c1-L1") {
        return steane_c1_l1();
    }
    if (name == "steane-c1-L2") {
        return steane_c1_l2();
    }
    if (name == "steane-c2-L1") {
        return steane_c2_l1();
    }
    if (name == "steane-c2-L2") {
        return steane_c2_l2();
    }
    if (name == "steane-c3-L2") {
        return steane_c3_l2();
    }
    if (name == "sc-d3") {
        return sc_d3();
    }
    if (name == "fivequbit-surface17") {
        return fivequbit_surface17();
    }
    if (name == "fivequbit-ibm16") {
        return fivequbit_ibm16();
    }
    throw ConfigError("unknown mapping \"" + name + "\"");
}

}  // namespace flagbridge
