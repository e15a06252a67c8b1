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

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flagbridge/circuit.hpp"

namespace flagbridge {

/// Measurement of p checks through m ancillas forming an [[m,p,1]] block.
///
/// The block's flags are prepared in the basis conjugate to the checks and
/// entangled with the syndrome qubits by `encoding_edges`; a data coupling on
/// a flag contributes to check j exactly when it sits between the encoding
/// and the decoding CNOT of the edge (flag, syndrome_j).
struct FlagBridgeSpec {
    struct Coupling {
        std::uint32_t data = 0;
        std::uint32_t ancilla = 0;
        char letter = 0;  // 'X' or 'Z'; 0 infers it from the checks
    };

    enum class StepKind : std::uint8_t { Encode, Couple, Decode };

    struct Step {
        StepKind kind = StepKind::Couple;
        std::size_t index = 0;  // into encoding_edges or couplings
    };

    std::string name;
    /// Role of every qubit in the procedure's universe; data first.
    std::vector<QubitRole> roles;
    std::vector<PauliString> checks;
    std::vector<std::uint32_t> syndrome_qubits;  // syndrome_qubits[j] reads checks[j]
    std::vector<std::uint32_t> flag_qubits;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> encoding_edges;  // (flag, syndrome)
    std::vector<Coupling> couplings;  // the s-CNOT distribution
    /// Gate order of the block body. Empty means: all encodings, all
    /// couplings, then the decodings in reverse encoding order.
    std::vector<Step> program;

    static Step encode(std::size_t edge) { return {StepKind::Encode, edge}; }
    static Step couple(std::size_t coupling) { return {StepKind::Couple, coupling}; }
    static Step decode(std::size_t edge) { return {StepKind::Decode, edge}; }
};

namespace detail {

inline char infer_letter(const FlagBridgeSpec& spec, const FlagBridgeSpec::Coupling& c) {
    char letter = 0;
    for (std::size_t j = 0; j < spec.checks.size(); ++j) {
        const auto& chk = spec.checks[j];
        if (c.data >= chk.num_qubits()) {
            throw SpecError("coupling data qubit out of range");
        }
        const char l = chk.letter(c.data);
        if (l == 'I') {
            continue;
        }
        if (spec.syndrome_qubits[j] != c.ancilla && std::find(spec.flag_qubits.begin(), spec.flag_qubits.end(),
                                                              c.ancilla) == spec.flag_qubits.end()) {
            continue;
        }
        if (letter != 0 && letter != l) {
            throw SpecError("coupling of data qubit " + std::to_string(c.data) + " serves checks with different letters");
        }
        letter = l;
    }
    if (letter == 0) {
        throw SpecError("coupling of data qubit " + std::to_string(c.data) + " serves no check");
    }
    return letter;
}

}  // namespace detail

/// Builds the block circuit: prep, basis change on the roots, encoding,
/// couplings, decoding, basis change, measurement; packed ASAP in program order.
///
/// Z-only blocks use flags as roots (H before and after) with flag->syndrome
/// encodings and data->ancilla couplings. Blocks containing X letters use the
/// syndromes as roots, syndrome->flag encodings and ancilla->data couplings;
/// a Z letter in such a block is the CZ decomposition H, CNOT(ancilla->data), H.
inline Circuit build_flag_bridge(const FlagBridgeSpec& spec) {
    const std::size_t nq = spec.roles.size();
    const std::size_t nd = static_cast<std::size_t>(std::count(spec.roles.begin(), spec.roles.end(), QubitRole::Data));
    if (spec.checks.empty() || spec.checks.size() != spec.syndrome_qubits.size()) {
        throw SpecError("need one syndrome qubit per check");
    }
    bool any_x = false;
    for (const auto& chk : spec.checks) {
        if (chk.num_qubits() != nd) {
            throw SpecError("check length differs from data qubit count");
        }
        if ((chk.xs() & chk.zs()) != 0) {
            throw SpecError("Y letters are not supported by CNOT couplings: " + chk.str());
        }
        any_x = any_x || chk.xs() != 0;
    }
    std::set<std::uint32_t> block;
    for (auto s : spec.syndrome_qubits) {
        if (s >= nq || spec.roles[s] != QubitRole::Syndrome || !block.insert(s).second) {
            throw SpecError("syndrome qubit " + std::to_string(s) + " invalid or repeated");
        }
    }
    for (auto f : spec.flag_qubits) {
        if (f >= nq || spec.roles[f] != QubitRole::Flag || !block.insert(f).second) {
            throw SpecError("flag qubit " + std::to_string(f) + " invalid or repeated");
        }
    }
    for (auto f : spec.flag_qubits) {
        const bool used = std::any_of(spec.encoding_edges.begin(), spec.encoding_edges.end(),
                                      [&](const auto& e) { return e.first == f; });
        if (!used) {
            throw SpecError("flag qubit " + std::to_string(f) + " appears in no encoding edge");
        }
    }
    for (const auto& [f, s] : spec.encoding_edges) {
        const bool ok_f = std::find(spec.flag_qubits.begin(), spec.flag_qubits.end(), f) != spec.flag_qubits.end();
        const bool ok_s =
            std::find(spec.syndrome_qubits.begin(), spec.syndrome_qubits.end(), s) != spec.syndrome_qubits.end();
        if (!ok_f || !ok_s) {
            throw SpecError("encoding edge must join a flag and a syndrome qubit of the block");
        }
    }

    const bool x_role = any_x;
    std::vector<std::uint32_t> roots = x_role ? spec.syndrome_qubits : spec.flag_qubits;
    auto f_cnot = [&](const std::pair<std::uint32_t, std::uint32_t>& e) {
        return x_role ? Gate::cnot(e.second, e.first, CnotClass::F) : Gate::cnot(e.first, e.second, CnotClass::F);
    };

    std::vector<Gate> gates;
    for (auto q : block) {
        gates.push_back(Gate::prep(q));
    }
    for (auto q : roots) {
        gates.push_back(Gate::h(q));
    }

    std::vector<FlagBridgeSpec::Step> program = spec.program;
    if (program.empty()) {
        for (std::size_t i = 0; i < spec.encoding_edges.size(); ++i) {
            program.push_back(FlagBridgeSpec::encode(i));
        }
        for (std::size_t i = 0; i < spec.couplings.size(); ++i) {
            program.push_back(FlagBridgeSpec::couple(i));
        }
        for (std::size_t i = spec.encoding_edges.size(); i > 0; --i) {
            program.push_back(FlagBridgeSpec::decode(i - 1));
        }
    }
    std::vector<int> enc_seen(spec.encoding_edges.size(), 0);
    std::vector<int> dec_seen(spec.encoding_edges.size(), 0);
    std::vector<int> cpl_seen(spec.couplings.size(), 0);
    for (const auto& step : program) {
        switch (step.kind) {
            case FlagBridgeSpec::StepKind::Encode:
            case FlagBridgeSpec::StepKind::Decode: {
                if (step.index >= spec.encoding_edges.size()) {
                    throw SpecError("program references unknown encoding edge");
                }
                auto& seen = step.kind == FlagBridgeSpec::StepKind::Encode ? enc_seen : dec_seen;
                if (step.kind == FlagBridgeSpec::StepKind::Decode && enc_seen[step.index] == 0) {
                    throw SpecError("decoding before encoding of edge " + std::to_string(step.index));
                }
                ++seen[step.index];
                gates.push_back(f_cnot(spec.encoding_edges[step.index]));
                break;
            }
            case FlagBridgeSpec::StepKind::Couple: {
                if (step.index >= spec.couplings.size()) {
                    throw SpecError("program references unknown coupling");
                }
                ++cpl_seen[step.index];
                const auto& c = spec.couplings[step.index];
                if (c.data >= nd || block.count(c.ancilla) == 0) {
                    throw SpecError("coupling must join a data qubit and an ancilla of the block");
                }
                const char letter = c.letter != 0 ? c.letter : detail::infer_letter(spec, c);
                if (letter != 'X' && letter != 'Z') {
                    throw SpecError(std::string("unsupported coupling letter '") + letter + "'");
                }
                if (!x_role) {
                    gates.push_back(Gate::cnot(c.data, c.ancilla, CnotClass::S));
                } else if (letter == 'X') {
                    gates.push_back(Gate::cnot(c.ancilla, c.data, CnotClass::S));
                } else {
                    gates.push_back(Gate::h(c.data));
                    gates.push_back(Gate::cnot(c.ancilla, c.data, CnotClass::S));
                    gates.push_back(Gate::h(c.data));
                }
                break;
            }
        }
    }
    for (std::size_t i = 0; i < spec.encoding_edges.size(); ++i) {
        if (enc_seen[i] != 1 || dec_seen[i] != 1) {
            throw SpecError("every encoding edge needs exactly one encode and one decode step");
        }
    }
    for (std::size_t i = 0; i < spec.couplings.size(); ++i) {
        if (cpl_seen[i] != 1) {
            throw SpecError("every coupling must appear exactly once in the program");
        }
    }
    for (auto q : roots) {
        gates.push_back(Gate::h(q));
    }
    for (auto q : block) {
        gates.push_back(Gate::meas(q));
    }

    Circuit c;
    c.name = spec.name;
    c.roles = spec.roles;
    c.timesteps = pack_asap(nq, gates);
    for (std::size_t j = 0; j < spec.checks.size(); ++j) {
        c.measured_checks.push_back({spec.syndrome_qubits[j], spec.checks[j]});
    }
    const auto report = verify_measures(c);
    if (!report.pass) {
        std::string why;
        for (const auto& r : report.results) {
            if (!r.pass) {
                why += (why.empty() ? "" : "; ") + std::string(r.is_flag ? "flag " : "syndrome ") +
                       std::to_string(r.qubit) + ": " + r.detail;
            }
        }
        throw SpecError("s-CNOT distribution does not measure the requested checks (" + why + ")");
    }
    return c;
}

/// Single-ancilla extraction of one check (no flags): the bare circuit.
inline Circuit build_bare_check(const std::string& name, const std::vector<QubitRole>& roles, const PauliString& check,
                                std::uint32_t ancilla, const std::vector<std::uint32_t>& order) {
    FlagBridgeSpec spec;
    spec.name = name;
    spec.roles = roles;
    spec.checks = {check};
    spec.syndrome_qubits = {ancilla};
    for (auto q : order) {
        spec.couplings.push_back({q, ancilla, 0});
    }
    return build_flag_bridge(spec);
}

}  // namespace flagbridge
