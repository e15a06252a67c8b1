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
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flagbridge/pauli.hpp"

namespace flagbridge {

enum class GateKind : std::uint8_t { PrepZ, MeasZ, H, CNOT };

/// S: data <-> ancilla coupling. F: ancilla <-> ancilla.
enum class CnotClass : std::uint8_t { None, S, F };

enum class QubitRole : std::uint8_t { Data, Syndrome, Flag };

inline bool is_ancilla(QubitRole r) { return r != QubitRole::Data; }

inline const char* to_string(QubitRole r) {
    switch (r) {
        case QubitRole::Data:
            return "data";
        case QubitRole::Syndrome:
            return "syndrome";
        case QubitRole::Flag:
            return "flag";
    }
    return "?";
}

struct Gate {
    GateKind kind = GateKind::PrepZ;
    std::array<std::uint32_t, 2> qubits{};  // control first for CNOT
    CnotClass cnot_class = CnotClass::None;

    static Gate prep(std::uint32_t q) { return {GateKind::PrepZ, {q, 0}, CnotClass::None}; }
    static Gate meas(std::uint32_t q) { return {GateKind::MeasZ, {q, 0}, CnotClass::None}; }
    static Gate h(std::uint32_t q) { return {GateKind::H, {q, 0}, CnotClass::None}; }
    static Gate cnot(std::uint32_t control, std::uint32_t target, CnotClass cls) {
        return {GateKind::CNOT, {control, target}, cls};
    }

    std::size_t arity() const { return kind == GateKind::CNOT ? 2 : 1; }
    bool touches(std::uint32_t q) const { return qubits[0] == q || (arity() == 2 && qubits[1] == q); }

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// True iff the two gates commute as operators. PREP/MEAS never commute with
/// anything on a shared qubit.
inline bool gates_commute(const Gate& a, const Gate& b) {
    bool shared = false;
    for (std::size_t i = 0; i < a.arity(); ++i) {
        shared = shared || b.touches(a.qubits[i]);
    }
    if (!shared) {
        return true;
    }
    if (a.kind == GateKind::CNOT && b.kind == GateKind::CNOT) {
        return a.qubits[0] != b.qubits[1] && a.qubits[1] != b.qubits[0];
    }
    if (a.kind == GateKind::H && b.kind == GateKind::H) {
        return true;
    }
    return false;
}

struct MeasuredCheck {
    std::uint32_t syndrome_qubit = 0;
    PauliString target;  // over data qubits only

    friend bool operator==(const MeasuredCheck&, const MeasuredCheck&) = default;
};

/// One syndrome-extraction circuit, i.e. one c(g) covering one or more generators.
///
/// Qubits 0..num_data-1 are data; higher indices are ancillas. A procedure's
/// circuits share one qubit universe so `roles` is the same across them.
struct Circuit {
    std::string name;
    std::vector<QubitRole> roles;
    std::vector<std::vector<Gate>> timesteps;
    std::vector<MeasuredCheck> measured_checks;

    std::size_t num_qubits() const { return roles.size(); }

    std::size_t num_data() const {
        return static_cast<std::size_t>(std::count(roles.begin(), roles.end(), QubitRole::Data));
    }

    std::size_t depth() const { return timesteps.size(); }

    std::vector<Gate> flattened() const {
        std::vector<Gate> out;
        for (const auto& step : timesteps) {
            out.insert(out.end(), step.begin(), step.end());
        }
        return out;
    }

    std::size_t gate_count() const {
        std::size_t n = 0;
        for (const auto& step : timesteps) {
            n += step.size();
        }
        return n;
    }

    /// Measured ancillas with the syndrome role, in measured_checks order.
    std::vector<std::uint32_t> syndrome_qubits() const {
        std::vector<std::uint32_t> out;
        for (const auto& c : measured_checks) {
            out.push_back(c.syndrome_qubit);
        }
        return out;
    }

    /// Measured ancillas with the flag role, ascending.
    std::vector<std::uint32_t> flag_qubits() const {
        std::set<std::uint32_t> out;
        for (const auto& step : timesteps) {
            for (const auto& g : step) {
                if (g.kind == GateKind::MeasZ && roles.at(g.qubits[0]) == QubitRole::Flag) {
                    out.insert(g.qubits[0]);
                }
            }
        }
        return {out.begin(), out.end()};
    }

    /// Distinct ancillas touched by any gate.
    std::set<std::uint32_t> ancillas_used() const {
        std::set<std::uint32_t> out;
        for (const auto& step : timesteps) {
            for (const auto& g : step) {
                for (std::size_t i = 0; i < g.arity(); ++i) {
                    if (is_ancilla(roles.at(g.qubits[i]))) {
                        out.insert(g.qubits[i]);
                    }
                }
            }
        }
        return out;
    }

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// ASAP packing: each gate lands one timestep after the latest earlier gate
/// sharing a qubit. Relative order on every qubit is preserved.
inline std::vector<std::vector<Gate>> pack_asap(std::size_t num_qubits, const std::vector<Gate>& gates) {
    std::vector<std::size_t> frontier(num_qubits, 0);
    std::vector<std::vector<Gate>> steps;
    for (const auto& g : gates) {
        std::size_t t = 0;
        for (std::size_t i = 0; i < g.arity(); ++i) {
            if (g.qubits[i] >= num_qubits) {
                throw StructureError("gate qubit " + std::to_string(g.qubits[i]) + " out of range");
            }
            t = std::max(t, frontier[g.qubits[i]]);
        }
        if (steps.size() <= t) {
            steps.resize(t + 1);
        }
        steps[t].push_back(g);
        for (std::size_t i = 0; i < g.arity(); ++i) {
            frontier[g.qubits[i]] = t + 1;
        }
    }
    return steps;
}

/// Checks the structural invariants. Throws StructureError on the first violation.
inline void validate_structure(const Circuit& c) {
    const std::size_t n = c.num_qubits();
    const std::size_t nd = c.num_data();
    for (std::size_t q = 0; q < nd; ++q) {
        if (c.roles[q] != QubitRole::Data) {
            throw StructureError("data qubits must occupy indices 0.." + std::to_string(nd - 1));
        }
    }
    enum class State { Fresh, Live, Measured };
    std::vector<State> state(n, State::Fresh);
    for (std::size_t t = 0; t < c.timesteps.size(); ++t) {
        std::set<std::uint32_t> busy;
        for (const auto& g : c.timesteps[t]) {
            for (std::size_t i = 0; i < g.arity(); ++i) {
                const auto q = g.qubits[i];
                if (q >= n) {
                    throw StructureError("qubit " + std::to_string(q) + " out of range");
                }
                if (!busy.insert(q).second) {
                    throw StructureError("qubit " + std::to_string(q) + " used twice in timestep " + std::to_string(t));
                }
                if (!is_ancilla(c.roles[q])) {
                    continue;
                }
                if (g.kind == GateKind::PrepZ) {
                    state[q] = State::Live;
                } else if (state[q] != State::Live) {
                    throw StructureError("ancilla " + std::to_string(q) + " used before preparation or after measurement");
                } else if (g.kind == GateKind::MeasZ) {
                    state[q] = State::Measured;
                }
            }
            if (g.kind == GateKind::CNOT) {
                if (g.qubits[0] == g.qubits[1]) {
                    throw StructureError("CNOT with identical control and target");
                }
                const bool a0 = is_ancilla(c.roles[g.qubits[0]]);
                const bool a1 = is_ancilla(c.roles[g.qubits[1]]);
                const CnotClass expected = (a0 && a1) ? CnotClass::F : (a0 || a1) ? CnotClass::S : CnotClass::None;
                if (expected == CnotClass::None) {
                    throw StructureError("CNOT between two data qubits is not part of the gate set");
                }
                if (g.cnot_class != expected) {
                    throw StructureError("CNOT " + std::to_string(g.qubits[0]) + "->" + std::to_string(g.qubits[1]) +
                                         " has the wrong s/f class");
                }
            } else if (g.kind != GateKind::H && !is_ancilla(c.roles[g.qubits[0]])) {
                throw StructureError("prep/meas on a data qubit");
            }
        }
    }
    for (std::size_t q = nd; q < n; ++q) {
        if (state[q] == State::Live) {
            throw StructureError("ancilla " + std::to_string(q) + " is never measured");
        }
    }
    for (const auto& mc : c.measured_checks) {
        if (mc.syndrome_qubit >= n || c.roles[mc.syndrome_qubit] != QubitRole::Syndrome) {
            throw StructureError("check bound to non-syndrome qubit " + std::to_string(mc.syndrome_qubit));
        }
        if (state[mc.syndrome_qubit] != State::Measured) {
            throw StructureError("syndrome qubit " + std::to_string(mc.syndrome_qubit) + " is not measured");
        }
        if (mc.target.num_qubits() != nd) {
            throw StructureError("check target length differs from data qubit count");
        }
    }
}

/// Table-style circuit statistics of a sequentially executed circuit set.
struct CircuitStats {
    std::size_t ancillas = 0;
    std::size_t operations = 0;
    std::size_t f_cnots = 0;
    std::size_t s_cnots = 0;
    std::size_t timesteps = 0;

    friend bool operator==(const CircuitStats&, const CircuitStats&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const CircuitStats& s) {
    return os << '{' << s.ancillas << ", " << s.operations << ", " << s.f_cnots << ", " << s.s_cnots << ", "
              << s.timesteps << '}';
}

inline CircuitStats characterize(const std::vector<Circuit>& circuits) {
    CircuitStats s;
    std::set<std::uint32_t> ancillas;
    for (const auto& c : circuits) {
        const auto used = c.ancillas_used();
        ancillas.insert(used.begin(), used.end());
        s.timesteps += c.depth();
        for (const auto& step : c.timesteps) {
            for (const auto& g : step) {
                ++s.operations;
                if (g.kind == GateKind::CNOT) {
                    (g.cnot_class == CnotClass::F ? s.f_cnots : s.s_cnots) += 1;
                }
            }
        }
    }
    s.ancillas = ancillas.size();
    return s;
}

/// Re-orders the circuit's gates to `new_order` (a permutation of the
/// flattened gate indices) and re-packs ASAP. Every pair whose relative order
/// changes must commute.
inline Circuit commute_variant(const Circuit& c, const std::vector<std::size_t>& new_order) {
    const auto gates = c.flattened();
    if (new_order.size() != gates.size()) {
        throw CommutationError("reordering must list every gate exactly once");
    }
    std::vector<std::size_t> position(gates.size(), gates.size());
    for (std::size_t i = 0; i < new_order.size(); ++i) {
        if (new_order[i] >= gates.size() || position[new_order[i]] != gates.size()) {
            throw CommutationError("reordering is not a permutation");
        }
        position[new_order[i]] = i;
    }
    for (std::size_t a = 0; a < gates.size(); ++a) {
        for (std::size_t b = a + 1; b < gates.size(); ++b) {
            if (position[a] > position[b] && !gates_commute(gates[a], gates[b])) {
                throw CommutationError("gates " + std::to_string(a) + " and " + std::to_string(b) +
                                       " do not commute and cannot be exchanged");
            }
        }
    }
    std::vector<Gate> reordered;
    reordered.reserve(gates.size());
    for (auto i : new_order) {
        reordered.push_back(gates[i]);
    }
    Circuit out = c;
    out.timesteps = pack_asap(c.num_qubits(), reordered);
    return out;
}

/// Index of the first flattened gate equal to `g`; throws if absent.
inline std::size_t find_gate(const Circuit& c, const Gate& g) {
    const auto gates = c.flattened();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (gates[i] == g) {
            return i;
        }
    }
    throw StructureError("gate not found in circuit");
}

// ---------------------------------------------------------------------------
// Measurement verification (Heisenberg picture).

struct CheckVerification {
    std::uint32_t qubit = 0;
    bool is_flag = false;
    bool pass = false;
    PauliString pulled_back;  // restricted to data qubits
    std::string detail;
};

struct MeasureReport {
    bool pass = true;
    std::vector<CheckVerification> results;
};

namespace detail {

/// Conjugates `op` (over all circuit qubits) backward through the gates before
/// the measurement of `measured`. Returns the operator restricted to data and
/// a failure reason (empty on success).
inline std::pair<PauliString, std::string> pull_back_measurement(const Circuit& c, std::uint32_t measured) {
    const std::size_t n = c.num_qubits();
    const std::size_t nd = c.num_data();
    // Locate the measurement.
    std::ptrdiff_t meas_t = -1;
    for (std::size_t t = 0; t < c.timesteps.size() && meas_t < 0; ++t) {
        for (const auto& g : c.timesteps[t]) {
            if (g.kind == GateKind::MeasZ && g.qubits[0] == measured) {
                meas_t = static_cast<std::ptrdiff_t>(t);
            }
        }
    }
    if (meas_t < 0) {
        return {PauliString(nd), "qubit is never measured"};
    }
    std::uint64_t xs = 0;
    std::uint64_t zs = std::uint64_t{1} << measured;
    auto bit = [](std::uint64_t w, std::uint32_t q) { return (w >> q) & 1U; };
    for (std::ptrdiff_t t = meas_t - 1; t >= 0; --t) {
        for (const auto& g : c.timesteps[static_cast<std::size_t>(t)]) {
            const auto a = g.qubits[0];
            switch (g.kind) {
                case GateKind::H: {
                    const auto xa = bit(xs, a);
                    const auto za = bit(zs, a);
                    if (xa != za) {
                        xs ^= std::uint64_t{1} << a;
                        zs ^= std::uint64_t{1} << a;
                    }
                    break;
                }
                case GateKind::CNOT: {
                    const auto b = g.qubits[1];
                    if (bit(xs, a)) {
                        xs ^= std::uint64_t{1} << b;
                    }
                    if (bit(zs, b)) {
                        zs ^= std::uint64_t{1} << a;
                    }
                    break;
                }
                case GateKind::PrepZ:
                    if (bit(xs, a)) {
                        return {PauliString(nd), "operator has X/Y support on qubit " + std::to_string(a) +
                                                     " at its Z-basis preparation"};
                    }
                    zs &= ~(std::uint64_t{1} << a);
                    break;
                case GateKind::MeasZ:
                    if (bit(xs, a)) {
                        return {PauliString(nd), "operator anticommutes with earlier measurement of qubit " +
                                                     std::to_string(a)};
                    }
                    break;
            }
        }
    }
    const std::uint64_t data_mask = PauliString::qubit_mask(nd);
    const std::uint64_t anc_mask = PauliString::qubit_mask(n) & ~data_mask;
    if (((xs | zs) & anc_mask) != 0) {
        return {PauliString(nd, xs & data_mask, zs & data_mask), "operator acts on an unprepared ancilla"};
    }
    return {PauliString(nd, xs & data_mask, zs & data_mask), ""};
}

}  // namespace detail

/// Proves each syndrome qubit reads out its target check and each flag
/// qubit carries no data information in the fault-free circuit.
inline MeasureReport verify_measures(const Circuit& c) {
    validate_structure(c);
    MeasureReport report;
    for (const auto& mc : c.measured_checks) {
        auto [op, why] = detail::pull_back_measurement(c, mc.syndrome_qubit);
        CheckVerification v{mc.syndrome_qubit, false, false, op, why};
        if (why.empty()) {
            v.pass = op == mc.target;
            if (!v.pass) {
                v.detail = "pulled back " + op.str() + " but expected " + mc.target.str();
            }
        }
        report.pass = report.pass && v.pass;
        report.results.push_back(std::move(v));
    }
    for (auto f : c.flag_qubits()) {
        auto [op, why] = detail::pull_back_measurement(c, f);
        CheckVerification v{f, true, false, op, why};
        if (why.empty()) {
            v.pass = op.is_identity();
            if (!v.pass) {
                v.detail = "flag qubit reads data operator " + op.str();
            }
        }
        report.pass = report.pass && v.pass;
        report.results.push_back(std::move(v));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Text format, line based:
//
//   circuit <name>            starts a new circuit (optional for a single one)
//   qubit <idx> <data|syndrome|flag>
//   prep <q> | meas <q> | h <q> | cnot <c> <t> <s|f>
//   tick                      ends the current timestep
//   check <syndrome_q> <pauli over data qubits>
//
// Qubit declarations are shared by every circuit of the file.

inline void write_circuits(std::ostream& os, const std::vector<Circuit>& circuits) {
    if (circuits.empty()) {
        return;
    }
    const auto& roles = circuits.front().roles;
    for (std::size_t q = 0; q < roles.size(); ++q) {
        os << "qubit " << q << ' ' << to_string(roles[q]) << '\n';
    }
    for (const auto& c : circuits) {
        os << "circuit " << (c.name.empty() ? "unnamed" : c.name) << '\n';
        for (std::size_t t = 0; t < c.timesteps.size(); ++t) {
            for (const auto& g : c.timesteps[t]) {
                switch (g.kind) {
                    case GateKind::PrepZ:
                        os << "prep " << g.qubits[0] << '\n';
                        break;
                    case GateKind::MeasZ:
                        os << "meas " << g.qubits[0] << '\n';
                        break;
                    case GateKind::H:
                        os << "h " << g.qubits[0] << '\n';
                        break;
                    case GateKind::CNOT:
                        os << "cnot " << g.qubits[0] << ' ' << g.qubits[1] << ' '
                           << (g.cnot_class == CnotClass::F ? 'f' : 's') << '\n';
                        break;
                }
            }
            os << "tick\n";
        }
        for (const auto& mc : c.measured_checks) {
            os << "check " << mc.syndrome_qubit << ' ' << mc.target.str() << '\n';
        }
    }
}

inline std::vector<Circuit> read_circuits(std::istream& is) {
    std::map<std::uint32_t, QubitRole> declared;
    std::vector<Circuit> circuits;
    std::vector<std::vector<Gate>> pending_steps;
    std::vector<Gate> current;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) { throw ParseError("line " + std::to_string(line_no) + ": " + why); };
    auto need_circuit = [&]() {
        if (circuits.empty()) {
            circuits.emplace_back();
            circuits.back().name = "circuit0";
        }
    };
    auto flush_step = [&]() {
        if (!current.empty()) {
            circuits.back().timesteps.push_back(current);
            current.clear();
        }
    };
    std::string line;
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op) || op[0] == '#') {
            continue;
        }
        auto read_q = [&]() {
            long long v = -1;
            if (!(ls >> v) || v < 0) {
                fail("expected a qubit index");
            }
            return static_cast<std::uint32_t>(v);
        };
        if (op == "qubit") {
            const auto q = read_q();
            std::string role;
            ls >> role;
            if (role == "data") {
                declared[q] = QubitRole::Data;
            } else if (role == "syndrome") {
                declared[q] = QubitRole::Syndrome;
            } else if (role == "flag") {
                declared[q] = QubitRole::Flag;
            } else {
                fail("unknown role '" + role + "'");
            }
        } else if (op == "circuit") {
            if (!circuits.empty()) {
                flush_step();
            }
            circuits.emplace_back();
            ls >> circuits.back().name;
        } else if (op == "tick") {
            need_circuit();
            circuits.back().timesteps.push_back(current);
            current.clear();
        } else if (op == "prep" || op == "meas" || op == "h") {
            need_circuit();
            const auto q = read_q();
            current.push_back(op == "prep" ? Gate::prep(q) : op == "meas" ? Gate::meas(q) : Gate::h(q));
        } else if (op == "cnot") {
            need_circuit();
            const auto c = read_q();
            const auto t = read_q();
            std::string cls;
            ls >> cls;
            if (cls != "s" && cls != "f") {
                fail("cnot class must be s or f");
            }
            current.push_back(Gate::cnot(c, t, cls == "f" ? CnotClass::F : CnotClass::S));
        } else if (op == "check") {
            need_circuit();
            const auto q = read_q();
            std::string pauli;
            if (!(ls >> pauli)) {
                fail("check needs a Pauli string");
            }
            circuits.back().measured_checks.push_back({q, PauliString::parse(pauli)});
        } else {
            fail("unknown instruction '" + op + "'");
        }
    }
    if (!circuits.empty()) {
        flush_step();
    }
    // Qubit universe: dense 0..max declared.
    std::vector<QubitRole> roles;
    if (!declared.empty()) {
        roles.assign(declared.rbegin()->first + 1, QubitRole::Data);
        for (std::uint32_t q = 0; q < roles.size(); ++q) {
            auto it = declared.find(q);
            if (it == declared.end()) {
                throw ParseError("qubit " + std::to_string(q) + " is not declared");
            }
            roles[q] = it->second;
        }
    }
    for (auto& c : circuits) {
        c.roles = roles;
        validate_structure(c);
    }
    return circuits;
}

}  // namespace flagbridge
