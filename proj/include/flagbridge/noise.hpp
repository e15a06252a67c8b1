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
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "flagbridge/circuit.hpp"

namespace flagbridge {

/// Circuit-level Pauli noise: gates, preparations and measurements fail with
/// probability p, idle qubit-timesteps with probability p_idle.
struct NoiseModel {
    double p = 0.0;
    double p_idle = 0.0;

    static NoiseModel with_idle_ratio(double p, double ratio) { return {p, p * ratio}; }

    void validate() const {
        auto ok = [](double v) { return v >= 0.0 && v <= 1.0 && std::isfinite(v); };
        if (!ok(p) || !ok(p_idle)) {
            throw ConfigError("noise rates must lie in [0, 1]");
        }
    }
};

enum class FaultKind : std::uint8_t { Gate1, Gate2, Prep, Meas, Idle };

inline const char* to_string(FaultKind k) {
    switch (k) {
        case FaultKind::Gate1:
            return "gate1";
        case FaultKind::Gate2:
            return "gate2";
        case FaultKind::Prep:
            return "prep";
        case FaultKind::Meas:
            return "meas";
        case FaultKind::Idle:
            return "idle";
    }
    return "?";
}

/// One fault at one location of a circuit-set execution.
///
/// `index` is the gate's position inside its timestep, or the idle qubit.
/// `code` packs the Pauli: 2 bits per touched qubit (bit0 = X, bit1 = Z),
/// control in the low bits for two-qubit gates. Prep/meas faults use code 1
/// (a prep fault is an X after preparation, a meas fault flips the outcome).
struct Fault {
    FaultKind kind = FaultKind::Gate1;
    std::uint32_t circuit = 0;
    std::uint32_t timestep = 0;
    std::uint32_t index = 0;
    std::uint8_t code = 0;
    std::uint8_t round = 1;

    friend bool operator==(const Fault&, const Fault&) = default;
};

/// Qubits touched by the fault's location.
inline std::vector<std::uint32_t> fault_qubits(const Fault& f, const std::vector<Circuit>& circuits) {
    if (f.kind == FaultKind::Idle) {
        return {f.index};
    }
    const auto& g = circuits.at(f.circuit).timesteps.at(f.timestep).at(f.index);
    if (g.arity() == 2) {
        return {g.qubits[0], g.qubits[1]};
    }
    return {g.qubits[0]};
}

/// The injected Pauli over the whole qubit universe (a meas flip renders as X).
inline PauliString fault_pauli(const Fault& f, const std::vector<Circuit>& circuits) {
    const auto qs = fault_qubits(f, circuits);
    PauliString p(circuits.at(f.circuit).num_qubits());
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const unsigned c = (f.code >> (2 * i)) & 3U;
        static constexpr char kLetter[4] = {'I', 'X', 'Z', 'Y'};
        p.set(qs[i], kLetter[c]);
    }
    return p;
}

inline std::string describe(const Fault& f, const std::vector<Circuit>& circuits) {
    std::string s = std::string(to_string(f.kind)) + " r" + std::to_string(f.round) + " c" + std::to_string(f.circuit) +
                    " t" + std::to_string(f.timestep) + (f.kind == FaultKind::Idle ? " q" : " g") +
                    std::to_string(f.index);
    const auto qs = fault_qubits(f, circuits);
    s += " ";
    for (std::size_t i = 0; i < qs.size(); ++i) {
        static constexpr char kLetter[4] = {'I', 'X', 'Z', 'Y'};
        s += kLetter[(f.code >> (2 * i)) & 3U];
        s += std::to_string(qs[i]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Compiled form used by every simulator in the library.

enum class OpKind : std::uint8_t { Prep, Meas, H, CNOT, Idle };

struct Op {
    OpKind kind = OpKind::Idle;
    std::uint32_t q0 = 0;
    std::uint32_t q1 = 0;
    std::uint32_t timestep = 0;
    std::uint32_t index = 0;  // gate index in timestep, or qubit for Idle
    std::int32_t bit = -1;    // measurement bit within the circuit's record
};

/// A circuit lowered to a flat op list with idle locations made explicit.
///
/// Measurement record layout: syndrome qubits in measured_checks order, then
/// flag qubits ascending. Idle locations: every (qubit, timestep) with no gate
/// where the qubit is a data qubit, or an ancilla between its preparation and
/// its measurement. Idle noise lands after the gates of that timestep.
struct CompiledCircuit {
    std::vector<Op> ops;
    std::size_t num_syndrome_bits = 0;
    std::size_t num_flag_bits = 0;
    std::size_t num_qubits = 0;
    std::size_t num_data = 0;

    std::size_t num_bits() const { return num_syndrome_bits + num_flag_bits; }
};

inline CompiledCircuit compile(const Circuit& c) {
    validate_structure(c);
    CompiledCircuit out;
    out.num_qubits = c.num_qubits();
    out.num_data = c.num_data();
    const auto syn = c.syndrome_qubits();
    const auto flags = c.flag_qubits();
    out.num_syndrome_bits = syn.size();
    out.num_flag_bits = flags.size();
    if (out.num_bits() > 64) {
        throw StructureError("a circuit may measure at most 64 ancillas");
    }
    std::vector<std::int32_t> bit_of(c.num_qubits(), -1);
    for (std::size_t i = 0; i < syn.size(); ++i) {
        bit_of[syn[i]] = static_cast<std::int32_t>(i);
    }
    for (std::size_t i = 0; i < flags.size(); ++i) {
        bit_of[flags[i]] = static_cast<std::int32_t>(syn.size() + i);
    }
    // Ancilla live intervals [prep, meas].
    const std::size_t n = c.num_qubits();
    std::vector<std::int64_t> first(n, -1);
    std::vector<std::int64_t> last(n, -1);
    for (std::size_t t = 0; t < c.timesteps.size(); ++t) {
        for (const auto& g : c.timesteps[t]) {
            const auto q = g.qubits[0];
            if (g.kind == GateKind::PrepZ && first[q] < 0) {
                first[q] = static_cast<std::int64_t>(t);
            }
            if (g.kind == GateKind::MeasZ) {
                last[q] = static_cast<std::int64_t>(t);
            }
        }
    }
    for (std::size_t t = 0; t < c.timesteps.size(); ++t) {
        std::uint64_t busy = 0;
        for (std::size_t i = 0; i < c.timesteps[t].size(); ++i) {
            const auto& g = c.timesteps[t][i];
            Op op;
            op.q0 = g.qubits[0];
            op.q1 = g.qubits[1];
            op.timestep = static_cast<std::uint32_t>(t);
            op.index = static_cast<std::uint32_t>(i);
            switch (g.kind) {
                case GateKind::PrepZ:
                    op.kind = OpKind::Prep;
                    break;
                case GateKind::MeasZ:
                    op.kind = OpKind::Meas;
                    op.bit = bit_of[g.qubits[0]];
                    if (op.bit < 0) {
                        throw StructureError("measured ancilla " + std::to_string(g.qubits[0]) +
                                             " is neither a bound syndrome qubit nor a flag");
                    }
                    break;
                case GateKind::H:
                    op.kind = OpKind::H;
                    break;
                case GateKind::CNOT:
                    op.kind = OpKind::CNOT;
                    break;
            }
            busy |= std::uint64_t{1} << g.qubits[0];
            if (g.arity() == 2) {
                busy |= std::uint64_t{1} << g.qubits[1];
            }
            out.ops.push_back(op);
        }
        for (std::uint32_t q = 0; q < n; ++q) {
            if ((busy >> q) & 1U) {
                continue;
            }
            const bool active = q < out.num_data || (first[q] >= 0 && static_cast<std::int64_t>(t) > first[q] &&
                                                     static_cast<std::int64_t>(t) < last[q]);
            if (active) {
                Op op;
                op.kind = OpKind::Idle;
                op.q0 = q;
                op.timestep = static_cast<std::uint32_t>(t);
                op.index = q;
                out.ops.push_back(op);
            }
        }
    }
    return out;
}

/// Phase-free error frame over the whole qubit universe.
struct Frame {
    std::uint64_t xs = 0;
    std::uint64_t zs = 0;

    void apply_code(std::uint32_t q, unsigned code) {
        if (code & 1U) {
            xs ^= std::uint64_t{1} << q;
        }
        if (code & 2U) {
            zs ^= std::uint64_t{1} << q;
        }
    }

    PauliString data_part(std::size_t num_data) const {
        const auto m = PauliString::qubit_mask(num_data);
        return PauliString(num_data, xs & m, zs & m);
    }
};

/// Executes one compiled circuit on `frame`. `noise` decides faults per op
/// through `code_after(circuit, op)` (0 = no fault); prep faults set X,
/// meas faults flip the recorded bit. Returns the measurement flips.
template <typename Noise>
std::uint64_t execute(const CompiledCircuit& cc, std::uint32_t circuit_index, Frame& frame, Noise& noise) {
    std::uint64_t bits = 0;
    for (const auto& op : cc.ops) {
        const std::uint64_t b0 = std::uint64_t{1} << op.q0;
        switch (op.kind) {
            case OpKind::Prep:
                frame.xs &= ~b0;
                frame.zs &= ~b0;
                if (noise.code_after(circuit_index, op) != 0) {
                    frame.xs |= b0;
                }
                break;
            case OpKind::Meas: {
                std::uint64_t v = (frame.xs >> op.q0) & 1U;
                if (noise.code_after(circuit_index, op) != 0) {
                    v ^= 1U;
                }
                bits |= v << op.bit;
                break;
            }
            case OpKind::H: {
                const std::uint64_t x = frame.xs & b0;
                const std::uint64_t z = frame.zs & b0;
                frame.xs = (frame.xs & ~b0) | z;
                frame.zs = (frame.zs & ~b0) | x;
                if (auto code = noise.code_after(circuit_index, op)) {
                    frame.apply_code(op.q0, code);
                }
                break;
            }
            case OpKind::CNOT: {
                const std::uint64_t b1 = std::uint64_t{1} << op.q1;
                if (frame.xs & b0) {
                    frame.xs ^= b1;
                }
                if (frame.zs & b1) {
                    frame.zs ^= b0;
                }
                if (auto code = noise.code_after(circuit_index, op)) {
                    frame.apply_code(op.q0, code & 3U);
                    frame.apply_code(op.q1, (code >> 2) & 3U);
                }
                break;
            }
            case OpKind::Idle:
                if (auto code = noise.code_after(circuit_index, op)) {
                    frame.apply_code(op.q0, code);
                }
                break;
        }
    }
    return bits;
}

inline FaultKind fault_kind_of(OpKind k) {
    switch (k) {
        case OpKind::Prep:
            return FaultKind::Prep;
        case OpKind::Meas:
            return FaultKind::Meas;
        case OpKind::H:
            return FaultKind::Gate1;
        case OpKind::CNOT:
            return FaultKind::Gate2;
        case OpKind::Idle:
            return FaultKind::Idle;
    }
    return FaultKind::Idle;
}

inline unsigned fault_options(OpKind k) {
    switch (k) {
        case OpKind::Prep:
        case OpKind::Meas:
            return 1;
        case OpKind::CNOT:
            return 15;
        default:
            return 3;
    }
}

/// Code of the i-th fault option (1-based) at an op of this kind.
inline std::uint8_t fault_code(OpKind k, unsigned option) {
    if (k == OpKind::Prep || k == OpKind::Meas) {
        return 1;
    }
    return static_cast<std::uint8_t>(option);
}

/// Every single fault: 3 per one-qubit gate, 15 per CNOT, 1 per prep and per
/// meas, plus 3 per idle location when requested. All tagged round 1.
inline std::vector<Fault> enumerate_single_faults(const std::vector<Circuit>& circuits, bool include_idle) {
    std::vector<Fault> out;
    for (std::uint32_t ci = 0; ci < circuits.size(); ++ci) {
        const auto cc = compile(circuits[ci]);
        for (const auto& op : cc.ops) {
            if (op.kind == OpKind::Idle && !include_idle) {
                continue;
            }
            for (unsigned o = 1; o <= fault_options(op.kind); ++o) {
                out.push_back({fault_kind_of(op.kind), ci, op.timestep, op.index, fault_code(op.kind, o), 1});
            }
        }
    }
    return out;
}

/// Independent Bernoulli noise drawn from a standard engine.
class SampledNoise {
   public:
    SampledNoise(const NoiseModel& model, std::uint64_t seed) : rng_(seed) {
        model.validate();
        gate_threshold_ = threshold(model.p);
        idle_threshold_ = threshold(model.p_idle);
    }

    std::uint8_t code_after(std::uint32_t, const Op& op) {
        const std::uint64_t t = op.kind == OpKind::Idle ? idle_threshold_ : gate_threshold_;
        if (t == 0) {
            return 0;
        }
        if (t != kAlways && rng_() >= t) {
            return 0;
        }
        const unsigned options = fault_options(op.kind);
        if (options == 1) {
            return 1;
        }
        std::uniform_int_distribution<unsigned> pick(1, options);
        return static_cast<std::uint8_t>(pick(rng_));
    }

    void set_round(std::uint8_t) {}

    std::mt19937_64& engine() { return rng_; }

   private:
    static constexpr std::uint64_t kAlways = std::numeric_limits<std::uint64_t>::max();

    /// P(rng() < t) == rate, to 2^-64 resolution.
    static std::uint64_t threshold(double rate) {
        if (rate <= 0.0) {
            return 0;
        }
        if (rate >= 1.0) {
            return kAlways;
        }
        return static_cast<std::uint64_t>(std::ldexp(rate, 64));
    }

    std::mt19937_64 rng_;
    std::uint64_t gate_threshold_ = 0;
    std::uint64_t idle_threshold_ = 0;
};

/// Replays an explicit fault list; faults carry the round they belong to.
class InjectedNoise {
   public:
    explicit InjectedNoise(std::vector<Fault> faults) : faults_(std::move(faults)) {}

    void set_round(std::uint8_t round) { round_ = round; }

    std::uint8_t code_after(std::uint32_t circuit, const Op& op) {
        std::uint8_t code = 0;
        const FaultKind kind = fault_kind_of(op.kind);
        for (const auto& f : faults_) {
            if (f.round == round_ && f.circuit == circuit && f.timestep == op.timestep && f.index == op.index &&
                f.kind == kind) {
                code ^= f.code;
            }
        }
        return code;
    }

   private:
    std::vector<Fault> faults_;
    std::uint8_t round_ = 1;
};

/// Samples one execution's faults location by location.
inline std::vector<Fault> sample_faults(const std::vector<Circuit>& circuits, const NoiseModel& model,
                                        std::uint64_t seed) {
    SampledNoise noise(model, seed);
    std::vector<Fault> out;
    for (std::uint32_t ci = 0; ci < circuits.size(); ++ci) {
        const auto cc = compile(circuits[ci]);
        for (const auto& op : cc.ops) {
            if (auto code = noise.code_after(ci, op)) {
                out.push_back({fault_kind_of(op.kind), ci, op.timestep, op.index, code, 1});
            }
        }
    }
    return out;
}

/// Outcome of one pass through a circuit set.
struct PropagationResult {
    PauliString residual;                  // data-qubit frame after the last circuit
    std::vector<std::uint64_t> meas_bits;  // per circuit, compiled record layout
};

/// Runs the circuits once, in order, with the faults injected after their
/// locations. Fault rounds are ignored.
inline PropagationResult propagate(const std::vector<Circuit>& circuits, const std::vector<Fault>& faults) {
    std::vector<CompiledCircuit> compiled;
    for (const auto& c : circuits) {
        compiled.push_back(compile(c));
    }
    for (const auto& f : faults) {
        if (f.circuit >= circuits.size()) {
            throw FaultBindingError("fault references circuit " + std::to_string(f.circuit));
        }
        const auto& cc = compiled[f.circuit];
        const FaultKind kind = f.kind;
        const bool found = std::any_of(cc.ops.begin(), cc.ops.end(), [&](const Op& op) {
            return op.timestep == f.timestep && op.index == f.index && fault_kind_of(op.kind) == kind;
        });
        if (!found) {
            throw FaultBindingError("no " + std::string(to_string(f.kind)) + " location at circuit " +
                                    std::to_string(f.circuit) + " timestep " + std::to_string(f.timestep) +
                                    " index " + std::to_string(f.index));
        }
    }
    std::vector<Fault> single_round = faults;
    for (auto& f : single_round) {
        f.round = 1;
    }
    InjectedNoise noise(std::move(single_round));
    Frame frame;
    PropagationResult out;
    for (std::uint32_t ci = 0; ci < compiled.size(); ++ci) {
        out.meas_bits.push_back(execute(compiled[ci], ci, frame, noise));
    }
    const std::size_t nd = circuits.empty() ? 0 : circuits.front().num_data();
    out.residual = frame.data_part(nd);
    return out;
}

}  // namespace flagbridge
