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
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "flagbridge/codes.hpp"
#include "flagbridge/noise.hpp"

namespace flagbridge {

/// A full QEC cycle: the data code and its extraction circuits, executed in
/// order (Z-type circuits first by convention of the shipped mappings).
struct QecProcedure {
    std::string name;
    StabilizerCode code;
    std::vector<Circuit> circuits;
};

/// Bit positions of one round's measurement record.
///
/// Within a round, circuit i owns bits [offset[i], offset[i] + syndromes[i] +
/// flags[i]): its syndrome bits in measured_checks order, then its flag bits
/// in ascending qubit order.
struct SfLayout {
    std::vector<std::size_t> offset;
    std::vector<std::size_t> syndromes;
    std::vector<std::size_t> flags;
    std::size_t bits_per_round = 0;
    std::size_t total_syndromes = 0;

    std::uint64_t circuit_bits(std::uint64_t round, std::size_t i) const {
        const std::size_t w = syndromes[i] + flags[i];
        return (round >> offset[i]) & PauliString::qubit_mask(w);
    }

    std::uint64_t circuit_flags(std::uint64_t round, std::size_t i) const {
        return circuit_bits(round, i) >> syndromes[i];
    }

    /// Syndrome bits of a round, compacted in circuit order.
    std::uint64_t syndrome_word(std::uint64_t round) const {
        std::uint64_t out = 0;
        std::size_t pos = 0;
        for (std::size_t i = 0; i < offset.size(); ++i) {
            out |= ((round >> offset[i]) & PauliString::qubit_mask(syndromes[i])) << pos;
            pos += syndromes[i];
        }
        return out;
    }
};

/// Syndrome and flag bits of both rounds. Bits of circuits that did not run
/// are zero; `trigger` is the round-1 circuit that ended the round, or -1.
struct SyndromeFlagString {
    std::uint64_t round1 = 0;
    std::uint64_t round2 = 0;
    int trigger = -1;

    bool triggered() const { return trigger >= 0; }

    friend bool operator==(const SyndromeFlagString&, const SyndromeFlagString&) = default;
    friend auto operator<=>(const SyndromeFlagString&, const SyndromeFlagString&) = default;
};

/// Bits of the round as a string, bit 0 first.
inline std::string bit_string(std::uint64_t word, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if ((word >> i) & 1U) {
            s[i] = '1';
        }
    }
    return s;
}

/// Checks the procedure's invariants: one qubit universe whose data part is
/// the code, every generator measured exactly once, every circuit verified.
inline void validate_procedure(const QecProcedure& proc) {
    const auto report = validate_code(proc.code);
    if (!report.ok) {
        throw SpecError("procedure code invalid: " + report.message);
    }
    if (proc.circuits.empty()) {
        throw SpecError("procedure has no circuits");
    }
    const auto& roles = proc.circuits.front().roles;
    std::vector<int> seen(proc.code.generators.size(), 0);
    for (const auto& c : proc.circuits) {
        if (c.roles != roles) {
            throw SpecError("circuit " + c.name + " uses a different qubit universe");
        }
        if (c.num_data() != proc.code.n) {
            throw SpecError("circuit " + c.name + " has " + std::to_string(c.num_data()) + " data qubits, code has " +
                            std::to_string(proc.code.n));
        }
        validate_structure(c);
        for (const auto& mc : c.measured_checks) {
            auto it = std::find(proc.code.generators.begin(), proc.code.generators.end(), mc.target);
            if (it == proc.code.generators.end()) {
                throw SpecError("circuit " + c.name + " measures " + mc.target.str() + ", not a generator");
            }
            ++seen[static_cast<std::size_t>(it - proc.code.generators.begin())];
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i] != 1) {
            throw SpecError("generator " + proc.code.generators[i].str() + " measured " + std::to_string(seen[i]) +
                            " times");
        }
    }
}

inline bool procedure_verified(const QecProcedure& proc) {
    return std::all_of(proc.circuits.begin(), proc.circuits.end(),
                       [](const Circuit& c) { return verify_measures(c).pass; });
}

enum class PauliFilter : std::uint8_t { Any, XOnly, ZOnly };

/// Minimum-weight Pauli for every syndrome of the code reachable by Paulis
/// passing `filter`; unreachable entries stay identity.
inline std::vector<PauliString> min_weight_table(const StabilizerCode& code, PauliFilter filter = PauliFilter::Any) {
    const std::size_t r = code.generators.size();
    if (r > 20 || code.n > kMaxDistanceQubits) {
        throw DimensionError("min_weight_table: code too large");
    }
    std::vector<PauliString> table(std::size_t{1} << r, PauliString(code.n));
    std::vector<bool> filled(table.size(), false);
    filled[0] = true;
    for (std::size_t w = 1; w <= code.n; ++w) {
        std::vector<PauliString> layer;
        for_each_pauli_of_weight(code.n, w, [&](const PauliString& p) {
            if ((filter == PauliFilter::XOnly && p.zs() != 0) || (filter == PauliFilter::ZOnly && p.xs() != 0)) {
                return false;
            }
            layer.push_back(p);
            return false;
        });
        std::sort(layer.begin(), layer.end(), [](const auto& a, const auto& b) { return canonical_less(a, b); });
        for (const auto& p : layer) {
            const auto s = syndrome_of(p, code);
            if (!filled[s]) {
                filled[s] = true;
                table[s] = p;
            }
        }
    }
    return table;
}

/// Smallest element of the coset p * S under canonical_less.
inline PauliString canonical_representative(const PauliString& p, const StabilizerCode& code) {
    const std::size_t r = code.generators.size();
    if (r > 20) {
        throw DimensionError("canonical_representative: too many generators");
    }
    PauliString best = p;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
        PauliString q = p;
        for (std::size_t i = 0; i < r; ++i) {
            if ((mask >> i) & 1U) {
                q *= code.generators[i];
            }
        }
        if (canonical_less(q, best)) {
            best = q;
        }
    }
    return best;
}

/// Residual error and measurement record of one noisy cycle, before decoding.
struct CycleTrace {
    SyndromeFlagString sf;
    PauliString residual;
};

/// Compiled form of a procedure executing the two-round protocol: round 1
/// runs the circuits in order and stops after the first circuit reporting a
/// nonzero syndrome or flag; that triggers a full second round.
class ProtocolEngine {
   public:
    explicit ProtocolEngine(QecProcedure proc) : proc_(std::move(proc)) {
        validate_procedure(proc_);
        for (const auto& c : proc_.circuits) {
            compiled_.push_back(compile(c));
            layout_.offset.push_back(layout_.bits_per_round);
            layout_.syndromes.push_back(compiled_.back().num_syndrome_bits);
            layout_.flags.push_back(compiled_.back().num_flag_bits);
            layout_.bits_per_round += compiled_.back().num_bits();
            layout_.total_syndromes += compiled_.back().num_syndrome_bits;
        }
        if (layout_.bits_per_round > 64) {
            throw StructureError("a round may record at most 64 measurement bits");
        }
        if (is_css(proc_.code)) {
            closure_ = min_weight_table(proc_.code, PauliFilter::XOnly);
            closure_z_ = min_weight_table(proc_.code, PauliFilter::ZOnly);
        } else {
            closure_ = min_weight_table(proc_.code);
        }
    }

    const QecProcedure& procedure() const { return proc_; }
    const StabilizerCode& code() const { return proc_.code; }
    const std::vector<Circuit>& circuits() const { return proc_.circuits; }
    const std::vector<CompiledCircuit>& compiled() const { return compiled_; }
    const SfLayout& layout() const { return layout_; }

    /// Noiseless perfect correction of a residual data error: minimum weight
    /// over all Paulis, or separately for the X and Z parts of a CSS code.
    PauliString closure(const PauliString& residual) const {
        if (closure_z_.empty()) {
            return residual * closure_[syndrome_of(residual, proc_.code)];
        }
        const std::size_t n = proc_.code.n;
        const PauliString xpart(n, residual.xs(), 0);
        const PauliString zpart(n, 0, residual.zs());
        return residual * closure_[syndrome_of(xpart, proc_.code)] * closure_z_[syndrome_of(zpart, proc_.code)];
    }

    template <typename Noise>
    CycleTrace run(Noise& noise) const {
        CycleTrace out;
        Frame frame;
        noise.set_round(1);
        for (std::uint32_t i = 0; i < compiled_.size(); ++i) {
            const std::uint64_t bits = execute(compiled_[i], i, frame, noise);
            out.sf.round1 |= bits << layout_.offset[i];
            if (bits != 0) {
                out.sf.trigger = static_cast<int>(i);
                break;
            }
        }
        if (out.sf.triggered()) {
            noise.set_round(2);
            for (std::uint32_t i = 0; i < compiled_.size(); ++i) {
                out.sf.round2 |= execute(compiled_[i], i, frame, noise) << layout_.offset[i];
            }
        }
        out.residual = frame.data_part(proc_.code.n);
        return out;
    }

    CycleTrace run_with_faults(const std::vector<Fault>& faults) const {
        InjectedNoise noise(faults);
        return run(noise);
    }

   private:
    QecProcedure proc_;
    std::vector<CompiledCircuit> compiled_;
    SfLayout layout_;
    std::vector<PauliString> closure_;    // whole error, or X part for CSS codes
    std::vector<PauliString> closure_z_;  // Z part for CSS codes
};

}  // namespace flagbridge
