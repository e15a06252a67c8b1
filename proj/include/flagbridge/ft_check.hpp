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

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "flagbridge/protocol.hpp"

namespace flagbridge {

/// One enumerated fault replayed through the two-round protocol.
struct FaultRecord {
    Fault fault;
    PauliString residual;
    SyndromeFlagString sf;
};

/// Replays every single fault of one round (gate, prep and meas locations;
/// idle locations on request). With one fault the second round, when it
/// runs, is noiseless, so round-1 locations cover all reachable cases.
inline std::vector<FaultRecord> enumerate_fault_records(const ProtocolEngine& engine, bool include_idle = false) {
    std::vector<FaultRecord> out;
    for (const auto& f : enumerate_single_faults(engine.circuits(), include_idle)) {
        const auto trace = engine.run_with_faults({f});
        out.push_back({f, trace.residual, trace.sf});
    }
    return out;
}

/// Exists a Pauli of weight <= 1 stabilizer-equivalent to `e`.
inline bool equivalent_to_weight_at_most_one(const PauliString& e, const StabilizerCode& code) {
    if (in_stabilizer_group(e, code)) {
        return true;
    }
    for (std::size_t q = 0; q < code.n; ++q) {
        for (char l : {'X', 'Y', 'Z'}) {
            if (in_stabilizer_group(e * PauliString::single(code.n, q, l), code)) {
                return true;
            }
        }
    }
    return false;
}

/// An error the next cycle corrects on its own. CSS codes correct the X
/// and Z parts independently, so each part may have weight <= 1 up to
/// stabilizers; other codes need the whole error at weight <= 1.
inline bool next_cycle_correctable(const PauliString& e, const StabilizerCode& code) {
    if (!is_css(code)) {
        return equivalent_to_weight_at_most_one(e, code);
    }
    const std::size_t n = code.n;
    auto ok = [&](const PauliString& part, char letter) {
        if (in_stabilizer_group(part, code)) {
            return true;
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (in_stabilizer_group(part * PauliString::single(n, q, letter), code)) {
                return true;
            }
        }
        return false;
    };
    return ok(PauliString(n, e.xs(), 0), 'X') && ok(PauliString(n, 0, e.zs()), 'Z');
}

/// Key under which the decoder looks up a triggered cycle: the trigger
/// circuit's round-1 flags (zero selects the syndrome-only table) and the
/// round-2 syndrome bits.
struct DecoderKey {
    std::uint32_t circuit = 0;
    std::uint64_t flags = 0;
    std::uint64_t s2 = 0;

    friend auto operator<=>(const DecoderKey&, const DecoderKey&) = default;
};

inline DecoderKey decoder_key(const SfLayout& layout, const SyndromeFlagString& sf) {
    DecoderKey k;
    k.s2 = layout.syndrome_word(sf.round2);
    if (sf.triggered()) {
        const auto i = static_cast<std::size_t>(sf.trigger);
        k.flags = layout.circuit_flags(sf.round1, i);
        k.circuit = k.flags != 0 ? static_cast<std::uint32_t>(i) : 0;
    }
    return k;
}

enum class ViolationKind : std::uint8_t {
    SameSignature,     // equal syndrome-flag strings, inequivalent residuals
    SameDecoderKey,    // equal decoder keys, inequivalent residuals
    UndetectedWeight,  // no trigger, residual not correctable by the next cycle
};

inline const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::SameSignature:
            return "same-signature";
        case ViolationKind::SameDecoderKey:
            return "same-decoder-key";
        case ViolationKind::UndetectedWeight:
            return "undetected-weight";
    }
    return "?";
}

struct Counterexample {
    ViolationKind kind = ViolationKind::SameSignature;
    FaultRecord first;
    FaultRecord second;  // equal to `first` for UndetectedWeight
};

struct FtReport {
    bool fault_tolerant = true;
    std::size_t faults = 0;
    std::size_t signatures = 0;
    std::vector<Counterexample> counterexamples;
};

/// Single-fault tolerance of the two-round procedure.
///
/// Triggered faults with equal syndrome-flag strings must leave
/// stabilizer-equivalent residuals; so must faults the decoder cannot tell
/// apart (equal decoder keys). Faults that never trigger the second round
/// may leave at most a weight-1 error (per X/Z part for CSS codes).
inline FtReport check_fault_tolerance(const ProtocolEngine& engine) {
    if (!procedure_verified(engine.procedure())) {
        throw PreconditionError("check_fault_tolerance: some circuit fails verify_measures");
    }
    const auto& code = engine.code();
    const auto records = enumerate_fault_records(engine);
    FtReport report;
    report.faults = records.size();

    std::map<SyndromeFlagString, std::size_t> by_sf;
    std::map<DecoderKey, std::size_t> by_key;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        auto [it, fresh] = by_sf.emplace(rec.sf, i);
        if (!rec.sf.triggered()) {
            if (!next_cycle_correctable(rec.residual, code)) {
                report.counterexamples.push_back({ViolationKind::UndetectedWeight, rec, rec});
            }
            continue;
        }
        if (!fresh && !stabilizer_equivalent(records[it->second].residual, rec.residual, code)) {
            report.counterexamples.push_back({ViolationKind::SameSignature, records[it->second], rec});
        }
        auto [kt, kfresh] = by_key.emplace(decoder_key(engine.layout(), rec.sf), i);
        if (!kfresh && !stabilizer_equivalent(records[kt->second].residual, rec.residual, code)) {
            report.counterexamples.push_back({ViolationKind::SameDecoderKey, records[kt->second], rec});
        }
    }
    report.signatures = by_sf.size();
    report.fault_tolerant = report.counterexamples.empty();
    return report;
}

/// The two decode tables. table1 maps round-2 syndromes to corrections for
/// cycles triggered without flags; table2 maps (trigger circuit, its round-1
/// flags, round-2 syndromes) to corrections for flagged cycles.
struct LookupTables {
    std::size_t n = 0;
    std::size_t syndrome_bits = 0;         // m_s
    std::vector<std::size_t> flag_bits;    // m_f per circuit
    std::map<std::uint64_t, PauliString> table1;
    std::map<DecoderKey, PauliString> table2;
};

/// Builds the tables from the single-fault records. Refuses procedures that
/// are not fault tolerant, since their tables would be ambiguous.
inline LookupTables build_lut(const ProtocolEngine& engine) {
    const auto report = check_fault_tolerance(engine);
    if (!report.fault_tolerant) {
        throw PreconditionError("build_lut: procedure " + engine.procedure().name + " is not fault tolerant (" +
                                std::to_string(report.counterexamples.size()) + " counterexamples)");
    }
    LookupTables lut;
    lut.n = engine.code().n;
    lut.syndrome_bits = engine.layout().total_syndromes;
    lut.flag_bits = engine.layout().flags;
    for (const auto& rec : enumerate_fault_records(engine)) {
        if (!rec.sf.triggered()) {
            continue;
        }
        const auto key = decoder_key(engine.layout(), rec.sf);
        if (key.flags == 0) {
            if (!lut.table1.count(key.s2)) {
                lut.table1.emplace(key.s2, canonical_representative(rec.residual, engine.code()));
            }
        } else if (!lut.table2.count(key)) {
            lut.table2.emplace(key, canonical_representative(rec.residual, engine.code()));
        }
    }
    return lut;
}

/// Correction for a cycle: identity without a trigger; table2 when the
/// trigger circuit raised a flag; table1 otherwise or on a table2 miss;
/// identity when both miss.
inline PauliString decode(const LookupTables& lut, const SfLayout& layout, const SyndromeFlagString& sf) {
    if (!sf.triggered()) {
        return PauliString(lut.n);
    }
    const auto key = decoder_key(layout, sf);
    if (key.flags != 0) {
        if (auto it = lut.table2.find(key); it != lut.table2.end()) {
            return it->second;
        }
    }
    if (auto it = lut.table1.find(key.s2); it != lut.table1.end()) {
        return it->second;
    }
    return PauliString(lut.n);
}

}  // namespace flagbridge
