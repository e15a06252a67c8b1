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

#include <map>
#include <tuple>

#include "flagbridge/builtin_mappings.hpp"
#include "flagbridge/monte_carlo.hpp"
#include "gtest/gtest.h"

namespace flagbridge {
namespace {

// Independent replay of the two-round protocol for one fault: run round 1
// with propagate() on growing prefixes until a circuit reports, then derive
// round 2 from the residual's syndrome (a clean round leaves data errors
// alone and raises no flags).
struct OracleOutcome {
    int trigger = -1;
    std::vector<std::uint64_t> round1;  // per circuit of round 1
    std::vector<int> s2;                // per generator, measured order
    PauliString residual;
};

OracleOutcome oracle_replay(const QecProcedure& proc, const Fault& f) {
    OracleOutcome out;
    const auto full = propagate(proc.circuits, {f});
    for (std::size_t i = 0; i < proc.circuits.size(); ++i) {
        out.round1.push_back(full.meas_bits[i]);
        if (full.meas_bits[i] != 0) {
            out.trigger = static_cast<int>(i);
            break;
        }
    }
    if (out.trigger < 0) {
        out.residual = full.residual;
        return out;
    }
    // Residual after the trigger circuit: replay only the prefix.
    const std::vector<Circuit> prefix(proc.circuits.begin(), proc.circuits.begin() + out.trigger + 1);
    out.residual = propagate(prefix, {f}).residual;
    for (const auto& c : proc.circuits) {
        for (const auto& mc : c.measured_checks) {
            out.s2.push_back(commutes(out.residual, mc.target) ? 0 : 1);
        }
    }
    return out;
}

struct OracleVerdict {
    bool ft = true;
    std::size_t signatures = 0;
};

OracleVerdict oracle_fault_tolerance(const QecProcedure& proc) {
    using Key = std::tuple<int, std::vector<std::uint64_t>, std::vector<int>>;
    std::map<Key, PauliString> seen;
    OracleVerdict v;
    for (const auto& f : enumerate_single_faults(proc.circuits, false)) {
        const auto o = oracle_replay(proc, f);
        if (o.trigger < 0) {
            // Untriggered: each part must be fixable by the next cycle.
            if (!next_cycle_correctable(o.residual, proc.code)) {
                v.ft = false;
            }
            seen.emplace(Key{-1, {}, {}}, o.residual);
            continue;
        }
        auto [it, fresh] = seen.emplace(Key{o.trigger, o.round1, o.s2}, o.residual);
        if (!fresh && !in_stabilizer_group(it->second * o.residual, proc.code)) {
            v.ft = false;
        }
    }
    v.signatures = seen.size();
    return v;
}

TEST(FtCheckTest, ShippedMappingsAreFaultTolerant) {
    for (const auto& name : builtin_mapping_names()) {
        const ProtocolEngine engine(builtin_mapping(name).procedure);
        const auto rep = check_fault_tolerance(engine);
        EXPECT_TRUE(rep.fault_tolerant) << name << ": " << rep.counterexamples.size() << " counterexamples";
        EXPECT_GT(rep.faults, 100U);
    }
}

TEST(FtCheckTest, SignaturesMatchIndependentReplay) {
    for (const auto& name : builtin_mapping_names()) {
        const auto proc = builtin_mapping(name).procedure;
        const ProtocolEngine engine(proc);
        const auto rep = check_fault_tolerance(engine);
        const auto oracle = oracle_fault_tolerance(proc);
        EXPECT_EQ(rep.signatures, oracle.signatures) << name;
        // The decoder-key condition is extra; the oracle checks signatures only.
        EXPECT_TRUE(oracle.ft) << name;
    }
    const auto bare = steane_bare();
    EXPECT_FALSE(oracle_fault_tolerance(bare).ft);
    EXPECT_EQ(check_fault_tolerance(ProtocolEngine(bare)).signatures, oracle_fault_tolerance(bare).signatures);
}

TEST(FtCheckTest, RecordsMatchIndependentReplay) {
    const auto proc = builtin_mapping("steane-c2-L1").procedure;
    const ProtocolEngine engine(proc);
    for (const auto& rec : enumerate_fault_records(engine, true)) {
        const auto o = oracle_replay(proc, rec.fault);
        EXPECT_EQ(rec.sf.trigger, o.trigger);
        EXPECT_EQ(rec.residual, o.residual) << describe(rec.fault, proc.circuits);
    }
}

TEST(FtCheckTest, BareSteaneFailsWithTheHookFault) {
    const auto bare = steane_bare();
    const ProtocolEngine engine(bare);
    const auto rep = check_fault_tolerance(engine);
    ASSERT_FALSE(rep.fault_tolerant);
    // Z on the syndrome of the first check (ZZZZIII, ancilla 10) after its
    // second CNOT spreads to the last two plaquette qubits.
    const auto hook = PauliString::parse("IIZZIII");
    bool found = false;
    for (const auto& cex : rep.counterexamples) {
        for (const auto* r : {&cex.first, &cex.second}) {
            const auto p = fault_pauli(r->fault, bare.circuits);
            if (r->fault.kind == FaultKind::Gate2 && r->fault.circuit == 0 && p.letter(10) == 'Z' &&
                stabilizer_equivalent(r->residual, hook, bare.code)) {
                found = true;
            }
        }
    }
    EXPECT_TRUE(found);
}

TEST(FtCheckTest, RequiresVerifiedCircuits) {
    auto proc = steane_bare();
    auto gates = proc.circuits[0].flattened();
    gates.erase(std::find_if(gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::CNOT; }));
    proc.circuits[0].timesteps = pack_asap(proc.circuits[0].num_qubits(), gates);
    const ProtocolEngine engine(proc);
    EXPECT_THROW(check_fault_tolerance(engine), PreconditionError);
}

TEST(FtCheckTest, LutRefusesExactlyTheNonTolerantSets) {
    std::vector<QecProcedure> procs{steane_bare()};
    for (const auto& name : builtin_mapping_names()) {
        procs.push_back(builtin_mapping(name).procedure);
    }
    for (const auto& proc : procs) {
        const ProtocolEngine engine(proc);
        const bool ft = check_fault_tolerance(engine).fault_tolerant;
        bool refused = false;
        try {
            build_lut(engine);
        } catch (const PreconditionError&) {
            refused = true;
        }
        EXPECT_EQ(refused, !ft) << proc.name;
    }
}

TEST(FtCheckTest, LutShapeAndTrivialEntries) {
    for (const auto& name : builtin_mapping_names()) {
        const ProtocolEngine engine(builtin_mapping(name).procedure);
        const auto lut = build_lut(engine);
        EXPECT_EQ(lut.n, engine.code().n);
        EXPECT_EQ(lut.syndrome_bits, engine.code().generators.size());
        EXPECT_LE(lut.table1.size(), std::size_t{1} << lut.syndrome_bits);
        // A lone measurement flip leaves no data error and a clean round 2.
        ASSERT_TRUE(lut.table1.count(0)) << name;
        EXPECT_TRUE(lut.table1.at(0).is_identity());
        for (const auto& [key, corr] : lut.table2) {
            EXPECT_NE(key.flags, 0U);
            EXPECT_LT(key.flags, std::uint64_t{1} << lut.flag_bits.at(key.circuit));
            EXPECT_LT(key.s2, std::uint64_t{1} << lut.syndrome_bits);
            EXPECT_EQ(canonical_representative(corr, engine.code()), corr);
        }
        for (const auto& [s2, corr] : lut.table1) {
            EXPECT_EQ(canonical_representative(corr, engine.code()), corr);
        }
        EXPECT_TRUE(decode(lut, engine.layout(), {}).is_identity());
    }
}

TEST(FtCheckTest, EveryEntryCorrectsEveryResidualWithItsKey) {
    for (const auto& name : builtin_mapping_names()) {
        const ProtocolEngine engine(builtin_mapping(name).procedure);
        const auto lut = build_lut(engine);
        for (const auto& rec : enumerate_fault_records(engine)) {
            if (!rec.sf.triggered()) {
                continue;
            }
            const auto corr = decode(lut, engine.layout(), rec.sf);
            EXPECT_TRUE(in_stabilizer_group(corr * rec.residual, engine.code()))
                << name << " " << describe(rec.fault, engine.circuits());
        }
    }
}

TEST(FtCheckTest, DecodeFallsBack) {
    const ProtocolEngine engine(builtin_mapping("steane-c1-L1").procedure);
    const auto lut = build_lut(engine);
    const auto& layout = engine.layout();
    // A flagged key absent from table2 with a known s2 falls back to table1.
    const std::uint64_t s2 = lut.table1.rbegin()->first;
    SyndromeFlagString sf;
    sf.trigger = 0;
    std::uint64_t flags = 1;
    while (lut.table2.count(DecoderKey{0, flags, s2})) {
        ++flags;
    }
    ASSERT_LT(flags, std::uint64_t{1} << layout.flags[0]);
    sf.round1 = flags << (layout.offset[0] + layout.syndromes[0]);
    for (std::size_t i = 0, pos = 0; i < layout.offset.size(); ++i) {
        const std::uint64_t part = (s2 >> pos) & PauliString::qubit_mask(layout.syndromes[i]);
        sf.round2 |= part << layout.offset[i];
        pos += layout.syndromes[i];
    }
    ASSERT_EQ(decoder_key(layout, sf).s2, s2);
    EXPECT_EQ(decode(lut, layout, sf), lut.table1.at(s2));
    // Both tables miss: identity.
    std::uint64_t unseen = 0;
    while (lut.table1.count(unseen)) {
        ++unseen;
    }
    ASSERT_LT(unseen, std::uint64_t{1} << lut.syndrome_bits);
    SyndromeFlagString miss;
    miss.trigger = 0;
    miss.round1 = 1;
    for (std::size_t i = 0, pos = 0; i < layout.offset.size(); ++i) {
        miss.round2 |= ((unseen >> pos) & PauliString::qubit_mask(layout.syndromes[i])) << layout.offset[i];
        pos += layout.syndromes[i];
    }
    EXPECT_TRUE(decode(lut, layout, miss).is_identity());
}

TEST(FtCheckTest, ExhaustiveSingleFaultCorrection) {
    for (const auto& name : builtin_mapping_names()) {
        const ProtocolEngine engine(builtin_mapping(name).procedure);
        const auto lut = build_lut(engine);
        const auto& code = engine.code();
        std::size_t n = 0;
        for (const auto& f : enumerate_single_faults(engine.circuits(), true)) {
            const auto r = run_cycle_with_faults(engine, lut, {f});
            ++n;
            EXPECT_FALSE(r.logical_failure) << name << " " << describe(f, engine.circuits());
            const auto& e = r.residual_after_correction;
            EXPECT_TRUE(in_stabilizer_group(e, code) || next_cycle_correctable(e, code))
                << name << " " << describe(f, engine.circuits()) << " leaves " << e.str();
            EXPECT_EQ(r.terminated_early_at() < 0, r.sf.round1 == 0);
            if (r.terminated_early_at() < 0) {
                EXPECT_TRUE(r.correction.is_identity());
            }
        }
        EXPECT_GT(n, 0U);
    }
}

TEST(FtCheckTest, WeightHelpers) {
    const auto code = steane();
    EXPECT_TRUE(equivalent_to_weight_at_most_one(PauliString::parse("IIIIIIZ"), code));
    EXPECT_TRUE(equivalent_to_weight_at_most_one(PauliString::parse("ZZZIIII"), code));  // ZA * Z3
    EXPECT_FALSE(equivalent_to_weight_at_most_one(PauliString::parse("XIIIIIZ"), code));
    EXPECT_TRUE(next_cycle_correctable(PauliString::parse("XIIIIIZ"), code));
    EXPECT_FALSE(next_cycle_correctable(PauliString::parse("IIZZIII"), code));
    const auto five = five_qubit();
    EXPECT_TRUE(next_cycle_correctable(PauliString::parse("IIYII"), five));
    EXPECT_FALSE(next_cycle_correctable(five.logical_x[0], five));
}

}  // namespace
}  // namespace flagbridge
