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

#include <cmath>
#include <sstream>

#include "flagbridge/builtin_mappings.hpp"
#include "flagbridge/monte_carlo.hpp"
#include "gtest/gtest.h"

namespace flagbridge {
namespace {

struct Fixture {
    explicit Fixture(const std::string& name) : engine(builtin_mapping(name).procedure), lut(build_lut(engine)) {}
    ProtocolEngine engine;
    LookupTables lut;
};

// Root of the Wilson score equation (ph - p)^2 = z^2 p (1 - p) / n on [lo, hi].
double wilson_root(double ph, double n, double z, double lo, double hi, bool lower) {
    auto f = [&](double p) { return (ph - p) * (ph - p) - z * z * p * (1.0 - p) / n; };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const bool outside = f(mid) > 0;
        // Lower root: outside the interval means mid is too small.
        if (outside == lower) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

TEST(MonteCarloTest, WilsonIntervalMatchesScoreEquation) {
    for (auto [k, n] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
             {0, 10}, {3, 10}, {10, 10}, {1, 1000000}, {691, 1000000}, {50, 100}}) {
        const auto iv = wilson_interval(k, n);
        const double ph = static_cast<double>(k) / static_cast<double>(n);
        const double nn = static_cast<double>(n);
        EXPECT_NEAR(iv.low, k == 0 ? 0.0 : wilson_root(ph, nn, kZ999, 0.0, ph, true), 1e-12) << k << "/" << n;
        EXPECT_NEAR(iv.high, k == n ? 1.0 : wilson_root(ph, nn, kZ999, ph, 1.0, false), 1e-12) << k << "/" << n;
        EXPECT_LE(iv.low, ph);
        EXPECT_GE(iv.high, ph);
    }
    // Textbook value: 0 of 10 at 95% gives an upper bound of z^2 / (n + z^2).
    EXPECT_NEAR(wilson_interval(0, 10, 1.959963984540054).high, 3.841458820694124 / 13.841458820694124, 1e-12);
}

TEST(MonteCarloTest, SeedMixingIsSplitMix) {
    // First output of splitmix64 seeded with 0.
    EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFULL);
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(MonteCarloTest, NoNoiseNoFailures) {
    Fixture fx("steane-c2-L2");
    const auto pt = estimate_ler(fx.engine, fx.lut, 0.0, 0.0, 5000, 3, 2);
    EXPECT_EQ(pt.failures, 0U);
    EXPECT_EQ(pt.ler, 0.0);
    EXPECT_EQ(pt.ci_low, 0.0);
    EXPECT_GT(pt.ci_high, 0.0);
    const auto r = run_cycle(fx.engine, fx.lut, {0.0, 0.0}, 11);
    EXPECT_EQ(r.terminated_early_at(), -1);
    EXPECT_TRUE(r.correction.is_identity());
    EXPECT_FALSE(r.logical_failure);
}

TEST(MonteCarloTest, BadArgumentsAreRejected) {
    Fixture fx("fivequbit-ibm16");
    EXPECT_THROW(estimate_ler(fx.engine, fx.lut, 0.01, 0.0, 0, 1), ConfigError);
    EXPECT_THROW(estimate_ler(fx.engine, fx.lut, 1.5, 0.0, 10, 1), ConfigError);
    EXPECT_THROW(estimate_ler(fx.engine, fx.lut, 0.01, -1.0, 10, 1), ConfigError);
    const Fixture other("steane-c3-L2");
    EXPECT_THROW(estimate_ler(fx.engine, other.lut, 0.01, 0.0, 10, 1), ConfigError);
    EXPECT_TRUE(sweep(fx.engine, fx.lut, {}, {0.0}, 10, 1).empty());
}

TEST(MonteCarloTest, ResultsIgnoreWorkerCount) {
    Fixture fx("steane-c3-L2");
    const std::uint64_t shots = 3 * kShotBlock + 123;
    const auto a = estimate_ler(fx.engine, fx.lut, 0.01, 0.1, shots, 77, 1);
    const auto b = estimate_ler(fx.engine, fx.lut, 0.01, 0.1, shots, 77, 3);
    const auto c = estimate_ler(fx.engine, fx.lut, 0.01, 0.1, shots, 77, 8);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.failures, c.failures);
    EXPECT_GT(a.failures, 0U);
}

TEST(MonteCarloTest, SweepCsvIsReproducible) {
    Fixture fx("steane-c2-L1");
    auto csv = [&](unsigned workers) {
        std::ostringstream os;
        write_ler_csv(os, sweep(fx.engine, fx.lut, {0.002, 0.005}, {0.0, 0.01, 0.1, 1.0}, 5000, 2026, workers));
        return os.str();
    };
    const auto first = csv(1);
    EXPECT_EQ(first, csv(1));
    EXPECT_EQ(first, csv(4));
    std::istringstream is(first);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "config_name,p,pI_ratio,shots,failures,ler,ci_low,ci_high,seed");
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        EXPECT_EQ(line.rfind("steane-c2-L1,", 0), 0U);
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
    }
    EXPECT_EQ(rows, 8U);
}

TEST(MonteCarloTest, PointInvariants) {
    Fixture fx("steane-c1-L2");
    const auto pt = estimate_ler(fx.engine, fx.lut, 0.005, 0.01, 20000, 5);
    EXPECT_EQ(pt.config_name, "steane-c1-L2");
    EXPECT_EQ(pt.shots, 20000U);
    EXPECT_DOUBLE_EQ(pt.ler, static_cast<double>(pt.failures) / 20000.0);
    EXPECT_LE(pt.ci_low, pt.ler);
    EXPECT_GE(pt.ci_high, pt.ler);
    EXPECT_EQ(pt.seed, 5U);
}

TEST(MonteCarloTest, MonotoneInP) {
    Fixture fx("fivequbit-ibm16");
    const auto pts = sweep(fx.engine, fx.lut, {0.001, 0.003, 0.01, 0.03}, {0.0}, 20000, 9);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        EXPECT_LE(pts[i].ci_low, pts[i + 1].ci_high) << pts[i].p;
        EXPECT_LT(pts[i].ler, pts[i + 1].ler + 1e-12) << pts[i].p;
    }
}

// Single data qubit with no checks, idling for `steps` timesteps.
QecProcedure unencoded_memory(std::size_t steps) {
    StabilizerCode code{"unencoded", 1, 1, {}, {PauliString::parse("X")}, {PauliString::parse("Z")}};
    Circuit c;
    c.name = "wait";
    c.roles = {QubitRole::Data};
    c.timesteps.resize(steps);
    return {"unencoded", code, {c}};
}

TEST(MonteCarloTest, UnencodedMemoryFailsLinearly) {
    // Same duration as one round of steane-c3-L2.
    const std::size_t steps = characterize(builtin_mapping("steane-c3-L2").procedure.circuits).timesteps;
    ASSERT_EQ(steps, 26U);
    const ProtocolEngine engine(unencoded_memory(steps));
    const auto lut = build_lut(engine);
    std::vector<double> lers;
    for (double p : {5e-4, 1e-3, 2e-3}) {
        const std::uint64_t shots = 400000;
        const auto pt = estimate_ler(engine, lut, p, 1.0, shots, 31);
        // Depolarising channel composed `steps` times.
        const double exact = 0.75 * (1.0 - std::pow(1.0 - 4.0 * p / 3.0, static_cast<double>(steps)));
        const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(shots));
        EXPECT_NEAR(pt.ler, exact, 5.0 * sigma) << p;
        EXPECT_NEAR(exact / (steps * p), 1.0, 0.05);
        lers.push_back(pt.ler);
    }
    EXPECT_NEAR(lers[1] / lers[0], 2.0, 0.25);
    EXPECT_NEAR(lers[2] / lers[1], 2.0, 0.2);
}

// Leading-order failure coefficient C with ler = C p^2 + O(p^3), summed
// over every pair of fault events of the protocol (pI = 0).
double pair_coefficient(const ProtocolEngine& engine, const LookupTables& lut) {
    auto weight = [](const Fault& f) {
        switch (f.kind) {
            case FaultKind::Gate2:
                return 1.0 / 15.0;
            case FaultKind::Gate1:
                return 1.0 / 3.0;
            default:
                return 1.0;
        }
    };
    const auto round1 = enumerate_single_faults(engine.circuits(), false);
    auto round2 = round1;
    for (auto& f : round2) {
        f.round = 2;
    }
    auto same_location = [](const Fault& a, const Fault& b) {
        return a.round == b.round && a.circuit == b.circuit && a.timestep == b.timestep && a.index == b.index &&
               a.kind == b.kind;
    };
    double c = 0.0;
    for (std::size_t i = 0; i < round1.size(); ++i) {
        const auto& a = round1[i];
        for (std::size_t j = i + 1; j < round1.size(); ++j) {
            const auto& b = round1[j];
            if (!same_location(a, b) && run_cycle_with_faults(engine, lut, {a, b}).logical_failure) {
                c += weight(a) * weight(b);
            }
        }
        if (!engine.run_with_faults({a}).sf.triggered()) {
            continue;  // round 2 never runs
        }
        for (const auto& b : round2) {
            if (run_cycle_with_faults(engine, lut, {a, b}).logical_failure) {
                c += weight(a) * weight(b);
            }
        }
    }
    return c;
}

TEST(MonteCarloTest, SamplingAgreesWithPairExpansion) {
    Fixture fx("fivequbit-ibm16");
    const double c = pair_coefficient(fx.engine, fx.lut);
    ASSERT_GT(c, 0.0);
    const double p = 1e-3;
    const std::uint64_t shots = 400000;
    const auto pt = estimate_ler(fx.engine, fx.lut, p, 0.0, shots, 404);
    const double expect = c * p * p * static_cast<double>(shots);
    // Poisson spread plus a 10% allowance for higher orders.
    EXPECT_NEAR(static_cast<double>(pt.failures), expect, 4.0 * std::sqrt(expect) + 0.1 * expect)
        << "C = " << c;
}

TEST(MonteCarloTest, CsvFormatting) {
    LerPoint pt{"x", 0.001, 0.1, 10, 1, 0.1, 0.01, 0.5, 42};
    std::ostringstream os;
    write_ler_csv(os, {pt});
    EXPECT_EQ(os.str(), "config_name,p,pI_ratio,shots,failures,ler,ci_low,ci_high,seed\nx,0.001,0.1,10,1,0.1,0.01,0.5,42\n");
    EXPECT_EQ(format_double(1e-6), "1e-06");
    EXPECT_EQ(format_double(0.0), "0");
}

}  // namespace
}  // namespace flagbridge
