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
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "flagbridge/ft_check.hpp"

namespace flagbridge {

struct CycleResult {
    SyndromeFlagString sf;
    PauliString residual;                   // before correction
    PauliString correction;
    PauliString residual_after_correction;  // before closure
    bool logical_failure = false;

    int terminated_early_at() const { return sf.trigger; }
};

/// Decodes a trace, then applies the noiseless closure (a perfect
/// minimum-weight correction of whatever syndrome remains) and classifies.
inline CycleResult finish_cycle(const ProtocolEngine& engine, const LookupTables& lut, CycleTrace trace) {
    if (lut.n != engine.code().n) {
        throw ConfigError("decoder does not match the procedure's code");
    }
    CycleResult r;
    r.sf = trace.sf;
    r.residual = std::move(trace.residual);
    r.correction = decode(lut, engine.layout(), r.sf);
    r.residual_after_correction = r.residual * r.correction;
    r.logical_failure = logical_class(engine.closure(r.residual_after_correction), engine.code()) ==
                        LogicalClass::Logical;
    return r;
}

inline CycleResult run_cycle(const ProtocolEngine& engine, const LookupTables& lut, const NoiseModel& model,
                             std::uint64_t seed) {
    SampledNoise noise(model, seed);
    return finish_cycle(engine, lut, engine.run(noise));
}

inline CycleResult run_cycle_with_faults(const ProtocolEngine& engine, const LookupTables& lut,
                                         const std::vector<Fault>& faults) {
    return finish_cycle(engine, lut, engine.run_with_faults(faults));
}

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Shots are simulated in fixed blocks; block b draws from an engine seeded
/// with derive_seed(master, b), so results do not depend on the worker count.
inline constexpr std::uint64_t kShotBlock = 4096;

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t block) { return mix64(master ^ mix64(block)); }

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

inline constexpr double kZ999 = 3.2905267314919255;  // two-sided 99.9% normal quantile

/// Wilson score interval for `k` successes in `n` trials.
inline Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = kZ999) {
    if (n == 0) {
        return {0.0, 1.0};
    }
    const double nn = static_cast<double>(n);
    const double ph = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (ph + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
    Interval iv{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (k == 0) {
        iv.low = 0.0;
    }
    if (k == n) {
        iv.high = 1.0;
    }
    return iv;
}

struct LerPoint {
    std::string config_name;
    double p = 0.0;
    double pI_ratio = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t failures = 0;
    double ler = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
};

inline unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

/// Logical error rate of one configuration over `shots` noisy cycles.
inline LerPoint estimate_ler(const ProtocolEngine& engine, const LookupTables& lut, double p, double pI_ratio,
                             std::uint64_t shots, std::uint64_t master_seed, unsigned workers = 0) {
    const NoiseModel model = NoiseModel::with_idle_ratio(p, pI_ratio);
    model.validate();
    if (shots == 0) {
        throw ConfigError("estimate_ler: shots must be at least 1");
    }
    if (lut.n != engine.code().n) {
        throw ConfigError("decoder does not match the procedure's code");
    }
    const std::uint64_t blocks = (shots + kShotBlock - 1) / kShotBlock;
    std::vector<std::uint64_t> fails(blocks, 0);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t b = next++; b < blocks; b = next++) {
            SampledNoise noise(model, derive_seed(master_seed, b));
            const std::uint64_t count = std::min(kShotBlock, shots - b * kShotBlock);
            std::uint64_t f = 0;
            for (std::uint64_t s = 0; s < count; ++s) {
                f += finish_cycle(engine, lut, engine.run(noise)).logical_failure ? 1 : 0;
            }
            fails[b] = f;
        }
    };
    if (workers == 0) {
        workers = default_workers();
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    LerPoint pt;
    pt.config_name = engine.procedure().name;
    pt.p = p;
    pt.pI_ratio = pI_ratio;
    pt.shots = shots;
    for (auto f : fails) {
        pt.failures += f;
    }
    pt.ler = static_cast<double>(pt.failures) / static_cast<double>(shots);
    const auto iv = wilson_interval(pt.failures, shots);
    pt.ci_low = std::min(iv.low, pt.ler);
    pt.ci_high = std::max(iv.high, pt.ler);
    pt.seed = master_seed;
    return pt;
}

/// Grid evaluation, p-major. Every point uses the same master seed.
inline std::vector<LerPoint> sweep(const ProtocolEngine& engine, const LookupTables& lut,
                                   const std::vector<double>& p_values, const std::vector<double>& pI_ratios,
                                   std::uint64_t shots, std::uint64_t master_seed, unsigned workers = 0) {
    std::vector<LerPoint> out;
    for (double p : p_values) {
        for (double r : pI_ratios) {
            out.push_back(estimate_ler(engine, lut, p, r, shots, master_seed, workers));
        }
    }
    return out;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline void write_ler_csv(std::ostream& os, const std::vector<LerPoint>& points) {
    os << "config_name,p,pI_ratio,shots,failures,ler,ci_low,ci_high,seed\n";
    for (const auto& pt : points) {
        os << pt.config_name << ',' << format_double(pt.p) << ',' << format_double(pt.pI_ratio) << ',' << pt.shots
           << ',' << pt.failures << ',' << format_double(pt.ler) << ',' << format_double(pt.ci_low) << ','
           << format_double(pt.ci_high) << ',' << pt.seed << '\n';
    }
}

}  // namespace flagbridge
