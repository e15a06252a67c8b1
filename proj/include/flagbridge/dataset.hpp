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

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "flagbridge/monte_carlo.hpp"

namespace flagbridge {

/// One training pair: x holds the round-1 then round-2 measurement bits
/// (m each, SfLayout order), y the X then Z components of the residual data
/// error before correction (n each). `triggered` marks cycles that entered
/// the second round.
struct Sample {
    std::vector<std::uint8_t> x;
    std::vector<std::uint8_t> y;
    bool triggered = false;

    friend bool operator==(const Sample&, const Sample&) = default;
};

struct Dataset {
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<Sample> samples;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

inline Sample make_sample(const ProtocolEngine& engine, const CycleTrace& trace) {
    const std::size_t m = engine.layout().bits_per_round;
    const std::size_t n = engine.code().n;
    Sample s;
    s.x.resize(2 * m);
    s.y.resize(2 * n);
    for (std::size_t i = 0; i < m; ++i) {
        s.x[i] = (trace.sf.round1 >> i) & 1U;
        s.x[m + i] = (trace.sf.round2 >> i) & 1U;
    }
    for (std::size_t q = 0; q < n; ++q) {
        s.y[q] = trace.residual.x(q) ? 1 : 0;
        s.y[n + q] = trace.residual.z(q) ? 1 : 0;
    }
    s.triggered = trace.sf.triggered();
    return s;
}

/// `count` samples from independent noisy cycles; block-seeded like
/// estimate_ler, so the output depends only on (model, count, seed).
inline Dataset sample_dataset(const ProtocolEngine& engine, const NoiseModel& model, std::uint64_t count,
                              std::uint64_t seed) {
    model.validate();
    Dataset d;
    d.m = engine.layout().bits_per_round;
    d.n = engine.code().n;
    d.samples.reserve(count);
    for (std::uint64_t b = 0; b * kShotBlock < count; ++b) {
        SampledNoise noise(model, derive_seed(seed, b));
        const std::uint64_t todo = std::min(kShotBlock, count - b * kShotBlock);
        for (std::uint64_t i = 0; i < todo; ++i) {
            d.samples.push_back(make_sample(engine, engine.run(noise)));
        }
    }
    return d;
}

/// CSV: first line "<m>,<n>"; then one row per sample with 2m input bits,
/// 2n output bits and the trigger bit, comma separated, '\n' terminated.
inline void write_dataset(std::ostream& os, const Dataset& d) {
    os << d.m << ',' << d.n << '\n';
    std::string row;
    for (const auto& s : d.samples) {
        row.clear();
        for (auto b : s.x) {
            row += static_cast<char>('0' + b);
            row += ',';
        }
        for (auto b : s.y) {
            row += static_cast<char>('0' + b);
            row += ',';
        }
        row += s.triggered ? '1' : '0';
        row += '\n';
        os << row;
    }
}

inline Dataset read_dataset(std::istream& is) {
    Dataset d;
    std::string line;
    if (!std::getline(is, line)) {
        throw ParseError("dataset: missing \"m,n\" header");
    }
    {
        std::istringstream hs(line);
        char comma = 0;
        if (!(hs >> d.m >> comma >> d.n) || comma != ',') {
            throw ParseError("dataset: header must be \"m,n\", got \"" + line + "\"");
        }
    }
    const std::size_t width = 2 * d.m + 2 * d.n + 1;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        if (line.size() != 2 * width - 1) {
            throw ParseError("dataset line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                             " fields");
        }
        Sample s;
        for (std::size_t i = 0; i < width; ++i) {
            const char c = line[2 * i];
            if ((c != '0' && c != '1') || (i + 1 < width && line[2 * i + 1] != ',')) {
                throw ParseError("dataset line " + std::to_string(lineno) + ": malformed field " +
                                 std::to_string(i));
            }
            const std::uint8_t bit = c == '1' ? 1 : 0;
            if (i < 2 * d.m) {
                s.x.push_back(bit);
            } else if (i < 2 * d.m + 2 * d.n) {
                s.y.push_back(bit);
            } else {
                s.triggered = bit != 0;
            }
        }
        d.samples.push_back(std::move(s));
    }
    return d;
}

/// Inverse of make_sample for the measurement part.
inline SyndromeFlagString sample_sf(const Sample& s, std::size_t m, const SfLayout& layout) {
    SyndromeFlagString sf;
    for (std::size_t i = 0; i < m; ++i) {
        sf.round1 |= static_cast<std::uint64_t>(s.x[i]) << i;
        sf.round2 |= static_cast<std::uint64_t>(s.x[m + i]) << i;
    }
    if (s.triggered) {
        for (std::size_t c = 0; c < layout.offset.size(); ++c) {
            if (layout.circuit_bits(sf.round1, c) != 0) {
                sf.trigger = static_cast<int>(c);
                break;
            }
        }
    }
    return sf;
}

inline PauliString sample_residual(const Sample& s, std::size_t n) {
    PauliString p(n);
    std::uint64_t xs = 0;
    std::uint64_t zs = 0;
    for (std::size_t q = 0; q < n; ++q) {
        xs |= static_cast<std::uint64_t>(s.y[q]) << q;
        zs |= static_cast<std::uint64_t>(s.y[n + q]) << q;
    }
    return PauliString(n, xs, zs);
}

}  // namespace flagbridge
