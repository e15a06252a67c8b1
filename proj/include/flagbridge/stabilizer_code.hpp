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
#include <string>
#include <vector>

#include "flagbridge/pauli.hpp"

namespace flagbridge {

/// Generators and logical representatives of an [[n,k,d]] stabilizer code.
struct StabilizerCode {
    std::string name;
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<PauliString> generators;
    std::vector<PauliString> logical_x;
    std::vector<PauliString> logical_z;
};

/// Every generator is purely X-type or purely Z-type.
inline bool is_css(const StabilizerCode& code) {
    return std::all_of(code.generators.begin(), code.generators.end(),
                       [](const PauliString& g) { return g.xs() == 0 || g.zs() == 0; });
}

/// Bit i set iff `error` anticommutes with generator i.
inline std::uint64_t syndrome_of(const PauliString& error, const StabilizerCode& code) {
    if (error.num_qubits() != code.n) {
        throw DimensionError("syndrome_of: error has " + std::to_string(error.num_qubits()) + " qubits, code has " +
                             std::to_string(code.n));
    }
    if (code.generators.size() > 64) {
        throw DimensionError("syndrome_of: more than 64 generators");
    }
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < code.generators.size(); ++i) {
        if (!commutes(error, code.generators[i])) {
            s |= std::uint64_t{1} << i;
        }
    }
    return s;
}

/// Membership via commutation with every generator and logical representative.
/// Requires complete logical sets, which `validate_code` enforces.
inline bool in_stabilizer_group(const PauliString& p, const StabilizerCode& code) {
    if (p.num_qubits() != code.n) {
        throw DimensionError("in_stabilizer_group: dimension mismatch");
    }
    for (const auto& g : code.generators) {
        if (!commutes(p, g)) {
            return false;
        }
    }
    for (const auto& l : code.logical_x) {
        if (!commutes(p, l)) {
            return false;
        }
    }
    for (const auto& l : code.logical_z) {
        if (!commutes(p, l)) {
            return false;
        }
    }
    return true;
}

/// E ~ E': the two errors differ by a stabilizer.
inline bool stabilizer_equivalent(const PauliString& a, const PauliString& b, const StabilizerCode& code) {
    return in_stabilizer_group(a * b, code);
}

enum class LogicalClass { Identity, Logical, Detectable };

inline const char* to_string(LogicalClass c) {
    switch (c) {
        case LogicalClass::Identity:
            return "IDENTITY";
        case LogicalClass::Logical:
            return "LOGICAL";
        case LogicalClass::Detectable:
            return "DETECTABLE";
    }
    return "?";
}

inline LogicalClass logical_class(const PauliString& residual, const StabilizerCode& code) {
    if (syndrome_of(residual, code) != 0) {
        return LogicalClass::Detectable;
    }
    return in_stabilizer_group(residual, code) ? LogicalClass::Identity : LogicalClass::Logical;
}

}  // namespace flagbridge
