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

#include <stdexcept>
#include <string>

namespace flagbridge {

/// Operand sizes disagree (Pauli lengths, code sizes, ...).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Text or JSON input could not be parsed.
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A flag-bridge specification is inconsistent or unsupported.
struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A circuit violates a structural invariant.
struct StructureError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A requested gate exchange does not commute.
struct CommutationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A fault refers to a location that does not exist.
struct FaultBindingError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Precondition of an analysis is not met (unverified circuits, non-FT input, ...).
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A layout does not cover the circuits or places two qubits on one node.
struct LayoutError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Unknown builtin name or bad configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace flagbridge
