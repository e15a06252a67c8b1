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
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "flagbridge/stabilizer_code.hpp"

namespace flagbridge {

namespace detail {

inline std::vector<PauliString> parse_all(std::initializer_list<const char*> rows) {
    std::vector<PauliString> out;
    for (const char* r : rows) {
        out.push_back(PauliString::parse(r));
    }
    return out;
}

/// GF(2) rank of the symplectic rows (x | z) of `rows`.
inline std::size_t symplectic_rank(const std::vector<PauliString>& rows) {
    std::vector<unsigned __int128> m;
    for (const auto& p : rows) {
        m.push_back((static_cast<unsigned __int128>(p.xs()) << 64) | p.zs());
    }
    std::size_t rank = 0;
    for (int bit = 127; bit >= 0 && rank < m.size(); --bit) {
        const unsigned __int128 mask = static_cast<unsigned __int128>(1) << bit;
        auto pivot = std::find_if(m.begin() + static_cast<std::ptrdiff_t>(rank), m.end(),
                                  [&](unsigned __int128 v) { return (v & mask) != 0; });
        if (pivot == m.end()) {
            continue;
        }
        std::iter_swap(m.begin() + static_cast<std::ptrdiff_t>(rank), pivot);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i != rank && (m[i] & mask) != 0) {
                m[i] ^= m[rank];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// [[7,1,3]] Steane code.
///
/// Plaquette supports (our labeling convention): A = {0,1,2,3}, B = {1,2,4,5},
/// C = {2,3,5,6}. Qubit 2 is shared by all three plaquettes; 1, 3 and 5 by two.
/// Generator order: X_A, X_B, X_C, Z_A, Z_B, Z_C.
inline StabilizerCode steane() {
    StabilizerCode c;
    c.name = "steane";
    c.n = 7;
    c.k = 1;
    c.generators = detail::parse_all({"XXXXIII", "IXXIXXI", "IIXXIXX", "ZZZZIII", "IZZIZZI", "IIZZIZZ"});
    c.logical_x = {PauliString::parse("XXIIXII")};
    c.logical_z = {PauliString::parse("ZZIIZII")};
    return c;
}

/// [[5,1,3]] code, generators are four cyclic shifts of XZZXI.
inline StabilizerCode five_qubit() {
    StabilizerCode c;
    c.name = "five_qubit";
    c.n = 5;
    c.k = 1;
    c.generators = detail::parse_all({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"});
    c.logical_x = {PauliString::parse("XXXXX")};
    c.logical_z = {PauliString::parse("ZZZZZ")};
    return c;
}

/// Rotated distance-3 surface code on a 3x3 data grid (qubit 3*row + col).
///
/// Generator order matches the Surface-17 ancilla order used by the sc-d3
/// mapping: bulk X, bulk Z, bulk Z, bulk X, then boundary X top, X bottom,
/// Z left, Z right.
inline StabilizerCode rotated_surface_d3() {
    StabilizerCode c;
    c.name = "surface_d3";
    c.n = 9;
    c.k = 1;
    c.generators = detail::parse_all({
        "XXIXXIIII",  // bulk (0,0)
        "IZZIZZIII",  // bulk (0,1)
        "IIIZZIZZI",  // bulk (1,0)
        "IIIIXXIXX",  // bulk (1,1)
        "IXXIIIIII",  // top
        "IIIIIIXXI",  // bottom
        "ZIIZIIIII",  // left
        "IIIIIZIIZ",  // right
    });
    c.logical_x = {PauliString::parse("XIIXIIXII")};
    c.logical_z = {PauliString::parse("ZZZIIIIII")};
    return c;
}

/// Outcome of `validate_code`: ok, or the first violated invariant.
struct ValidationReport {
    bool ok = true;
    std::string message;

    static ValidationReport fail(std::string why) { return {false, std::move(why)}; }
};

inline ValidationReport validate_code(const StabilizerCode& code) {
    auto sized = [&](const PauliString& p) { return p.num_qubits() == code.n; };
    for (const auto& g : code.generators) {
        if (!sized(g)) {
            return ValidationReport::fail("generator " + g.str() + " has wrong length");
        }
    }
    if (code.logical_x.size() != code.k || code.logical_z.size() != code.k) {
        return ValidationReport::fail("expected " + std::to_string(code.k) + " logical X and Z representatives");
    }
    for (std::size_t i = 0; i < code.generators.size(); ++i) {
        for (std::size_t j = i + 1; j < code.generators.size(); ++j) {
            if (!commutes(code.generators[i], code.generators[j])) {
                return ValidationReport::fail("generators " + code.generators[i].str() + " and " +
                                              code.generators[j].str() + " anticommute");
            }
        }
    }
    if (code.generators.size() + code.k != code.n) {
        return ValidationReport::fail("generator count " + std::to_string(code.generators.size()) + " != n - k");
    }
    if (detail::symplectic_rank(code.generators) != code.generators.size()) {
        return ValidationReport::fail("generators are not independent");
    }
    std::vector<PauliString> logicals = code.logical_x;
    logicals.insert(logicals.end(), code.logical_z.begin(), code.logical_z.end());
    for (const auto& l : logicals) {
        if (!sized(l)) {
            return ValidationReport::fail("logical " + l.str() + " has wrong length");
        }
        for (const auto& g : code.generators) {
            if (!commutes(l, g)) {
                return ValidationReport::fail("logical " + l.str() + " anticommutes with generator " + g.str());
            }
        }
    }
    for (std::size_t i = 0; i < code.k; ++i) {
        for (std::size_t j = 0; j < code.k; ++j) {
            const bool should_commute = i != j;
            if (commutes(code.logical_x[i], code.logical_z[j]) != should_commute) {
                return ValidationReport::fail("logical X_" + std::to_string(i) + " / Z_" + std::to_string(j) +
                                              " have wrong commutation");
            }
            if (i < j && (!commutes(code.logical_x[i], code.logical_x[j]) ||
                          !commutes(code.logical_z[i], code.logical_z[j]))) {
                return ValidationReport::fail("logical operators of different qubits anticommute");
            }
        }
    }
    return {};
}

inline constexpr std::size_t kMaxDistanceQubits = 12;

/// Calls `visit(p)` for every Pauli of exactly weight `w` on `n` qubits until it returns true.
/// Returns whether some visit returned true.
template <typename Visitor>
bool for_each_pauli_of_weight(std::size_t n, std::size_t w, Visitor&& visit) {
    std::vector<std::size_t> pos(w);
    for (std::size_t i = 0; i < w; ++i) {
        pos[i] = i;
    }
    if (w > n) {
        return false;
    }
    while (true) {
        std::size_t combos = 1;
        for (std::size_t i = 0; i < w; ++i) {
            combos *= 3;
        }
        for (std::size_t letters = 0; letters < combos; ++letters) {
            std::uint64_t xs = 0;
            std::uint64_t zs = 0;
            std::size_t code = letters;
            for (std::size_t i = 0; i < w; ++i) {
                const std::size_t l = code % 3 + 1;  // 1 = X, 2 = Z, 3 = Y
                code /= 3;
                if (l & 1U) {
                    xs |= std::uint64_t{1} << pos[i];
                }
                if (l & 2U) {
                    zs |= std::uint64_t{1} << pos[i];
                }
            }
            if (visit(PauliString(n, xs, zs))) {
                return true;
            }
        }
        // next combination
        std::size_t i = w;
        while (i > 0 && pos[i - 1] == n - w + i - 1) {
            --i;
        }
        if (i == 0) {
            return false;
        }
        ++pos[i - 1];
        for (std::size_t j = i; j < w; ++j) {
            pos[j] = pos[j - 1] + 1;
        }
    }
}

/// Brute-force minimum weight of a nontrivial logical operator.
inline std::size_t distance(const StabilizerCode& code) {
    if (code.n > kMaxDistanceQubits) {
        throw DimensionError("distance: brute force supports n <= 12, got " + std::to_string(code.n));
    }
    for (std::size_t w = 1; w <= code.n; ++w) {
        const bool found = for_each_pauli_of_weight(code.n, w, [&](const PauliString& p) {
            return logical_class(p, code) == LogicalClass::Logical;
        });
        if (found) {
            return w;
        }
    }
    return code.n + 1;
}

// ---------------------------------------------------------------------------
// Text format:
//   <n> <k> <name>
//   <pauli>            one line per generator
//   LX <pauli>         k lines
//   LZ <pauli>         k lines
// Blank lines and lines starting with '#' are ignored.

inline void write_code(std::ostream& os, const StabilizerCode& code) {
    os << code.n << ' ' << code.k << ' ' << code.name << '\n';
    for (const auto& g : code.generators) {
        os << g.str() << '\n';
    }
    for (const auto& l : code.logical_x) {
        os << "LX " << l.str() << '\n';
    }
    for (const auto& l : code.logical_z) {
        os << "LZ " << l.str() << '\n';
    }
}

inline StabilizerCode read_code(std::istream& is) {
    StabilizerCode code;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') {
            continue;
        }
        if (!have_header) {
            try {
                code.n = std::stoul(first);
            } catch (const std::exception&) {
                throw ParseError("code header must start with n, got \"" + first + "\"");
            }
            if (!(ls >> code.k >> code.name)) {
                throw ParseError("code header must be `n k name`");
            }
            have_header = true;
            continue;
        }
        auto take = [&](const std::string& text) {
            auto p = PauliString::parse(text);
            if (p.num_qubits() != code.n) {
                throw ParseError("operator " + text + " does not have n = " + std::to_string(code.n) + " letters");
            }
            return p;
        };
        if (first == "LX" || first == "LZ") {
            std::string op;
            if (!(ls >> op)) {
                throw ParseError("missing operator after " + first);
            }
            (first == "LX" ? code.logical_x : code.logical_z).push_back(take(op));
        } else {
            code.generators.push_back(take(first));
        }
    }
    if (!have_header) {
        throw ParseError("empty code description");
    }
    return code;
}

inline std::optional<StabilizerCode> builtin_code(const std::string& name) {
    if (name == "steane") {
        return steane();
    }
    if (name == "five_qubit") {
        return five_qubit();
    }
    if (name == "surface_d3") {
        return rotated_surface_d3();
    }
    return std::nullopt;
}

}  // namespace flagbridge
