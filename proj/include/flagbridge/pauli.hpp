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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>
#include <string_view>

#include "flagbridge/errors.hpp"

namespace flagbridge {

inline constexpr std::size_t kMaxQubits = 64;

/// An n-qubit Pauli operator in symplectic form, without phase.
///
/// Bit q of `xs` / `zs` is the X / Z component on qubit q. Since the sign is
/// dropped, multiplication is XOR and every operator is its own inverse.
class PauliString {
   public:
    PauliString() = default;

    explicit PauliString(std::size_t num_qubits) : n_(num_qubits) {
        if (num_qubits > kMaxQubits) {
            throw DimensionError("PauliString supports at most 64 qubits, got " + std::to_string(num_qubits));
        }
    }

    PauliString(std::size_t num_qubits, std::uint64_t xs, std::uint64_t zs) : PauliString(num_qubits) {
        const std::uint64_t mask = qubit_mask(num_qubits);
        if ((xs & ~mask) != 0 || (zs & ~mask) != 0) {
            throw DimensionError("PauliString bits set beyond qubit count");
        }
        xs_ = xs;
        zs_ = zs;
    }

    /// Single-qubit Pauli `letter` on qubit `q`, identity elsewhere.
    static PauliString single(std::size_t num_qubits, std::size_t q, char letter) {
        PauliString p(num_qubits);
        p.set(q, letter);
        return p;
    }

    /// Parses "XZZXI" (qubit 0 leftmost). Accepts I/X/Y/Z and '_' for identity.
    static PauliString parse(std::string_view text) {
        PauliString p(text.size());
        for (std::size_t q = 0; q < text.size(); ++q) {
            char c = text[q];
            if (c == '_') {
                c = 'I';
            }
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw ParseError("invalid Pauli character '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");
            }
            p.set(q, c);
        }
        return p;
    }

    static constexpr std::uint64_t qubit_mask(std::size_t n) {
        return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    }

    std::size_t num_qubits() const { return n_; }
    std::uint64_t xs() const { return xs_; }
    std::uint64_t zs() const { return zs_; }

    bool x(std::size_t q) const { return (xs_ >> q) & 1U; }
    bool z(std::size_t q) const { return (zs_ >> q) & 1U; }

    char letter(std::size_t q) const {
        check_index(q);
        static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
        return kLetters[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
    }

    void set(std::size_t q, char letter) {
        check_index(q);
        const std::uint64_t bit = std::uint64_t{1} << q;
        xs_ &= ~bit;
        zs_ &= ~bit;
        switch (letter) {
            case 'I':
                break;
            case 'X':
                xs_ |= bit;
                break;
            case 'Z':
                zs_ |= bit;
                break;
            case 'Y':
                xs_ |= bit;
                zs_ |= bit;
                break;
            default:
                throw ParseError(std::string("invalid Pauli letter '") + letter + "'");
        }
    }

    /// Number of non-identity tensor factors.
    std::size_t weight() const { return static_cast<std::size_t>(std::popcount(xs_ | zs_)); }
    bool is_identity() const { return (xs_ | zs_) == 0; }
    std::uint64_t support() const { return xs_ | zs_; }

    /// Indices of the non-identity qubits, ascending.
    std::vector<std::uint32_t> support_qubits() const {
        std::vector<std::uint32_t> out;
        for (std::uint64_t m = support(); m != 0; m &= m - 1) {
            out.push_back(static_cast<std::uint32_t>(std::countr_zero(m)));
        }
        return out;
    }

    PauliString& operator*=(const PauliString& other) {
        require_same_size(*this, other);
        xs_ ^= other.xs_;
        zs_ ^= other.zs_;
        return *this;
    }

    /// Restriction to qubits [0, k) as a k-qubit operator.
    PauliString prefix(std::size_t k) const {
        if (k > n_) {
            throw DimensionError("prefix longer than PauliString");
        }
        const std::uint64_t mask = qubit_mask(k);
        return PauliString(k, xs_ & mask, zs_ & mask);
    }

    /// Embeds into a larger register, new qubits identity.
    PauliString extended(std::size_t new_n) const {
        if (new_n < n_) {
            throw DimensionError("cannot extend PauliString to fewer qubits");
        }
        return PauliString(new_n, xs_, zs_);
    }

    std::string str() const {
        std::string out(n_, 'I');
        for (std::size_t q = 0; q < n_; ++q) {
            out[q] = letter(q);
        }
        return out;
    }

    friend bool operator==(const PauliString&, const PauliString&) = default;

    /// Weight first, then lexicographic on the I<X<Y<Z rendering.
    friend bool canonical_less(const PauliString& a, const PauliString& b) {
        if (a.weight() != b.weight()) {
            return a.weight() < b.weight();
        }
        auto rank = [](char c) { return c == 'I' ? 0 : c == 'X' ? 1 : c == 'Y' ? 2 : 3; };
        const std::size_t n = std::min(a.n_, b.n_);
        for (std::size_t q = 0; q < n; ++q) {
            const int ra = rank(a.letter(q));
            const int rb = rank(b.letter(q));
            if (ra != rb) {
                return ra < rb;
            }
        }
        return a.n_ < b.n_;
    }

    static void require_same_size(const PauliString& a, const PauliString& b) {
        if (a.n_ != b.n_) {
            throw DimensionError("Pauli length mismatch: " + std::to_string(a.n_) + " vs " + std::to_string(b.n_));
        }
    }

   private:
    void check_index(std::size_t q) const {
        if (q >= n_) {
            throw DimensionError("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                                 "-qubit Pauli");
        }
    }

    std::size_t n_ = 0;
    std::uint64_t xs_ = 0;
    std::uint64_t zs_ = 0;
};

/// Component-wise XOR; phase-free product.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
    PauliString out = a;
    out *= b;
    return out;
}

inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// Symplectic inner product is zero.
inline bool commutes(const PauliString& a, const PauliString& b) {
    PauliString::require_same_size(a, b);
    const std::uint64_t cross = (a.xs() & b.zs()) ^ (a.zs() & b.xs());
    return (std::popcount(cross) & 1) == 0;
}

inline std::ostream& operator<<(std::ostream& os, const PauliString& p) { return os << p.str(); }

}  // namespace flagbridge

template <>
struct std::hash<flagbridge::PauliString> {
    std::size_t operator()(const flagbridge::PauliString& p) const noexcept {
        std::uint64_t h = p.xs() * 0x9E3779B97F4A7C15ULL;
        h ^= (p.zs() + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
        return static_cast<std::size_t>(h ^ p.num_qubits());
    }
};
