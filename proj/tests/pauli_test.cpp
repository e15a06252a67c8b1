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

#include <random>
#include <set>

#include "flagbridge/codes.hpp"
#include "gtest/gtest.h"

namespace flagbridge {
namespace {

PauliString P(const char* s) { return PauliString::parse(s); }

PauliString random_pauli(std::size_t n, std::mt19937_64& rng) {
    const std::uint64_t mask = n == 64 ? ~0ULL : (1ULL << n) - 1;
    return PauliString(n, rng() & mask, rng() & mask);
}

// Independent symplectic product, one letter at a time.
bool letters_commute(const std::string& a, const std::string& b) {
    int anti = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 'I' && b[i] != 'I' && a[i] != b[i]) {
            ++anti;
        }
    }
    return anti % 2 == 0;
}

TEST(PauliTest, ParseAndRender) {
    const auto p = P("XZZXI");
    EXPECT_EQ(p.num_qubits(), 5U);
    EXPECT_EQ(p.str(), "XZZXI");
    EXPECT_EQ(p.letter(0), 'X');
    EXPECT_EQ(p.letter(1), 'Z');
    EXPECT_EQ(p.weight(), 4U);
    EXPECT_EQ(P("IYI").letter(1), 'Y');
    EXPECT_THROW(P("XQ"), ParseError);
}

TEST(PauliTest, MultiplyExamples) {
    EXPECT_EQ(P("XI") * P("IX"), P("XX"));
    EXPECT_EQ(P("XZZXI") * P("XZZXI"), P("IIIII"));
    EXPECT_EQ(P("X") * P("Z"), P("Y"));
    EXPECT_THROW(P("XI") * P("X"), DimensionError);
}

TEST(PauliTest, CommuteExamples) {
    EXPECT_TRUE(commutes(P("X"), P("X")));
    EXPECT_FALSE(commutes(P("X"), P("Z")));
    EXPECT_TRUE(commutes(P("XZZXI"), P("IXZZX")));
    EXPECT_THROW(commutes(P("XI"), P("X")), DimensionError);
}

TEST(PauliTest, CyclicShiftsOfFiveQubitGeneratorCommute) {
    std::string g = "XZZXI";
    std::vector<std::string> shifts;
    for (int i = 0; i < 5; ++i) {
        shifts.push_back(g);
        g = g.substr(4) + g.substr(0, 4);
    }
    for (const auto& a : shifts) {
        for (const auto& b : shifts) {
            EXPECT_TRUE(letters_commute(a, b));
            EXPECT_TRUE(commutes(P(a.c_str()), P(b.c_str())));
        }
    }
}

TEST(PauliTest, AlgebraProperties) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t n = 1 + rng() % 64;
        const auto a = random_pauli(n, rng);
        const auto b = random_pauli(n, rng);
        const PauliString id(n);
        EXPECT_TRUE((a * a).is_identity());
        EXPECT_EQ(a * id, a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(commutes(a, b), commutes(b, a));
        EXPECT_TRUE(commutes(a, a));
        EXPECT_EQ(commutes(a, b), letters_commute(a.str(), b.str()));
        EXPECT_EQ(PauliString::parse(a.str()), a);
    }
}

TEST(PauliTest, CanonicalOrderPrefersLowWeight) {
    EXPECT_TRUE(canonical_less(P("IIX"), P("XXI")));
    EXPECT_TRUE(canonical_less(P("XI"), P("ZI")));
    EXPECT_FALSE(canonical_less(P("XI"), P("XI")));
}

TEST(PauliTest, SyndromeExamples) {
    const auto code = steane();
    EXPECT_EQ(syndrome_of(PauliString(7), code), 0U);
    for (const auto& g : code.generators) {
        EXPECT_EQ(syndrome_of(g, code), 0U);
    }
    // X on qubit q flips exactly the Z generators whose support holds q.
    for (std::size_t q = 0; q < 7; ++q) {
        std::uint64_t expect = 0;
        for (std::size_t i = 0; i < code.generators.size(); ++i) {
            const auto& g = code.generators[i];
            if (g.xs() == 0 && g.z(q)) {
                expect |= 1ULL << i;
            }
        }
        const auto s = syndrome_of(PauliString::single(7, q, 'X'), code);
        EXPECT_EQ(s, expect) << "qubit " << q;
        EXPECT_NE(s, 0U);
    }
    EXPECT_THROW(syndrome_of(PauliString(5), code), DimensionError);
}

TEST(PauliTest, SyndromeIsLinear) {
    std::mt19937_64 rng(11);
    for (const auto& code : {steane(), five_qubit(), rotated_surface_d3()}) {
        for (int t = 0; t < 500; ++t) {
            const auto a = random_pauli(code.n, rng);
            const auto b = random_pauli(code.n, rng);
            EXPECT_EQ(syndrome_of(a * b, code), syndrome_of(a, code) ^ syndrome_of(b, code));
        }
    }
}

TEST(PauliTest, StabilizerGroupMembership) {
    const auto code = steane();
    EXPECT_TRUE(in_stabilizer_group(PauliString(7), code));
    EXPECT_TRUE(in_stabilizer_group(code.generators[0] * code.generators[4], code));
    EXPECT_FALSE(in_stabilizer_group(code.logical_z[0], code));
    EXPECT_THROW(in_stabilizer_group(PauliString(3), code), DimensionError);
}

TEST(PauliTest, StabilizerGroupMatchesSpanEnumeration) {
    // Oracle: enumerate the 2^r group elements directly.
    for (const auto& code : {steane(), five_qubit(), rotated_surface_d3()}) {
        std::set<std::pair<std::uint64_t, std::uint64_t>> group;
        const std::size_t r = code.generators.size();
        for (std::uint64_t mask = 0; mask < (1ULL << r); ++mask) {
            PauliString g(code.n);
            for (std::size_t i = 0; i < r; ++i) {
                if ((mask >> i) & 1U) {
                    g *= code.generators[i];
                }
            }
            group.insert({g.xs(), g.zs()});
        }
        ASSERT_EQ(group.size(), 1ULL << r);
        const std::uint64_t full = 1ULL << code.n;
        for (std::uint64_t xs = 0; xs < full; ++xs) {
            for (std::uint64_t zs = 0; zs < full; ++zs) {
                const PauliString p(code.n, xs, zs);
                ASSERT_EQ(in_stabilizer_group(p, code), group.count({xs, zs}) == 1) << p;
            }
        }
    }
}

TEST(PauliTest, LogicalClassExamples) {
    for (const auto& code : {steane(), five_qubit(), rotated_surface_d3()}) {
        EXPECT_EQ(logical_class(PauliString(code.n), code), LogicalClass::Identity);
        EXPECT_EQ(logical_class(code.logical_x[0], code), LogicalClass::Logical);
        for (std::size_t q = 0; q < code.n; ++q) {
            for (char l : {'X', 'Y', 'Z'}) {
                EXPECT_EQ(logical_class(PauliString::single(code.n, q, l), code), LogicalClass::Detectable);
            }
        }
    }
}

TEST(PauliTest, LowWeightErrorsAreDetectedOrTrivial) {
    for (const auto& code : {steane(), five_qubit(), rotated_surface_d3()}) {
        for (std::size_t w = 1; w < 3; ++w) {
            for_each_pauli_of_weight(code.n, w, [&](const PauliString& p) {
                EXPECT_NE(logical_class(p, code), LogicalClass::Logical) << code.name << " " << p;
                return false;
            });
        }
    }
}

}  // namespace
}  // namespace flagbridge
