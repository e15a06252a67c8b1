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

#include "flagbridge/builtin_mappings.hpp"
#include "flagbridge/serialize.hpp"
#include "gtest/gtest.h"

namespace flagbridge {
namespace {

TEST(SerializeTest, HexWords) {
    EXPECT_EQ(hex64(0), "0x0");
    EXPECT_EQ(hex64(0xbeef), "0xbeef");
    for (std::uint64_t v : {0ULL, 1ULL, 0x123456789abcdefULL, ~0ULL}) {
        EXPECT_EQ(parse_hex64(hex64(v)), v);
    }
    EXPECT_EQ(parse_hex64("ff"), 255U);
    EXPECT_THROW(parse_hex64("0xzz"), ParseError);
    EXPECT_THROW(parse_hex64(""), ParseError);
    EXPECT_THROW(parse_hex64("12 "), ParseError);
}

TEST(SerializeTest, Fnv1a) {
    // Published FNV-1a 64-bit test vectors.
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
}

TEST(SerializeTest, TopologyRoundTrip) {
    for (const auto& t : {surface17(), ibm20(), ibm16()}) {
        const auto j = to_json(t);
        EXPECT_EQ(j.at("n").get<std::size_t>(), t.n);
        const auto back = topology_from_json(json::parse(j.dump()));
        EXPECT_EQ(back.name, t.name);
        EXPECT_EQ(back.n, t.n);
        EXPECT_EQ(back.edges, t.edges);
    }
    EXPECT_THROW(topology_from_json(json::parse(R"({"name":"x","n":2,"edges":[[0]]})")), ParseError);
    EXPECT_THROW(topology_from_json(json::parse(R"({"name":"x","edges":[]})")), ParseError);
    EXPECT_THROW(topology_from_json(json::parse(R"({"name":"x","n":2,"edges":[[0,0]]})")), StructureError);
    EXPECT_THROW(read_topology_file("/nonexistent/topology.json"), ConfigError);
}

TEST(SerializeTest, LayoutIsAQubitToNodeObject) {
    const Layout l{{15, 1, 4}};
    const auto j = to_json(l);
    EXPECT_EQ(j.dump(), R"({"0":15,"1":1,"2":4})");
    EXPECT_EQ(layout_from_json(j).node, l.node);
    // Key order in the file does not matter.
    EXPECT_EQ(layout_from_json(json::parse(R"({"2":4,"0":15,"1":1})")).node, l.node);
    EXPECT_THROW(layout_from_json(json::parse(R"({"0":1,"2":3})")), LayoutError);
    EXPECT_THROW(layout_from_json(json::parse(R"({"a":1})")), ParseError);
    EXPECT_THROW(layout_from_json(json::parse(R"({"1x":1})")), ParseError);
    EXPECT_THROW(layout_from_json(json::parse(R"([1,2])")), ParseError);
    EXPECT_THROW(layout_from_json(json::parse(R"({"0":"one"})")), ParseError);
    for (const auto& name : builtin_mapping_names()) {
        const auto m = builtin_mapping(name);
        EXPECT_EQ(layout_from_json(json::parse(to_json(m.layout).dump())).node, m.layout.node);
    }
}

TEST(SerializeTest, LookupTablesRoundTrip) {
    for (const auto& name : {"steane-c2-L1", "fivequbit-ibm16"}) {
        const ProtocolEngine engine(builtin_mapping(name).procedure);
        const auto lut = build_lut(engine);
        const auto j = to_json(lut);
        EXPECT_TRUE(j.contains("bit_order"));
        const auto back = lut_from_json(json::parse(j.dump()));
        EXPECT_EQ(back.n, lut.n);
        EXPECT_EQ(back.syndrome_bits, lut.syndrome_bits);
        EXPECT_EQ(back.flag_bits, lut.flag_bits);
        EXPECT_EQ(back.table1, lut.table1);
        EXPECT_EQ(back.table2, lut.table2);
    }
    EXPECT_THROW(lut_from_json(json::parse(R"({"n":7})")), ParseError);
}

TEST(SerializeTest, FtReportListsCounterexamples) {
    const ProtocolEngine bare(steane_bare());
    const auto j = to_json(check_fault_tolerance(bare), bare);
    EXPECT_FALSE(j.at("fault_tolerant").get<bool>());
    ASSERT_FALSE(j.at("counterexamples").empty());
    const auto& first = j.at("counterexamples").at(0);
    EXPECT_TRUE(first.contains("kind"));
    EXPECT_EQ(first.at("first").at("sf").at("round1").get<std::string>().size(), 6U);
    EXPECT_TRUE(first.at("first").at("fault").contains("description"));

    const ProtocolEngine good(builtin_mapping("steane-c3-L2").procedure);
    const auto g = to_json(check_fault_tolerance(good), good);
    EXPECT_TRUE(g.at("fault_tolerant").get<bool>());
    EXPECT_TRUE(g.at("counterexamples").empty());
}

TEST(SerializeTest, HashesTrackContent) {
    EXPECT_EQ(code_hash(steane()), code_hash(steane()));
    EXPECT_NE(code_hash(steane()), code_hash(five_qubit()));
    const auto a = builtin_mapping("steane-c1-L1").procedure.circuits;
    const auto b = builtin_mapping("steane-c1-L2").procedure.circuits;
    EXPECT_EQ(circuits_hash(a), circuits_hash(a));
    EXPECT_NE(circuits_hash(a), circuits_hash(b));
}

TEST(SerializeTest, Manifest) {
    RunManifest m;
    m.command = "simulate";
    m.mapping = "steane-c3-L2";
    m.p = {0.001, 0.002};
    m.seed = 5;
    const auto j = to_json(m);
    EXPECT_EQ(j.at("command"), "simulate");
    EXPECT_EQ(j.at("p").size(), 2U);
    EXPECT_EQ(j.at("shot_block").get<std::uint64_t>(), kShotBlock);
    EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 5U);
    EXPECT_EQ(j.at("version").get<std::string>(), kVersion);
}

}  // namespace
}  // namespace flagbridge
