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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flagbridge/circuit.hpp"

namespace flagbridge {

/// Undirected coupling graph of a device.
struct DeviceTopology {
    std::string name;
    std::size_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

    bool adjacent(std::uint32_t a, std::uint32_t b) const {
        return std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
            return (e.first == a && e.second == b) || (e.first == b && e.second == a);
        });
    }

    std::size_t degree(std::uint32_t v) const {
        return static_cast<std::size_t>(std::count_if(
            edges.begin(), edges.end(), [&](const auto& e) { return e.first == v || e.second == v; }));
    }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (std::uint32_t v = 0; v < n; ++v) {
            d = std::max(d, degree(v));
        }
        return d;
    }

    bool connected() const {
        if (n == 0) {
            return true;
        }
        std::vector<bool> seen(n, false);
        std::vector<std::uint32_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (const auto& [a, b] : edges) {
                const std::uint32_t w = a == v ? b : b == v ? a : v;
                if (w != v && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
    }
};

/// Throws StructureError unless the graph is simple with in-range nodes.
inline void validate_topology(const DeviceTopology& t) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (auto [a, b] : t.edges) {
        if (a >= t.n || b >= t.n) {
            throw StructureError("topology " + t.name + ": edge node out of range");
        }
        if (a == b) {
            throw StructureError("topology " + t.name + ": self-loop on node " + std::to_string(a));
        }
        if (!seen.insert(std::minmax(a, b)).second) {
            throw StructureError("topology " + t.name + ": duplicate edge " + std::to_string(a) + "-" +
                                 std::to_string(b));
        }
    }
}

/// Surface-17: data nodes 0..8 on a 3x3 grid (node 3*row + col), ancilla
/// nodes 9..16 each coupled to the data corners of its rotated-lattice face.
inline DeviceTopology surface17() {
    DeviceTopology t{"surface17", 17, {}};
    const std::vector<std::vector<std::uint32_t>> faces = {
        {0, 1, 3, 4}, {1, 2, 4, 5}, {3, 4, 6, 7}, {4, 5, 7, 8},  // bulk
        {1, 2},       {6, 7},       {0, 3},       {5, 8},        // top, bottom, left, right
    };
    for (std::uint32_t a = 0; a < faces.size(); ++a) {
        for (auto d : faces[a]) {
            t.edges.emplace_back(d, 9 + a);
        }
    }
    return t;
}

/// IBM Q Tokyo: 4x5 grid (node 5*row + col) plus crossed couplers in six cells.
inline DeviceTopology ibm20() {
    DeviceTopology t{"ibm20", 20, {}};
    for (std::uint32_t r = 0; r < 4; ++r) {
        for (std::uint32_t c = 0; c < 5; ++c) {
            const std::uint32_t v = 5 * r + c;
            if (c + 1 < 5) {
                t.edges.emplace_back(v, v + 1);
            }
            if (r + 1 < 4) {
                t.edges.emplace_back(v, v + 5);
            }
        }
    }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> crosses = {
        {1, 7}, {2, 6}, {3, 9}, {4, 8}, {5, 11}, {6, 10}, {7, 13}, {8, 12}, {11, 17}, {12, 16}, {13, 19}, {14, 18},
    };
    t.edges.insert(t.edges.end(), crosses.begin(), crosses.end());
    return t;
}

/// IBM Q Melbourne: 2x8 ladder. Top row 0..7, bottom row 15..8 so that
/// node i sits above node 15 - i.
inline DeviceTopology ibm16() {
    DeviceTopology t{"ibm16", 16, {}};
    for (std::uint32_t i = 0; i + 1 < 8; ++i) {
        t.edges.emplace_back(i, i + 1);
        t.edges.emplace_back(15 - i, 14 - i);
    }
    for (std::uint32_t i = 0; i < 8; ++i) {
        t.edges.emplace_back(i, 15 - i);
    }
    return t;
}

inline DeviceTopology builtin_topology(const std::string& name) {
    if (name == "surface17") {
        return surface17();
    }
    if (name == "ibm20") {
        return ibm20();
    }
    if (name == "ibm16") {
        return ibm16();
    }
    throw ConfigError("unknown topology \"" + name + "\" (known: surface17, ibm20, ibm16)");
}

/// Injective placement of circuit qubits on device nodes; node[q] for qubit q.
struct Layout {
    std::vector<std::uint32_t> node;
};

struct LayoutViolation {
    std::size_t circuit = 0;
    std::size_t timestep = 0;
    std::uint32_t control = 0;
    std::uint32_t target = 0;
};

struct LayoutReport {
    bool ok = true;
    std::vector<LayoutViolation> violations;
};

/// Every CNOT must act on a coupled pair of nodes. Throws LayoutError when
/// the layout does not cover the circuits or is not injective.
inline LayoutReport validate_layout(const std::vector<Circuit>& circuits, const DeviceTopology& topo,
                                    const Layout& layout) {
    std::set<std::uint32_t> used;
    for (auto v : layout.node) {
        if (v >= topo.n) {
            throw LayoutError("layout places a qubit on node " + std::to_string(v) + ", topology " + topo.name +
                              " has " + std::to_string(topo.n) + " nodes");
        }
        if (!used.insert(v).second) {
            throw LayoutError("layout is not injective: node " + std::to_string(v) + " used twice");
        }
    }
    LayoutReport report;
    for (std::size_t ci = 0; ci < circuits.size(); ++ci) {
        const auto& c = circuits[ci];
        if (c.num_qubits() > layout.node.size()) {
            throw LayoutError("layout covers " + std::to_string(layout.node.size()) + " qubits, circuit " + c.name +
                              " has " + std::to_string(c.num_qubits()));
        }
        for (std::size_t t = 0; t < c.timesteps.size(); ++t) {
            for (const auto& g : c.timesteps[t]) {
                if (g.kind != GateKind::CNOT) {
                    continue;
                }
                if (!topo.adjacent(layout.node[g.qubits[0]], layout.node[g.qubits[1]])) {
                    report.ok = false;
                    report.violations.push_back({ci, t, g.qubits[0], g.qubits[1]});
                }
            }
        }
    }
    return report;
}

/// Distinct pairs of qubits that share a CNOT somewhere in the circuits.
inline std::set<std::pair<std::uint32_t, std::uint32_t>> interaction_edges(const std::vector<Circuit>& circuits) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const auto& c : circuits) {
        for (const auto& step : c.timesteps) {
            for (const auto& g : step) {
                if (g.kind == GateKind::CNOT) {
                    out.insert(std::minmax(g.qubits[0], g.qubits[1]));
                }
            }
        }
    }
    return out;
}

}  // namespace flagbridge
