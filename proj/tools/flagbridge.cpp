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

// flagbridge: command-line front end.
//
// Exit codes: 0 success / fault tolerant, 1 semantic failure (not fault
// tolerant, layout violation, unverified circuits), 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "flagbridge/builtin_mappings.hpp"
#include "flagbridge/dataset.hpp"
#include "flagbridge/serialize.hpp"

namespace fb = flagbridge;

namespace {

constexpr int kOk = 0;
constexpr int kSemantic = 1;
constexpr int kUsage = 2;

struct Options {
    std::vector<std::string> mappings;
    std::string code;
    std::string circuits;
    std::string topology;
    std::string layout;
    std::vector<double> p;
    std::vector<double> pi_ratio;
    std::uint64_t shots = 1000000;
    std::uint64_t count = 100000;
    std::uint64_t seed = 1;
    std::string out;
    std::string lut_out;
    std::string format;
    unsigned workers = 0;
    bool include_idle = false;
};

// A procedure plus whatever placement information came with it.
struct Target {
    std::string name;
    fb::QecProcedure procedure;
    std::optional<fb::Layout> layout;
    std::optional<fb::DeviceTopology> topology;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw fb::ConfigError("cannot open " + path);
    }
    return in;
}

fb::StabilizerCode load_code(const std::string& arg) {
    if (auto c = fb::builtin_code(arg)) {
        return *c;
    }
    auto in = open_input(arg);
    return fb::read_code(in);
}

std::vector<fb::Circuit> load_circuits(const std::string& path) {
    auto in = open_input(path);
    return fb::read_circuits(in);
}

fb::DeviceTopology load_topology(const std::string& arg) {
    if (arg == "surface17" || arg == "ibm20" || arg == "ibm16") {
        return fb::builtin_topology(arg);
    }
    return fb::read_topology_file(arg);
}

fb::Layout load_layout(const std::string& path) {
    auto in = open_input(path);
    try {
        return fb::layout_from_json(fb::json::parse(in));
    } catch (const fb::json::parse_error& e) {
        throw fb::ParseError(path + ": " + e.what());
    }
}

Target mapping_target(const std::string& name) {
    if (name == "steane-bare") {
        return {name, fb::steane_bare(), std::nullopt, std::nullopt};
    }
    auto m = fb::builtin_mapping(name);
    return {m.name, m.procedure, m.layout, m.topology};
}

// --circuits/--code override --mapping; --topology/--layout override the
// mapping's placement.
Target resolve(const Options& o, bool need_code) {
    Target t;
    if (!o.circuits.empty()) {
        t.name = std::filesystem::path(o.circuits).stem().string();
        t.procedure.name = t.name;
        t.procedure.circuits = load_circuits(o.circuits);
        if (!o.code.empty()) {
            t.procedure.code = load_code(o.code);
        } else if (need_code) {
            throw fb::ConfigError("--circuits needs --code");
        }
    } else if (o.mappings.size() == 1) {
        t = mapping_target(o.mappings.front());
        if (!o.code.empty()) {
            throw fb::ConfigError("--code only applies together with --circuits");
        }
    } else {
        throw fb::ConfigError("give exactly one --mapping or a --circuits file");
    }
    if (!o.topology.empty()) {
        t.topology = load_topology(o.topology);
    }
    if (!o.layout.empty()) {
        t.layout = load_layout(o.layout);
    }
    return t;
}

void check_probabilities(const std::vector<double>& ps) {
    for (double p : ps) {
        if (!(p > 0.0 && p <= 1.0)) {
            throw fb::ConfigError("--p values must lie in (0, 1], got " + fb::format_double(p));
        }
    }
}

// Writes to --out when given, otherwise to stdout.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out || !(out << text)) {
        throw fb::ConfigError("cannot write " + path);
    }
}

void write_manifest(fb::RunManifest m, const Target& t) {
    if (m.output.empty()) {
        return;
    }
    m.mapping = t.name;
    m.code_hash = fb::code_hash(t.procedure.code);
    m.circuits_hash = fb::circuits_hash(t.procedure.circuits);
    emit(m.output + ".manifest.json", fb::to_json(m).dump(2) + "\n");
}

int cmd_check_ft(const Options& o) {
    const auto t = resolve(o, true);
    if (!fb::procedure_verified(t.procedure)) {
        std::cerr << t.name << ": some circuit does not measure its declared checks\n";
        return kSemantic;
    }
    const fb::ProtocolEngine engine(t.procedure);
    const auto rep = fb::check_fault_tolerance(engine);
    auto j = fb::to_json(rep, engine);
    j["mapping"] = t.name;
    if (!o.out.empty()) {
        emit(o.out, j.dump(2) + "\n");
    }
    std::cout << t.name << ": " << (rep.fault_tolerant ? "fault tolerant" : "NOT fault tolerant") << " (" << rep.faults
              << " faults, " << rep.signatures << " signatures)\n";
    for (const auto& c : rep.counterexamples) {
        std::cout << "  " << fb::to_string(c.kind) << ": " << fb::describe(c.first.fault, engine.circuits())
                  << " -> " << c.first.residual.str();
        if (c.kind != fb::ViolationKind::UndetectedWeight) {
            std::cout << " vs " << fb::describe(c.second.fault, engine.circuits()) << " -> "
                      << c.second.residual.str();
        }
        std::cout << '\n';
    }
    if (rep.fault_tolerant && !o.lut_out.empty()) {
        emit(o.lut_out, fb::to_json(fb::build_lut(engine)).dump() + "\n");
    }
    return rep.fault_tolerant ? kOk : kSemantic;
}

int cmd_characterize(const Options& o) {
    std::vector<std::pair<std::string, fb::CircuitStats>> rows;
    if (!o.circuits.empty()) {
        rows.emplace_back(std::filesystem::path(o.circuits).stem().string(),
                          fb::characterize(load_circuits(o.circuits)));
    } else {
        std::vector<std::string> names = o.mappings;
        if (names.empty()) {
            names = {"steane-c1-L1", "steane-c1-L2", "steane-c2-L1", "steane-c2-L2", "steane-c3-L2", "sc-d3"};
        }
        for (const auto& n : names) {
            rows.emplace_back(n, fb::characterize(mapping_target(n).procedure.circuits));
        }
    }
    std::ostringstream os;
    if (o.format == "json") {
        auto arr = fb::json::array();
        for (const auto& [name, s] : rows) {
            arr.push_back({{"mapping", name},
                           {"ancillas", s.ancillas},
                           {"operations", s.operations},
                           {"f_cnots", s.f_cnots},
                           {"s_cnots", s.s_cnots},
                           {"timesteps", s.timesteps}});
        }
        os << arr.dump(2) << '\n';
    } else if (o.format == "csv" || !o.out.empty()) {
        os << "mapping,ancillas,operations,f_cnots,s_cnots,timesteps\n";
        for (const auto& [name, s] : rows) {
            os << name << ',' << s.ancillas << ',' << s.operations << ',' << s.f_cnots << ',' << s.s_cnots << ','
               << s.timesteps << '\n';
        }
    } else {
        os << std::left << std::setw(22) << "mapping" << std::right << std::setw(10) << "ancillas" << std::setw(12)
           << "operations" << std::setw(9) << "f-CNOTs" << std::setw(9) << "s-CNOTs" << std::setw(11) << "timesteps"
           << '\n';
        for (const auto& [name, s] : rows) {
            os << std::left << std::setw(22) << name << std::right << std::setw(10) << s.ancillas << std::setw(12)
               << s.operations << std::setw(9) << s.f_cnots << std::setw(9) << s.s_cnots << std::setw(11)
               << s.timesteps << '\n';
        }
    }
    emit(o.out, os.str());
    return kOk;
}

int cmd_simulate(const Options& o) {
    const auto t = resolve(o, true);
    const auto ps = o.p.empty() ? std::vector<double>{1e-3} : o.p;
    const auto ratios = o.pi_ratio.empty() ? std::vector<double>{0.0} : o.pi_ratio;
    check_probabilities(ps);
    if (o.shots == 0) {
        throw fb::ConfigError("--shots must be at least 1");
    }
    const fb::ProtocolEngine engine(t.procedure);
    const auto lut = fb::build_lut(engine);
    const unsigned workers = o.workers == 0 ? fb::default_workers() : o.workers;
    auto points = fb::sweep(engine, lut, ps, ratios, o.shots, o.seed, workers);
    for (auto& pt : points) {
        pt.config_name = t.name;
    }
    std::ostringstream os;
    if (o.format == "json") {
        auto arr = fb::json::array();
        for (const auto& pt : points) {
            arr.push_back({{"config_name", pt.config_name},
                           {"p", pt.p},
                           {"pI_ratio", pt.pI_ratio},
                           {"shots", pt.shots},
                           {"failures", pt.failures},
                           {"ler", pt.ler},
                           {"ci_low", pt.ci_low},
                           {"ci_high", pt.ci_high},
                           {"seed", pt.seed}});
        }
        os << arr.dump(2) << '\n';
    } else {
        fb::write_ler_csv(os, points);
    }
    emit(o.out, os.str());
    fb::RunManifest m;
    m.command = "simulate";
    m.p = ps;
    m.pI_ratio = ratios;
    m.shots = o.shots;
    m.seed = o.seed;
    m.workers = workers;
    m.output = o.out;
    write_manifest(m, t);
    return kOk;
}

int cmd_export_dataset(const Options& o) {
    const auto t = resolve(o, true);
    if (o.p.size() > 1 || o.pi_ratio.size() > 1) {
        throw fb::ConfigError("export-dataset takes a single --p and --pi-ratio");
    }
    const double p = o.p.empty() ? 0.01 : o.p.front();
    const double ratio = o.pi_ratio.empty() ? 0.0 : o.pi_ratio.front();
    check_probabilities({p});
    if (o.count == 0) {
        throw fb::ConfigError("--count must be at least 1");
    }
    if (o.out.empty()) {
        throw fb::ConfigError("export-dataset needs --out");
    }
    const fb::ProtocolEngine engine(t.procedure);
    const auto d = fb::sample_dataset(engine, fb::NoiseModel::with_idle_ratio(p, ratio), o.count, o.seed);
    std::ostringstream os;
    fb::write_dataset(os, d);
    emit(o.out, os.str());
    std::size_t triggered = 0;
    for (const auto& s : d.samples) {
        triggered += s.triggered;
    }
    std::cout << t.name << ": wrote " << d.samples.size() << " samples (m=" << d.m << ", n=" << d.n << ", "
              << triggered << " triggered) to " << o.out << '\n';
    fb::RunManifest m;
    m.command = "export-dataset";
    m.p = {p};
    m.pI_ratio = {ratio};
    m.shots = o.count;
    m.seed = o.seed;
    m.workers = 1;
    m.output = o.out;
    write_manifest(m, t);
    return kOk;
}

int cmd_validate_layout(const Options& o) {
    const auto t = resolve(o, false);
    if (!t.topology || !t.layout) {
        throw fb::ConfigError("validate-layout needs a topology and a layout");
    }
    fb::validate_topology(*t.topology);
    const auto rep = fb::validate_layout(t.procedure.circuits, *t.topology, *t.layout);
    auto j = fb::to_json(rep);
    j["mapping"] = t.name;
    j["topology"] = t.topology->name;
    if (!o.out.empty()) {
        emit(o.out, j.dump(2) + "\n");
    }
    std::cout << t.name << " on " << t.topology->name << ": "
              << (rep.ok ? "all CNOTs on coupled nodes" : std::to_string(rep.violations.size()) + " uncoupled CNOT(s)")
              << '\n';
    for (const auto& v : rep.violations) {
        std::cout << "  circuit " << v.circuit << " t" << v.timestep << ": cnot " << v.control << " " << v.target
                  << " -> nodes " << t.layout->node[v.control] << " " << t.layout->node[v.target] << '\n';
    }
    return rep.ok ? kOk : kSemantic;
}

void add_source(CLI::App* sub, Options& o, bool repeat_mapping = false) {
    auto* opt = sub->add_option("--mapping", o.mappings, "builtin mapping name (or steane-bare)");
    if (!repeat_mapping) {
        opt->expected(1);
    }
    sub->add_option("--circuits", o.circuits, "circuit text file")->excludes(opt);
    sub->add_option("--code", o.code, "code text file or builtin code name");
}

void add_noise(CLI::App* sub, Options& o) {
    sub->add_option("--p", o.p, "physical error rate (repeatable)")->allow_extra_args(false);
    sub->add_option("--pi-ratio", o.pi_ratio, "idle error rate as a multiple of p (repeatable)")
        ->allow_extra_args(false);
    sub->add_option("--seed", o.seed, "master seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flagbridge: flag-bridge fault-tolerance workbench"};
    app.set_version_flag("--version", std::string(fb::kVersion));
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check-ft", "check single-fault tolerance of a procedure");
    add_source(check, o);
    check->add_option("--out", o.out, "write the JSON report here");
    check->add_option("--lut", o.lut_out, "write the decoder lookup tables here (JSON)");

    auto* charz = app.add_subcommand("characterize", "circuit statistics (ancillas, operations, CNOTs, depth)");
    add_source(charz, o, true);
    charz->add_option("--out", o.out, "output file (CSV unless --format json)");
    charz->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* sim = app.add_subcommand("simulate", "Monte Carlo logical error rates");
    add_source(sim, o);
    add_noise(sim, o);
    sim->add_option("--shots", o.shots, "shots per point");
    sim->add_option("--workers", o.workers, "worker threads (default: all cores)");
    sim->add_option("--out", o.out, "output file (default stdout)");
    sim->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* exp = app.add_subcommand("export-dataset", "sample syndrome/error training pairs");
    add_source(exp, o);
    add_noise(exp, o);
    exp->add_option("--count", o.count, "number of samples");
    exp->add_option("--out", o.out, "dataset CSV path")->required();

    auto* val = app.add_subcommand("validate-layout", "check every CNOT sits on a device coupler");
    add_source(val, o);
    val->add_option("--topology", o.topology, "topology JSON file or builtin device name");
    val->add_option("--layout", o.layout, "layout JSON file {qubit: node}");
    val->add_option("--out", o.out, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*check) {
            return cmd_check_ft(o);
        }
        if (*charz) {
            return cmd_characterize(o);
        }
        if (*sim) {
            return cmd_simulate(o);
        }
        if (*exp) {
            return cmd_export_dataset(o);
        }
        return cmd_validate_layout(o);
    } catch (const fb::PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSemantic;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
