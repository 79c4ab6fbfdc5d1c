// reoimc: build, minimize, compare and analyze Stochastic Reo circuits.
//
// Exit codes: 0 ok, 1 semantic failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "reoimc/analysis.hpp"
#include "reoimc/bisim.hpp"
#include "reoimc/circuit.hpp"
#include "reoimc/composer.hpp"
#include "reoimc/model_io.hpp"

using namespace reoimc;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Failure("cannot write '" + path + "'");
}

Imc load_file(const std::string& path) {
    try {
        return load_model(read_file(path));
    } catch (const ModelFormatError& e) {
        throw Failure(path + ": " + e.what());
    }
}

Circuit load_circuit(const std::string& path) {
    const auto text = read_file(path);
    try {
        return parse_circuit(text);
    } catch (const CircuitError& e) {
        std::string msg;
        for (const auto& d : e.diagnostics()) msg += (msg.empty() ? "" : "\n") + path + ":" + to_string(d);
        throw Failure(msg);
    }
}

std::string join_origins(const Ctmc::State& s) {
    std::string out;
    for (const auto& l : s.origins) out += (out.empty() ? "" : "/") + to_string(l);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic Reo to interactive Markov chain compiler"};
    app.require_subcommand(1);

    std::string circuit_path, in_path, in_path2, out_path, phase = "design";
    bool keep_labels = false, as_dot = false, as_json = false, uniform = false;

    auto* build = app.add_subcommand("build", "compose a circuit into a design- or deployment-phase model");
    build->add_option("circuit", circuit_path, "circuit description")->required();
    build->add_option("--phase", phase, "design or deploy")->check(CLI::IsMember({"design", "deploy"}));
    build->add_flag("--keep-labels", keep_labels, "do not hide boundary actions after deployment");
    build->add_option("--out", out_path, "model file to write")->required();

    auto* minimize = app.add_subcommand("minimize", "strong bisimulation quotient");
    minimize->add_option("model", in_path, "model file")->required();
    minimize->add_option("--out", out_path, "model file to write (default: stdout)");

    auto* check = app.add_subcommand("check-bisim", "exit 0 iff the two models are strongly bisimilar");
    check->add_option("first", in_path, "model file")->required();
    check->add_option("second", in_path2, "model file")->required();

    auto* stats_cmd = app.add_subcommand("stats", "print model statistics");
    stats_cmd->add_option("model", in_path, "model file")->required();

    auto* export_cmd = app.add_subcommand("export", "render a model as DOT or canonical JSON");
    export_cmd->add_option("model", in_path, "model file")->required();
    auto* dot_flag = export_cmd->add_flag("--dot", as_dot, "Graphviz output");
    auto* json_flag = export_cmd->add_flag("--json", as_json, "canonical JSON output");
    dot_flag->excludes(json_flag);
    export_cmd->add_option("--out", out_path, "file to write (default: stdout)");

    auto* steady = app.add_subcommand("steady-state", "stationary distribution of a closed model");
    steady->add_option("model", in_path, "model file")->required();
    steady->add_flag("--uniform", uniform, "resolve tau-nondeterminism uniformly");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (*export_cmd && !as_dot && !as_json) {
        std::cerr << "export: one of --dot or --json is required\n";
        return kUsage;
    }

    try {
        if (*build) {
            const auto circuit = load_circuit(circuit_path);
            const auto opts = cleanup_options_from_env();
            const Imc m = phase == "design" ? compose_circuit(circuit, opts)
                                            : deploy_circuit(circuit, !keep_labels, opts);
            write_output(out_path, save_model(m));
            std::cout << to_string(stats(m)) << "\n";
        } else if (*minimize) {
            write_output(out_path, save_model(strong_bisim_minimize(load_file(in_path))));
        } else if (*check) {
            const bool same = are_bisimilar(load_file(in_path), load_file(in_path2));
            std::cout << (same ? "bisimilar" : "not bisimilar") << "\n";
            return same ? kOk : kFailure;
        } else if (*stats_cmd) {
            std::cout << to_string(stats(load_file(in_path))) << "\n";
        } else if (*export_cmd) {
            const auto m = load_file(in_path);
            write_output(out_path, as_dot ? export_dot(m) : save_model(m));
        } else if (*steady) {
            const auto chain = to_ctmc(load_file(in_path), uniform);
            if (uniform) std::cerr << "warning: tau-nondeterminism resolved uniformly\n";
            const auto pi = steady_state(chain);
            for (std::size_t s = 0; s < pi.size(); ++s) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.12g", pi[s]);
                std::cout << join_origins(chain.states[s]) << "\t" << buf << "\n";
            }
        }
    } catch (const Failure& e) {
        std::cerr << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}
