#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reoimc/flow.hpp"
#include "reoimc/imc.hpp"
#include "reoimc/primitives.hpp"

namespace reoimc {

struct SourceLocation {
    int line = 0;
    int column = 0;
};

struct ChannelDecl {
    ChannelKind kind = ChannelKind::sync;
    Port source;
    Port sink;
    ChannelRates rates;
    SourceLocation where;
};

struct NodeDecl {
    std::string name;
    NodeSpec spec;
    SourceLocation where;
};

enum class IoRole { writer, reader };

struct IoDecl {
    IoRole role = IoRole::writer;
    Port port;
    Rate gamma{1.0};
    SourceLocation where;
};

/// Elaborated connector: channels, mixed nodes and environment bindings.
struct Circuit {
    std::string name;
    std::vector<ChannelDecl> channels;
    std::vector<NodeDecl> nodes;
    std::vector<IoDecl> ios;

    /// Channel ends that accept data. Both ends of a drain count.
    PortSet source_ends() const;
    /// Channel ends that dispense data.
    PortSet sink_ends() const;
    PortSet node_ends() const;
    /// All channel ends that are not glued into a node.
    PortSet boundary() const;
};

/// Structural equality, ignoring source locations.
bool same_circuit(const Circuit& a, const Circuit& b);

struct Diagnostic {
    SourceLocation where;
    std::string message;
};

std::string to_string(const Diagnostic& d);

class CircuitError : public std::runtime_error {
public:
    explicit CircuitError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Parses and checks a circuit description. Throws CircuitError carrying
/// every diagnostic found (syntax errors stop at the first one).
Circuit parse_circuit(std::string_view text);

/// Semantic checks on an already-built Circuit; empty when valid.
std::vector<Diagnostic> check_circuit(const Circuit& c);

/// Canonical text form; parse_circuit(print_circuit(c)) reproduces c.
std::string print_circuit(const Circuit& c);

enum class Phase { design, deploy };

/// Everything the composer needs to build one phase of a circuit.
struct BuildPlan {
    struct NodeStep {
        std::string name;
        Imc model;
        PortSet sync_ports;  // I ∪ O of the node
    };

    Phase phase = Phase::design;
    std::vector<Imc> channels;  // declaration order
    std::vector<NodeStep> nodes;
    PortSet internal;  // union of all node ends
    FlowOrder flow;
    std::vector<Imc> environment;  // deploy only, declaration order
    PortSet boundary;              // deploy only: ports bound to readers/writers
};

/// Throws CircuitError when the circuit is invalid, or in deploy phase when
/// some boundary port has no reader/writer.
BuildPlan elaborate_phase(const Circuit& c, Phase phase);

}  // namespace reoimc
