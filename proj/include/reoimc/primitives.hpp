#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "reoimc/imc.hpp"

namespace reoimc {

enum class ChannelKind { sync, drain, lossy, fifo };

std::string_view to_string(ChannelKind kind);
std::optional<ChannelKind> parse_channel_kind(std::string_view text);

/// Channel delay rates by role. Which fields a kind needs:
///   sync, drain: gamma_ab
///   lossy:       gamma_ab, gamma_aL
///   fifo:        gamma_aB, gamma_Bb
/// gamma_a and gamma_b are request arrival rates at the two ends; only the
/// classic (environment-inclusive) models use them.
struct ChannelRates {
    std::optional<Rate> gamma_ab;
    std::optional<Rate> gamma_aL;
    std::optional<Rate> gamma_aB;
    std::optional<Rate> gamma_Bb;
    std::optional<Rate> gamma_a;
    std::optional<Rate> gamma_b;
};

/// Distilled channel model: connector behaviour only, no arrivals.
Imc make_channel(ChannelKind kind, const Port& a, const Port& b, const ChannelRates& rates);

/// Classic channel model with request arrivals folded into the states.
Imc make_classic_channel(ChannelKind kind, const Port& a, const Port& b, const ChannelRates& rates);

/// Reader or writer: 0 -gamma-> [port] -{port}-> 0.
Imc make_io(const Port& port, Rate gamma);

enum class NodeFamily { merger_replicator, merger_router };

std::string_view to_string(NodeFamily family);
std::optional<NodeFamily> parse_node_family(std::string_view text);

struct NodeSpec {
    std::vector<Port> inputs;   // sink ends of incoming channels
    std::vector<Port> outputs;  // source ends of outgoing channels
    std::optional<Rate> gamma_e;  // nullopt = immediate
    std::optional<Rate> gamma_d;
    NodeFamily family = NodeFamily::merger_replicator;

    bool immediate() const { return !gamma_e && !gamma_d; }
};

/// Throws std::invalid_argument when the spec is malformed: empty or
/// overlapping input/output sets, repeated ends, or only one delay given.
void check_node_spec(const NodeSpec& spec);

/// Node model. With delays, a merger-replicator reads one input together
/// with all outputs, enqueues at gamma_e and dequeues at gamma_d / k; a
/// merger-router reads one input and one output, then dequeues at gamma_d.
/// Without delays both collapse to one state with interactive self-loops.
Imc make_node(const NodeSpec& spec);

/// Applies a port renaming everywhere (states, labels, alphabet). Ports
/// missing from the map are kept.
Imc rename_ports(const Imc& m, const std::map<Port, Port>& renaming);

}  // namespace reoimc
