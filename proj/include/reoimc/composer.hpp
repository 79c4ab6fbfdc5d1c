#pragma once

#include <vector>

#include "reoimc/circuit.hpp"
#include "reoimc/flow.hpp"
#include "reoimc/imc.hpp"

namespace reoimc {

struct ProductOptions {
    /// Joint moves must agree on the synchronised ports: A_I ∩ M = A_J ∩ M.
    bool require_port_agreement = true;
};

/// Parallel product over the synchronisation set M. State (i, j) gets index
/// i * |J| + j and the componentwise union of the two labels; unreachable
/// pairs are kept.
Imc parallel(const Imc& i, const Imc& j, const PortSet& m, const ProductOptions& opts = {});

/// Merges two control tags: non-empty '.'-separated parts of both, sorted.
std::string merge_tags(const std::string& a, const std::string& b);

/// Drops interactive moves out of states busy on M and Markovian moves into
/// states requesting on M, strips M from every R component, and with
/// erase_labels replaces each label X by X \ M.
Imc synchronize(const Imc& m, const PortSet& ports, bool erase_labels);

struct CleanupOptions {
    /// Relation used for the neighbourhood of a transmission.
    FlowRelation adjacency = FlowRelation::direct;
    /// Also drop interactive moves into states whose requests touch the
    /// neighbourhood of their own transmissions.
    bool check_interactive_requests = true;
    /// Let parallel transmissions finish in any order: also keep i -> f when
    /// no port still transmitting in f flows into a port that finished.
    bool interleave_parallel = true;
};

/// Reads REOIMC_AN_CLOSURE (direct|closed). Throws std::invalid_argument on
/// any other value.
CleanupOptions cleanup_options_from_env();

/// Removes transitions that break the data-flow order of transmission,
/// enqueue and dequeue activity. States are left untouched.
Imc cleanup(const Imc& m, const PortSet& ports, const FlowOrder& flow, const CleanupOptions& opts = {});

FlowOrder derive_flow(const Circuit& c);

/// Intermediate models of the design-phase pipeline.
struct CompositionStages {
    Imc product;
    Imc synchronized;
    Imc cleaned;
    Imc result;
};

CompositionStages compose_stages(const BuildPlan& plan, const CleanupOptions& opts = {});
CompositionStages compose_stages(const Circuit& c, const CleanupOptions& opts = {});

/// Design-phase model of a circuit.
Imc compose_circuit(const Circuit& c, const CleanupOptions& opts = {});

/// Binds readers and writers to the boundary ports M of a design model.
/// Every port of M must belong to exactly one environment component and
/// every environment port must lie in M; throws std::invalid_argument
/// otherwise.
Imc deploy(const Imc& design, const std::vector<Imc>& env, const PortSet& ports, bool erase_labels,
           const FlowOrder& flow, const CleanupOptions& opts = {});

/// Deployment-phase model of a circuit with its declared readers and writers.
Imc deploy_circuit(const Circuit& c, bool erase_labels, const CleanupOptions& opts = {});

}  // namespace reoimc
