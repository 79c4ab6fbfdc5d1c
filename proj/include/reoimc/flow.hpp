#pragma once

#include <set>
#include <utility>

#include "reoimc/imc.hpp"

namespace reoimc {

enum class FlowRelation { direct, closed };

/// Data-flow order a < b over ports, kept both as the one-step relation
/// and as its transitive closure.
class FlowOrder {
public:
    using Pairs = std::set<std::pair<Port, Port>>;

    FlowOrder() = default;
    /// Throws std::invalid_argument on a reflexive pair.
    explicit FlowOrder(Pairs direct);

    const Pairs& direct() const { return direct_; }
    const Pairs& closed() const { return closed_; }

    bool flows(const Port& a, const Port& b, FlowRelation rel = FlowRelation::closed) const;

    /// Set lifting: A < B iff some a in A flows to every b in B.
    bool precedes(const PortSet& a, const PortSet& b, FlowRelation rel = FlowRelation::closed) const;

    /// T together with every port related to a member of T in either direction.
    PortSet adjacent(const PortSet& t, FlowRelation rel = FlowRelation::direct) const;

    friend bool operator==(const FlowOrder&, const FlowOrder&) = default;

private:
    const Pairs& pairs(FlowRelation rel) const { return rel == FlowRelation::direct ? direct_ : closed_; }

    Pairs direct_;
    Pairs closed_;
};

}  // namespace reoimc
