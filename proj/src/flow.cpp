#include "reoimc/flow.hpp"

#include <map>
#include <stdexcept>

namespace reoimc {

FlowOrder::FlowOrder(Pairs direct) : direct_(std::move(direct)) {
    for (const auto& [a, b] : direct_)
        if (a == b) throw std::invalid_argument("reflexive flow pair on '" + a + "'");

    std::map<Port, PortSet> succ;
    for (const auto& [a, b] : direct_) succ[a].insert(b);
    // Saturate: repeated DFS per source; cycles simply end up in the closure.
    for (const auto& [src, _] : succ) {
        PortSet seen;
        std::vector<Port> stack(succ[src].begin(), succ[src].end());
        while (!stack.empty()) {
            auto p = stack.back();
            stack.pop_back();
            if (!seen.insert(p).second) continue;
            if (auto it = succ.find(p); it != succ.end())
                for (const auto& q : it->second) stack.push_back(q);
        }
        for (const auto& p : seen) closed_.emplace(src, p);
    }
}

bool FlowOrder::flows(const Port& a, const Port& b, FlowRelation rel) const {
    return pairs(rel).contains({a, b});
}

bool FlowOrder::precedes(const PortSet& a, const PortSet& b, FlowRelation rel) const {
    for (const auto& x : a) {
        bool all = true;
        for (const auto& y : b) {
            if (!flows(x, y, rel)) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

PortSet FlowOrder::adjacent(const PortSet& t, FlowRelation rel) const {
    PortSet out = t;
    for (const auto& [a, b] : pairs(rel)) {
        if (t.contains(b)) out.insert(a);
        if (t.contains(a)) out.insert(b);
    }
    return out;
}

}  // namespace reoimc
