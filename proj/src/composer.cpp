#include "reoimc/composer.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string_view>

namespace reoimc {

std::string merge_tags(const std::string& a, const std::string& b) {
    std::vector<std::string> parts;
    for (const auto* tag : {&a, &b}) {
        std::size_t start = 0;
        while (start <= tag->size()) {
            auto dot = tag->find('.', start);
            if (dot == std::string::npos) dot = tag->size();
            if (dot > start) parts.push_back(tag->substr(start, dot - start));
            start = dot + 1;
        }
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += '.';
        out += p;
    }
    return out;
}

Imc parallel(const Imc& left, const Imc& right, const PortSet& m, const ProductOptions& opts) {
    const auto nj = static_cast<StateId>(right.states.size());
    auto pair = [nj](StateId i, StateId j) { return i * nj + j; };

    ImcBuilder b;
    for (const auto& li : left.states) {
        for (const auto& rj : right.states) {
            StateLabel label{set_union(li.r, rj.r), set_union(li.t, rj.t), set_union(li.e, rj.e),
                             set_union(li.d, rj.d), merge_tags(li.q, rj.q)};
            // Keep one state per pair even when flattened labels collide.
            while (true) {
                const auto before = b.state_count();
                b.add_state(label);
                if (b.state_count() > before) break;
                label.q += '\'';
            }
        }
    }
    b.add_to_alphabet(left.alphabet);
    b.add_to_alphabet(right.alphabet);

    for (const auto& tr : left.interactive) {
        if (intersects(tr.action, m)) continue;
        for (StateId j = 0; j < nj; ++j) b.add_interactive(pair(tr.src, j), tr.action, pair(tr.dst, j));
    }
    for (const auto& tr : right.interactive) {
        if (intersects(tr.action, m)) continue;
        for (StateId i = 0; i < left.states.size(); ++i)
            b.add_interactive(pair(i, tr.src), tr.action, pair(i, tr.dst));
    }
    for (const auto& x : left.interactive) {
        if (x.action.empty()) continue;
        const auto x_sync = set_intersection(x.action, m);
        for (const auto& y : right.interactive) {
            if (y.action.empty()) continue;
            const auto shared = set_intersection(x.action, y.action);
            if (!std::includes(m.begin(), m.end(), shared.begin(), shared.end())) continue;
            if (opts.require_port_agreement && x_sync != set_intersection(y.action, m)) continue;
            b.add_interactive(pair(x.src, y.src), set_union(x.action, y.action), pair(x.dst, y.dst));
        }
    }
    for (const auto& tr : left.markovian)
        for (StateId j = 0; j < nj; ++j) b.add_markovian(pair(tr.src, j), tr.rate, pair(tr.dst, j));
    for (const auto& tr : right.markovian)
        for (StateId i = 0; i < left.states.size(); ++i) b.add_markovian(pair(i, tr.src), tr.rate, pair(i, tr.dst));
    return b.build(pair(left.initial, right.initial));
}

Imc synchronize(const Imc& m, const PortSet& ports, bool erase_labels) {
    ImcBuilder b;
    std::vector<StateId> remap;
    remap.reserve(m.states.size());
    for (const auto& s : m.states) {
        StateLabel restricted = s;
        restricted.r = set_difference(s.r, ports);
        remap.push_back(b.add_state(restricted));
    }
    for (const auto& tr : m.interactive) {
        if (intersects(m.states[tr.src].all_ports(), ports)) continue;
        b.add_interactive(remap[tr.src], erase_labels ? set_difference(tr.action, ports) : tr.action,
                          remap[tr.dst]);
    }
    for (const auto& tr : m.markovian) {
        if (intersects(m.states[tr.dst].r, ports)) continue;
        b.add_markovian(remap[tr.src], tr.rate, remap[tr.dst]);
    }
    Imc out = b.build(remap[m.initial]);
    out.alphabet = erase_labels ? set_difference(m.alphabet, ports) : m.alphabet;
    return out;
}

CleanupOptions cleanup_options_from_env() {
    CleanupOptions opts;
    const char* value = std::getenv("REOIMC_AN_CLOSURE");
    if (value == nullptr || std::string_view(value).empty() || std::string_view(value) == "direct") return opts;
    if (std::string_view(value) == "closed") {
        opts.adjacency = FlowRelation::closed;
        return opts;
    }
    throw std::invalid_argument("REOIMC_AN_CLOSURE must be 'direct' or 'closed', got '" + std::string(value) + "'");
}

namespace {

bool keep_markovian(const StateLabel& from, const StateLabel& to, const FlowOrder& flow, const CleanupOptions& opts) {
    if (intersects(to.r, flow.adjacent(from.t, opts.adjacency))) return false;
    if (from.idle()) return true;
    if (from.t == to.t && from.e == to.e && from.d == to.d) return true;
    if (flow.precedes(from.e, from.t) || intersects(from.t, from.d)) return from.t == to.t;
    const auto done = set_difference(from.t, to.t);
    if (flow.precedes(done, to.t)) return true;
    if (!opts.interleave_parallel || done.empty()) return false;
    for (const auto& x : done)
        for (const auto& y : to.t)
            if (flow.flows(y, x)) return false;
    return true;
}

}  // namespace

Imc cleanup(const Imc& m, const PortSet& ports, const FlowOrder& flow, const CleanupOptions& opts) {
    Imc out;
    out.states = m.states;
    out.alphabet = m.alphabet;
    out.initial = m.initial;

    // Label/source pairs that can move into a transmission on M.
    std::set<std::pair<StateId, PortSet>> busy_variant;
    for (const auto& tr : m.interactive)
        if (intersects(m.states[tr.dst].t, ports)) busy_variant.insert({tr.src, tr.action});

    for (const auto& tr : m.interactive) {
        const auto& to = m.states[tr.dst];
        if (!intersects(to.t, ports) && busy_variant.contains({tr.src, tr.action})) continue;
        if (opts.check_interactive_requests && intersects(to.r, flow.adjacent(to.t, opts.adjacency))) continue;
        out.interactive.push_back(tr);
    }
    for (const auto& tr : m.markovian)
        if (keep_markovian(m.states[tr.src], m.states[tr.dst], flow, opts)) out.markovian.push_back(tr);
    return out;
}

FlowOrder derive_flow(const Circuit& c) {
    FlowOrder::Pairs direct;
    for (const auto& ch : c.channels)
        if (ch.kind == ChannelKind::sync || ch.kind == ChannelKind::lossy) direct.insert({ch.source, ch.sink});
    for (const auto& n : c.nodes)
        for (const auto& i : n.spec.inputs)
            for (const auto& o : n.spec.outputs) direct.insert({i, o});
    return FlowOrder(std::move(direct));
}

CompositionStages compose_stages(const BuildPlan& plan, const CleanupOptions& opts) {
    if (plan.channels.empty()) throw std::invalid_argument("circuit has no channels");
    CompositionStages s;
    s.product = plan.channels.front();
    for (std::size_t k = 1; k < plan.channels.size(); ++k) s.product = parallel(s.product, plan.channels[k], {});
    for (const auto& node : plan.nodes) s.product = parallel(s.product, node.model, node.sync_ports);
    s.synchronized = synchronize(s.product, plan.internal, true);
    s.cleaned = cleanup(s.synchronized, plan.internal, plan.flow, opts);
    s.result = reachable(s.cleaned);
    return s;
}

CompositionStages compose_stages(const Circuit& c, const CleanupOptions& opts) {
    return compose_stages(elaborate_phase(c, Phase::design), opts);
}

Imc compose_circuit(const Circuit& c, const CleanupOptions& opts) {
    return compose_stages(c, opts).result;
}

Imc deploy(const Imc& design, const std::vector<Imc>& env, const PortSet& ports, bool erase_labels,
           const FlowOrder& flow, const CleanupOptions& opts) {
    std::map<Port, int> owners;
    for (const auto& e : env) {
        for (const auto& p : e.alphabet) {
            if (!ports.contains(p)) throw std::invalid_argument("environment port '" + p + "' is not a boundary port");
            ++owners[p];
        }
    }
    for (const auto& p : ports) {
        const int n = owners.contains(p) ? owners[p] : 0;
        if (n == 0) throw std::invalid_argument("missing IO binding for '" + p + "'");
        if (n > 1) throw std::invalid_argument("duplicate IO binding for '" + p + "'");
    }

    Imc environment;
    if (env.empty()) {
        environment.states.push_back({});
    } else {
        environment = env.front();
        for (std::size_t k = 1; k < env.size(); ++k) environment = parallel(environment, env[k], {});
    }
    Imc out = reachable(cleanup(parallel(design, environment, ports), ports, flow, opts));
    return erase_labels ? hide(out, ports) : out;
}

Imc deploy_circuit(const Circuit& c, bool erase_labels, const CleanupOptions& opts) {
    const auto plan = elaborate_phase(c, Phase::deploy);
    const auto design = compose_stages(plan, opts).result;
    return deploy(design, plan.environment, plan.boundary, erase_labels, plan.flow, opts);
}

}  // namespace reoimc
