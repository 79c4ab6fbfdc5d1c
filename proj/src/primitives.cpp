#include "reoimc/primitives.hpp"

#include <stdexcept>
#include <string>

namespace reoimc {

std::string_view to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::sync: return "sync";
        case ChannelKind::drain: return "drain";
        case ChannelKind::lossy: return "lossy";
        case ChannelKind::fifo: return "fifo";
    }
    return "?";
}

std::optional<ChannelKind> parse_channel_kind(std::string_view text) {
    if (text == "sync") return ChannelKind::sync;
    if (text == "drain") return ChannelKind::drain;
    if (text == "lossy") return ChannelKind::lossy;
    if (text == "fifo") return ChannelKind::fifo;
    return std::nullopt;
}

std::string_view to_string(NodeFamily family) {
    return family == NodeFamily::merger_replicator ? "merger_replicator" : "merger_router";
}

std::optional<NodeFamily> parse_node_family(std::string_view text) {
    if (text == "merger_replicator") return NodeFamily::merger_replicator;
    if (text == "merger_router") return NodeFamily::merger_router;
    return std::nullopt;
}

namespace {

double need(const std::optional<Rate>& rate, const char* name, ChannelKind kind) {
    if (!rate)
        throw std::invalid_argument(std::string("missing rate ") + name + " for " +
                                    std::string(to_string(kind)) + " channel");
    return rate->value();
}

void check_ends(const Port& a, const Port& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty port name");
    if (a == b) throw std::invalid_argument("duplicate port names: '" + a + "'");
}

StateLabel label(PortSet r, PortSet t, std::string q = {}) {
    return StateLabel{std::move(r), std::move(t), {}, {}, std::move(q)};
}

}  // namespace

Imc make_channel(ChannelKind kind, const Port& a, const Port& b, const ChannelRates& rates) {
    check_ends(a, b);
    ImcBuilder m;
    switch (kind) {
        case ChannelKind::sync:
        case ChannelKind::drain:
        case ChannelKind::lossy: {
            const double ab = need(rates.gamma_ab, "gamma_ab", kind);
            const auto idle = m.add_state(label({}, {}));
            const auto both = m.add_state(label({}, {a, b}));
            m.add_interactive(idle, {a, b}, both);
            m.add_markovian(both, ab, idle);
            if (kind == ChannelKind::lossy) {
                const double lost = need(rates.gamma_aL, "gamma_aL", kind);
                const auto only_a = m.add_state(label({}, {a}));
                m.add_interactive(idle, {a}, only_a);
                m.add_markovian(only_a, lost, idle);
            }
            return m.build(idle);
        }
        case ChannelKind::fifo: {
            const double in = need(rates.gamma_aB, "gamma_aB", kind);
            const double out = need(rates.gamma_Bb, "gamma_Bb", kind);
            const auto empty = m.add_state(label({}, {}, "e"));
            const auto filling = m.add_state(label({}, {a}, "e"));
            const auto full = m.add_state(label({}, {}, "f"));
            const auto draining = m.add_state(label({}, {b}, "f"));
            m.add_interactive(empty, {a}, filling);
            m.add_markovian(filling, in, full);
            m.add_interactive(full, {b}, draining);
            m.add_markovian(draining, out, empty);
            return m.build(empty);
        }
    }
    throw std::invalid_argument("unknown channel kind");
}

Imc make_classic_channel(ChannelKind kind, const Port& a, const Port& b,
                         const ChannelRates& rates) {
    check_ends(a, b);
    const double ga = need(rates.gamma_a, "gamma_a", kind);
    const double gb = need(rates.gamma_b, "gamma_b", kind);
    ImcBuilder m;
    switch (kind) {
        case ChannelKind::sync:
        case ChannelKind::drain:
        case ChannelKind::lossy: {
            const double ab = need(rates.gamma_ab, "gamma_ab", kind);
            const auto idle = m.add_state(label({}, {}));
            const auto ra = m.add_state(label({a}, {}));
            const auto rb = m.add_state(label({b}, {}));
            const auto rab = m.add_state(label({a, b}, {}));
            const auto tab = m.add_state(label({}, {a, b}));
            m.add_markovian(idle, ga, ra);
            m.add_markovian(idle, gb, rb);
            m.add_markovian(ra, gb, rab);
            m.add_markovian(rb, ga, rab);
            m.add_interactive(rab, {a, b}, tab);
            m.add_markovian(tab, ab, idle);
            if (kind == ChannelKind::lossy) {
                const double lost = need(rates.gamma_aL, "gamma_aL", kind);
                const auto ta = m.add_state(label({}, {a}));
                m.add_interactive(ra, {a}, ta);
                m.add_markovian(ta, lost, idle);
            }
            return m.build(idle);
        }
        case ChannelKind::fifo: {
            const double in = need(rates.gamma_aB, "gamma_aB", kind);
            const double out = need(rates.gamma_Bb, "gamma_Bb", kind);
            const auto e = m.add_state(label({}, {}, "e"));
            const auto ae = m.add_state(label({a}, {}, "e"));
            const auto be = m.add_state(label({b}, {}, "e"));
            const auto abe = m.add_state(label({a, b}, {}, "e"));
            const auto ta = m.add_state(label({}, {a}, "e"));
            const auto b_ta = m.add_state(label({b}, {a}, "e"));
            const auto f = m.add_state(label({}, {}, "f"));
            const auto af = m.add_state(label({a}, {}, "f"));
            const auto bf = m.add_state(label({b}, {}, "f"));
            const auto abf = m.add_state(label({a, b}, {}, "f"));
            const auto tb = m.add_state(label({}, {b}, "f"));
            const auto a_tb = m.add_state(label({a}, {b}, "f"));

            m.add_markovian(e, ga, ae);
            m.add_markovian(e, gb, be);
            m.add_markovian(ae, gb, abe);
            m.add_markovian(be, ga, abe);
            m.add_interactive(ae, {a}, ta);
            m.add_interactive(abe, {a}, b_ta);
            m.add_markovian(ta, in, f);
            m.add_markovian(ta, gb, b_ta);
            m.add_markovian(b_ta, in, bf);

            m.add_markovian(f, ga, af);
            m.add_markovian(f, gb, bf);
            m.add_markovian(af, gb, abf);
            m.add_markovian(bf, ga, abf);
            m.add_interactive(bf, {b}, tb);
            m.add_interactive(abf, {b}, a_tb);
            m.add_markovian(tb, out, e);
            m.add_markovian(tb, ga, a_tb);
            m.add_markovian(a_tb, out, ae);
            return m.build(e);
        }
    }
    throw std::invalid_argument("unknown channel kind");
}

Imc make_io(const Port& port, Rate gamma) {
    if (port.empty()) throw std::invalid_argument("empty port name");
    ImcBuilder m;
    const auto idle = m.add_state(label({}, {}));
    const auto waiting = m.add_state(label({port}, {}));
    m.add_markovian(idle, gamma.value(), waiting);
    m.add_interactive(waiting, {port}, idle);
    return m.build(idle);
}

void check_node_spec(const NodeSpec& spec) {
    if (spec.inputs.empty()) throw std::invalid_argument("node has no inputs");
    if (spec.outputs.empty()) throw std::invalid_argument("node has no outputs");
    PortSet in(spec.inputs.begin(), spec.inputs.end());
    PortSet out(spec.outputs.begin(), spec.outputs.end());
    if (in.size() != spec.inputs.size() || out.size() != spec.outputs.size())
        throw std::invalid_argument("node lists an end twice");
    auto both = set_intersection(in, out);
    if (!both.empty())
        throw std::invalid_argument("node inputs and outputs overlap: " + to_string(both));
    for (const auto& p : set_union(in, out))
        if (p.empty()) throw std::invalid_argument("empty port name");
    if (spec.gamma_e.has_value() != spec.gamma_d.has_value())
        throw std::invalid_argument("node delays must be both given or both immediate");
}

Imc make_node(const NodeSpec& spec) {
    check_node_spec(spec);
    const PortSet all_out(spec.outputs.begin(), spec.outputs.end());
    ImcBuilder m;
    const auto idle = m.add_state({});

    if (spec.immediate()) {
        for (const auto& in : spec.inputs) {
            if (spec.family == NodeFamily::merger_replicator) {
                m.add_interactive(idle, set_union({in}, all_out), idle);
            } else {
                for (const auto& out : spec.outputs) m.add_interactive(idle, {in, out}, idle);
            }
        }
        return m.build(idle);
    }

    const double enq = spec.gamma_e->value();
    const double deq = spec.gamma_d->value();
    if (spec.family == NodeFamily::merger_replicator) {
        std::vector<StateId> enqueue;
        for (const auto& in : spec.inputs) enqueue.push_back(m.add_state(StateLabel{{}, {}, {in}, {}, {}}));
        const auto dequeue = m.add_state(StateLabel{{}, {}, {}, all_out, {}});
        for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
            m.add_interactive(idle, set_union({spec.inputs[i]}, all_out), enqueue[i]);
            m.add_markovian(enqueue[i], enq, dequeue);
        }
        m.add_markovian(dequeue, deq / static_cast<double>(spec.outputs.size()), idle);
        return m.build(idle);
    }

    std::vector<std::vector<StateId>> enqueue(spec.inputs.size());
    for (std::size_t i = 0; i < spec.inputs.size(); ++i)
        for (const auto& out : spec.outputs)
            enqueue[i].push_back(m.add_state(StateLabel{{}, {}, {spec.inputs[i], out}, {}, {}}));
    std::vector<StateId> dequeue;
    for (const auto& out : spec.outputs) dequeue.push_back(m.add_state(StateLabel{{}, {}, {}, {out}, {}}));
    for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
        for (std::size_t j = 0; j < spec.outputs.size(); ++j) {
            m.add_interactive(idle, {spec.inputs[i], spec.outputs[j]}, enqueue[i][j]);
            m.add_markovian(enqueue[i][j], enq, dequeue[j]);
        }
    }
    for (auto d : dequeue) m.add_markovian(d, deq, idle);
    return m.build(idle);
}

Imc rename_ports(const Imc& m, const std::map<Port, Port>& renaming) {
    auto apply = [&](const PortSet& ports) {
        PortSet out;
        for (const auto& p : ports) {
            auto it = renaming.find(p);
            out.insert(it == renaming.end() ? p : it->second);
        }
        return out;
    };
    Imc out = m;
    out.alphabet = apply(m.alphabet);
    for (auto& s : out.states) {
        s.r = apply(s.r);
        s.t = apply(s.t);
        s.e = apply(s.e);
        s.d = apply(s.d);
    }
    for (auto& tr : out.interactive) tr.action = apply(tr.action);
    return out;
}

}  // namespace reoimc
