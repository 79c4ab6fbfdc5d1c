#include "reoimc/bisim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace reoimc {

namespace {

bool rates_close(double x, double y) {
    return std::abs(x - y) <= kBisimRateTolerance * std::max(std::abs(x), std::abs(y));
}

struct Signature {
    std::set<std::pair<PortSet, std::size_t>> moves;
    std::vector<std::size_t> rate_targets;
    std::vector<double> rates;
};

using SignatureKey = std::tuple<std::size_t, std::set<std::pair<PortSet, std::size_t>>,
                                std::vector<std::size_t>>;

Imc disjoint_union(const Imc& m1, const Imc& m2) {
    Imc u;
    u.states = m1.states;
    u.states.insert(u.states.end(), m2.states.begin(), m2.states.end());
    u.alphabet = set_union(m1.alphabet, m2.alphabet);
    const auto off = static_cast<StateId>(m1.states.size());
    u.interactive = m1.interactive;
    for (const auto& tr : m2.interactive) u.interactive.push_back({tr.src + off, tr.action, tr.dst + off});
    u.markovian = m1.markovian;
    for (const auto& tr : m2.markovian) u.markovian.push_back({tr.src + off, tr.rate, tr.dst + off});
    u.initial = m1.initial;
    return u;
}

}  // namespace

std::vector<std::size_t> strong_bisim_partition(const Imc& m) {
    const auto n = m.states.size();
    std::vector<std::vector<const InteractiveTransition*>> out_i(n);
    std::vector<std::vector<const MarkovianTransition*>> out_m(n);
    for (const auto& tr : m.interactive) out_i[tr.src].push_back(&tr);
    for (const auto& tr : m.markovian) out_m[tr.src].push_back(&tr);

    std::vector<std::size_t> block(n, 0);
    std::size_t block_count = n == 0 ? 0 : 1;
    while (true) {
        // Key: (old block, interactive moves, rate target blocks); each key
        // holds the rate vectors seen so far with the new block they got.
        std::map<SignatureKey, std::vector<std::pair<std::vector<double>, std::size_t>>> groups;
        std::vector<std::size_t> next(n, 0);
        std::size_t next_count = 0;
        for (StateId s = 0; s < n; ++s) {
            Signature sig;
            for (const auto* tr : out_i[s]) sig.moves.emplace(tr->action, block[tr->dst]);
            std::map<std::size_t, double> cumulative;
            for (const auto* tr : out_m[s]) cumulative[block[tr->dst]] += tr->rate;
            for (const auto& [b, r] : cumulative) {
                sig.rate_targets.push_back(b);
                sig.rates.push_back(r);
            }
            auto& candidates =
                groups[SignatureKey{block[s], std::move(sig.moves), std::move(sig.rate_targets)}];
            bool placed = false;
            for (const auto& [rates, id] : candidates) {
                bool same = std::equal(rates.begin(), rates.end(), sig.rates.begin(), rates_close);
                if (same) {
                    next[s] = id;
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                next[s] = next_count++;
                candidates.emplace_back(std::move(sig.rates), next[s]);
            }
        }
        block = std::move(next);
        if (next_count == block_count) break;
        block_count = next_count;
    }
    return block;
}

Imc strong_bisim_minimize(const Imc& m) {
    auto block = strong_bisim_partition(m);
    std::size_t count = 0;
    for (auto b : block) count = std::max(count, b + 1);

    // Blocks are numbered by first appearance, so the representative of
    // block b is the first state carrying it.
    std::vector<StateId> rep(count, 0);
    std::vector<bool> has_rep(count, false);
    for (StateId s = 0; s < m.states.size(); ++s) {
        if (!has_rep[block[s]]) {
            rep[block[s]] = s;
            has_rep[block[s]] = true;
        }
    }

    ImcBuilder builder;
    for (std::size_t b = 0; b < count; ++b) builder.add_state(m.states[rep[b]]);
    builder.add_to_alphabet(m.alphabet);
    for (const auto& tr : m.interactive) {
        if (tr.src == rep[block[tr.src]])
            builder.add_interactive(static_cast<StateId>(block[tr.src]), tr.action,
                                    static_cast<StateId>(block[tr.dst]));
    }
    for (const auto& tr : m.markovian) {
        if (tr.src == rep[block[tr.src]])
            builder.add_markovian(static_cast<StateId>(block[tr.src]), tr.rate,
                                  static_cast<StateId>(block[tr.dst]));
    }
    return builder.build(static_cast<StateId>(block[m.initial]));
}

bool are_bisimilar(const Imc& m1, const Imc& m2) {
    auto u = disjoint_union(m1, m2);
    auto block = strong_bisim_partition(u);
    return block[m1.initial] == block[m1.states.size() + m2.initial];
}

namespace {

struct EdgeIndex {
    std::set<std::tuple<StateId, PortSet, StateId>> interactive;
    std::map<std::pair<StateId, StateId>, std::vector<double>> markovian;

    explicit EdgeIndex(const Imc& m) {
        for (const auto& tr : m.interactive) interactive.emplace(tr.src, tr.action, tr.dst);
        for (const auto& tr : m.markovian) markovian[{tr.src, tr.dst}].push_back(tr.rate);
        for (auto& [key, rates] : markovian) std::sort(rates.begin(), rates.end());
    }

    friend bool operator==(const EdgeIndex&, const EdgeIndex&) = default;
};

// Colour refinement over both models at once, seeded by state labels.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine_colours(const Imc& m1,
                                                                             const Imc& m2) {
    std::map<StateLabel, std::size_t> seed;
    auto seed_of = [&](const StateLabel& l) { return seed.try_emplace(l, seed.size()).first->second; };
    std::vector<std::size_t> c1(m1.size()), c2(m2.size());
    for (StateId s = 0; s < m1.size(); ++s) c1[s] = seed_of(m1.states[s]);
    for (StateId s = 0; s < m2.size(); ++s) c2[s] = seed_of(m2.states[s]);

    using Sig = std::tuple<std::size_t, std::vector<std::pair<PortSet, std::size_t>>,
                           std::vector<std::pair<double, std::size_t>>,
                           std::vector<std::pair<PortSet, std::size_t>>,
                           std::vector<std::pair<double, std::size_t>>, bool>;
    std::size_t colours = seed.size();
    while (true) {
        std::map<Sig, std::size_t> ids;
        auto recolour = [&](const Imc& m, const std::vector<std::size_t>& c) {
            std::vector<Sig> sigs(m.size());
            for (StateId s = 0; s < m.size(); ++s) {
                std::get<0>(sigs[s]) = c[s];
                std::get<5>(sigs[s]) = s == m.initial;
            }
            for (const auto& tr : m.interactive) {
                std::get<1>(sigs[tr.src]).emplace_back(tr.action, c[tr.dst]);
                std::get<3>(sigs[tr.dst]).emplace_back(tr.action, c[tr.src]);
            }
            for (const auto& tr : m.markovian) {
                std::get<2>(sigs[tr.src]).emplace_back(tr.rate, c[tr.dst]);
                std::get<4>(sigs[tr.dst]).emplace_back(tr.rate, c[tr.src]);
            }
            std::vector<std::size_t> out(m.size());
            for (StateId s = 0; s < m.size(); ++s) {
                auto& sig = sigs[s];
                std::sort(std::get<1>(sig).begin(), std::get<1>(sig).end());
                std::sort(std::get<2>(sig).begin(), std::get<2>(sig).end());
                std::sort(std::get<3>(sig).begin(), std::get<3>(sig).end());
                std::sort(std::get<4>(sig).begin(), std::get<4>(sig).end());
                out[s] = ids.try_emplace(sig, ids.size()).first->second;
            }
            return out;
        };
        auto n1 = recolour(m1, c1);
        auto n2 = recolour(m2, c2);
        c1 = std::move(n1);
        c2 = std::move(n2);
        if (ids.size() == colours) break;
        colours = ids.size();
    }
    return {c1, c2};
}

}  // namespace

std::optional<Isomorphism> find_isomorphism(const Imc& m1, const Imc& m2) {
    const auto n = m1.size();
    if (n != m2.size() || m1.interactive.size() != m2.interactive.size() ||
        m1.markovian.size() != m2.markovian.size() || n == 0)
        return std::nullopt;

    auto [c1, c2] = refine_colours(m1, m2);
    {
        auto s1 = c1, s2 = c2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2 || c1[m1.initial] != c2[m2.initial]) return std::nullopt;
    }

    std::vector<std::vector<StateId>> by_colour;
    for (StateId t = 0; t < n; ++t) {
        if (by_colour.size() <= c2[t]) by_colour.resize(c2[t] + 1);
        by_colour[c2[t]].push_back(t);
    }

    // Search order: BFS from the initial state, then any leftovers.
    std::vector<StateId> order;
    {
        std::vector<std::vector<StateId>> adj(n);
        for (const auto& tr : m1.interactive) adj[tr.src].push_back(tr.dst), adj[tr.dst].push_back(tr.src);
        for (const auto& tr : m1.markovian) adj[tr.src].push_back(tr.dst), adj[tr.dst].push_back(tr.src);
        std::vector<bool> seen(n, false);
        std::vector<StateId> roots{m1.initial};
        for (StateId s = 0; s < n; ++s) roots.push_back(s);
        for (auto root : roots) {
            if (seen[root]) continue;
            std::deque<StateId> q{root};
            seen[root] = true;
            while (!q.empty()) {
                auto s = q.front();
                q.pop_front();
                order.push_back(s);
                for (auto t : adj[s])
                    if (!seen[t]) seen[t] = true, q.push_back(t);
            }
        }
    }

    std::vector<std::vector<const InteractiveTransition*>> i_out(n), i_in(n);
    std::vector<std::vector<const MarkovianTransition*>> m_out(n), m_in(n);
    for (const auto& tr : m1.interactive) i_out[tr.src].push_back(&tr), i_in[tr.dst].push_back(&tr);
    for (const auto& tr : m1.markovian) m_out[tr.src].push_back(&tr), m_in[tr.dst].push_back(&tr);
    const EdgeIndex target(m2);

    constexpr StateId kUnmapped = static_cast<StateId>(-1);
    Isomorphism map(n, kUnmapped);
    std::vector<bool> used(n, false);

    auto has_markovian = [&](StateId a, StateId b, double rate) {
        auto it = target.markovian.find({a, b});
        return it != target.markovian.end() &&
               std::binary_search(it->second.begin(), it->second.end(), rate);
    };
    auto consistent = [&](StateId s) {
        const auto t = map[s];
        for (const auto* tr : i_out[s])
            if (map[tr->dst] != kUnmapped &&
                !target.interactive.contains({t, tr->action, map[tr->dst]}))
                return false;
        for (const auto* tr : i_in[s])
            if (map[tr->src] != kUnmapped &&
                !target.interactive.contains({map[tr->src], tr->action, t}))
                return false;
        for (const auto* tr : m_out[s])
            if (map[tr->dst] != kUnmapped && !has_markovian(t, map[tr->dst], tr->rate)) return false;
        for (const auto* tr : m_in[s])
            if (map[tr->src] != kUnmapped && !has_markovian(map[tr->src], t, tr->rate)) return false;
        return true;
    };

    std::function<bool(std::size_t)> search = [&](std::size_t depth) {
        if (depth == order.size()) return true;
        const auto s = order[depth];
        const auto& candidates =
            s == m1.initial ? std::vector<StateId>{m2.initial} : by_colour[c1[s]];
        for (auto t : candidates) {
            if (used[t] || c2[t] != c1[s]) continue;
            map[s] = t;
            used[t] = true;
            if (consistent(s) && search(depth + 1)) return true;
            used[t] = false;
            map[s] = kUnmapped;
        }
        return false;
    };
    if (!search(0)) return std::nullopt;

    Imc image = m1;
    for (auto& tr : image.interactive) tr.src = map[tr.src], tr.dst = map[tr.dst];
    for (auto& tr : image.markovian) tr.src = map[tr.src], tr.dst = map[tr.dst];
    if (!(EdgeIndex(image) == target)) return std::nullopt;
    for (StateId s = 0; s < n; ++s)
        if (!(m1.states[s] == m2.states[map[s]])) return std::nullopt;
    return map;
}

}  // namespace reoimc
