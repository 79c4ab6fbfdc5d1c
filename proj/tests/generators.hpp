// Hand-rolled random generators for property tests.
#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "reoimc/flow.hpp"
#include "reoimc/imc.hpp"

namespace gen {

using namespace reoimc;
using Rng = std::mt19937_64;

// Dyadic values so that sums are exact whatever the association order.
inline const std::vector<double> kRates{0.5, 1.0, 1.5, 2.0, 3.0, 4.0};

inline std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline PortSet subset(Rng& rng, const std::vector<Port>& pool, double p) {
    PortSet out;
    for (const auto& port : pool)
        if (coin(rng, p)) out.insert(port);
    return out;
}

struct ImcShape {
    std::vector<Port> pool{"p", "q", "r", "s"};
    std::size_t max_states = 8;
    double label_density = 0.25;  // per-port chance of appearing in R/T
    double busy = 0.1;            // per-port chance of appearing in E/D
    double tau = 0.15;
};

// Random well-formed model. Tags are prefixed with `ns` so that models
// drawn with different prefixes never produce colliding product labels.
inline Imc random_imc(Rng& rng, const std::string& ns, const ImcShape& shape = {}) {
    ImcBuilder b;
    const std::size_t n = 1 + below(rng, shape.max_states);
    std::vector<StateId> ids;
    for (std::size_t i = 0; i < n; ++i) {
        StateLabel l{subset(rng, shape.pool, shape.label_density), subset(rng, shape.pool, shape.label_density),
                     subset(rng, shape.pool, shape.busy), subset(rng, shape.pool, shape.busy),
                     ns + std::to_string(i)};
        ids.push_back(b.add_state(l));
    }
    b.add_to_alphabet(PortSet(shape.pool.begin(), shape.pool.end()));
    const std::size_t interactive = below(rng, 2 * n + 1);
    for (std::size_t k = 0; k < interactive; ++k) {
        PortSet action;
        if (!coin(rng, shape.tau)) {
            action = subset(rng, shape.pool, 0.35);
            if (action.empty()) action.insert(shape.pool[below(rng, shape.pool.size())]);
        }
        b.add_interactive(ids[below(rng, n)], action, ids[below(rng, n)]);
    }
    const std::size_t markovian = below(rng, 2 * n + 1);
    for (std::size_t k = 0; k < markovian; ++k)
        b.add_markovian(ids[below(rng, n)], kRates[below(rng, kRates.size())], ids[below(rng, n)]);
    return b.build(ids[0]);
}

// A small, dense shape so that bisimilar pairs turn up often.
inline ImcShape tiny_shape() {
    ImcShape s;
    s.pool = {"p"};
    s.max_states = 3;
    s.label_density = 0.0;
    s.busy = 0.0;
    s.tau = 0.3;
    return s;
}

inline FlowOrder random_flow(Rng& rng, const std::vector<Port>& pool) {
    FlowOrder::Pairs pairs;
    for (const auto& a : pool)
        for (const auto& b : pool)
            if (a != b && coin(rng, 0.2)) pairs.insert({a, b});
    return FlowOrder(pairs);
}

inline std::vector<Port> disjoint_pool(const std::string& prefix, std::size_t n) {
    std::vector<Port> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

// Random edits to a piece of text: deletions, insertions, duplications.
inline std::string mutate(Rng& rng, std::string text) {
    static const std::string alphabet = "abcxyz019(){};,=->.#_ \n\t-$";
    static const std::vector<std::string> words{"sync", "lossy", "fifo", "drain", "node", "writer",
                                                "reader", "gamma_ab", "gamma_e", "family", "circuit", "1e999"};
    const std::size_t edits = 1 + below(rng, 4);
    for (std::size_t k = 0; k < edits && !text.empty(); ++k) {
        const std::size_t at = below(rng, text.size());
        switch (below(rng, 7)) {
            case 0:
                text.erase(at, 1 + below(rng, 6));
                break;
            case 1:
                text.insert(at, 1, alphabet[below(rng, alphabet.size())]);
                break;
            case 2:
                text.insert(at, words[below(rng, words.size())]);
                break;
            case 3: {
                const std::size_t len = std::min<std::size_t>(text.size() - at, 1 + below(rng, 30));
                text.insert(below(rng, text.size()), text.substr(at, len));
                break;
            }
            case 4:
                std::swap(text[at], text[below(rng, text.size())]);
                break;
            default: {
                // Mild edit: rewrite one digit, which usually keeps the text valid.
                const auto digit = text.find_first_of("0123456789", at);
                if (digit != std::string::npos) text[digit] = static_cast<char>('0' + below(rng, 10));
            }
        }
    }
    return text;
}

}  // namespace gen
