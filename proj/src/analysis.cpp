#include "reoimc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>

namespace reoimc {

std::size_t Ctmc::find(const StateLabel& origin) const {
    for (std::size_t s = 0; s < states.size(); ++s)
        if (std::find(states[s].origins.begin(), states[s].origins.end(), origin) != states[s].origins.end())
            return s;
    return states.size();
}

namespace {

using Distribution = std::map<StateId, double>;

class TauResolver {
public:
    TauResolver(const Imc& m, bool uniform) : m_(m), uniform_(uniform), tau_(m.size()), memo_(m.size()), mark_(m.size(), 0) {
        for (const auto& tr : m.interactive) {
            if (!tr.action.empty())
                throw AnalysisError("model not closed: observable label " + to_string(tr.action) + " on " +
                                    to_string(m.states[tr.src]) + " -> " + to_string(m.states[tr.dst]));
            tau_[tr.src].push_back(tr.dst);
        }
        for (StateId s = 0; s < m.size(); ++s) {
            if (tau_[s].size() > 1 && !uniform_)
                throw AnalysisError("tau-nondeterminism in state " + to_string(m.states[s]) +
                                    " (use uniform resolution)");
        }
    }

    bool vanishing(StateId s) const { return !tau_[s].empty(); }

    /// Stable states a tau-path from s ends in, with probabilities.
    const Distribution& resolve(StateId s) {
        if (memo_[s]) return *memo_[s];
        if (mark_[s] == 1) throw AnalysisError("tau-cycle through state " + to_string(m_.states[s]));
        mark_[s] = 1;
        Distribution out;
        if (tau_[s].empty()) {
            out[s] = 1.0;
        } else {
            const double share = 1.0 / static_cast<double>(tau_[s].size());
            for (auto t : tau_[s])
                for (const auto& [u, p] : resolve(t)) out[u] += share * p;
        }
        mark_[s] = 2;
        memo_[s] = std::move(out);
        return *memo_[s];
    }

private:
    const Imc& m_;
    bool uniform_;
    std::vector<std::vector<StateId>> tau_;
    std::vector<std::optional<Distribution>> memo_;
    std::vector<char> mark_;
};

}  // namespace

Ctmc to_ctmc(const Imc& m, bool uniform_tau) {
    if (m.states.empty()) throw AnalysisError("empty model");
    TauResolver tau(m, uniform_tau);

    std::vector<std::vector<const MarkovianTransition*>> out_edges(m.size());
    for (const auto& tr : m.markovian) out_edges[tr.src].push_back(&tr);

    // Stable states reachable from the initial state, in index order.
    std::vector<bool> seen(m.size(), false);
    std::deque<StateId> queue;
    auto visit = [&](StateId s) {
        for (const auto& [u, p] : tau.resolve(s)) {
            if (!seen[u]) {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    };
    visit(m.initial);
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (const auto* tr : out_edges[s]) visit(tr->dst);
    }

    Ctmc c;
    std::vector<std::size_t> index(m.size(), 0);
    for (StateId s = 0; s < m.size(); ++s) {
        if (!seen[s]) continue;
        index[s] = c.states.size();
        c.states.push_back({{m.states[s]}});
    }
    // Attach every reachable tau-state to the stable states it resolves to.
    auto mask = reachable_mask(m);
    for (StateId s = 0; s < m.size(); ++s) {
        if (!mask[s] || !tau.vanishing(s)) continue;
        for (const auto& [u, p] : tau.resolve(s))
            if (seen[u]) c.states[index[u]].origins.push_back(m.states[s]);
    }
    c.initial = index[tau.resolve(m.initial).begin()->first];

    for (StateId s = 0; s < m.size(); ++s) {
        if (!seen[s]) continue;
        for (const auto* tr : out_edges[s])
            for (const auto& [u, p] : tau.resolve(tr->dst))
                c.edges.push_back({index[s], tr->rate * p, index[u], m.states[s], m.states[tr->dst]});
    }
    return c;
}

namespace {

/// Strongly connected components (iterative Tarjan); returns component id per state.
std::vector<std::size_t> components(std::size_t n, const std::vector<std::vector<std::size_t>>& succ,
                                    std::size_t& count) {
    std::vector<std::size_t> comp(n, SIZE_MAX), low(n), order(n, SIZE_MAX);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::size_t counter = 0;
    count = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (order[root] != SIZE_MAX) continue;
        std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
        order[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, k] = frames.back();
            if (k < succ[v].size()) {
                auto w = succ[v][k++];
                if (order[w] == SIZE_MAX) {
                    order[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], order[w]);
                }
                continue;
            }
            if (low[v] == order[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
            auto done = v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
        }
    }
    return comp;
}

void check_irreducible(const Ctmc& c) {
    const auto n = c.states.size();
    std::vector<std::vector<std::size_t>> succ(n);
    for (const auto& e : c.edges)
        if (e.src != e.dst) succ[e.src].push_back(e.dst);
    std::size_t count = 0;
    auto comp = components(n, succ, count);
    if (count <= 1) return;

    std::vector<bool> leaves(count, true);
    for (std::size_t s = 0; s < n; ++s)
        for (auto t : succ[s])
            if (comp[s] != comp[t]) leaves[comp[s]] = false;
    std::string detail;
    for (std::size_t k = 0; k < count; ++k) {
        if (!leaves[k]) continue;
        std::string members;
        for (std::size_t s = 0; s < n; ++s) {
            if (comp[s] != k) continue;
            if (!members.empty()) members += ", ";
            members += to_string(c.states[s].origins.front());
        }
        detail += (detail.empty() ? "" : "; ") + std::string("{") + members + "}";
    }
    throw AnalysisError("chain is not irreducible: " + std::to_string(count) +
                        " strongly connected components, closed classes " + detail);
}

}  // namespace

std::vector<double> steady_state(const Ctmc& c) {
    const auto n = c.states.size();
    if (n == 0) throw AnalysisError("empty chain");
    check_irreducible(c);
    if (n == 1) return {1.0};

    // Rows of Q^T with the last balance equation replaced by normalisation.
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (const auto& e : c.edges) {
        if (e.src == e.dst) continue;
        a[e.dst][e.src] += e.rate;
        a[e.src][e.src] -= e.rate;
    }
    for (std::size_t j = 0; j < n; ++j) a[n - 1][j] = 1.0;
    a[n - 1][n] = 1.0;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-300) throw AnalysisError("singular balance equations");
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0.0) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k <= n; ++k) a[r][k] -= f * a[col][k];
        }
    }
    std::vector<double> pi(n);
    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
        pi[s] = a[s][n] / a[s][s];
        if (pi[s] < -1e-12) throw AnalysisError("negative stationary probability");
        pi[s] = std::max(pi[s], 0.0);
        total += pi[s];
    }
    for (auto& p : pi) p /= total;
    return pi;
}

double balance_residual(const Ctmc& c, const std::vector<double>& pi) {
    std::vector<double> flow(c.states.size(), 0.0);
    for (const auto& e : c.edges) {
        if (e.src == e.dst) continue;
        flow[e.dst] += pi[e.src] * e.rate;
        flow[e.src] -= pi[e.src] * e.rate;
    }
    double worst = 0.0;
    for (double f : flow) worst = std::max(worst, std::abs(f));
    return worst;
}

double throughput(const Ctmc& c, const std::vector<double>& pi, const EdgeSelector& select) {
    double total = 0.0;
    for (const auto& e : c.edges)
        if (select(e)) total += pi[e.src] * e.rate;
    return total;
}

double throughput(const Ctmc& c, const EdgeSelector& select) {
    return throughput(c, steady_state(c), select);
}

}  // namespace reoimc
