#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "reoimc/imc.hpp"

namespace reoimc {

class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Ctmc {
    struct State {
        /// IMC states merged into this one; front() is the stable state, the
        /// rest are the tau-states that collapse into it.
        std::vector<StateLabel> origins;
    };
    /// One per Markovian transition of the source model; edges are not merged
    /// so throughput can select on their origin.
    struct Edge {
        std::size_t src;
        double rate;
        std::size_t dst;
        StateLabel from;
        StateLabel to;
    };

    std::vector<State> states;
    std::vector<Edge> edges;
    std::size_t initial = 0;

    std::size_t find(const StateLabel& origin) const;  // states.size() if absent
};

/// Maximal-progress reduction of a closed model. Every interactive label must
/// be tau. A state with several tau successors is an error unless
/// uniform_tau is set, in which case probability is split evenly.
Ctmc to_ctmc(const Imc& m, bool uniform_tau = false);

/// Stationary distribution of an irreducible chain.
std::vector<double> steady_state(const Ctmc& c);

/// Max-norm of pi * Q.
double balance_residual(const Ctmc& c, const std::vector<double>& pi);

using EdgeSelector = std::function<bool(const Ctmc::Edge&)>;

/// Expected firings per time unit of the selected edges.
double throughput(const Ctmc& c, const std::vector<double>& pi, const EdgeSelector& select);
double throughput(const Ctmc& c, const EdgeSelector& select);

}  // namespace reoimc
