#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace reoimc {

using Port = std::string;
using PortSet = std::set<Port>;
using StateId = std::uint32_t;

PortSet set_union(const PortSet& a, const PortSet& b);
PortSet set_intersection(const PortSet& a, const PortSet& b);
PortSet set_difference(const PortSet& a, const PortSet& b);
bool intersects(const PortSet& a, const PortSet& b);

/// Printable form: "{a,b}".
std::string to_string(const PortSet& ports);

/// Strictly positive, finite exponential rate.
class Rate {
public:
    explicit Rate(double value);
    double value() const { return value_; }
    friend bool operator==(const Rate&, const Rate&) = default;

private:
    double value_;
};

/// (R, T, E, D, Q): pending requests, transmissions, enqueueing and
/// dequeueing ends, and an internal control tag ("" when absent).
struct StateLabel {
    PortSet r;
    PortSet t;
    PortSet e;
    PortSet d;
    std::string q;

    friend auto operator<=>(const StateLabel&, const StateLabel&) = default;
    friend bool operator==(const StateLabel&, const StateLabel&) = default;

    PortSet all_ports() const;
    bool idle() const { return t.empty() && e.empty() && d.empty(); }
};

/// Compact rendering in the usual figure notation, e.g. "[a]{b}<c>_f".
std::string to_string(const StateLabel& label);

struct InteractiveTransition {
    StateId src;
    PortSet action;  // empty = tau
    StateId dst;

    friend auto operator<=>(const InteractiveTransition&, const InteractiveTransition&) = default;
    friend bool operator==(const InteractiveTransition&, const InteractiveTransition&) = default;
};

struct MarkovianTransition {
    StateId src;
    double rate;
    StateId dst;

    friend bool operator==(const MarkovianTransition&, const MarkovianTransition&) = default;
};

/// Interactive Markov chain. A plain value: nothing stops a caller from
/// building an ill-formed one, which is what validate() is for. Models
/// produced by ImcBuilder and the library operations are well-formed.
struct Imc {
    std::vector<StateLabel> states;
    PortSet alphabet;
    std::vector<InteractiveTransition> interactive;
    std::vector<MarkovianTransition> markovian;
    StateId initial = 0;

    std::size_t size() const { return states.size(); }
    friend bool operator==(const Imc&, const Imc&) = default;
};

/// Accumulates states and transitions with the Imc invariants enforced:
/// states are identified by label, interactive triples are deduplicated
/// and parallel Markovian edges are merged by summing their rates.
class ImcBuilder {
public:
    /// Returns the id of an existing state with this label, or adds it.
    StateId add_state(const StateLabel& label);
    void add_interactive(StateId src, const PortSet& action, StateId dst);
    void add_markovian(StateId src, double rate, StateId dst);
    void add_to_alphabet(const PortSet& ports);

    std::size_t state_count() const { return states_.size(); }

    /// Transitions come out sorted by (src, dst, label).
    Imc build(StateId initial) const;

private:
    std::vector<StateLabel> states_;
    std::map<StateLabel, StateId> index_;
    std::set<InteractiveTransition> interactive_;
    std::map<std::pair<StateId, StateId>, double> markovian_;
    PortSet alphabet_;
};

/// Canonical transition order: by (src, dst, label) and (src, dst, rate).
void sort_transitions(Imc& m);

/// Human-readable invariant violations; empty iff the model is well-formed.
std::vector<std::string> validate(const Imc& m);

/// Indices of states reachable from the initial state via any transition.
std::vector<bool> reachable_mask(const Imc& m);

/// Sub-model induced by the reachable states, in original relative order.
Imc reachable(const Imc& m);

/// Replaces every interactive label X by X \ hidden and shrinks the alphabet.
Imc hide(const Imc& m, const PortSet& hidden);

struct ImcStats {
    std::size_t states = 0;
    std::size_t interactive = 0;
    std::size_t markovian = 0;
    std::size_t alphabet = 0;
    std::size_t reachable_states = 0;

    friend bool operator==(const ImcStats&, const ImcStats&) = default;
};

ImcStats stats(const Imc& m);

std::string to_string(const ImcStats& s);

}  // namespace reoimc
