#include "reoimc/imc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace reoimc {

PortSet set_union(const PortSet& a, const PortSet& b) {
    PortSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

PortSet set_intersection(const PortSet& a, const PortSet& b) {
    PortSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(out, out.end()));
    return out;
}

PortSet set_difference(const PortSet& a, const PortSet& b) {
    PortSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
    return out;
}

bool intersects(const PortSet& a, const PortSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            return true;
        }
    }
    return false;
}

std::string to_string(const PortSet& ports) {
    std::string out = "{";
    bool first = true;
    for (const auto& p : ports) {
        if (!first) out += ',';
        out += p;
        first = false;
    }
    return out + "}";
}

Rate::Rate(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream os;
        os << "rate must be positive and finite, got " << value;
        throw std::invalid_argument(os.str());
    }
}

PortSet StateLabel::all_ports() const {
    PortSet out = r;
    out.insert(t.begin(), t.end());
    out.insert(e.begin(), e.end());
    out.insert(d.begin(), d.end());
    return out;
}

namespace {

std::string join_ports(const PortSet& ports) {
    std::string out;
    for (const auto& p : ports) {
        if (!out.empty()) out += ',';
        out += p;
    }
    return out;
}

}  // namespace

std::string to_string(const StateLabel& label) {
    std::string out;
    if (!label.r.empty()) out += "[" + join_ports(label.r) + "]";
    if (!label.t.empty()) out += "{" + join_ports(label.t) + "}";
    if (!label.e.empty()) out += "<" + join_ports(label.e) + ">";
    if (!label.d.empty()) out += "<<" + join_ports(label.d) + ">>";
    if (out.empty()) out = "0";
    if (!label.q.empty()) out += "_" + label.q;
    return out;
}

StateId ImcBuilder::add_state(const StateLabel& label) {
    auto [it, inserted] = index_.try_emplace(label, static_cast<StateId>(states_.size()));
    if (inserted) states_.push_back(label);
    return it->second;
}

void ImcBuilder::add_interactive(StateId src, const PortSet& action, StateId dst) {
    if (src >= states_.size() || dst >= states_.size())
        throw std::out_of_range("interactive transition endpoint out of range");
    interactive_.insert({src, action, dst});
    alphabet_.insert(action.begin(), action.end());
}

void ImcBuilder::add_markovian(StateId src, double rate, StateId dst) {
    if (src >= states_.size() || dst >= states_.size())
        throw std::out_of_range("Markovian transition endpoint out of range");
    Rate checked(rate);
    markovian_[{src, dst}] += checked.value();
}

void ImcBuilder::add_to_alphabet(const PortSet& ports) {
    alphabet_.insert(ports.begin(), ports.end());
}

Imc ImcBuilder::build(StateId initial) const {
    if (initial >= states_.size()) throw std::out_of_range("initial state out of range");
    Imc m;
    m.states = states_;
    m.alphabet = alphabet_;
    m.initial = initial;
    m.interactive.assign(interactive_.begin(), interactive_.end());
    m.markovian.reserve(markovian_.size());
    for (const auto& [key, rate] : markovian_) m.markovian.push_back({key.first, rate, key.second});
    sort_transitions(m);
    return m;
}

std::vector<std::string> validate(const Imc& m) {
    std::vector<std::string> report;
    const auto n = m.states.size();
    if (n == 0) report.emplace_back("empty state set");
    if (m.initial >= n) report.emplace_back("dangling initial state");

    std::map<StateLabel, StateId> seen;
    for (StateId s = 0; s < n; ++s) {
        auto [it, inserted] = seen.try_emplace(m.states[s], s);
        if (!inserted) {
            report.push_back("duplicate state label " + to_string(m.states[s]) + " at states " +
                             std::to_string(it->second) + " and " + std::to_string(s));
        }
    }

    std::set<InteractiveTransition> itrans;
    for (const auto& tr : m.interactive) {
        if (tr.src >= n || tr.dst >= n) {
            report.emplace_back("dangling interactive transition endpoint");
            continue;
        }
        if (!itrans.insert(tr).second)
            report.push_back("duplicate interactive transition " + std::to_string(tr.src) + " -" +
                             to_string(tr.action) + "-> " + std::to_string(tr.dst));
        for (const auto& p : tr.action) {
            if (!m.alphabet.contains(p)) report.push_back("port '" + p + "' not in alphabet");
        }
    }

    std::set<std::pair<StateId, StateId>> medges;
    for (const auto& tr : m.markovian) {
        if (tr.src >= n || tr.dst >= n) {
            report.emplace_back("dangling Markovian transition endpoint");
            continue;
        }
        if (!(tr.rate > 0.0) || !std::isfinite(tr.rate))
            report.push_back("non-positive rate " + std::to_string(tr.rate) + " on " +
                             std::to_string(tr.src) + " -> " + std::to_string(tr.dst));
        if (!medges.insert({tr.src, tr.dst}).second)
            report.push_back("unmerged parallel Markovian edges " + std::to_string(tr.src) +
                             " -> " + std::to_string(tr.dst));
    }
    return report;
}

std::vector<bool> reachable_mask(const Imc& m) {
    const auto n = m.states.size();
    std::vector<std::vector<StateId>> succ(n);
    for (const auto& tr : m.interactive) succ[tr.src].push_back(tr.dst);
    for (const auto& tr : m.markovian) succ[tr.src].push_back(tr.dst);

    std::vector<bool> seen(n, false);
    if (m.initial >= n) return seen;
    std::deque<StateId> queue{m.initial};
    seen[m.initial] = true;
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (auto t : succ[s]) {
            if (!seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    return seen;
}

Imc reachable(const Imc& m) {
    auto keep = reachable_mask(m);
    std::vector<StateId> remap(m.states.size(), 0);
    Imc out;
    out.alphabet = m.alphabet;
    for (StateId s = 0; s < m.states.size(); ++s) {
        if (keep[s]) {
            remap[s] = static_cast<StateId>(out.states.size());
            out.states.push_back(m.states[s]);
        }
    }
    out.initial = remap[m.initial];
    for (const auto& tr : m.interactive)
        if (keep[tr.src]) out.interactive.push_back({remap[tr.src], tr.action, remap[tr.dst]});
    for (const auto& tr : m.markovian)
        if (keep[tr.src]) out.markovian.push_back({remap[tr.src], tr.rate, remap[tr.dst]});
    return out;
}

void sort_transitions(Imc& m) {
    std::sort(m.interactive.begin(), m.interactive.end(),
              [](const InteractiveTransition& x, const InteractiveTransition& y) {
                  return std::tie(x.src, x.dst, x.action) < std::tie(y.src, y.dst, y.action);
              });
    std::sort(m.markovian.begin(), m.markovian.end(),
              [](const MarkovianTransition& x, const MarkovianTransition& y) {
                  return std::tie(x.src, x.dst, x.rate) < std::tie(y.src, y.dst, y.rate);
              });
}

Imc hide(const Imc& m, const PortSet& hidden) {
    if (hidden.empty()) return m;
    Imc out = m;
    out.alphabet = set_difference(m.alphabet, hidden);
    std::set<InteractiveTransition> seen;
    out.interactive.clear();
    for (const auto& tr : m.interactive) {
        InteractiveTransition relabelled{tr.src, set_difference(tr.action, hidden), tr.dst};
        if (seen.insert(relabelled).second) out.interactive.push_back(std::move(relabelled));
    }
    sort_transitions(out);
    return out;
}

ImcStats stats(const Imc& m) {
    ImcStats s;
    s.states = m.states.size();
    s.interactive = m.interactive.size();
    s.markovian = m.markovian.size();
    s.alphabet = m.alphabet.size();
    auto mask = reachable_mask(m);
    s.reachable_states = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    return s;
}

std::string to_string(const ImcStats& s) {
    std::ostringstream os;
    os << "states=" << s.states << " interactive=" << s.interactive
       << " markovian=" << s.markovian << " alphabet=" << s.alphabet
       << " reachable=" << s.reachable_states;
    return os.str();
}

}  // namespace reoimc
