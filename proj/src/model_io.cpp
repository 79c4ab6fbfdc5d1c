#include "reoimc/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "json.hpp"

namespace reoimc {

using nlohmann::json;

Imc canonical(const Imc& m) {
    std::vector<StateId> order(m.states.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](StateId x, StateId y) { return m.states[x] < m.states[y]; });
    std::vector<StateId> remap(m.states.size());
    Imc out;
    out.alphabet = m.alphabet;
    for (StateId k = 0; k < order.size(); ++k) {
        remap[order[k]] = k;
        out.states.push_back(m.states[order[k]]);
    }
    out.initial = m.initial < remap.size() ? remap[m.initial] : m.initial;
    for (const auto& tr : m.interactive) out.interactive.push_back({remap[tr.src], tr.action, remap[tr.dst]});
    for (const auto& tr : m.markovian) out.markovian.push_back({remap[tr.src], tr.rate, remap[tr.dst]});
    sort_transitions(out);
    return out;
}

namespace {

std::string format_rate(double rate) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, rate);
    return std::string(buf, ptr);
}

json ports_json(const PortSet& ports) {
    return json(std::vector<std::string>(ports.begin(), ports.end()));
}

PortSet ports_from(const json& j, const char* what) {
    if (!j.is_array()) throw ModelFormatError(std::string(what) + " must be an array of port names");
    PortSet out;
    for (const auto& p : j) {
        if (!p.is_string()) throw ModelFormatError(std::string(what) + " must be an array of port names");
        out.insert(p.get<std::string>());
    }
    return out;
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ModelFormatError(std::string("missing field '") + key + "'");
    return *it;
}

StateId state_index(const json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_unsigned()) throw ModelFormatError(std::string("field '") + key + "' must be a state index");
    return v.get<StateId>();
}

}  // namespace

std::string save_model(const Imc& model) {
    const Imc m = canonical(model);
    json out;
    out["format_version"] = kModelFormatVersion;
    out["alphabet"] = ports_json(m.alphabet);
    out["initial"] = m.initial;
    json states = json::array();
    for (const auto& s : m.states)
        states.push_back({{"r", ports_json(s.r)}, {"t", ports_json(s.t)}, {"e", ports_json(s.e)},
                          {"d", ports_json(s.d)}, {"q", s.q}});
    out["states"] = std::move(states);
    json itrans = json::array();
    for (const auto& tr : m.interactive)
        itrans.push_back({{"src", tr.src}, {"ports", ports_json(tr.action)}, {"dst", tr.dst}});
    out["itrans"] = std::move(itrans);
    json mtrans = json::array();
    for (const auto& tr : m.markovian)
        mtrans.push_back({{"src", tr.src}, {"rate", format_rate(tr.rate)}, {"dst", tr.dst}});
    out["mtrans"] = std::move(mtrans);
    return out.dump(2) + "\n";
}

Imc load_model(std::string_view text) {
    json in;
    try {
        in = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ModelFormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!in.is_object()) throw ModelFormatError("model file must be a JSON object");
    const auto& version = field(in, "format_version");
    if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion)
        throw ModelFormatError("unsupported format_version " + version.dump());

    Imc m;
    m.alphabet = ports_from(field(in, "alphabet"), "alphabet");
    m.initial = state_index(in, "initial");
    const auto& states = field(in, "states");
    if (!states.is_array()) throw ModelFormatError("states must be an array");
    for (const auto& s : states) {
        StateLabel label{ports_from(field(s, "r"), "r"), ports_from(field(s, "t"), "t"),
                         ports_from(field(s, "e"), "e"), ports_from(field(s, "d"), "d"), {}};
        const auto& q = field(s, "q");
        if (!q.is_string()) throw ModelFormatError("q must be a string");
        label.q = q.get<std::string>();
        m.states.push_back(std::move(label));
    }
    const auto& itrans = field(in, "itrans");
    if (!itrans.is_array()) throw ModelFormatError("itrans must be an array");
    for (const auto& tr : itrans)
        m.interactive.push_back({state_index(tr, "src"), ports_from(field(tr, "ports"), "ports"), state_index(tr, "dst")});
    const auto& mtrans = field(in, "mtrans");
    if (!mtrans.is_array()) throw ModelFormatError("mtrans must be an array");
    for (const auto& tr : mtrans) {
        const auto& rate = field(tr, "rate");
        if (!rate.is_string()) throw ModelFormatError("rate must be a decimal string");
        const auto text_rate = rate.get<std::string>();
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_rate.data(), text_rate.data() + text_rate.size(), value);
        if (ec != std::errc() || ptr != text_rate.data() + text_rate.size())
            throw ModelFormatError("malformed rate '" + text_rate + "'");
        m.markovian.push_back({state_index(tr, "src"), value, state_index(tr, "dst")});
    }
    if (auto problems = validate(m); !problems.empty()) throw ModelFormatError("ill-formed model: " + problems.front());
    sort_transitions(m);
    return m;
}

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string export_dot(const Imc& m, std::string_view name) {
    std::string out = "digraph \"" + escape(std::string(name)) + "\" {\n  rankdir=LR;\n";
    for (StateId s = 0; s < m.states.size(); ++s) {
        out += "  s" + std::to_string(s) + " [label=\"" + escape(to_string(m.states[s])) + "\", shape=" +
               (s == m.initial ? "doublecircle" : "circle") + "];\n";
    }
    for (const auto& tr : m.interactive) {
        const std::string label = tr.action.empty() ? "tau" : to_string(tr.action);
        out += "  s" + std::to_string(tr.src) + " -> s" + std::to_string(tr.dst) + " [label=\"" + escape(label) +
               "\", style=dashed];\n";
    }
    for (const auto& tr : m.markovian) {
        out += "  s" + std::to_string(tr.src) + " -> s" + std::to_string(tr.dst) + " [label=\"" +
               format_rate(tr.rate) + "\"];\n";
    }
    return out + "}\n";
}

}  // namespace reoimc
