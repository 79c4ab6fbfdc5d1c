// Test helpers: compact label notation and a small model DSL.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "reoimc/imc.hpp"

namespace testing_support {

using namespace reoimc;

inline PortSet ports(const std::string& csv) {
    PortSet out;
    std::size_t start = 0;
    while (start < csv.size()) {
        auto comma = csv.find(',', start);
        if (comma == std::string::npos) comma = csv.size();
        if (comma > start) out.insert(csv.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

// Inverse of to_string(StateLabel): "0", "[a]{b,c}<d><<e>>_q".
inline StateLabel label(const std::string& text) {
    StateLabel out;
    std::size_t i = 0;
    auto group = [&](const std::string& open, const std::string& close) {
        const auto end = text.find(close, i + open.size());
        if (end == std::string::npos) throw std::invalid_argument("bad label " + text);
        auto body = text.substr(i + open.size(), end - i - open.size());
        i = end + close.size();
        return ports(body);
    };
    if (text.rfind("0", 0) == 0) i = 1;
    while (i < text.size()) {
        if (text.compare(i, 2, "<<") == 0) {
            out.d = group("<<", ">>");
        } else if (text[i] == '[') {
            out.r = group("[", "]");
        } else if (text[i] == '{') {
            out.t = group("{", "}");
        } else if (text[i] == '<') {
            out.e = group("<", ">");
        } else if (text[i] == '_') {
            out.q = text.substr(i + 1);
            break;
        } else {
            throw std::invalid_argument("bad label " + text);
        }
    }
    return out;
}

struct I {
    std::string from;
    std::string action;  // comma-separated, "" = tau
    std::string to;
};

struct M {
    std::string from;
    double rate;
    std::string to;
};

// States are listed explicitly so their order is fixed; the first is initial.
inline Imc model(const std::vector<std::string>& states, const std::vector<I>& itrans,
                 const std::vector<M>& mtrans) {
    ImcBuilder b;
    for (const auto& s : states) b.add_state(label(s));
    auto id = [&](const std::string& s) {
        const auto before = b.state_count();
        const auto k = b.add_state(label(s));
        if (b.state_count() != before) throw std::invalid_argument("undeclared state " + s);
        return k;
    };
    for (const auto& t : itrans) b.add_interactive(id(t.from), ports(t.action), id(t.to));
    for (const auto& t : mtrans) b.add_markovian(id(t.from), t.rate, id(t.to));
    return b.build(0);
}

inline std::size_t transitions(const Imc& m) { return m.interactive.size() + m.markovian.size(); }

inline bool has_state(const Imc& m, const std::string& text) {
    const auto l = label(text);
    for (const auto& s : m.states)
        if (s == l) return true;
    return false;
}

}  // namespace testing_support
