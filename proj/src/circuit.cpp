#include "reoimc/circuit.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "reoimc/composer.hpp"

namespace reoimc {

PortSet Circuit::source_ends() const {
    PortSet out;
    for (const auto& ch : channels) {
        out.insert(ch.source);
        if (ch.kind == ChannelKind::drain) out.insert(ch.sink);
    }
    return out;
}

PortSet Circuit::sink_ends() const {
    PortSet out;
    for (const auto& ch : channels)
        if (ch.kind != ChannelKind::drain) out.insert(ch.sink);
    return out;
}

PortSet Circuit::node_ends() const {
    PortSet out;
    for (const auto& n : nodes) {
        out.insert(n.spec.inputs.begin(), n.spec.inputs.end());
        out.insert(n.spec.outputs.begin(), n.spec.outputs.end());
    }
    return out;
}

PortSet Circuit::boundary() const {
    PortSet ends;
    for (const auto& ch : channels) {
        ends.insert(ch.source);
        ends.insert(ch.sink);
    }
    return set_difference(ends, node_ends());
}

bool same_circuit(const Circuit& a, const Circuit& b) {
    if (a.name != b.name || a.channels.size() != b.channels.size() ||
        a.nodes.size() != b.nodes.size() || a.ios.size() != b.ios.size())
        return false;
    for (std::size_t i = 0; i < a.channels.size(); ++i) {
        const auto& x = a.channels[i];
        const auto& y = b.channels[i];
        if (x.kind != y.kind || x.source != y.source || x.sink != y.sink ||
            x.rates.gamma_ab != y.rates.gamma_ab || x.rates.gamma_aL != y.rates.gamma_aL ||
            x.rates.gamma_aB != y.rates.gamma_aB || x.rates.gamma_Bb != y.rates.gamma_Bb)
            return false;
    }
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        const auto& x = a.nodes[i];
        const auto& y = b.nodes[i];
        if (x.name != y.name || x.spec.inputs != y.spec.inputs || x.spec.outputs != y.spec.outputs ||
            x.spec.family != y.spec.family || x.spec.gamma_e != y.spec.gamma_e ||
            x.spec.gamma_d != y.spec.gamma_d)
            return false;
    }
    for (std::size_t i = 0; i < a.ios.size(); ++i) {
        const auto& x = a.ios[i];
        const auto& y = b.ios[i];
        if (x.role != y.role || x.port != y.port || !(x.gamma == y.gamma)) return false;
    }
    return true;
}

std::string to_string(const Diagnostic& d) {
    return std::to_string(d.where.line) + ":" + std::to_string(d.where.column) + ": " + d.message;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
    std::string out;
    for (const auto& d : diagnostics) {
        if (!out.empty()) out += '\n';
        out += to_string(d);
    }
    return out;
}

}  // namespace

CircuitError::CircuitError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

enum class Tok { ident, number, lbrace, rbrace, lparen, rparen, comma, semi, equals, arrow, end };

struct Token {
    Tok kind;
    std::string text;
    SourceLocation where;
};

std::string describe(Tok kind) {
    switch (kind) {
        case Tok::ident: return "identifier";
        case Tok::number: return "number";
        case Tok::lbrace: return "'{'";
        case Tok::rbrace: return "'}'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::comma: return "','";
        case Tok::semi: return "';'";
        case Tok::equals: return "'='";
        case Tok::arrow: return "'->'";
        case Tok::end: return "end of input";
    }
    return "?";
}

[[noreturn]] void fail(SourceLocation where, std::string message) {
    throw CircuitError({Diagnostic{where, std::move(message)}});
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    int column = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
    };
    auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

    while (i < text.size()) {
        const char c = text[i];
        const SourceLocation here{line, column};
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && is_ident_char(text[j])) ++j;
            out.push_back({Tok::ident, std::string(text.substr(i, j - i)), here});
            advance(j - i);
        } else if (is_digit(c) || (c == '-' && i + 1 < text.size() && is_digit(text[i + 1])) ||
                   (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
            std::size_t j = i + (c == '-' ? 1 : 0);
            while (j < text.size() && is_digit(text[j])) ++j;
            if (j < text.size() && text[j] == '.') {
                ++j;
                while (j < text.size() && is_digit(text[j])) ++j;
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && is_digit(text[k])) {
                    j = k;
                    while (j < text.size() && is_digit(text[j])) ++j;
                }
            }
            out.push_back({Tok::number, std::string(text.substr(i, j - i)), here});
            advance(j - i);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::arrow, "->", here});
            advance(2);
        } else {
            Tok kind;
            switch (c) {
                case '{': kind = Tok::lbrace; break;
                case '}': kind = Tok::rbrace; break;
                case '(': kind = Tok::lparen; break;
                case ')': kind = Tok::rparen; break;
                case ',': kind = Tok::comma; break;
                case ';': kind = Tok::semi; break;
                case '=': kind = Tok::equals; break;
                default: {
                    std::string shown = std::isprint(static_cast<unsigned char>(c))
                                            ? std::string(1, c)
                                            : "\\x" + std::to_string(static_cast<unsigned char>(c));
                    fail(here, "unexpected character '" + shown + "'");
                }
            }
            out.push_back({kind, std::string(1, c), here});
            advance(1);
        }
    }
    out.push_back({Tok::end, "", {line, column}});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Circuit parse() {
        Circuit c;
        const auto& head = peek();
        if (head.kind != Tok::ident || head.text != "circuit") fail(head.where, "expected 'circuit'");
        next();
        c.name = expect(Tok::ident, "circuit name").text;
        expect(Tok::lbrace, "'{'");
        while (peek().kind != Tok::rbrace) {
            if (peek().kind == Tok::end) fail(peek().where, "expected '}' before end of input");
            item(c);
        }
        next();
        if (peek().kind != Tok::end) fail(peek().where, "unexpected " + describe(peek().kind) + " after circuit");
        return c;
    }

    std::vector<Diagnostic>& diagnostics() { return diagnostics_; }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    const Token& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind)
            fail(peek().where, "expected " + what + ", found " +
                                   (peek().kind == Tok::ident ? "'" + peek().text + "'" : describe(peek().kind)));
        return next();
    }

    struct RateAssignment {
        std::string name;
        std::optional<Rate> value;
        SourceLocation where;
    };

    RateAssignment rate() {
        RateAssignment out;
        const auto& name = expect(Tok::ident, "rate name");
        out.name = name.text;
        out.where = name.where;
        expect(Tok::equals, "'='");
        const auto& num = expect(Tok::number, "decimal rate");
        double value = 0.0;
        const char* first = num.text.data();
        const char* last = first + num.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            diagnostics_.push_back({num.where, "malformed number '" + num.text + "'"});
        } else if (!(value > 0.0) || !std::isfinite(value)) {
            diagnostics_.push_back({num.where, "rate must be positive, got " + num.text});
        } else {
            out.value = Rate(value);
        }
        expect(Tok::semi, "';'");
        return out;
    }

    void item(Circuit& c) {
        const auto& head = expect(Tok::ident, "channel, node, writer or reader");
        if (head.text == "node") {
            node(c, head.where);
        } else if (head.text == "writer" || head.text == "reader") {
            io(c, head.text == "writer" ? IoRole::writer : IoRole::reader, head.where);
        } else if (auto kind = parse_channel_kind(head.text)) {
            channel(c, *kind, head.where);
        } else {
            fail(head.where, "unknown channel kind '" + head.text + "'");
        }
    }

    void channel(Circuit& c, ChannelKind kind, SourceLocation where) {
        ChannelDecl ch;
        ch.kind = kind;
        ch.where = where;
        expect(Tok::lparen, "'('");
        ch.source = expect(Tok::ident, "port name").text;
        expect(Tok::comma, "','");
        ch.sink = expect(Tok::ident, "port name").text;
        expect(Tok::rparen, "')'");
        expect(Tok::lbrace, "'{'");
        std::map<std::string, std::optional<Rate>*> slots;
        if (kind == ChannelKind::fifo) {
            slots = {{"gamma_aB", &ch.rates.gamma_aB}, {"gamma_Bb", &ch.rates.gamma_Bb}};
        } else {
            slots = {{"gamma_ab", &ch.rates.gamma_ab}};
            if (kind == ChannelKind::lossy) slots.emplace("gamma_aL", &ch.rates.gamma_aL);
        }
        std::set<std::string> assigned;
        while (peek().kind != Tok::rbrace) {
            auto r = rate();
            auto slot = slots.find(r.name);
            if (slot == slots.end()) {
                diagnostics_.push_back({r.where, "unknown rate '" + r.name + "' for " +
                                                     std::string(to_string(kind)) + " channel"});
            } else if (!assigned.insert(r.name).second) {
                diagnostics_.push_back({r.where, "rate '" + r.name + "' assigned twice"});
            } else {
                *slot->second = r.value;
                if (!r.value) assigned.insert(r.name + "!invalid");
            }
        }
        next();
        // Report missing rates here, unless the value was present but invalid.
        for (const auto& [name, slot] : slots)
            if (!assigned.contains(name))
                diagnostics_.push_back({where, "missing rate " + name + " for " +
                                                   std::string(to_string(kind)) + " channel"});
        c.channels.push_back(std::move(ch));
    }

    std::vector<Port> idlist() {
        std::vector<Port> out{expect(Tok::ident, "port name").text};
        while (peek().kind == Tok::comma) {
            next();
            out.push_back(expect(Tok::ident, "port name").text);
        }
        return out;
    }

    void node(Circuit& c, SourceLocation where) {
        NodeDecl n;
        n.where = where;
        n.name = expect(Tok::ident, "node name").text;
        expect(Tok::lparen, "'('");
        n.spec.inputs = idlist();
        expect(Tok::arrow, "'->'");
        n.spec.outputs = idlist();
        expect(Tok::rparen, "')'");
        expect(Tok::lbrace, "'{'");
        bool family_seen = false;
        std::set<std::string> assigned;
        while (peek().kind != Tok::rbrace) {
            if (peek().kind == Tok::ident && peek().text == "family") {
                const auto at = next().where;
                expect(Tok::equals, "'='");
                const auto& fam = expect(Tok::ident, "node family");
                if (auto f = parse_node_family(fam.text)) {
                    n.spec.family = *f;
                } else {
                    diagnostics_.push_back({fam.where, "unknown node family '" + fam.text + "'"});
                }
                if (family_seen) diagnostics_.push_back({at, "family assigned twice"});
                family_seen = true;
                expect(Tok::semi, "';'");
                continue;
            }
            auto r = rate();
            if (r.name != "gamma_e" && r.name != "gamma_d") {
                diagnostics_.push_back({r.where, "unknown rate '" + r.name + "' for node"});
            } else if (!assigned.insert(r.name).second) {
                diagnostics_.push_back({r.where, "rate '" + r.name + "' assigned twice"});
            } else {
                (r.name == "gamma_e" ? n.spec.gamma_e : n.spec.gamma_d) = r.value;
            }
        }
        next();
        c.nodes.push_back(std::move(n));
    }

    void io(Circuit& c, IoRole role, SourceLocation where) {
        IoDecl decl;
        decl.role = role;
        decl.where = where;
        expect(Tok::lparen, "'('");
        decl.port = expect(Tok::ident, "port name").text;
        expect(Tok::rparen, "')'");
        expect(Tok::lbrace, "'{'");
        auto r = rate();
        if (r.name != "gamma") {
            diagnostics_.push_back({r.where, "unknown rate '" + r.name + "' for " +
                                                 (role == IoRole::writer ? "writer" : "reader")});
        }
        if (r.value) decl.gamma = *r.value;
        expect(Tok::rbrace, "'}'");
        c.ios.push_back(std::move(decl));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> diagnostics_;
};

void append_rate(std::string& out, const char* name, const std::optional<Rate>& r);

std::string format_rate(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    std::string s(buf, ptr);
    if (s.find('.') == std::string::npos) s += ".0";
    return s;
}

void append_rate(std::string& out, const char* name, const std::optional<Rate>& r) {
    if (r) out += std::string(" ") + name + " = " + format_rate(r->value()) + ";";
}

std::string join(const std::vector<Port>& ports) {
    std::string out;
    for (const auto& p : ports) {
        if (!out.empty()) out += ", ";
        out += p;
    }
    return out;
}

}  // namespace

std::vector<Diagnostic> check_circuit(const Circuit& c) {
    std::vector<Diagnostic> out;
    std::map<Port, int> as_source, as_sink;
    for (const auto& ch : c.channels) {
        if (ch.source == ch.sink) out.push_back({ch.where, "channel ends must differ, got '" + ch.source + "' twice"});
        if (++as_source[ch.source] == 2)
            out.push_back({ch.where, "duplicate port role: '" + ch.source + "' is the source end of more than one channel"});
        if (++as_sink[ch.sink] == 2)
            out.push_back({ch.where, "duplicate port role: '" + ch.sink + "' is the sink end of more than one channel"});
    }

    const PortSet sources = c.source_ends();
    const PortSet sinks = c.sink_ends();
    const PortSet boundary = c.boundary();
    std::set<std::string> node_names;
    std::map<Port, std::string> owner;
    for (const auto& n : c.nodes) {
        if (!node_names.insert(n.name).second) out.push_back({n.where, "duplicate node name '" + n.name + "'"});
        try {
            check_node_spec(n.spec);
        } catch (const std::invalid_argument& e) {
            out.push_back({n.where, "node '" + n.name + "': " + e.what()});
        }
        auto attach = [&](const Port& p, bool input) {
            if (!sources.contains(p) && !sinks.contains(p)) {
                out.push_back({n.where, "dangling node end '" + p + "'"});
            } else if (input && !sinks.contains(p)) {
                out.push_back({n.where, "node input '" + p + "' is not a channel sink end"});
            } else if (!input && !sources.contains(p)) {
                out.push_back({n.where, "node output '" + p + "' is not a channel source end"});
            }
            auto [it, fresh] = owner.try_emplace(p, n.name);
            if (!fresh && it->second != n.name)
                out.push_back({n.where, "port '" + p + "' attached to nodes '" + it->second + "' and '" + n.name + "'"});
        };
        for (const auto& p : n.spec.inputs) attach(p, true);
        for (const auto& p : n.spec.outputs) attach(p, false);
    }

    PortSet bound;
    for (const auto& io : c.ios) {
        const char* role = io.role == IoRole::writer ? "writer" : "reader";
        if (!sources.contains(io.port) && !sinks.contains(io.port)) {
            out.push_back({io.where, std::string(role) + " bound to unknown port '" + io.port + "'"});
        } else if (!boundary.contains(io.port)) {
            out.push_back({io.where, "IO bound to non-boundary port '" + io.port + "'"});
        } else if (io.role == IoRole::writer && !sources.contains(io.port)) {
            out.push_back({io.where, "writer must bind a source end; '" + io.port + "' is a sink end"});
        } else if (io.role == IoRole::reader && !sinks.contains(io.port)) {
            out.push_back({io.where, "reader must bind a sink end; '" + io.port + "' is a source end"});
        }
        if (!bound.insert(io.port).second) out.push_back({io.where, "duplicate IO binding on '" + io.port + "'"});
    }
    return out;
}

Circuit parse_circuit(std::string_view text) {
    Parser parser(tokenize(text));
    Circuit c = parser.parse();
    auto diagnostics = std::move(parser.diagnostics());
    auto semantic = check_circuit(c);
    diagnostics.insert(diagnostics.end(), semantic.begin(), semantic.end());
    if (!diagnostics.empty()) throw CircuitError(std::move(diagnostics));
    return c;
}

std::string print_circuit(const Circuit& c) {
    std::string out = "circuit " + c.name + " {\n";
    for (const auto& ch : c.channels) {
        out += "  " + std::string(to_string(ch.kind)) + "(" + ch.source + ", " + ch.sink + ") {";
        append_rate(out, "gamma_ab", ch.rates.gamma_ab);
        append_rate(out, "gamma_aL", ch.rates.gamma_aL);
        append_rate(out, "gamma_aB", ch.rates.gamma_aB);
        append_rate(out, "gamma_Bb", ch.rates.gamma_Bb);
        out += " }\n";
    }
    for (const auto& n : c.nodes) {
        out += "  node " + n.name + "(" + join(n.spec.inputs) + " -> " + join(n.spec.outputs) + ") {";
        out += " family = " + std::string(to_string(n.spec.family)) + ";";
        append_rate(out, "gamma_e", n.spec.gamma_e);
        append_rate(out, "gamma_d", n.spec.gamma_d);
        out += " }\n";
    }
    for (const auto& io : c.ios) {
        out += std::string("  ") + (io.role == IoRole::writer ? "writer" : "reader") + "(" + io.port + ") {";
        append_rate(out, "gamma", io.gamma);
        out += " }\n";
    }
    return out + "}\n";
}

BuildPlan elaborate_phase(const Circuit& c, Phase phase) {
    if (auto problems = check_circuit(c); !problems.empty()) throw CircuitError(std::move(problems));

    BuildPlan plan;
    plan.phase = phase;
    for (const auto& ch : c.channels) plan.channels.push_back(make_channel(ch.kind, ch.source, ch.sink, ch.rates));
    for (const auto& n : c.nodes) {
        PortSet ends(n.spec.inputs.begin(), n.spec.inputs.end());
        ends.insert(n.spec.outputs.begin(), n.spec.outputs.end());
        plan.internal.insert(ends.begin(), ends.end());
        plan.nodes.push_back({n.name, make_node(n.spec), std::move(ends)});
    }
    plan.flow = derive_flow(c);

    if (phase == Phase::deploy) {
        std::vector<Diagnostic> unbound;
        PortSet bound;
        for (const auto& io : c.ios) bound.insert(io.port);
        for (const auto& p : c.boundary())
            if (!bound.contains(p)) unbound.push_back({{}, "unbound boundary port '" + p + "'"});
        if (!unbound.empty()) throw CircuitError(std::move(unbound));
        for (const auto& io : c.ios) plan.environment.push_back(make_io(io.port, io.gamma));
        plan.boundary = bound;
    }
    return plan;
}

}  // namespace reoimc
