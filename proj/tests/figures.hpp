// Hand transcriptions of the reference diagrams. These are written out state
// by state and never call the generators they are compared against.
#pragma once

#include <set>
#include <string>
#include <utility>

#include "support.hpp"

namespace figures {

using namespace testing_support;

struct ClassicRates {
    double a, b, ab, aL, aB, Bb;
};

inline Imc classic_sync(const ClassicRates& r) {
    return model({"0", "[a]", "[b]", "[a,b]", "{a,b}"}, {{"[a,b]", "a,b", "{a,b}"}},
                 {{"0", r.a, "[a]"}, {"0", r.b, "[b]"}, {"[a]", r.b, "[a,b]"}, {"[b]", r.a, "[a,b]"},
                  {"{a,b}", r.ab, "0"}});
}

inline Imc classic_lossy(const ClassicRates& r) {
    return model({"0", "[a]", "[b]", "[a,b]", "{a,b}", "{a}"},
                 {{"[a,b]", "a,b", "{a,b}"}, {"[a]", "a", "{a}"}},
                 {{"0", r.a, "[a]"}, {"0", r.b, "[b]"}, {"[a]", r.b, "[a,b]"}, {"[b]", r.a, "[a,b]"},
                  {"{a,b}", r.ab, "0"}, {"{a}", r.aL, "0"}});
}

inline Imc classic_fifo(const ClassicRates& r) {
    return model({"0_e", "[a]_e", "[b]_e", "[a,b]_e", "{a}_e", "[b]{a}_e", "0_f", "[a]_f", "[b]_f", "[a,b]_f",
                  "{b}_f", "[a]{b}_f"},
                 {{"[a]_e", "a", "{a}_e"}, {"[a,b]_e", "a", "[b]{a}_e"}, {"[b]_f", "b", "{b}_f"},
                  {"[a,b]_f", "b", "[a]{b}_f"}},
                 {{"0_e", r.a, "[a]_e"},
                  {"0_e", r.b, "[b]_e"},
                  {"[a]_e", r.b, "[a,b]_e"},
                  {"[b]_e", r.a, "[a,b]_e"},
                  {"{a}_e", r.aB, "0_f"},
                  {"{a}_e", r.b, "[b]{a}_e"},
                  {"[b]{a}_e", r.aB, "[b]_f"},
                  {"0_f", r.a, "[a]_f"},
                  {"0_f", r.b, "[b]_f"},
                  {"[a]_f", r.b, "[a,b]_f"},
                  {"[b]_f", r.a, "[a,b]_f"},
                  {"{b}_f", r.Bb, "0_e"},
                  {"{b}_f", r.a, "[a]{b}_f"},
                  {"[a]{b}_f", r.Bb, "[a]_e"}});
}

inline Imc distilled_sync(double ab) {
    return model({"0", "{a,b}"}, {{"0", "a,b", "{a,b}"}}, {{"{a,b}", ab, "0"}});
}

inline Imc distilled_lossy(double ab, double aL) {
    return model({"0", "{a}", "{a,b}"}, {{"0", "a", "{a}"}, {"0", "a,b", "{a,b}"}},
                 {{"{a}", aL, "0"}, {"{a,b}", ab, "0"}});
}

inline Imc distilled_fifo(double aB, double Bb) {
    return model({"0_e", "{a}_e", "0_f", "{b}_f"}, {{"0_e", "a", "{a}_e"}, {"0_f", "b", "{b}_f"}},
                 {{"{a}_e", aB, "0_f"}, {"{b}_f", Bb, "0_e"}});
}

inline Imc reader_writer(double g) {
    return model({"0", "[a]"}, {{"[a]", "a", "0"}}, {{"0", g, "[a]"}});
}

// Merger-replicator and merger-router for (n, k) in {(1,1), (2,2), (3,2)},
// inputs i1..in and outputs o1..ok.
inline Imc replicator_1_1(double e, double d) {
    return model({"0", "<i1>", "<<o1>>"}, {{"0", "i1,o1", "<i1>"}}, {{"<i1>", e, "<<o1>>"}, {"<<o1>>", d / 1, "0"}});
}

inline Imc replicator_2_2(double e, double d) {
    return model({"0", "<i1>", "<i2>", "<<o1,o2>>"}, {{"0", "i1,o1,o2", "<i1>"}, {"0", "i2,o1,o2", "<i2>"}},
                 {{"<i1>", e, "<<o1,o2>>"}, {"<i2>", e, "<<o1,o2>>"}, {"<<o1,o2>>", d / 2, "0"}});
}

inline Imc replicator_3_2(double e, double d) {
    return model({"0", "<i1>", "<i2>", "<i3>", "<<o1,o2>>"},
                 {{"0", "i1,o1,o2", "<i1>"}, {"0", "i2,o1,o2", "<i2>"}, {"0", "i3,o1,o2", "<i3>"}},
                 {{"<i1>", e, "<<o1,o2>>"},
                  {"<i2>", e, "<<o1,o2>>"},
                  {"<i3>", e, "<<o1,o2>>"},
                  {"<<o1,o2>>", d / 2, "0"}});
}

inline Imc router_1_1(double e, double d) {
    return model({"0", "<i1,o1>", "<<o1>>"}, {{"0", "i1,o1", "<i1,o1>"}},
                 {{"<i1,o1>", e, "<<o1>>"}, {"<<o1>>", d, "0"}});
}

inline Imc router_2_2(double e, double d) {
    return model({"0", "<i1,o1>", "<i1,o2>", "<i2,o1>", "<i2,o2>", "<<o1>>", "<<o2>>"},
                 {{"0", "i1,o1", "<i1,o1>"}, {"0", "i1,o2", "<i1,o2>"}, {"0", "i2,o1", "<i2,o1>"},
                  {"0", "i2,o2", "<i2,o2>"}},
                 {{"<i1,o1>", e, "<<o1>>"},
                  {"<i1,o2>", e, "<<o2>>"},
                  {"<i2,o1>", e, "<<o1>>"},
                  {"<i2,o2>", e, "<<o2>>"},
                  {"<<o1>>", d, "0"},
                  {"<<o2>>", d, "0"}});
}

inline Imc router_3_2(double e, double d) {
    return model({"0", "<i1,o1>", "<i1,o2>", "<i2,o1>", "<i2,o2>", "<i3,o1>", "<i3,o2>", "<<o1>>", "<<o2>>"},
                 {{"0", "i1,o1", "<i1,o1>"},
                  {"0", "i1,o2", "<i1,o2>"},
                  {"0", "i2,o1", "<i2,o1>"},
                  {"0", "i2,o2", "<i2,o2>"},
                  {"0", "i3,o1", "<i3,o1>"},
                  {"0", "i3,o2", "<i3,o2>"}},
                 {{"<i1,o1>", e, "<<o1>>"},
                  {"<i1,o2>", e, "<<o2>>"},
                  {"<i2,o1>", e, "<<o1>>"},
                  {"<i2,o2>", e, "<<o2>>"},
                  {"<i3,o1>", e, "<<o1>>"},
                  {"<i3,o2>", e, "<<o2>>"},
                  {"<<o1>>", d, "0"},
                  {"<<o2>>", d, "0"}});
}

struct LossySyncRates {
    double ab = 1.0, aL = 2.0, cd = 5.0, enq = 3.0, deq = 4.0;
};

// Bottom diagram of the lossy + delayed node + sync example.
inline Imc lossy_sync_final(const LossySyncRates& r) {
    return model({"0", "{a}", "{a,b,c,d}<b>", "{c,d}<b>", "{c,d}<<c>>", "{c,d}"},
                 {{"0", "a", "{a}"}, {"0", "a,d", "{a,b,c,d}<b>"}},
                 {{"{a}", r.aL, "0"},
                  {"{a,b,c,d}<b>", r.ab, "{c,d}<b>"},
                  {"{c,d}<b>", r.enq, "{c,d}<<c>>"},
                  {"{c,d}<<c>>", r.deq, "{c,d}"},
                  {"{c,d}", r.cd, "0"}});
}

using Edge = std::pair<std::string, std::string>;

// Markovian edges drawn grey in the middle diagram, as (source, target).
// Two edge captions out of {a,b}<b> are swapped in the drawing; the
// endpoints below follow the state labels.
inline std::set<Edge> lossy_sync_greyed() {
    return {{"{a,b,c,d}<b>", "{a,b,c,d}<<c>>"}, {"{a,b,c,d}<b>", "{a,b}<b>"},   {"{c,d}<b>", "<b>"},
            {"{a,b,c,d}<<c>>", "{c,d}<<c>>"},  {"{a,b,c,d}<<c>>", "{a,b,c,d}"}, {"{a,b,c,d}<<c>>", "{a,b}<<c>>"},
            {"{a,b}<b>", "<b>"},               {"{a,b}<b>", "{a,b}<<c>>"},   {"<b>", "<<c>>"},
            {"{c,d}<<c>>", "<<c>>"},           {"{a,b,c,d}", "{c,d}"},       {"{a,b,c,d}", "{a,b}"},
            {"{a,b}<<c>>", "{a,b}"},           {"{a,b}<<c>>", "<<c>>"},      {"<<c>>", "0"},
            {"{a,b}", "0"}};
}

// Markovian edges drawn black in the middle diagram.
inline std::set<Edge> lossy_sync_kept() {
    return {{"{a}", "0"},
            {"{a,b,c,d}<b>", "{c,d}<b>"},
            {"{c,d}<b>", "{c,d}<<c>>"},
            {"{c,d}<<c>>", "{c,d}"},
            {"{c,d}", "0"}};
}

inline const char* lossy_sync_circuit =
    "circuit LossySync {\n"
    "  lossy(a, b) { gamma_ab = 1.0; gamma_aL = 2.0; }\n"
    "  node n(b -> c) { gamma_e = 3.0; gamma_d = 4.0; }\n"
    "  sync(c, d) { gamma_ab = 5.0; }\n"
    "  writer(a) { gamma = 6.0; }\n"
    "  reader(d) { gamma = 7.0; }\n"
    "}\n";

}  // namespace figures
