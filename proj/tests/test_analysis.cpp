#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "figures.hpp"
#include "reoimc/analysis.hpp"
#include "reoimc/composer.hpp"
#include "simulate.hpp"

using namespace reoimc;
using namespace testing_support;

namespace {

Imc deployed_sync(double a, double b, double ab) {
    ChannelRates r{Rate(ab), {}, {}, {}, {}, {}};
    return deploy(make_channel(ChannelKind::sync, "a", "b", r), {make_io("a", Rate(a)), make_io("b", Rate(b))},
                  ports("a,b"), true, FlowOrder(FlowOrder::Pairs{{"a", "b"}}));
}

double pi_of(const Ctmc& c, const std::vector<double>& pi, const std::string& origin) {
    auto s = c.find(label(origin));
    REQUIRE(s < c.states.size());
    return pi[s];
}

}  // namespace

TEST_CASE("deployed sync collapses to four states") {
    auto c = to_ctmc(deployed_sync(0.5, 0.25, 2.0));
    REQUIRE(c.states.size() == 4);
    auto merged = c.find(label("{a,b}"));
    REQUIRE(merged < 4);
    CHECK(c.find(label("[a,b]")) == merged);
    CHECK(c.states[merged].origins.front() == label("{a,b}"));

    std::multiset<double> rates;
    for (const auto& e : c.edges) rates.insert(e.rate);
    CHECK(rates == std::multiset<double>{0.5, 0.25, 0.25, 0.5, 2.0});
    for (const auto& e : c.edges) {
        if (e.from == label("[a]")) {
            CHECK(e.dst == merged);
            CHECK(e.to == label("[a,b]"));
        }
    }
}

TEST_CASE("steady state of the deployed sync") {
    auto c = to_ctmc(deployed_sync(1, 1, 1));
    auto pi = steady_state(c);
    CHECK(pi_of(c, pi, "0") == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(pi_of(c, pi, "[a]") == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(pi_of(c, pi, "[b]") == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(pi_of(c, pi, "{a,b}") == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(balance_residual(c, pi) <= 1e-10);
    double total = 0;
    for (double p : pi) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));

    auto transfer = throughput(c, [](const Ctmc::Edge& e) { return e.from == label("{a,b}"); });
    CHECK(std::abs(transfer - 0.4) <= 1e-10);
    CHECK(throughput(c, [](const Ctmc::Edge&) { return false; }) == 0.0);
}

TEST_CASE("two-state cycles") {
    auto cycle = [](double up, double down) {
        return to_ctmc(model({"0", "{x}"}, {}, {{"0", up, "{x}"}, {"{x}", down, "0"}}));
    };
    auto sym = cycle(2.0, 2.0);
    auto pi = steady_state(sym);
    CHECK(pi[0] == doctest::Approx(0.5));
    CHECK(pi[1] == doctest::Approx(0.5));
    CHECK(throughput(sym, [](const Ctmc::Edge&) { return true; }) == doctest::Approx(2.0));

    auto skew = steady_state(cycle(1.0, 3.0));
    CHECK(skew[0] == doctest::Approx(0.75));
    CHECK(skew[1] == doctest::Approx(0.25));
}

TEST_CASE("models without interactive moves keep their edges") {
    Imc m = model({"0", "{x}", "{y}"}, {}, {{"0", 1.0, "{x}"}, {"{x}", 2.0, "{y}"}, {"{y}", 3.0, "0"}, {"{y}", 4.0, "{x}"}});
    auto c = to_ctmc(m);
    CHECK(c.states.size() == 3);
    CHECK(c.edges.size() == m.markovian.size());
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
        CHECK(c.edges[k].src == m.markovian[k].src);
        CHECK(c.edges[k].dst == m.markovian[k].dst);
        CHECK(c.edges[k].rate == m.markovian[k].rate);
    }
}

TEST_CASE("closed-model errors") {
    Imc open = model({"0", "{a}"}, {{"0", "a", "{a}"}}, {{"{a}", 1.0, "0"}});
    CHECK_THROWS_WITH_AS(to_ctmc(open), doctest::Contains("model not closed"), AnalysisError);

    Imc choice = model({"0", "{x}", "{y}"}, {{"0", "", "{x}"}, {"0", "", "{y}"}},
                       {{"{x}", 1.0, "0"}, {"{y}", 2.0, "0"}});
    CHECK_THROWS_WITH_AS(to_ctmc(choice), doctest::Contains("tau-nondeterminism"), AnalysisError);
    auto uniform = to_ctmc(choice, true);
    CHECK(uniform.states.size() == 2);
    auto pi = steady_state(uniform);
    // Leave {x} at 1 and {y} at 2, each re-entered half the time.
    CHECK(pi[0] == doctest::Approx(2.0 / 3.0));

    Imc loop = model({"0", "{x}"}, {{"0", "", "{x}"}, {"{x}", "", "0"}}, {});
    CHECK_THROWS_WITH_AS(to_ctmc(loop), doctest::Contains("tau-cycle"), AnalysisError);
}

TEST_CASE("reducible chains are rejected") {
    Imc absorbing = model({"0", "{x}"}, {}, {{"0", 1.0, "{x}"}});
    CHECK_THROWS_WITH_AS(steady_state(to_ctmc(absorbing)), doctest::Contains("not irreducible"), AnalysisError);
    CHECK_THROWS_WITH_AS(steady_state(to_ctmc(absorbing)), doctest::Contains("{x}"), AnalysisError);
    Imc single = model({"0"}, {}, {});
    CHECK(steady_state(to_ctmc(single)) == std::vector<double>{1.0});
}

TEST_CASE("unreachable states are left out") {
    Imc m = model({"0", "{x}", "{dead}"}, {}, {{"0", 1.0, "{x}"}, {"{x}", 1.0, "0"}, {"{dead}", 1.0, "0"}});
    auto c = to_ctmc(m);
    CHECK(c.states.size() == 2);
    CHECK(c.find(label("{dead}")) == c.states.size());
}

TEST_CASE("simulation agrees with the solver") {
    auto c = to_ctmc(deployed_sync(1, 1, 1));
    auto pi = steady_state(c);
    auto est = simulate_occupancy(c, 200000, 50, 12345);
    for (std::size_t s = 0; s < pi.size(); ++s) {
        CAPTURE(s);
        CHECK(std::abs(est.mean[s] - pi[s]) <= 3 * est.stderr_[s]);
    }
}

TEST_CASE("bundled circuits have a steady state") {
    for (const char* text : {figures::lossy_sync_circuit}) {
        auto m = deploy_circuit(parse_circuit(text), true);
        auto c = to_ctmc(m, true);
        auto pi = steady_state(c);
        CHECK(balance_residual(c, pi) <= 1e-10);
    }
}
