#include <catch_amalgamated.hpp>

#include <random>

#include "nupn/forward.hpp"
#include "nupn/cli.hpp"
#include "nupn/pt.hpp"
#include "nupn/reductions.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace nupn;
using namespace fixtures;

namespace {

NuNet deadlocked_net() {
    NuNet net;
    net.add_place("p");
    auto q = net.add_place("q");
    auto t = net.add_transition("t");
    auto x = net.variable("x", VarKind::plain);
    net.add_input(q, t, ArcLabel{x});
    net.add_output(t, 0, ArcLabel{x});
    return net;
}

PtNet single_token_cycle() {
    PtNet cycle;
    cycle.places = {"a", "b", "c"};
    cycle.transitions = {"ab", "bc", "ca"};
    cycle.inputs = {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}};
    cycle.outputs = {{1, 0, 1}, {2, 1, 1}, {0, 2, 1}};
    return cycle;
}

} // namespace

TEST_CASE("terminates on a deadlocked marking") {
    auto net = deadlocked_net();
    auto r = terminates(net, marking({{a, a}, {}}));
    CHECK(r.verdict == Verdict::terminating);
    CHECK(r.stats.nodes == 1);
    CHECK(r.witness.empty());
    CHECK(bounded(net, marking({{a, a}, {}})).verdict == Verdict::bounded);
}

TEST_CASE("Fig. 4 nets do not terminate and are unbounded") {
    for (bool right : {false, true}) {
        Fig4 f(right);
        auto m0 = f.initial(right ? kDot : a);
        auto t = terminates(f.net, m0);
        CHECK(t.verdict == Verdict::non_terminating);
        REQUIRE(t.pump_start);
        auto reached = replay(f.net, m0, t.witness);
        FiringSequence prefix(t.witness.begin(), t.witness.begin() + static_cast<long>(*t.pump_start));
        CHECK(leq_alpha(replay(f.net, m0, prefix), reached));

        auto b = bounded(f.net, m0);
        CHECK(b.verdict == Verdict::unbounded);
        REQUIRE(b.pump_from);
        REQUIRE(b.pump_to);
        CHECK(strictly_embeds(*b.pump_from, *b.pump_to));
        CHECK(canonicalize(replay(f.net, m0, b.witness)) == *b.pump_to);
    }
}

TEST_CASE("cycles are found when no marking grows") {
    auto [net, m0] = embed_pt(single_token_cycle(), {1, 0, 0});
    auto t = terminates(net, m0);
    CHECK(t.verdict == Verdict::non_terminating);
    CHECK(bounded(net, m0).verdict == Verdict::bounded);
}

TEST_CASE("Fig. 5 image terminates like its source") {
    ResetNet src{fig3_or_5()};
    const PlaceCounts m0{2, 2, 0};
    auto tr = reset_to_nu(src, m0);
    CHECK((terminates(tr.net, tr.initial).verdict == Verdict::terminating) == oracle::reset_terminates(src, m0));
    auto b = bounded(tr.net, tr.initial);
    CHECK(b.verdict == Verdict::bounded);
    CHECK(oracle::reach_counts(src, oracle::ControlKind::reset, m0, 100).has_value());
    CHECK(b.stats.max_depth <= 2);
}

TEST_CASE("reach_set") {
    auto net = deadlocked_net();
    auto m0 = marking({{a, a}, {}});
    auto rs = reach_set(net, m0);
    CHECK(rs.complete);
    CHECK(rs.markings == std::vector<CanonicalMarking>{canonicalize(m0)});

    // Fig. 2 right: only the x != y transition can fire from (a, b)
    auto fig2 = load(parse(cli::read_file(corpus("fig2-right.nu"))));
    auto rs2 = reach_set(fig2.net, fig2.initial);
    auto brute = oracle::brute_reach(fig2.net, fig2.initial, 100);
    REQUIRE(brute);
    CHECK(rs2.markings.size() == brute->size());
    CHECK(rs2.markings.size() == 2);

    auto cycle = single_token_cycle();
    for (std::uint32_t k = 1; k <= 4; ++k) {
        auto [cnet, c0] = embed_pt(cycle, {k, 0, 0});
        auto pt = oracle::reach_pt(cycle, {k, 0, 0}, 1000);
        REQUIRE(pt);
        CHECK(reach_set(cnet, c0).markings.size() == pt->size());
    }
}

TEST_CASE("reachable_alpha") {
    Fig2Left f;
    CHECK(reachable_alpha(f.net, f.initial(), f.initial()).verdict == Verdict::reachable);
    auto after = marking({{}, {c}, {}, {d}});
    auto r = reachable_alpha(f.net, f.initial(), after);
    CHECK(r.verdict == Verdict::reachable);
    CHECK(alpha_equiv(replay(f.net, f.initial(), r.witness), after));

    Fig4 right(true);
    CHECK(reachable_alpha(right.net, right.initial(kDot), Marking(2)).verdict == Verdict::not_applicable);

    // Fig. 3: q never gets a token while r stays marked
    InhibitorNet src{fig3_or_5()};
    auto tr = inhibitor_to_nu(src, {2, 2, 0});
    auto source_reach = oracle::reach_counts(src, oracle::ControlKind::inhibitor, {2, 2, 0}, 100);
    REQUIRE(source_reach);
    for (std::uint32_t q = 0; q <= 2; ++q) {
        PlaceCounts target{static_cast<std::uint32_t>(2 - q), 2, q};
        auto v = reachable_alpha(tr.net, tr.initial, tr.marking(target)).verdict;
        CHECK((v == Verdict::reachable) == (source_reach->count(target) > 0));
    }
}

TEST_CASE("measure") {
    auto net = deadlocked_net();
    auto m = measure(net, marking({{a, a}, {}}), 10);
    CHECK(m.width == 1);
    CHECK(m.depth == 2);
    CHECK(m.exact);

    Fig4 right(true);
    auto mr = measure(right.net, right.initial(kDot), 10);
    CHECK(mr.width >= 10);
    CHECK(mr.depth == 1);
    CHECK_FALSE(mr.exact);

    Fig4 left(false);
    auto ml = measure(left.net, left.initial(a), 10);
    CHECK(ml.width == 1);
    CHECK_FALSE(ml.exact);
    CHECK(measure(left.net, left.initial(a), 20).depth > ml.depth);
}

TEST_CASE("terminates and bounded agree with exhaustive search on P/T nets") {
    std::mt19937 g(41);
    int checked = 0;
    for (int i = 0; i < 300 && checked < 40; ++i) {
        PtNet pt;
        pt.places = {"p0", "p1", "p2"};
        pt.transitions = {"t0", "t1"};
        for (std::uint32_t t = 0; t < 2; ++t)
            for (std::uint32_t p = 0; p < 3; ++p) {
                auto r = oracle::pick(g, 0, 5);
                if (r == 0) pt.inputs.push_back({p, t, 1});
                if (r == 1) pt.outputs.push_back({p, t, 1});
            }
        PlaceCounts m0 = oracle::random_counts(g, 3, 2);
        auto [net, nm0] = embed_pt(pt, m0);
        auto reach = oracle::reach_pt(pt, m0, 200);
        auto b = bounded(net, nm0);
        REQUIRE(b.verdict != Verdict::resource_exhausted);
        CHECK((b.verdict == Verdict::bounded) == reach.has_value());
        if (reach) {
            CHECK(reach_set(net, nm0).markings.size() == reach->size());
            // a finite P/T system terminates iff its state graph is acyclic;
            // a reset net with no resets is a P/T net
            ControlNet cn;
            cn.places = pt.places;
            cn.transitions = pt.transitions;
            for (const auto& a : pt.inputs) cn.inputs.push_back({a.place, a.transition});
            for (const auto& a : pt.outputs) cn.outputs.push_back({a.place, a.transition});
            CHECK((terminates(net, nm0).verdict == Verdict::terminating) == oracle::reset_terminates(cn, m0));
        }
        ++checked;
    }
}
