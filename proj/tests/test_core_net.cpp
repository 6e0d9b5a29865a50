#include <catch_amalgamated.hpp>

#include <random>

#include "nupn/canonical.hpp"
#include "nupn/firing.hpp"
#include "nupn/forward.hpp"
#include "nupn/pt.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace nupn;
using namespace fixtures;

TEST_CASE("validate_net accepts Fig. 1") {
    Fig1 f;
    CHECK(validate_net(f.net).empty());
}

TEST_CASE("validate_net reports a fresh variable on a pre-arc") {
    NuNet net;
    auto p = net.add_place("p");
    auto t = net.add_transition("t");
    net.add_input(p, t, ArcLabel{net.variable("nu", VarKind::fresh)});
    auto v = validate_net(net);
    REQUIRE(v.size() == 1);
    CHECK(v[0].transition == t);
    CHECK(v[0].message.find("'t'") != std::string::npos);
}

TEST_CASE("validate_net reports a post variable missing from the pre-arcs") {
    NuNet net;
    auto p = net.add_place("p");
    auto q = net.add_place("q");
    auto t = net.add_transition("t");
    net.add_input(p, t, ArcLabel{net.variable("x", VarKind::plain)});
    net.add_output(t, q, ArcLabel{net.variable("z", VarKind::plain)});
    CHECK(validate_net(net).size() == 1);
}

TEST_CASE("is_enabled on Fig. 1") {
    Fig1 f;
    auto m = f.initial();
    CHECK(is_enabled(f.net, m, f.t, f.sigma()));

    Mode stale{{f.x, a}, {f.y, b}, {f.nu1, a}, {f.nu2, e}};
    CHECK_THROWS_AS(is_enabled(f.net, m, f.t, stale), ModeError); // not injective

    Mode reused{{f.x, a}, {f.y, b}, {f.nu1, c}, {f.nu2, e}};
    CHECK_FALSE(is_enabled(f.net, m, f.t, reused)); // c occurs in M

    Mode partial{{f.x, a}, {f.y, b}};
    CHECK_THROWS_AS(is_enabled(f.net, m, f.t, partial), ModeError);
}

TEST_CASE("Fig. 3 image: enabledness follows the current names") {
    // p={a,a}, p_bar={a}, r={b,b}, r_bar={b}, q_bar={c}
    auto tr = inhibitor_to_nu(InhibitorNet{fig3_or_5()}, {2, 2, 0});
    const auto& net = tr.net;
    auto t = *net.find_transition("t");
    auto xp = *net.find_variable("x_p");
    auto xr = *net.find_variable("x_r");
    auto xq = *net.find_variable("x_q");
    auto nu = *net.find_variable("nu");
    NameId pa = tr.names[0], rb = tr.names[1], qc = tr.names[2];
    CHECK(is_enabled(net, tr.initial, t, Mode{{xp, pa}, {xr, rb}, {xq, qc}, {nu, NameId{9}}}));
    // x_p bound to a name that p_bar does not hold
    CHECK_FALSE(is_enabled(net, tr.initial, t, Mode{{xp, rb}, {xr, pa}, {xq, qc}, {nu, NameId{9}}}));
    // p_bar already empty
    auto drained = tr.initial;
    drained[tr.bar_of[0]] = {};
    CHECK_FALSE(is_enabled(net, drained, t, Mode{{xp, pa}, {xr, rb}, {xq, qc}, {nu, NameId{9}}}));
}

TEST_CASE("fire on Fig. 1") {
    Fig1 f;
    auto m = fire(f.net, f.initial(), f.t, f.sigma());
    CHECK(m == marking({{}, {c}, {a, d}, {d, e}}));
    CHECK_THROWS_AS(fire(f.net, m, f.t, f.sigma()), ModeError);
}

TEST_CASE("a transition without arcs leaves the marking unchanged") {
    NuNet net;
    net.add_place("p");
    auto t = net.add_transition("idle");
    auto m = marking({{a, a}});
    CHECK(fire(net, m, t, Mode{}) == m);
}

TEST_CASE("Fig. 4 right creates a fresh name") {
    Fig4 f(true);
    auto m = fire(f.net, f.initial(kDot), f.t, Mode{{f.x, kDot}, {f.nu, a}});
    CHECK(m == marking({{kDot}, {a}}));
    auto firings = enabled_firings(f.net, f.initial(kDot));
    REQUIRE(firings.size() == 1);
    CHECK(firings[0].mode.at(f.nu) == first_fresh_name(f.initial(kDot)));
}

TEST_CASE("enabled_firings on Fig. 2 left lists both assignments") {
    Fig2Left f;
    auto firings = enabled_firings(f.net, f.initial());
    REQUIRE(firings.size() == 1); // x must come from p0, y from p2
    CHECK(firings[0].mode == Mode{{f.x, a}, {f.y, b}});

    // with both names on both input places, x and y range over both
    auto m = marking({{a, b}, {}, {a, b}, {}});
    auto all = enabled_firings(f.net, m);
    CHECK(all.size() == 2);
    CHECK(std::find(all.begin(), all.end(), Firing{f.t, Mode{{f.x, a}, {f.y, b}}}) != all.end());
    CHECK(std::find(all.begin(), all.end(), Firing{f.t, Mode{{f.x, b}, {f.y, a}}}) != all.end());
}

TEST_CASE("enabled_firings is empty on an empty marking") {
    Fig1 f;
    CHECK(enabled_firings(f.net, Marking(4)).empty());
}

TEST_CASE("successors") {
    Fig1 f;
    CHECK(successors(f.net, f.initial()).size() == 1);

    NuNet dead;
    auto p = dead.add_place("p");
    auto q = dead.add_place("q");
    auto t = dead.add_transition("t");
    auto x = dead.variable("x", VarKind::plain);
    dead.add_input(q, t, ArcLabel{x});
    dead.add_output(t, p, ArcLabel{x});
    CHECK(successors(dead, marking({{a, a}, {}})).empty());

    Fig4 left(false);
    auto s = successors(left.net, left.initial(a));
    REQUIRE(s.size() == 1);
    REQUIRE(s[0].width() == 1);
    CHECK(s[0].profiles[0][left.p2] == 1);
}

TEST_CASE("successors agree with brute-force mode enumeration") {
    std::mt19937 g(7);
    for (int i = 0; i < 300; ++i) {
        auto net = oracle::random_nu_net(g, 3, 2);
        auto m = oracle::random_marking(g, 3, 3, 2);
        std::set<oracle::Key> expected;
        for (const auto& s : oracle::brute_steps(net, m)) expected.insert(oracle::key(s.next));
        std::set<oracle::Key> actual;
        for (const auto& c : successors(net, m)) actual.insert(oracle::key(representative(c, 3)));
        REQUIRE(actual == expected);
        for (const auto& f : enabled_firings(net, m)) CHECK(is_enabled(net, m, f.transition, f.mode));
    }
}

TEST_CASE("firing is invariant under renaming and strictly monotonic") {
    std::mt19937 g(11);
    for (int i = 0; i < 200; ++i) {
        auto net = oracle::random_nu_net(g, 3, 2);
        auto m = oracle::random_marking(g, 3, 3, 2);
        auto iota = oracle::random_bijection(g, m);
        auto renamed = oracle::rename(m, iota);
        CHECK(successors(net, m) == successors(net, renamed));

        // add one token of a new name: every firing stays enabled and the
        // successor strictly grows
        auto bigger = m;
        bigger[0].add(NameId{50});
        for (const auto& f : enabled_firings(net, m)) {
            auto fresh_clash = false;
            for (const auto& [v, n] : f.mode)
                if (net.is_fresh(v) && n == NameId{50}) fresh_clash = true;
            if (fresh_clash) continue;
            REQUIRE(is_enabled(net, bigger, f.transition, f.mode));
            auto small = canonicalize(fire(net, m, f));
            auto large = canonicalize(fire(net, bigger, f));
            CHECK(strictly_embeds(small, large));
        }
    }
}

TEST_CASE("is_normal") {
    auto tr = inhibitor_to_nu(InhibitorNet{fig3_or_5()}, {2, 2, 0});
    CHECK(is_normal(tr.net));
    Fig1 f;
    CHECK_FALSE(is_normal(f.net));

    NuNet two;
    auto p = two.add_place("p");
    auto t = two.add_transition("t");
    auto x = two.variable("x", VarKind::plain);
    two.add_input(p, t, ArcLabel{x});
    two.add_output(t, p, ArcLabel{two.variable("nu1", VarKind::fresh)});
    two.add_output(t, p, ArcLabel{two.variable("nu2", VarKind::fresh)});
    CHECK_FALSE(is_normal(two));
}

TEST_CASE("embed_pt") {
    PtNet pt;
    pt.places = {"p"};
    pt.transitions = {"t"};
    pt.inputs = {{0, 0, 1}};
    auto [net, m0] = embed_pt(pt, {2});
    auto m = m0;
    int fired = 0;
    while (true) {
        auto fs = enabled_firings(net, m);
        if (fs.empty()) break;
        m = fire(net, m, fs.front());
        ++fired;
    }
    CHECK(fired == 2);

    PtNet heavy;
    heavy.places = {"p", "q"};
    heavy.transitions = {"t"};
    heavy.inputs = {{0, 0, 2}};
    heavy.outputs = {{1, 0, 1}};
    auto [hnet, h0] = embed_pt(heavy, {1, 0});
    auto x = *hnet.find_variable("x");
    CHECK(hnet.input_label(0, 0) == ArcLabel{{x, 2}});
    CHECK(enabled_firings(hnet, h0).empty());
    CHECK(enabled_firings(hnet, embed_pt_marking(hnet, {2, 0})).size() == 1);

    PtNet producer;
    producer.places = {"buffer"};
    producer.transitions = {"produce"};
    producer.outputs = {{0, 0, 1}};
    auto [pnet, p0] = embed_pt(producer, {0});
    CHECK(validate_net(pnet).empty());
    CHECK(bounded(pnet, p0).verdict == Verdict::unbounded);
    auto reach = oracle::reach_pt(producer, {0}, 50);
    CHECK_FALSE(reach.has_value()); // the oracle agrees: no finite closure
}
