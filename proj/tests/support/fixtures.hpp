#pragma once

// Nets from the figures, built directly through the API.

#include <string>

#include "nupn/io.hpp"
#include "nupn/net.hpp"

namespace fixtures {

using namespace nupn;

inline constexpr NameId a{1}, b{2}, c{3}, d{4}, e{5};

inline std::string corpus(const std::string& file) { return std::string(NUPN_CORPUS_DIR) + "/" + file; }

/// t: p1 -xy-> t -x nu1-> q1, p2 -y-> t -nu1 nu2-> q2.
struct Fig1 {
    NuNet net;
    PlaceId p1, p2, q1, q2;
    TransitionId t;
    VariableId x, y, nu1, nu2;

    Fig1() {
        p1 = net.add_place("p1");
        p2 = net.add_place("p2");
        q1 = net.add_place("q1");
        q2 = net.add_place("q2");
        t = net.add_transition("t");
        x = net.variable("x", VarKind::plain);
        y = net.variable("y", VarKind::plain);
        nu1 = net.variable("nu1", VarKind::fresh);
        nu2 = net.variable("nu2", VarKind::fresh);
        net.add_input(p1, t, ArcLabel{x, y});
        net.add_input(p2, t, ArcLabel{y});
        net.add_output(t, q1, ArcLabel{x, nu1});
        net.add_output(t, q2, ArcLabel{nu1, nu2});
    }

    [[nodiscard]] Marking initial() const {
        Marking m(4);
        m[p1] = NameMultiset{a, b};
        m[p2] = NameMultiset{b, c};
        return m;
    }

    [[nodiscard]] Mode sigma() const { return Mode{{x, a}, {y, b}, {nu1, d}, {nu2, e}}; }
};

/// Fig. 2 left: t moves x from p0 to p1 and y from p2 to p3.
struct Fig2Left {
    NuNet net;
    PlaceId p0, p1, p2, p3;
    TransitionId t;
    VariableId x, y;

    Fig2Left() {
        p0 = net.add_place("p0");
        p1 = net.add_place("p1");
        p2 = net.add_place("p2");
        p3 = net.add_place("p3");
        t = net.add_transition("t");
        x = net.variable("x", VarKind::plain);
        y = net.variable("y", VarKind::plain);
        net.add_input(p0, t, ArcLabel{x});
        net.add_input(p2, t, ArcLabel{y});
        net.add_output(t, p1, ArcLabel{x});
        net.add_output(t, p3, ArcLabel{y});
    }

    [[nodiscard]] Marking initial() const {
        Marking m(4);
        m[p0] = NameMultiset{a};
        m[p2] = NameMultiset{b};
        return m;
    }
};

/// Fig. 4: t loops on p1 and puts x (left) or a fresh name (right) on p2.
struct Fig4 {
    NuNet net;
    PlaceId p1, p2;
    TransitionId t;
    VariableId x, nu;

    explicit Fig4(bool right) {
        p1 = net.add_place("p1");
        p2 = net.add_place("p2");
        t = net.add_transition("t");
        x = net.variable("x", VarKind::plain);
        nu = net.variable("nu", VarKind::fresh);
        net.add_input(p1, t, ArcLabel{x});
        net.add_output(t, p1, ArcLabel{x});
        net.add_output(t, p2, ArcLabel{right ? nu : x});
    }

    [[nodiscard]] Marking initial(NameId token) const {
        Marking m(2);
        m[p1] = NameMultiset{token};
        return m;
    }
};

/// Fig. 3 (inhibitor) and Fig. 5 (reset): t takes p, tests or resets r,
/// and puts a token on q.
inline ControlNet fig3_or_5() {
    ControlNet n;
    n.places = {"p", "r", "q"};
    n.transitions = {"t"};
    n.inputs = {{0, 0}};
    n.outputs = {{2, 0}};
    n.control = {{1, 0}};
    return n;
}

inline Marking marking(std::initializer_list<NameMultiset> places) {
    return Marking(std::vector<NameMultiset>(places));
}

} // namespace fixtures
