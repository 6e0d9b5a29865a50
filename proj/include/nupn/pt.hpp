#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nupn/net.hpp"

namespace nupn {

/// Ordinary place/transition net with arc weights.
struct PtNet {
    struct Arc {
        std::uint32_t place = 0;
        std::uint32_t transition = 0;
        std::uint32_t weight = 1;
        friend bool operator==(const Arc&, const Arc&) = default;
    };

    std::vector<std::string> places;
    std::vector<std::string> transitions;
    std::vector<Arc> inputs;  // place -> transition
    std::vector<Arc> outputs; // transition -> place

    friend bool operator==(const PtNet&, const PtNet&) = default;
};

using PtMarking = std::vector<std::uint32_t>;

/// Name of the place added by embed_pt to hold a reusable "•" for
/// transitions without input arcs.
inline constexpr const char* kDotReservoir = "_dot";

/// Embeds a P/T net as a ν-PN over the single name "•": every arc of weight
/// w is labelled with the shared variable x repeated w times, and the
/// initial marking puts M0(p) copies of "•" on p.
///
/// Transitions with an empty preset read "•" from an extra self-looped place
/// so that the variable on their output arcs is bound.
inline std::pair<NuNet, Marking> embed_pt(const PtNet& pt, const PtMarking& m0) {
    if (m0.size() != pt.places.size()) throw Error("P/T marking does not match the net's places");
    NuNet net;
    for (const auto& p : pt.places) net.add_place(p);
    for (const auto& t : pt.transitions) net.add_transition(t);
    const auto x = net.variable("x", VarKind::plain);
    std::vector<bool> has_input(pt.transitions.size(), false);
    for (const auto& a : pt.inputs) {
        net.add_input(a.place, a.transition, ArcLabel{{x, a.weight}});
        if (a.weight > 0) has_input[a.transition] = true;
    }
    std::vector<bool> needs_dot(pt.transitions.size(), false);
    bool any = false;
    for (const auto& a : pt.outputs) {
        net.add_output(a.transition, a.place, ArcLabel{{x, a.weight}});
        if (a.weight > 0 && !has_input[a.transition]) {
            needs_dot[a.transition] = true;
            any = true;
        }
    }
    PlaceId dot = 0;
    if (any) {
        dot = net.add_place(kDotReservoir);
        for (TransitionId t = 0; t < pt.transitions.size(); ++t)
            if (needs_dot[t]) {
                net.add_input(dot, t, ArcLabel{x});
                net.add_output(t, dot, ArcLabel{x});
            }
    }
    Marking m(net.num_places());
    for (PlaceId p = 0; p < m0.size(); ++p) m[p].add(kDot, m0[p]);
    if (any) m[dot].add(kDot);
    return {std::move(net), std::move(m)};
}

/// Maps a P/T marking to the embedded ν-PN marking (using "•" only).
inline Marking embed_pt_marking(const NuNet& embedded, const PtMarking& m) {
    Marking out(embedded.num_places());
    for (PlaceId p = 0; p < m.size(); ++p) out[p].add(kDot, m[p]);
    if (auto dot = embedded.find_place(kDotReservoir)) out[*dot].add(kDot);
    return out;
}

} // namespace nupn
