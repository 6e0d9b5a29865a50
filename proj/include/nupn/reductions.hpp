#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nupn/net.hpp"

namespace nupn {

/// (place, transition) or (transition, place) pair of an ordinary net.
struct FlowArc {
    std::uint32_t place = 0;
    std::uint32_t transition = 0;
    friend bool operator==(const FlowArc&, const FlowArc&) = default;
    friend auto operator<=>(const FlowArc&, const FlowArc&) = default;
};

/// Ordinary net with unit arcs plus one extra kind of place/transition
/// arc: inhibitor arcs (test for zero) or reset arcs (empty the place).
struct ControlNet {
    std::vector<std::string> places;
    std::vector<std::string> transitions;
    std::vector<FlowArc> inputs;  // place -> transition
    std::vector<FlowArc> outputs; // transition -> place
    std::vector<FlowArc> control; // inhibitor or reset arcs, place -> transition

    friend bool operator==(const ControlNet&, const ControlNet&) = default;

    [[nodiscard]] bool has_input(std::uint32_t p, std::uint32_t t) const { return has(inputs, p, t); }
    [[nodiscard]] bool has_output(std::uint32_t t, std::uint32_t p) const { return has(outputs, p, t); }
    [[nodiscard]] bool has_control(std::uint32_t p, std::uint32_t t) const { return has(control, p, t); }

private:
    static bool has(const std::vector<FlowArc>& arcs, std::uint32_t p, std::uint32_t t) {
        return std::find(arcs.begin(), arcs.end(), FlowArc{p, t}) != arcs.end();
    }
};

struct InhibitorNet : ControlNet {};
struct ResetNet : ControlNet {};

using PlaceCounts = std::vector<std::uint32_t>;

/// Violations of the standing assumption that no transition resets one of
/// its own output places.
inline std::vector<std::string> validate_reset(const ResetNet& net) {
    std::vector<std::string> out;
    for (const auto& r : net.control)
        if (net.has_output(r.transition, r.place))
            out.push_back("transition '" + net.transitions.at(r.transition) + "' resets its output place '" +
                          net.places.at(r.place) + "'");
    return out;
}

/// Transitions that consume from a place they also test for zero can never
/// fire, but their image could; such nets are rejected.
inline std::vector<std::string> validate_inhibitor(const InhibitorNet& net) {
    std::vector<std::string> out;
    for (const auto& r : net.control)
        if (net.has_input(r.place, r.transition))
            out.push_back("transition '" + net.transitions.at(r.transition) + "' consumes from its inhibiting place '" +
                          net.places.at(r.place) + "'");
    return out;
}

inline std::optional<PlaceCounts> fire_inhibitor(const InhibitorNet& net, const PlaceCounts& m, std::uint32_t t) {
    for (const auto& a : net.inputs)
        if (a.transition == t && m.at(a.place) == 0) return std::nullopt;
    for (const auto& a : net.control)
        if (a.transition == t && m.at(a.place) != 0) return std::nullopt;
    PlaceCounts next = m;
    for (const auto& a : net.inputs)
        if (a.transition == t) --next[a.place];
    for (const auto& a : net.outputs)
        if (a.transition == t) ++next[a.place];
    return next;
}

inline std::optional<PlaceCounts> fire_reset(const ResetNet& net, const PlaceCounts& m, std::uint32_t t) {
    for (const auto& a : net.inputs)
        if (a.transition == t && m.at(a.place) == 0) return std::nullopt;
    PlaceCounts next = m;
    for (const auto& a : net.inputs)
        if (a.transition == t) --next[a.place];
    for (const auto& a : net.outputs)
        if (a.transition == t) ++next[a.place];
    for (const auto& a : net.control)
        if (a.transition == t) next[a.place] = 0;
    return next;
}

/// A ν-PN simulating an inhibitor or reset net. Each source place p becomes
/// p and a control place p_bar holding the single "current" name of p; only
/// tokens of p carrying that name are usable. Zero tests and resets replace
/// the name in p_bar by a fresh one, orphaning whatever is left in p.
struct Translation {
    NuNet net;
    Marking initial;
    std::vector<PlaceId> place_of; // source place -> image place p
    std::vector<PlaceId> bar_of;   // source place -> image place p_bar
    std::vector<NameId> names;     // a_p, the initial current name of p

    /// M*: p_bar holds a_p and p holds M(p) copies of a_p.
    [[nodiscard]] Marking marking(const PlaceCounts& m) const {
        if (m.size() != place_of.size()) throw Error("source marking does not match the translated net");
        Marking out(net.num_places());
        for (std::size_t p = 0; p < m.size(); ++p) {
            out[bar_of[p]].add(names[p]);
            out[place_of[p]].add(names[p], m[p]);
        }
        return out;
    }

    /// Source marking read off an image marking through the current names:
    /// M(p) = M*(p)(a) where M*(p_bar) = {a}. nullopt if some p_bar does not
    /// hold exactly one token.
    [[nodiscard]] std::optional<PlaceCounts> project(const Marking& image) const {
        if (image.num_places() != net.num_places()) throw Error("marking does not match the translated net");
        PlaceCounts out(place_of.size(), 0);
        for (std::size_t p = 0; p < place_of.size(); ++p) {
            const auto& bar = image[bar_of[p]];
            if (bar.size() != 1) return std::nullopt;
            out[p] = image[place_of[p]].count(bar.begin()->first);
        }
        return out;
    }

    /// True when every token of every place p carries p's current name.
    [[nodiscard]] bool garbage_free(const Marking& image) const {
        for (std::size_t p = 0; p < place_of.size(); ++p) {
            const auto& bar = image[bar_of[p]];
            if (bar.size() != 1) return false;
            if (image[place_of[p]].distinct() > 1) return false;
            if (!image[place_of[p]].empty() && !image[place_of[p]].contains(bar.begin()->first)) return false;
        }
        return true;
    }
};

namespace detail {

inline Translation translate_control_net(const ControlNet& src, const PlaceCounts& m0) {
    if (m0.size() != src.places.size()) throw Error("source marking does not match the net's places");
    Translation tr;
    for (const auto& p : src.places) {
        tr.place_of.push_back(tr.net.add_place(p));
        tr.bar_of.push_back(tr.net.add_place(p + "_bar"));
    }
    for (const auto& t : src.transitions) tr.net.add_transition(t);
    for (std::uint32_t t = 0; t < src.transitions.size(); ++t) {
        std::uint32_t refreshed = 0;
        for (std::uint32_t p = 0; p < src.places.size(); ++p) {
            const bool in = src.has_input(p, t);
            const bool out = src.has_output(t, p);
            const bool ctl = src.has_control(p, t);
            if (!in && !out && !ctl) continue;
            const auto x = tr.net.variable("x_" + src.places[p], VarKind::plain);
            // The current name of p after t: x_p, or a fresh one when t
            // tests or resets p.
            auto after = x;
            if (ctl) {
                ++refreshed;
                after = tr.net.variable(refreshed == 1 ? std::string("nu") : "nu" + std::to_string(refreshed),
                                        VarKind::fresh);
            }
            if (in) tr.net.add_input(tr.place_of[p], t, ArcLabel{x});
            if (out) tr.net.add_output(t, tr.place_of[p], ArcLabel{after});
            tr.net.add_input(tr.bar_of[p], t, ArcLabel{x});
            tr.net.add_output(t, tr.bar_of[p], ArcLabel{after});
        }
    }
    for (std::uint32_t p = 0; p < src.places.size(); ++p) tr.names.push_back(NameId{p + 1});
    tr.initial = tr.marking(m0);
    return tr;
}

} // namespace detail

/// Inhibitor arcs become "refresh the current name": the image may also
/// fire when the inhibiting place is nonempty, but then its tokens turn into
/// garbage, so garbage-free image markings correspond to source markings.
inline Translation inhibitor_to_nu(const InhibitorNet& net, const PlaceCounts& m0) {
    if (auto problems = validate_inhibitor(net); !problems.empty()) throw Error(problems.front());
    return detail::translate_control_net(net, m0);
}

inline Translation reset_to_nu(const ResetNet& net, const PlaceCounts& m0) {
    if (auto problems = validate_reset(net); !problems.empty()) throw Error(problems.front());
    return detail::translate_control_net(net, m0);
}

inline Marking inhibitor_marking(const Translation& tr, const PlaceCounts& m) { return tr.marking(m); }
inline Marking reset_marking(const Translation& tr, const PlaceCounts& m) { return tr.marking(m); }

} // namespace nupn
