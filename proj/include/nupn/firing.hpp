#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "nupn/canonical.hpp"
#include "nupn/net.hpp"

namespace nupn {

/// sigma(label): the multiset of names obtained by instantiating each
/// variable of the label.
inline NameMultiset instantiate(const ArcLabel& label, const Mode& sigma) {
    NameMultiset out;
    for (const auto& [v, n] : label) out.add(sigma.at(v), n);
    return out;
}

/// Throws ModeError unless sigma binds exactly Var(t) and is injective.
inline void check_mode(const NuNet& net, TransitionId t, const Mode& sigma) {
    if (t >= net.num_transitions()) throw ModeError("unknown transition");
    const auto& vars = net.transition(t).vars;
    if (sigma.size() != vars.size())
        throw ModeError("mode domain differs from the variables of '" + net.transition(t).name + "'");
    for (auto v : vars)
        if (!sigma.find(v))
            throw ModeError("mode does not bind '" + net.var(v).name + "' of '" + net.transition(t).name + "'");
    if (!sigma.injective()) throw ModeError("mode is not injective");
}

inline bool is_enabled(const NuNet& net, const Marking& m, TransitionId t, const Mode& sigma) {
    check_mode(net, t, sigma);
    const auto& tr = net.transition(t);
    for (const auto& arc : tr.inputs)
        if (!instantiate(arc.label, sigma).included_in(m[arc.place])) return false;
    for (const auto& [v, a] : sigma)
        if (net.is_fresh(v) && m.contains_name(a)) return false;
    return true;
}

/// M'(p) = (M(p) - sigma(F(p,t))) + sigma(F(t,p)).
inline Marking fire(const NuNet& net, const Marking& m, TransitionId t, const Mode& sigma) {
    if (!is_enabled(net, m, t, sigma))
        throw ModeError("transition '" + net.transition(t).name + "' is not enabled in this mode");
    Marking next = m;
    const auto& tr = net.transition(t);
    for (const auto& arc : tr.inputs) next[arc.place] -= instantiate(arc.label, sigma);
    for (const auto& arc : tr.outputs) next[arc.place] += instantiate(arc.label, sigma);
    return next;
}

inline Marking fire(const NuNet& net, const Marking& m, const Firing& f) { return fire(net, m, f.transition, f.mode); }

/// Fires a whole sequence; throws ModeError at the first disabled step.
inline Marking replay(const NuNet& net, Marking m, const FiringSequence& seq) {
    for (const auto& f : seq) m = fire(net, m, f);
    return m;
}

/// First name handed out for fresh variables: above every name of m, never •.
inline NameId first_fresh_name(const Marking& m) {
    auto top = m.max_name();
    return NameId{top ? top->id + 1 : 1};
}

/// All enabled (t, sigma) pairs of m. Plain variables range injectively
/// over Id(m); fresh variables receive the smallest ids above Id(m), in
/// variable order, so each fresh choice is represented once.
inline std::vector<Firing> enabled_firings(const NuNet& net, const Marking& m) {
    std::vector<Firing> out;
    const auto ids = m.names();
    const NameId fresh_base = first_fresh_name(m);
    for (TransitionId t = 0; t < net.num_transitions(); ++t) {
        const auto& tr = net.transition(t);
        Mode base;
        std::vector<VariableId> plain;
        std::uint32_t next_fresh = fresh_base.id;
        for (auto v : tr.vars) {
            if (net.is_fresh(v))
                base.bind(v, NameId{next_fresh++});
            else
                plain.push_back(v);
        }
        // Candidate names per plain variable: enough copies on each input arc.
        std::vector<std::vector<NameId>> candidates(plain.size());
        for (std::size_t i = 0; i < plain.size(); ++i)
            for (auto a : ids) {
                bool ok = true;
                for (const auto& arc : tr.inputs) {
                    auto need = arc.label.count(plain[i]);
                    if (need && m[arc.place].count(a) < need) {
                        ok = false;
                        break;
                    }
                }
                if (ok) candidates[i].push_back(a);
            }

        std::vector<NameId> chosen;
        std::function<void(std::size_t, Mode&)> assign = [&](std::size_t i, Mode& sigma) {
            if (i == plain.size()) {
                if (is_enabled(net, m, t, sigma)) out.push_back(Firing{t, sigma});
                return;
            }
            for (auto a : candidates[i]) {
                if (std::find(chosen.begin(), chosen.end(), a) != chosen.end()) continue;
                chosen.push_back(a);
                sigma.bind(plain[i], a);
                assign(i + 1, sigma);
                chosen.pop_back();
            }
        };
        Mode sigma = base;
        assign(0, sigma);
    }
    return out;
}

/// One-step successors modulo renaming, sorted and duplicate-free.
inline std::vector<CanonicalMarking> successors(const NuNet& net, const Marking& m) {
    std::set<CanonicalMarking> seen;
    for (const auto& f : enabled_firings(net, m)) seen.insert(canonicalize(fire(net, m, f)));
    return {seen.begin(), seen.end()};
}

} // namespace nupn
