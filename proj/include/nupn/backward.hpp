#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nupn/canonical.hpp"
#include "nupn/firing.hpp"
#include "nupn/net.hpp"

namespace nupn {

/// Budgets shared by the decision procedures. Exhausting one yields a
/// resource-exhausted verdict, never a negative one.
struct Limits {
    std::size_t max_basis = 100'000;
    std::size_t max_iterations = 1'000'000;
    std::size_t max_nodes = 100'000;
};

enum class CoverVerdict { coverable, not_coverable, resource_exhausted };

inline const char* to_string(CoverVerdict v) {
    switch (v) {
    case CoverVerdict::coverable: return "coverable";
    case CoverVerdict::not_coverable: return "not-coverable";
    case CoverVerdict::resource_exhausted: return "resource-exhausted";
    }
    return "?";
}

struct CoverResult {
    CoverVerdict verdict = CoverVerdict::not_coverable;
    std::optional<FiringSequence> witness; // present iff coverable
    std::size_t basis_size = 0;
    std::size_t iterations = 0;
};

struct PredBasisEntry {
    Marking marking;    // a minimal predecessor
    Firing via;         // fire(marking, via) covers the query marking
    Marking target_min; // min_{t(sigma)} of the query marking
};

/// sigma(F(t,-)) as a marking.
inline Marking post_effect(const NuNet& net, TransitionId t, const Mode& sigma) {
    Marking out(net.num_places());
    for (const auto& arc : net.transition(t).outputs) out[arc.place] += instantiate(arc.label, sigma);
    return out;
}

/// Least marking above m from which a firing of t(sigma) can land:
/// m joined placewise with the instantiated post-effect.
inline Marking min_t_sigma(const NuNet& net, const Marking& m, TransitionId t, const Mode& sigma) {
    check_mode(net, t, sigma);
    return m.join(post_effect(net, t, sigma));
}

/// The predecessor of min_t_sigma(m) under t(sigma), or nullopt when a
/// fresh variable's name would already be present in it (then t(sigma) is
/// not enabled there and no predecessor exists).
inline std::optional<Marking> pred_of_min(const NuNet& net, const Marking& m, TransitionId t, const Mode& sigma) {
    Marking pred = min_t_sigma(net, m, t, sigma);
    const auto& tr = net.transition(t);
    for (const auto& arc : tr.outputs) pred[arc.place] -= instantiate(arc.label, sigma);
    for (const auto& arc : tr.inputs) pred[arc.place] += instantiate(arc.label, sigma);
    for (const auto& [v, a] : sigma)
        if (net.is_fresh(v) && pred.contains_name(a)) return std::nullopt;
    return pred;
}

namespace detail {

/// Enumerates injective modes Var(t) -> Id(m) ∪ O with |O| = |Var(t)|.
/// Pool names are introduced in order, so modes that differ only by a
/// permutation of pool names are produced once.
inline void for_each_pred_mode(const NuNet& net, const Marking& m, TransitionId t,
                               const std::function<void(const Mode&)>& visit) {
    const auto& vars = net.transition(t).vars;
    const auto ids = m.names();
    const auto pool_base = first_fresh_name(m).id;
    std::vector<bool> taken(ids.size(), false);
    Mode sigma;
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t pool_used) {
        if (i == vars.size()) {
            visit(sigma);
            return;
        }
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (taken[k]) continue;
            taken[k] = true;
            sigma.bind(vars[i], ids[k]);
            rec(i + 1, pool_used);
            taken[k] = false;
        }
        sigma.bind(vars[i], NameId{pool_base + pool_used});
        rec(i + 1, pool_used + 1);
    };
    rec(0, 0);
}

} // namespace detail

/// Minimal predecessors of the upward closure of m under ⊑_α, one entry per
/// retained element, in deterministic order.
inline std::vector<PredBasisEntry> pred_basis(const NuNet& net, const Marking& m) {
    std::vector<PredBasisEntry> entries;
    std::vector<CanonicalMarking> canon;
    for (TransitionId t = 0; t < net.num_transitions(); ++t) {
        detail::for_each_pred_mode(net, m, t, [&](const Mode& sigma) {
            auto pred = pred_of_min(net, m, t, sigma);
            if (!pred) return;
            canon.push_back(canonicalize(*pred));
            entries.push_back(PredBasisEntry{std::move(*pred), Firing{t, sigma}, min_t_sigma(net, m, t, sigma)});
        });
    }
    std::vector<PredBasisEntry> out;
    for (auto i : minor_indices(canon)) out.push_back(std::move(entries[i]));
    return out;
}

/// Rewrites a firing valid at `source` for a marking `target` that
/// dominates it through the injection iota (source ⊑_iota target). Fresh
/// variables get names above Id(target). Returns the transported firing and
/// extends iota to the names created by the firing.
inline Firing transport(const NuNet& net, const Firing& f, NameMap& iota, const Marking& target) {
    Firing out{f.transition, {}};
    auto next = first_fresh_name(target).id;
    NameMap extra;
    for (const auto& [v, a] : f.mode) {
        if (net.is_fresh(v)) {
            NameId b{next++};
            out.mode.bind(v, b);
            extra.emplace_back(a, b);
        } else {
            out.mode.bind(v, image_of(iota, a));
        }
    }
    for (const auto& e : extra) {
        std::erase_if(iota, [&](const auto& x) { return x.first == e.first; });
        iota.push_back(e);
    }
    std::sort(iota.begin(), iota.end());
    return out;
}

/// Backward saturation from the target. The basis is kept minimal under
/// ⊑_α; the search stops as soon as a basis element is dominated by m0, or
/// at the fixpoint.
inline CoverResult coverable(const NuNet& net, const Marking& m0, const Marking& mf, const Limits& limits = {}) {
    struct Node {
        Marking marking;
        CanonicalMarking canon;
        std::optional<std::size_t> parent;
        Firing via;
    };
    if (m0.num_places() != net.num_places() || mf.num_places() != net.num_places())
        throw Error("marking does not match the net's places");

    const auto start = canonicalize(m0);
    std::vector<Node> nodes;
    std::vector<bool> active;
    std::deque<std::size_t> work;
    std::size_t active_count = 0;
    CoverResult result;

    auto build_witness = [&](std::size_t found) {
        auto iota = *leq_alpha(nodes[found].marking, m0);
        Marking cur = m0;
        FiringSequence seq;
        for (std::size_t k = found; nodes[k].parent; k = *nodes[k].parent) {
            auto step = transport(net, nodes[k].via, iota, cur);
            cur = fire(net, cur, step);
            seq.push_back(std::move(step));
        }
        if (!leq_alpha(mf, replay(net, m0, seq)))
            throw std::logic_error("coverability witness does not replay to a covering marking");
        return seq;
    };

    // Returns true when the new element is dominated by m0.
    auto insert = [&](Marking marking, std::optional<std::size_t> parent, Firing via) {
        auto canon = canonicalize(marking);
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (active[i] && embeds(nodes[i].canon, canon)) return false;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (active[i] && embeds(canon, nodes[i].canon)) {
                active[i] = false;
                --active_count;
            }
        bool hit = embeds(canon, start);
        nodes.push_back(Node{std::move(marking), std::move(canon), parent, std::move(via)});
        active.push_back(true);
        ++active_count;
        work.push_back(nodes.size() - 1);
        return hit;
    };

    auto finish = [&](CoverVerdict v) {
        result.verdict = v;
        result.basis_size = active_count;
        return result;
    };

    if (insert(mf, std::nullopt, {})) {
        result.witness = FiringSequence{};
        return finish(CoverVerdict::coverable);
    }
    while (!work.empty()) {
        auto i = work.front();
        work.pop_front();
        if (!active[i]) continue;
        if (result.iterations >= limits.max_iterations) return finish(CoverVerdict::resource_exhausted);
        ++result.iterations;
        for (auto& e : pred_basis(net, nodes[i].marking)) {
            if (insert(std::move(e.marking), i, std::move(e.via))) {
                result.witness = build_witness(nodes.size() - 1);
                return finish(CoverVerdict::coverable);
            }
            if (active_count > limits.max_basis) return finish(CoverVerdict::resource_exhausted);
        }
    }
    return finish(CoverVerdict::not_coverable);
}

/// Coverability where names shared by m0 and mf may not be renamed. Each
/// shared name r gets an isolated place holding just r, which pins it.
inline CoverResult restricted_coverable(const NuNet& net, const Marking& m0, const Marking& mf,
                                        const Limits& limits = {}) {
    const auto a = m0.names();
    const auto b = mf.names();
    std::vector<NameId> shared;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    if (shared.empty()) return coverable(net, m0, mf, limits);

    NuNet pinned = net;
    std::vector<PlaceId> pins;
    for (auto r : shared) pins.push_back(pinned.add_place("_pin" + std::to_string(r.id)));
    auto extend = [&](const Marking& m) {
        std::vector<NameMultiset> content = m.places();
        for (auto r : shared) content.push_back(NameMultiset{r});
        return Marking(std::move(content));
    };
    return coverable(pinned, extend(m0), extend(mf), limits);
}

} // namespace nupn
