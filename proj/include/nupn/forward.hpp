#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "nupn/backward.hpp"
#include "nupn/canonical.hpp"
#include "nupn/firing.hpp"
#include "nupn/net.hpp"

namespace nupn {

enum class Verdict {
    terminating,
    non_terminating,
    bounded,
    unbounded,
    reachable,
    not_reachable,
    not_applicable,
    resource_exhausted,
};

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::terminating: return "terminating";
    case Verdict::non_terminating: return "non-terminating";
    case Verdict::bounded: return "bounded";
    case Verdict::unbounded: return "unbounded";
    case Verdict::reachable: return "reachable";
    case Verdict::not_reachable: return "not-reachable";
    case Verdict::not_applicable: return "not-applicable";
    case Verdict::resource_exhausted: return "resource-exhausted";
    }
    return "?";
}

struct AnalysisStats {
    std::size_t nodes = 0;          // distinct canonical markings discovered
    std::size_t nodes_expanded = 0; // of which successors were computed
    std::size_t max_width = 0;      // max |Id(M)|
    std::uint32_t max_depth = 0;    // max M(p)(a)
};

struct AnalysisResult {
    Verdict verdict = Verdict::resource_exhausted;
    FiringSequence witness;
    /// For pumping witnesses: the steps from this index on lead from a
    /// marking to one that dominates it.
    std::optional<std::size_t> pump_start;
    std::optional<CanonicalMarking> pump_from;
    std::optional<CanonicalMarking> pump_to;
    AnalysisStats stats;
};

namespace detail {

enum class TreeMode { termination, boundedness, closure };

/// Breadth-first exploration over canonical markings. Every canonical form
/// is expanded once; the BFS spanning tree supplies the ancestor paths on
/// which subsumption (termination) or strict domination (boundedness) is
/// looked for.
class Explorer {
public:
    struct Node {
        Marking marking; // concrete marking reached by replaying the tree path
        CanonicalMarking canon;
        std::optional<std::size_t> parent;
        Firing via;
        std::size_t depth = 0;
    };
    struct Edge {
        std::size_t to;
        Firing firing; // relative to the source node's marking
    };

    enum class Outcome { complete, pumped, exhausted };

    Explorer(const NuNet& net, const Marking& m0, TreeMode mode, const Limits& limits, std::size_t max_expansions)
        : net_(net), mode_(mode), limits_(limits), max_expansions_(max_expansions) {
        add(m0, std::nullopt, {});
    }

    Outcome run() {
        while (!queue_.empty()) {
            if (stats_.nodes_expanded >= max_expansions_) return Outcome::exhausted;
            auto i = queue_.front();
            queue_.pop_front();
            ++stats_.nodes_expanded;
            for (auto& f : enabled_firings(net_, nodes_[i].marking)) {
                auto child = fire(net_, nodes_[i].marking, f);
                auto canon = canonicalize(child);
                if (auto seen = index_.find(canon); seen != index_.end()) {
                    if (mode_ == TreeMode::termination) {
                        if (is_on_path(seen->second, i)) return pump(i, f, seen->second, child);
                        edges_[i].push_back(Edge{seen->second, f});
                    }
                    continue;
                }
                if (mode_ != TreeMode::closure) {
                    for (auto a = std::optional<std::size_t>(i); a; a = nodes_[*a].parent) {
                        bool hit = mode_ == TreeMode::termination ? embeds(nodes_[*a].canon, canon)
                                                                  : strictly_embeds(nodes_[*a].canon, canon);
                        if (hit) return pump(i, f, *a, child);
                    }
                }
                if (nodes_.size() >= limits_.max_nodes) return Outcome::exhausted;
                auto j = add(std::move(child), i, f);
                if (mode_ == TreeMode::termination) edges_[i].push_back(Edge{j, f});
            }
        }
        return Outcome::complete;
    }

    /// Path of firings from m0 to node i.
    [[nodiscard]] FiringSequence path_to(std::size_t i) const {
        FiringSequence seq;
        for (auto k = std::optional<std::size_t>(i); nodes_[*k].parent; k = nodes_[*k].parent)
            seq.push_back(nodes_[*k].via);
        std::reverse(seq.begin(), seq.end());
        return seq;
    }

    /// Searches the quotient graph for a cycle reachable from the root and
    /// returns a run that goes once around it.
    [[nodiscard]] std::optional<FiringSequence> cycle_witness(std::size_t& pump_start) const {
        std::vector<int> color(nodes_.size(), 0);
        std::vector<std::pair<std::size_t, std::size_t>> stack; // node, next edge
        std::vector<std::size_t> edge_taken(nodes_.size(), 0);
        stack.emplace_back(0, 0);
        color[0] = 1;
        while (!stack.empty()) {
            auto& [u, k] = stack.back();
            if (k == edges_[u].size()) {
                color[u] = 2;
                stack.pop_back();
                continue;
            }
            auto e = k++;
            auto v = edges_[u][e].to;
            edge_taken[u] = e;
            if (color[v] == 1) {
                // Cycle v -> ... -> u -> v along the DFS stack.
                std::vector<std::size_t> cycle;
                bool on = false;
                for (const auto& [w, kk] : stack) {
                    if (w == v) on = true;
                    if (on) cycle.push_back(w);
                }
                return realize_cycle(v, cycle, edge_taken, pump_start);
            }
            if (color[v] == 0) {
                color[v] = 1;
                stack.emplace_back(v, 0);
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }
    [[nodiscard]] const AnalysisStats& stats() const { return stats_; }
    [[nodiscard]] std::size_t pump_node() const { return pump_node_; }
    [[nodiscard]] const FiringSequence& pump_witness() const { return pump_witness_; }
    [[nodiscard]] const CanonicalMarking& pump_target() const { return pump_target_; }

private:
    std::size_t add(Marking m, std::optional<std::size_t> parent, Firing via) {
        auto canon = canonicalize(m);
        stats_.max_width = std::max(stats_.max_width, canon.width());
        stats_.max_depth = std::max(stats_.max_depth, depth(canon));
        auto j = nodes_.size();
        index_.emplace(canon, j);
        nodes_.push_back(Node{std::move(m), std::move(canon), parent, std::move(via),
                              parent ? nodes_[*parent].depth + 1 : 0});
        edges_.emplace_back();
        queue_.push_back(j);
        ++stats_.nodes;
        return j;
    }

    [[nodiscard]] bool is_on_path(std::size_t ancestor, std::size_t i) const {
        for (auto a = std::optional<std::size_t>(i); a; a = nodes_[*a].parent)
            if (*a == ancestor) return true;
        return false;
    }

    Outcome pump(std::size_t parent, const Firing& f, std::size_t ancestor, const Marking& child) {
        pump_node_ = ancestor;
        pump_witness_ = path_to(parent);
        pump_witness_.push_back(f);
        pump_target_ = canonicalize(child);
        return Outcome::pumped;
    }

    FiringSequence realize_cycle(std::size_t v, const std::vector<std::size_t>& cycle,
                                 const std::vector<std::size_t>& edge_taken, std::size_t& pump_start) const {
        FiringSequence seq = path_to(v);
        pump_start = seq.size();
        Marking cur = nodes_[v].marking;
        for (auto u : cycle) {
            // cur ≡_α nodes_[u].marking; move the stored edge onto cur.
            auto iota = *leq_alpha(nodes_[u].marking, cur);
            auto step = transport(net_, edges_[u][edge_taken[u]].firing, iota, cur);
            cur = fire(net_, cur, step);
            seq.push_back(std::move(step));
        }
        return seq;
    }

    const NuNet& net_;
    TreeMode mode_;
    Limits limits_;
    std::size_t max_expansions_;
    std::vector<Node> nodes_;
    std::vector<std::vector<Edge>> edges_;
    std::map<CanonicalMarking, std::size_t> index_;
    std::deque<std::size_t> queue_;
    AnalysisStats stats_;
    std::size_t pump_node_ = 0;
    FiringSequence pump_witness_;
    CanonicalMarking pump_target_;
};

inline void check_replay(const NuNet& net, const Marking& m0, const FiringSequence& seq) {
    replay(net, m0, seq); // throws ModeError on an invalid witness
}

inline AnalysisResult pumped_result(const Explorer& ex, Verdict v, const NuNet& net, const Marking& m0) {
    AnalysisResult r;
    r.verdict = v;
    r.witness = ex.pump_witness();
    r.pump_start = ex.nodes()[ex.pump_node()].depth;
    r.pump_from = ex.nodes()[ex.pump_node()].canon;
    r.pump_to = ex.pump_target();
    r.stats = ex.stats();
    check_replay(net, m0, r.witness);
    return r;
}

} // namespace detail

/// Decides termination. A run from a marking to one that ⊑_α-dominates it
/// can be repeated forever; a finite exploration without such a run and
/// without cycles proves termination.
inline AnalysisResult terminates(const NuNet& net, const Marking& m0, const Limits& limits = {}) {
    detail::Explorer ex(net, m0, detail::TreeMode::termination, limits, limits.max_nodes);
    auto outcome = ex.run();
    if (outcome == detail::Explorer::Outcome::pumped)
        return detail::pumped_result(ex, Verdict::non_terminating, net, m0);
    AnalysisResult r;
    r.stats = ex.stats();
    if (outcome == detail::Explorer::Outcome::exhausted) {
        r.verdict = Verdict::resource_exhausted;
        return r;
    }
    std::size_t start = 0;
    if (auto cyc = ex.cycle_witness(start)) {
        r.verdict = Verdict::non_terminating;
        r.witness = std::move(*cyc);
        r.pump_start = start;
        detail::check_replay(net, m0, r.witness);
        return r;
    }
    r.verdict = Verdict::terminating;
    return r;
}

/// Decides boundedness (finiteness of the reachable markings up to
/// renaming). A run from M to some M' with M ⊏_α M' pumps forever by strict
/// monotonicity.
inline AnalysisResult bounded(const NuNet& net, const Marking& m0, const Limits& limits = {}) {
    detail::Explorer ex(net, m0, detail::TreeMode::boundedness, limits, limits.max_nodes);
    auto outcome = ex.run();
    if (outcome == detail::Explorer::Outcome::pumped)
        return detail::pumped_result(ex, Verdict::unbounded, net, m0);
    AnalysisResult r;
    r.stats = ex.stats();
    r.verdict = outcome == detail::Explorer::Outcome::complete ? Verdict::bounded : Verdict::resource_exhausted;
    return r;
}

struct ReachSet {
    std::vector<CanonicalMarking> markings; // sorted
    bool complete = false;
};

/// Exhaustive closure under successors, capped at limits.max_nodes.
inline ReachSet reach_set(const NuNet& net, const Marking& m0, const Limits& limits = {}) {
    detail::Explorer ex(net, m0, detail::TreeMode::closure, limits, limits.max_nodes);
    ReachSet rs;
    rs.complete = ex.run() == detail::Explorer::Outcome::complete;
    for (const auto& n : ex.nodes()) rs.markings.push_back(n.canon);
    std::sort(rs.markings.begin(), rs.markings.end());
    return rs;
}

/// Reachability up to renaming, answered only for nets proven bounded.
inline AnalysisResult reachable_alpha(const NuNet& net, const Marking& m0, const Marking& mf,
                                      const Limits& limits = {}) {
    auto b = bounded(net, m0, limits);
    AnalysisResult r;
    r.stats = b.stats;
    if (b.verdict != Verdict::bounded) {
        r.verdict = b.verdict == Verdict::unbounded ? Verdict::not_applicable : Verdict::resource_exhausted;
        return r;
    }
    detail::Explorer ex(net, m0, detail::TreeMode::closure, limits, limits.max_nodes);
    ex.run();
    const auto target = canonicalize(mf);
    r.verdict = Verdict::not_reachable;
    for (std::size_t i = 0; i < ex.nodes().size(); ++i)
        if (ex.nodes()[i].canon == target) {
            r.verdict = Verdict::reachable;
            r.witness = ex.path_to(i);
            detail::check_replay(net, m0, r.witness);
            break;
        }
    return r;
}

struct Measurement {
    std::size_t width = 0;
    std::uint32_t depth = 0;
    bool exact = false; // the whole reachable set was explored
    std::size_t nodes = 0;
};

/// Largest |Id(M)| and M(p)(a) over the markings discovered by a
/// breadth-first exploration that expands at most `max_expansions` states.
inline Measurement measure(const NuNet& net, const Marking& m0, std::size_t max_expansions,
                           const Limits& limits = {}) {
    detail::Explorer ex(net, m0, detail::TreeMode::closure, limits, max_expansions);
    Measurement out;
    out.exact = ex.run() == detail::Explorer::Outcome::complete;
    out.width = ex.stats().max_width;
    out.depth = ex.stats().max_depth;
    out.nodes = ex.stats().nodes;
    return out;
}

} // namespace nupn
