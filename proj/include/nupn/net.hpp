#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nupn/multiset.hpp"

namespace nupn {

using PlaceId = std::uint32_t;
using TransitionId = std::uint32_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for ill-formed modes and for firing a disabled (t, mode) pair.
struct ModeError : Error {
    using Error::Error;
};

/// A pure name. Only equality matters; the integer is an identity.
struct NameId {
    std::uint32_t id = 0;
    friend bool operator==(NameId, NameId) = default;
    friend auto operator<=>(NameId, NameId) = default;
};

/// The ordinary token "•".
inline constexpr NameId kDot{0};

enum class VarKind : std::uint8_t { plain, fresh };

struct VariableId {
    std::uint32_t id = 0;
    friend bool operator==(VariableId, VariableId) = default;
    friend auto operator<=>(VariableId, VariableId) = default;
};

using ArcLabel = Multiset<VariableId>;
using NameMultiset = Multiset<NameId>;

struct Arc {
    PlaceId place = 0;
    ArcLabel label;
    friend bool operator==(const Arc&, const Arc&) = default;
};

struct Transition {
    std::string name;
    std::vector<Arc> inputs;  // sorted by place
    std::vector<Arc> outputs; // sorted by place
    std::vector<VariableId> vars; // Var(t), sorted, duplicate-free
    friend bool operator==(const Transition&, const Transition&) = default;
};

struct Variable {
    std::string name;
    VarKind kind = VarKind::plain;
    friend bool operator==(const Variable&, const Variable&) = default;
};

/// A Petri net with name-carrying tokens. Arc labels are multisets of
/// variables; fresh variables create names absent from the marking.
///
/// The class only enforces referential integrity (arcs point at existing
/// places, transitions and variables). The ν-PN structural conditions are
/// reported by validate_net so that ill-formed inputs can be diagnosed.
class NuNet {
public:
    PlaceId add_place(std::string name) {
        places_.push_back(std::move(name));
        return static_cast<PlaceId>(places_.size() - 1);
    }

    TransitionId add_transition(std::string name) {
        transitions_.push_back(Transition{std::move(name), {}, {}, {}});
        return static_cast<TransitionId>(transitions_.size() - 1);
    }

    /// Returns the variable with this name, creating it if needed. A name
    /// already registered with a different kind is an error.
    VariableId variable(const std::string& name, VarKind kind) {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].name == name) {
                if (vars_[i].kind != kind) throw Error("variable '" + name + "' used with two kinds");
                return VariableId{static_cast<std::uint32_t>(i)};
            }
        }
        vars_.push_back(Variable{name, kind});
        return VariableId{static_cast<std::uint32_t>(vars_.size() - 1)};
    }

    /// Adds `label` to the arc p -> t (accumulating with any existing label).
    void add_input(PlaceId p, TransitionId t, const ArcLabel& label) {
        add_arc(checked(t).inputs, p, label);
        refresh_vars(t);
    }

    /// Adds `label` to the arc t -> p.
    void add_output(TransitionId t, PlaceId p, const ArcLabel& label) {
        add_arc(checked(t).outputs, p, label);
        refresh_vars(t);
    }

    [[nodiscard]] std::size_t num_places() const { return places_.size(); }
    [[nodiscard]] std::size_t num_transitions() const { return transitions_.size(); }
    [[nodiscard]] std::size_t num_variables() const { return vars_.size(); }

    [[nodiscard]] const std::string& place_name(PlaceId p) const { return places_.at(p); }
    [[nodiscard]] const std::vector<std::string>& places() const { return places_; }
    [[nodiscard]] const std::vector<Transition>& transitions() const { return transitions_; }
    [[nodiscard]] const Transition& transition(TransitionId t) const { return transitions_.at(t); }
    [[nodiscard]] const Variable& var(VariableId v) const { return vars_.at(v.id); }
    [[nodiscard]] bool is_fresh(VariableId v) const { return vars_.at(v.id).kind == VarKind::fresh; }

    [[nodiscard]] std::optional<PlaceId> find_place(const std::string& name) const {
        auto it = std::find(places_.begin(), places_.end(), name);
        if (it == places_.end()) return std::nullopt;
        return static_cast<PlaceId>(it - places_.begin());
    }
    [[nodiscard]] std::optional<TransitionId> find_transition(const std::string& name) const {
        for (std::size_t i = 0; i < transitions_.size(); ++i)
            if (transitions_[i].name == name) return static_cast<TransitionId>(i);
        return std::nullopt;
    }
    [[nodiscard]] std::optional<VariableId> find_variable(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return VariableId{static_cast<std::uint32_t>(i)};
        return std::nullopt;
    }

    /// Label of p -> t, empty when there is no arc.
    [[nodiscard]] const ArcLabel& input_label(PlaceId p, TransitionId t) const {
        return find_label(transition(t).inputs, p);
    }
    [[nodiscard]] const ArcLabel& output_label(TransitionId t, PlaceId p) const {
        return find_label(transition(t).outputs, p);
    }

    friend bool operator==(const NuNet&, const NuNet&) = default;

private:
    Transition& checked(TransitionId t) {
        if (t >= transitions_.size()) throw Error("unknown transition");
        return transitions_[t];
    }

    void add_arc(std::vector<Arc>& arcs, PlaceId p, const ArcLabel& label) {
        if (p >= places_.size()) throw Error("unknown place");
        for (const auto& [v, n] : label)
            if (v.id >= vars_.size()) throw Error("unknown variable");
        auto it = std::lower_bound(arcs.begin(), arcs.end(), p,
                                   [](const Arc& a, PlaceId k) { return a.place < k; });
        if (it != arcs.end() && it->place == p)
            it->label += label;
        else
            arcs.insert(it, Arc{p, label});
    }

    void refresh_vars(TransitionId t) {
        auto& tr = transitions_[t];
        tr.vars.clear();
        for (const auto* arcs : {&tr.inputs, &tr.outputs})
            for (const auto& a : *arcs)
                for (const auto& [v, n] : a.label) tr.vars.push_back(v);
        std::sort(tr.vars.begin(), tr.vars.end());
        tr.vars.erase(std::unique(tr.vars.begin(), tr.vars.end()), tr.vars.end());
    }

    static const ArcLabel& find_label(const std::vector<Arc>& arcs, PlaceId p) {
        static const ArcLabel empty;
        for (const auto& a : arcs)
            if (a.place == p) return a.label;
        return empty;
    }

    std::vector<std::string> places_;
    std::vector<Transition> transitions_;
    std::vector<Variable> vars_;
};

/// A marking assigns a finite multiset of names to every place.
class Marking {
public:
    Marking() = default;
    explicit Marking(std::size_t num_places) : content_(num_places) {}
    explicit Marking(std::vector<NameMultiset> content) : content_(std::move(content)) {}

    [[nodiscard]] std::size_t num_places() const { return content_.size(); }
    [[nodiscard]] NameMultiset& operator[](PlaceId p) { return content_.at(p); }
    [[nodiscard]] const NameMultiset& operator[](PlaceId p) const { return content_.at(p); }
    [[nodiscard]] const std::vector<NameMultiset>& places() const { return content_; }

    /// Id(M): names with a positive count somewhere, sorted.
    [[nodiscard]] std::vector<NameId> names() const {
        std::vector<NameId> out;
        for (const auto& ms : content_)
            for (const auto& [a, n] : ms) out.push_back(a);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    [[nodiscard]] bool contains_name(NameId a) const {
        return std::any_of(content_.begin(), content_.end(), [a](const auto& ms) { return ms.contains(a); });
    }

    /// Largest id in Id(M), or nullopt for the empty marking.
    [[nodiscard]] std::optional<NameId> max_name() const {
        std::optional<NameId> best;
        for (const auto& ms : content_)
            if (!ms.empty()) {
                auto last = std::prev(ms.end())->first;
                if (!best || *best < last) best = last;
            }
        return best;
    }

    [[nodiscard]] bool empty() const {
        return std::all_of(content_.begin(), content_.end(), [](const auto& ms) { return ms.empty(); });
    }

    [[nodiscard]] std::uint64_t total() const {
        std::uint64_t n = 0;
        for (const auto& ms : content_) n += ms.size();
        return n;
    }

    /// Pointwise multiset inclusion (the order ⊑ without renaming).
    [[nodiscard]] bool included_in(const Marking& other) const {
        if (other.content_.size() != content_.size()) return false;
        for (std::size_t p = 0; p < content_.size(); ++p)
            if (!content_[p].included_in(other.content_[p])) return false;
        return true;
    }

    [[nodiscard]] Marking join(const Marking& other) const {
        Marking r(content_.size());
        for (std::size_t p = 0; p < content_.size(); ++p) r.content_[p] = content_[p].join(other.content_.at(p));
        return r;
    }

    friend bool operator==(const Marking&, const Marking&) = default;
    friend auto operator<=>(const Marking& a, const Marking& b) { return a.content_ <=> b.content_; }

private:
    std::vector<NameMultiset> content_;
};

/// Assignment of a transition's variables to names, sorted by variable.
class Mode {
public:
    Mode() = default;
    Mode(std::initializer_list<std::pair<VariableId, NameId>> bindings) {
        for (const auto& [v, a] : bindings) bind(v, a);
    }

    void bind(VariableId v, NameId a) {
        auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                                   [](const auto& b, VariableId k) { return b.first < k; });
        if (it != bindings_.end() && it->first == v)
            it->second = a;
        else
            bindings_.insert(it, {v, a});
    }

    [[nodiscard]] std::optional<NameId> find(VariableId v) const {
        auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                                   [](const auto& b, VariableId k) { return b.first < k; });
        if (it != bindings_.end() && it->first == v) return it->second;
        return std::nullopt;
    }

    [[nodiscard]] NameId at(VariableId v) const {
        auto a = find(v);
        if (!a) throw ModeError("mode does not bind variable");
        return *a;
    }

    [[nodiscard]] bool injective() const {
        std::vector<NameId> images;
        for (const auto& b : bindings_) images.push_back(b.second);
        std::sort(images.begin(), images.end());
        return std::adjacent_find(images.begin(), images.end()) == images.end();
    }

    [[nodiscard]] std::size_t size() const { return bindings_.size(); }
    [[nodiscard]] auto begin() const { return bindings_.begin(); }
    [[nodiscard]] auto end() const { return bindings_.end(); }

    friend bool operator==(const Mode&, const Mode&) = default;
    friend auto operator<=>(const Mode& a, const Mode& b) { return a.bindings_ <=> b.bindings_; }

private:
    std::vector<std::pair<VariableId, NameId>> bindings_;
};

/// One step of a firing sequence.
struct Firing {
    TransitionId transition = 0;
    Mode mode;
    friend bool operator==(const Firing&, const Firing&) = default;
};

using FiringSequence = std::vector<Firing>;

struct Violation {
    TransitionId transition = 0;
    std::string message;
    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Checks the two structural conditions of a ν-PN for every transition:
/// no fresh variable on an input arc, and every plain output variable also
/// occurs on some input arc. Also reports place/transition name clashes.
inline std::vector<Violation> validate_net(const NuNet& net) {
    std::vector<Violation> out;
    for (TransitionId t = 0; t < net.num_transitions(); ++t) {
        const auto& tr = net.transition(t);
        if (net.find_place(tr.name))
            out.push_back({t, "transition '" + tr.name + "' shares its name with a place"});
        std::vector<VariableId> pre;
        for (const auto& arc : tr.inputs)
            for (const auto& [v, n] : arc.label) {
                if (net.is_fresh(v))
                    out.push_back({t, "transition '" + tr.name + "': fresh variable '" + net.var(v).name +
                                          "' on input arc from '" + net.place_name(arc.place) + "'"});
                pre.push_back(v);
            }
        std::sort(pre.begin(), pre.end());
        for (const auto& arc : tr.outputs)
            for (const auto& [v, n] : arc.label)
                if (!net.is_fresh(v) && !std::binary_search(pre.begin(), pre.end(), v))
                    out.push_back({t, "transition '" + tr.name + "': output variable '" + net.var(v).name +
                                          "' to '" + net.place_name(arc.place) + "' does not occur on any input arc"});
    }
    return out;
}

/// Normal nets: every arc label has at most one variable, and all arcs that
/// carry a fresh variable carry the same one.
inline bool is_normal(const NuNet& net) {
    std::optional<VariableId> nu;
    for (const auto& tr : net.transitions())
        for (const auto* arcs : {&tr.inputs, &tr.outputs})
            for (const auto& arc : *arcs) {
                if (arc.label.size() > 1) return false;
                for (const auto& [v, n] : arc.label) {
                    if (!net.is_fresh(v)) continue;
                    if (nu && *nu != v) return false;
                    nu = v;
                }
            }
    return true;
}

} // namespace nupn
