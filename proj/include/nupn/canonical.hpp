#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nupn/net.hpp"

namespace nupn {

/// Per-place occurrence counts of a single name.
using NameProfile = std::vector<std::uint32_t>;

/// Multiset of name profiles: a marking modulo renaming of names.
///
/// Profiles are kept in descending lexicographic order of their count
/// vectors (place order of the net), so equal multisets have identical
/// representations.
struct CanonicalMarking {
    std::vector<NameProfile> profiles;

    [[nodiscard]] std::size_t width() const { return profiles.size(); }
    [[nodiscard]] bool empty() const { return profiles.empty(); }

    friend bool operator==(const CanonicalMarking&, const CanonicalMarking&) = default;
    friend auto operator<=>(const CanonicalMarking& a, const CanonicalMarking& b) {
        return a.profiles <=> b.profiles;
    }
};

/// Injective renaming witness, sorted by source name.
using NameMap = std::vector<std::pair<NameId, NameId>>;

namespace detail {

inline void sort_profiles(std::vector<NameProfile>& ps) {
    std::sort(ps.begin(), ps.end(), std::greater<>());
}

/// Name profiles of every name in Id(m), in increasing name order.
inline std::vector<std::pair<NameId, NameProfile>> named_profiles(const Marking& m) {
    std::map<NameId, NameProfile> by_name;
    for (PlaceId p = 0; p < m.num_places(); ++p)
        for (const auto& [a, n] : m[p]) {
            auto& prof = by_name[a];
            if (prof.empty()) prof.assign(m.num_places(), 0);
            prof[p] = n;
        }
    return {by_name.begin(), by_name.end()};
}

inline bool profile_leq(const NameProfile& a, const NameProfile& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

/// Kuhn's augmenting-path search for a left-perfect matching in the
/// compatibility graph {(i, j) : a_i <= b_j}.
class EmbeddingMatcher {
public:
    EmbeddingMatcher(std::span<const NameProfile> a, std::span<const NameProfile> b) : a_(a), b_(b) {}

    std::optional<std::vector<std::size_t>> run() {
        if (a_.size() > b_.size()) return std::nullopt;
        adj_.assign(a_.size(), {});
        for (std::size_t i = 0; i < a_.size(); ++i) {
            for (std::size_t j = 0; j < b_.size(); ++j)
                if (profile_leq(a_[i], b_[j])) adj_[i].push_back(j);
            if (adj_[i].empty()) return std::nullopt;
        }
        match_of_b_.assign(b_.size(), kNone);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            seen_.assign(b_.size(), false);
            if (!augment(i)) return std::nullopt;
        }
        std::vector<std::size_t> h(a_.size(), kNone);
        for (std::size_t j = 0; j < b_.size(); ++j)
            if (match_of_b_[j] != kNone) h[match_of_b_[j]] = j;
        return h;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    bool augment(std::size_t i) {
        for (auto j : adj_[i]) {
            if (seen_[j]) continue;
            seen_[j] = true;
            if (match_of_b_[j] == kNone || augment(match_of_b_[j])) {
                match_of_b_[j] = i;
                return true;
            }
        }
        return false;
    }

    std::span<const NameProfile> a_, b_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::size_t> match_of_b_;
    std::vector<bool> seen_;
};

} // namespace detail

inline CanonicalMarking canonicalize(const Marking& m) {
    CanonicalMarking c;
    for (auto& [a, prof] : detail::named_profiles(m)) c.profiles.push_back(std::move(prof));
    detail::sort_profiles(c.profiles);
    return c;
}

inline CanonicalMarking canonicalize(const NuNet& net, const Marking& m) {
    if (m.num_places() != net.num_places()) throw Error("marking does not match the net's places");
    return canonicalize(m);
}

/// Builds a canonical marking from an arbitrary list of profiles; all-zero
/// profiles are dropped.
inline CanonicalMarking make_canonical(std::vector<NameProfile> profiles) {
    std::erase_if(profiles, [](const NameProfile& p) {
        return std::all_of(p.begin(), p.end(), [](auto n) { return n == 0; });
    });
    detail::sort_profiles(profiles);
    return CanonicalMarking{std::move(profiles)};
}

/// A concrete marking with the given canonical form; profile i gets name i+1.
inline Marking representative(const CanonicalMarking& c, std::size_t num_places) {
    Marking m(num_places);
    for (std::size_t i = 0; i < c.profiles.size(); ++i)
        for (PlaceId p = 0; p < num_places; ++p)
            m[p].add(NameId{static_cast<std::uint32_t>(i + 1)}, c.profiles[i].at(p));
    return m;
}

/// Applies an injective renaming defined on Id(m).
inline Marking rename(const Marking& m, const std::function<NameId(NameId)>& iota) {
    Marking r(m.num_places());
    for (PlaceId p = 0; p < m.num_places(); ++p)
        for (const auto& [a, n] : m[p]) r[p].add(iota(a), n);
    return r;
}

/// Decides whether the multiset `a` embeds into `b`: an injective index map
/// h with a[i] <= b[h(i)] componentwise. Returns h when it exists.
inline std::optional<std::vector<std::size_t>> multiset_embed(std::span<const NameProfile> a,
                                                              std::span<const NameProfile> b) {
    return detail::EmbeddingMatcher(a, b).run();
}

/// a ⊑_α b on canonical forms.
inline bool embeds(const CanonicalMarking& a, const CanonicalMarking& b) {
    if (a.profiles.size() > b.profiles.size()) return false;
    if (a.profiles.empty()) return true;
    // Per-place totals must be dominated.
    const auto places = a.profiles.front().size();
    for (std::size_t p = 0; p < places; ++p) {
        std::uint64_t sa = 0, sb = 0;
        for (const auto& x : a.profiles) sa += x[p];
        for (const auto& x : b.profiles) sb += x[p];
        if (sa > sb) return false;
    }
    return multiset_embed(a.profiles, b.profiles).has_value();
}

/// a ⊏_α b: embeds one way only.
inline bool strictly_embeds(const CanonicalMarking& a, const CanonicalMarking& b) {
    return a != b && embeds(a, b);
}

inline bool alpha_equiv(const Marking& m1, const Marking& m2) { return canonicalize(m1) == canonicalize(m2); }

inline bool alpha_equiv(const NuNet& net, const Marking& m1, const Marking& m2) {
    return canonicalize(net, m1) == canonicalize(net, m2);
}

/// m1 ⊑_α m2 with a witness: an injection iota on Id(m1) such that
/// m1(p)(a) <= m2(p)(iota(a)) for every place p and name a.
inline std::optional<NameMap> leq_alpha(const Marking& m1, const Marking& m2) {
    if (m1.num_places() != m2.num_places()) throw Error("markings over different place sets");
    auto left = detail::named_profiles(m1);
    auto right = detail::named_profiles(m2);
    std::vector<NameProfile> a, b;
    for (const auto& e : left) a.push_back(e.second);
    for (const auto& e : right) b.push_back(e.second);
    auto h = multiset_embed(a, b);
    if (!h) return std::nullopt;
    NameMap iota;
    for (std::size_t i = 0; i < left.size(); ++i) iota.emplace_back(left[i].first, right[(*h)[i]].first);
    return iota;
}

inline std::optional<NameMap> leq_alpha(const NuNet& net, const Marking& m1, const Marking& m2) {
    if (m1.num_places() != net.num_places()) throw Error("marking does not match the net's places");
    return leq_alpha(m1, m2);
}

inline NameId image_of(const NameMap& iota, NameId a) {
    auto it = std::lower_bound(iota.begin(), iota.end(), a, [](const auto& e, NameId k) { return e.first < k; });
    if (it == iota.end() || it->first != a) throw Error("renaming undefined on name");
    return it->second;
}

/// Indices of a minor set of `items` under ⊑_α: no two retained elements are
/// comparable and every input dominates a retained one. Among equivalent
/// elements the first occurrence is kept.
inline std::vector<std::size_t> minor_indices(std::span<const CanonicalMarking> items) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < items.size(); ++i) {
        bool dominated = false;
        for (auto k : kept)
            if (embeds(items[k], items[i])) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        std::erase_if(kept, [&](std::size_t k) { return embeds(items[i], items[k]); });
        kept.push_back(i);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

inline std::vector<CanonicalMarking> minor_set(std::span<const CanonicalMarking> items) {
    std::vector<CanonicalMarking> out;
    for (auto i : minor_indices(items)) out.push_back(items[i]);
    return out;
}

/// Renders `{{p1:2},{p1:1,p2:1}}`: profiles in canonical order, zero counts
/// omitted, places in net order.
inline std::string to_string(const CanonicalMarking& c, const std::vector<std::string>& place_names) {
    std::string s = "{";
    for (std::size_t i = 0; i < c.profiles.size(); ++i) {
        if (i) s += ",";
        s += "{";
        bool first = true;
        for (std::size_t p = 0; p < c.profiles[i].size(); ++p) {
            if (c.profiles[i][p] == 0) continue;
            if (!first) s += ",";
            first = false;
            s += place_names.at(p) + ":" + std::to_string(c.profiles[i][p]);
        }
        s += "}";
    }
    return s + "}";
}

/// Largest multiplicity of a single name in a single place.
inline std::uint32_t depth(const CanonicalMarking& c) {
    std::uint32_t d = 0;
    for (const auto& prof : c.profiles)
        for (auto n : prof) d = std::max(d, n);
    return d;
}

} // namespace nupn
