#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nupn {

/// Finite multiset stored as a sorted vector of (element, multiplicity)
/// pairs. Multiplicities are always positive; removing the last copy of an
/// element erases its entry, so two multisets are equal iff their entry
/// sequences are equal.
template <typename T>
class Multiset {
public:
    using value_type = std::pair<T, std::uint32_t>;
    using const_iterator = typename std::vector<value_type>::const_iterator;

    Multiset() = default;
    Multiset(std::initializer_list<T> items) {
        for (const auto& x : items) add(x);
    }
    Multiset(std::initializer_list<value_type> entries) {
        for (const auto& [x, n] : entries) add(x, n);
    }

    void add(const T& x, std::uint32_t n = 1) {
        if (n == 0) return;
        auto it = lower(x);
        if (it != entries_.end() && it->first == x)
            it->second += n;
        else
            entries_.insert(it, {x, n});
    }

    /// Removes n copies of x; throws if fewer are present.
    void remove(const T& x, std::uint32_t n = 1) {
        if (n == 0) return;
        auto it = lower(x);
        if (it == entries_.end() || it->first != x || it->second < n)
            throw std::logic_error("multiset: removing absent element");
        it->second -= n;
        if (it->second == 0) entries_.erase(it);
    }

    [[nodiscard]] std::uint32_t count(const T& x) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                                   [](const value_type& e, const T& k) { return e.first < k; });
        return (it != entries_.end() && it->first == x) ? it->second : 0;
    }

    [[nodiscard]] bool contains(const T& x) const { return count(x) > 0; }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    /// Number of distinct elements.
    [[nodiscard]] std::size_t distinct() const { return entries_.size(); }
    /// Total cardinality, counting multiplicities.
    [[nodiscard]] std::uint64_t size() const {
        std::uint64_t n = 0;
        for (const auto& e : entries_) n += e.second;
        return n;
    }

    [[nodiscard]] const_iterator begin() const { return entries_.begin(); }
    [[nodiscard]] const_iterator end() const { return entries_.end(); }

    /// Multiset inclusion: every element occurs in `other` at least as often.
    [[nodiscard]] bool included_in(const Multiset& other) const {
        auto it = other.entries_.begin();
        for (const auto& [x, n] : entries_) {
            while (it != other.entries_.end() && it->first < x) ++it;
            if (it == other.entries_.end() || it->first != x || it->second < n) return false;
        }
        return true;
    }

    Multiset& operator+=(const Multiset& other) {
        for (const auto& [x, n] : other.entries_) add(x, n);
        return *this;
    }
    Multiset& operator-=(const Multiset& other) {
        for (const auto& [x, n] : other.entries_) remove(x, n);
        return *this;
    }

    /// Pointwise maximum of multiplicities.
    [[nodiscard]] Multiset join(const Multiset& other) const {
        Multiset r = *this;
        for (const auto& [x, n] : other.entries_) {
            auto c = r.count(x);
            if (n > c) r.add(x, n - c);
        }
        return r;
    }

    friend Multiset operator+(Multiset a, const Multiset& b) { return a += b; }
    friend Multiset operator-(Multiset a, const Multiset& b) { return a -= b; }

    friend bool operator==(const Multiset&, const Multiset&) = default;
    friend auto operator<=>(const Multiset& a, const Multiset& b) { return a.entries_ <=> b.entries_; }

private:
    typename std::vector<value_type>::iterator lower(const T& x) {
        return std::lower_bound(entries_.begin(), entries_.end(), x,
                                [](const value_type& e, const T& k) { return e.first < k; });
    }

    std::vector<value_type> entries_;
};

} // namespace nupn
