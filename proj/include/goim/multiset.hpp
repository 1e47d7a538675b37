#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "names.hpp"

namespace goim {

// Multiset of variable names, kept as a sorted association list so iteration
// order is deterministic everywhere (translations depend on this).
struct VarMultiset {
    std::vector<std::pair<VarName, uint32_t>> items; // sorted by name id, counts > 0

    VarMultiset() = default;

    static VarMultiset singleton(VarName x, uint32_t n = 1) {
        VarMultiset m;
        if (n > 0) m.items.push_back({x, n});
        return m;
    }

    uint32_t count(VarName x) const {
        auto it = std::lower_bound(items.begin(), items.end(), x,
                                   [](const auto& p, VarName v) { return p.first < v; });
        if (it != items.end() && it->first == x) return it->second;
        return 0;
    }

    bool contains(VarName x) const { return count(x) > 0; }
    bool empty() const { return items.empty(); }

    uint64_t total() const {
        uint64_t s = 0;
        for (auto& p : items) s += p.second;
        return s;
    }

    std::vector<VarName> support() const {
        std::vector<VarName> out;
        out.reserve(items.size());
        for (auto& p : items) out.push_back(p.first);
        return out;
    }

    void add(VarName x, uint32_t n = 1) {
        if (n == 0) return;
        auto it = std::lower_bound(items.begin(), items.end(), x,
                                   [](const auto& p, VarName v) { return p.first < v; });
        if (it != items.end() && it->first == x)
            it->second += n;
        else
            items.insert(it, {x, n});
    }

    // M \ x : removes all occurrences of x.
    VarMultiset remove_all(VarName x) const {
        VarMultiset out;
        out.items.reserve(items.size());
        for (auto& p : items)
            if (p.first != x) out.items.push_back(p);
        return out;
    }

    friend VarMultiset operator+(const VarMultiset& a, const VarMultiset& b) {
        VarMultiset out;
        out.items.reserve(a.items.size() + b.items.size());
        size_t i = 0, j = 0;
        while (i < a.items.size() && j < b.items.size()) {
            if (a.items[i].first < b.items[j].first)
                out.items.push_back(a.items[i++]);
            else if (b.items[j].first < a.items[i].first)
                out.items.push_back(b.items[j++]);
            else {
                out.items.push_back({a.items[i].first, a.items[i].second + b.items[j].second});
                i++, j++;
            }
        }
        while (i < a.items.size()) out.items.push_back(a.items[i++]);
        while (j < b.items.size()) out.items.push_back(b.items[j++]);
        return out;
    }

    // M - M' : truncated difference per element.
    friend VarMultiset operator-(const VarMultiset& a, const VarMultiset& b) {
        VarMultiset out;
        for (auto& p : a.items) {
            uint32_t cut = b.count(p.first);
            if (p.second > cut) out.items.push_back({p.first, p.second - cut});
        }
        return out;
    }

    friend bool operator==(const VarMultiset& a, const VarMultiset& b) {
        return a.items == b.items;
    }
    friend bool operator!=(const VarMultiset& a, const VarMultiset& b) { return !(a == b); }

    std::string str() const {
        std::string s = "[";
        bool first = true;
        for (auto& p : items) {
            for (uint32_t k = 0; k < p.second; k++) {
                if (!first) s += ",";
                s += label_of(p.first);
                first = false;
            }
        }
        s += "]";
        return s;
    }
};

} // namespace goim
