#pragma once

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace goim {

// Variable names are interned integers; the label is kept only for printing.
struct VarName {
    uint32_t id = 0;

    friend bool operator==(VarName a, VarName b) { return a.id == b.id; }
    friend bool operator!=(VarName a, VarName b) { return a.id != b.id; }
    friend bool operator<(VarName a, VarName b) { return a.id < b.id; }
};

namespace detail {

struct InternTable {
    std::vector<std::string> labels;
    std::unordered_map<std::string, uint32_t> by_label;
    std::mutex mu;

    static InternTable& instance() {
        static InternTable t;
        return t;
    }
};

} // namespace detail

inline VarName intern(const std::string& label) {
    auto& t = detail::InternTable::instance();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.by_label.find(label);
    if (it != t.by_label.end()) return VarName{it->second};
    uint32_t id = static_cast<uint32_t>(t.labels.size());
    t.labels.push_back(label);
    t.by_label.emplace(label, id);
    return VarName{id};
}

inline const std::string& label_of(VarName v) {
    auto& t = detail::InternTable::instance();
    std::lock_guard<std::mutex> lock(t.mu);
    if (v.id >= t.labels.size()) throw std::logic_error("label_of: unknown name id");
    return t.labels[v.id];
}

// Fresh-name source. A monotone counter makes every issued label unique for
// the lifetime of the supply; source identifiers cannot contain '~', so fresh
// labels never collide with parsed ones.
struct NameSupply {
    uint64_t counter = 0;

    explicit NameSupply(uint64_t start = 0) : counter(start) {}

    VarName fresh(const std::string& hint = "v") {
        std::string base = hint.empty() ? "v" : hint;
        // strip a previous freshness suffix so copies of copies stay short
        auto tilde = base.find('~');
        if (tilde != std::string::npos) base.resize(tilde);
        return intern(base + "~" + std::to_string(counter++));
    }

    uint64_t fresh_id() { return counter++; }
};

} // namespace goim

template <>
struct std::hash<goim::VarName> {
    size_t operator()(goim::VarName v) const noexcept { return std::hash<uint32_t>{}(v.id); }
};
