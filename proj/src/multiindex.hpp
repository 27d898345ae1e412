// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace jetg {

/// Exponent multi-index alpha = (a_1, ..., a_n), all entries >= 0.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
        for (int e : entries_)
            if (e < 0) throw DomainError("multi-index with negative entry");
    }
    static MultiIndex zeros(int n) { return MultiIndex(std::vector<int>(n, 0)); }
    static MultiIndex unit(int n, int i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        return MultiIndex(std::move(e));
    }

    int dim() const { return static_cast<int>(entries_.size()); }
    int order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
    int operator[](int i) const { return entries_[i]; }
    const std::vector<int>& entries() const { return entries_; }

    MultiIndex plus(const MultiIndex& other) const {
        std::vector<int> e(entries_);
        for (size_t i = 0; i < e.size(); ++i) e[i] += other.entries_[i];
        return MultiIndex(std::move(e));
    }
    /// Decrement at position i; precondition entries_[i] > 0.
    MultiIndex minus_unit(int i) const {
        std::vector<int> e(entries_);
        --e[i];
        return MultiIndex(std::move(e));
    }
    int first_nonzero() const {
        for (size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i] > 0) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }

    /// "1,0,2" — the JSON key form.
    std::string key() const {
        std::string s;
        for (size_t i = 0; i < entries_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(entries_[i]);
        }
        return s;
    }
    static MultiIndex from_key(const std::string& key, int expected_dim = -1) {
        std::vector<int> e;
        size_t pos = 0;
        while (pos <= key.size()) {
            const size_t comma = key.find(',', pos);
            const std::string tok = key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                e.push_back(std::stoi(tok));
            } catch (...) {
                throw ParseError("bad multi-index key: '" + key + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (expected_dim >= 0 && static_cast<int>(e.size()) != expected_dim)
            throw ParseError("multi-index key '" + key + "' has wrong dimension");
        return MultiIndex(std::move(e));
    }

private:
    std::vector<int> entries_;
};

/// Graded-lexicographic order: first by |alpha|, then lexicographic.
/// Pinned for deterministic iteration and reproducible serialization.
struct GradedLex {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        const int oa = a.order(), ob = b.order();
        if (oa != ob) return oa < ob;
        return a.entries() < b.entries();
    }
};

/// All alpha with dim n and lo <= |alpha| <= hi, in graded-lex order.
inline std::vector<MultiIndex> multi_indices(int n, int lo, int hi) {
    std::vector<MultiIndex> all;
    if (n == 0) return all;
    std::vector<int> cur(n, 0);
    std::vector<MultiIndex> level;
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n - 1) {
            cur[pos] = remaining;
            level.push_back(MultiIndex(cur));
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
        cur[pos] = 0;
    };
    for (int total = std::max(lo, 0); total <= hi; ++total) {
        level.clear();
        rec(rec, 0, total);
        std::sort(level.begin(), level.end(), [](const MultiIndex& a, const MultiIndex& b) {
            return a.entries() < b.entries();
        });
        for (auto& m : level) all.push_back(std::move(m));
    }
    return all;
}

} // namespace jetg
