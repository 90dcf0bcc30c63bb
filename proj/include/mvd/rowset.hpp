#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace mvd {

// Fixed-universe bitset over row indices. Used as the identity of a subtable.
class RowSet {
public:
    RowSet() = default;
    explicit RowSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

    static RowSet full(std::size_t universe) {
        RowSet s(universe);
        for (std::size_t i = 0; i < s.words_.size(); ++i) s.words_[i] = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t universe() const { return universe_; }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    bool any() const { return !none(); }

    bool is_subset_of(const RowSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const RowSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    RowSet& operator&=(const RowSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    RowSet& operator|=(const RowSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    // Set difference.
    RowSet& operator-=(const RowSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend RowSet operator&(RowSet a, const RowSet& b) { return a &= b; }
    friend RowSet operator|(RowSet a, const RowSet& b) { return a |= b; }
    friend RowSet operator-(RowSet a, const RowSet& b) { return a -= b; }

    bool operator==(const RowSet& o) const = default;

    // Calls f(i) for every member in ascending order.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                f(w * 64 + static_cast<std::size_t>(b));
                bits &= bits - 1;
            }
        }
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ universe_;
        for (auto w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

private:
    void trim() {
        if (universe_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct RowSetHash {
    std::size_t operator()(const RowSet& s) const { return s.hash(); }
};

}  // namespace mvd
