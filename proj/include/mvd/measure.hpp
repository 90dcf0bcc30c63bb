#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mvd/table.hpp"

namespace mvd {

class DecisionTree;

using Weight = std::uint64_t;
using WeightMap = std::map<std::string, Weight, std::less<>>;

enum class MeasureKind {
    depth,         // word length
    weighted_sum,  // sum of attribute weights
    weighted_max,  // max of attribute weights; partially bounded only
};

std::string_view to_string(MeasureKind kind);
// Accepts "depth", "wsum", "wmax". Throws InvalidArgument.
MeasureKind parse_measure_kind(std::string_view s);

// A complexity measure that factors through positive per-attribute weights.
class Measure {
public:
    static Measure depth();
    // `fallback`, when set, is the weight of every attribute missing from `weights`.
    static Measure weighted_sum(WeightMap weights, std::optional<Weight> fallback = std::nullopt);
    static Measure weighted_max(WeightMap weights, std::optional<Weight> fallback = std::nullopt);

    MeasureKind kind() const { return kind_; }
    // Satisfies psi(word) >= |word|.
    bool bounded() const { return kind_ != MeasureKind::weighted_max; }
    // Throws MeasureError for the weighted-max kind.
    void require_bounded() const;

    const WeightMap& weights() const { return weights_; }
    std::optional<Weight> fallback() const { return fallback_; }

    // Throws MeasureError when no weight is known for the attribute.
    Weight weight(std::string_view attribute) const;
    Weight combine(Weight acc, Weight w) const { return kind_ == MeasureKind::weighted_max ? std::max(acc, w) : acc + w; }

    Weight eval_word(const Assignment& a) const;
    Weight eval_attr_set(std::span<const std::string> attributes) const;
    Weight eval_tree(const DecisionTree& g) const;
    // Largest weight of a column; 0 for a table without rows.
    Weight m_psi(const DecisionTable& t) const;
    // Weight of every column in table order.
    std::vector<Weight> column_weights(const DecisionTable& t) const;

    std::string describe() const;

private:
    Measure(MeasureKind kind, WeightMap weights, std::optional<Weight> fallback);

    MeasureKind kind_;
    WeightMap weights_;
    std::optional<Weight> fallback_;
};

}  // namespace mvd
