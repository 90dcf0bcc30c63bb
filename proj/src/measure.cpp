#include "mvd/measure.hpp"

#include <algorithm>
#include <sstream>

#include "mvd/errors.hpp"
#include "mvd/tree.hpp"

namespace mvd {

std::string_view to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::depth: return "depth";
        case MeasureKind::weighted_sum: return "wsum";
        case MeasureKind::weighted_max: return "wmax";
    }
    return "?";
}

MeasureKind parse_measure_kind(std::string_view s) {
    if (s == "depth" || s == "h") return MeasureKind::depth;
    if (s == "wsum" || s == "weighted-sum") return MeasureKind::weighted_sum;
    if (s == "wmax" || s == "weighted-max") return MeasureKind::weighted_max;
    throw InvalidArgument("unknown measure '" + std::string(s) + "' (expected depth, wsum or wmax)");
}

Measure::Measure(MeasureKind kind, WeightMap weights, std::optional<Weight> fallback)
    : kind_(kind), weights_(std::move(weights)), fallback_(fallback) {
    for (const auto& [name, w] : weights_)
        if (w == 0) throw MeasureError("weight of '" + name + "' must be at least 1");
    if (fallback_ && *fallback_ == 0) throw MeasureError("fallback weight must be at least 1");
}

Measure Measure::depth() { return Measure(MeasureKind::depth, {}, 1); }

Measure Measure::weighted_sum(WeightMap weights, std::optional<Weight> fallback) {
    return Measure(MeasureKind::weighted_sum, std::move(weights), fallback);
}

Measure Measure::weighted_max(WeightMap weights, std::optional<Weight> fallback) {
    return Measure(MeasureKind::weighted_max, std::move(weights), fallback);
}

void Measure::require_bounded() const {
    if (!bounded()) throw MeasureError("bounded measure required (weighted-max is only partially bounded)");
}

Weight Measure::weight(std::string_view attribute) const {
    if (kind_ == MeasureKind::depth) return 1;
    if (auto it = weights_.find(attribute); it != weights_.end()) return it->second;
    if (fallback_) return *fallback_;
    throw MeasureError("missing weight for attribute '" + std::string(attribute) + "'");
}

Weight Measure::eval_word(const Assignment& a) const {
    Weight acc = 0;
    for (const auto& l : a) acc = combine(acc, weight(l.attribute));
    return acc;
}

Weight Measure::eval_attr_set(std::span<const std::string> attributes) const {
    std::vector<std::string> unique(attributes.begin(), attributes.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    Weight acc = 0;
    for (const auto& a : unique) acc = combine(acc, weight(a));
    return acc;
}

Weight Measure::eval_tree(const DecisionTree& g) const {
    Weight best = 0;
    for (const auto& p : complete_paths(g)) best = std::max(best, eval_word(p.word.assignment));
    return best;
}

Weight Measure::m_psi(const DecisionTable& t) const {
    if (t.is_empty()) return 0;
    Weight best = 0;
    for (const auto& a : t.attributes()) best = std::max(best, weight(a));
    return best;
}

std::vector<Weight> Measure::column_weights(const DecisionTable& t) const {
    std::vector<Weight> out;
    out.reserve(t.columns());
    for (const auto& a : t.attributes()) out.push_back(weight(a));
    return out;
}

std::string Measure::describe() const {
    std::ostringstream os;
    os << to_string(kind_);
    if (kind_ != MeasureKind::depth) {
        os << '{';
        bool first = true;
        for (const auto& [name, w] : weights_) {
            os << (first ? "" : ",") << name << '=' << w;
            first = false;
        }
        if (fallback_) os << (first ? "" : ",") << "*=" << *fallback_;
        os << '}';
    }
    return os.str();
}

}  // namespace mvd
