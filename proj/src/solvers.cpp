#include "mvd/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <queue>
#include <unordered_map>

#include "mvd/errors.hpp"
#include "table_index.hpp"

namespace mvd {

using detail::TableIndex;

namespace {

constexpr Weight kInf = std::numeric_limits<Weight>::max();

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

class DetSolver {
public:
    DetSolver(const DecisionTable& t, const Measure& m, const Limits& limits)
        : idx_(t), weights_(m.column_weights(t)), limits_(limits) {}

    Weight solve(const RowSet& rows) {
        if (idx_.degenerate(rows)) return 0;
        if (auto it = memo_.find(rows); it != memo_.end()) {
            ++stats.memo_hits;
            return it->second;
        }
        Weight best = kInf;
        for (std::size_t c = 0; c < weights_.size(); ++c) {
            if (weights_[c] >= best) continue;
            auto parts = idx_.split(rows, c);
            if (parts.size() < 2) continue;
            Weight worst = 0;
            bool pruned = false;
            for (const auto& [v, part] : parts) {
                worst = std::max(worst, solve(part));
                if (weights_[c] + worst >= best) {
                    pruned = true;
                    break;
                }
            }
            if (!pruned) best = weights_[c] + worst;
        }
        if (memo_.size() >= limits_.max_memo)
            throw ResourceError("memo limit of " + std::to_string(limits_.max_memo) +
                                " subtables exceeded (max-memo)");
        memo_.emplace(rows, best);
        ++stats.explored;
        return best;
    }

    // Rebuilds an optimal subtree below (parent, edge) using the memoized values.
    void build(const RowSet& rows, DecisionTree& g, NodeId parent, Value edge) {
        if (idx_.degenerate(rows)) {
            g.add_terminal(parent, edge, idx_.common(rows).front());
            return;
        }
        const Weight target = solve(rows);
        for (std::size_t c = 0; c < weights_.size(); ++c) {
            if (weights_[c] > target) continue;
            auto parts = idx_.split(rows, c);
            if (parts.size() < 2) continue;
            Weight worst = 0;
            for (const auto& [v, part] : parts) {
                worst = std::max(worst, solve(part));
                if (weights_[c] + worst > target) break;
            }
            if (weights_[c] + worst != target) continue;
            NodeId node = g.add_inner(parent, edge, idx_.table().attribute(c));
            for (const auto& [v, part] : parts) build(part, g, node, v);
            return;
        }
        throw Error("internal: no attribute attains the memoized optimum");
    }

    SolveStats stats;

private:
    TableIndex idx_;
    std::vector<Weight> weights_;
    const Limits& limits_;
    std::unordered_map<RowSet, Weight, RowSetHash> memo_;
};

// Dijkstra over restricted row sets: each step fixes one more column to the
// tuple's value; row sets that coincide are merged.
Certificate search_certificate(const TableIndex& idx, const std::vector<Weight>& weights,
                               std::span<const Value> tuple, const Limits& limits, SolveStats* stats) {
    struct State {
        RowSet rows;
        Weight cost;
        std::size_t parent;
        std::size_t column;
    };
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<State> states;
    std::unordered_map<RowSet, std::size_t, RowSetHash> best;
    using Item = std::pair<Weight, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;

    std::vector<RowSet> masks;
    masks.reserve(weights.size());
    for (std::size_t c = 0; c < weights.size(); ++c) masks.push_back(idx.mask(c, tuple[c]));

    states.push_back({idx.all(), 0, kNone, kNone});
    best.emplace(idx.all(), 0);
    open.push({0, 0});
    while (!open.empty()) {
        auto [cost, id] = open.top();
        open.pop();
        if (best.at(states[id].rows) != id) continue;
        if (idx.degenerate(states[id].rows)) {
            Certificate out{cost, {}};
            for (std::size_t s = id; states[s].parent != kNone; s = states[s].parent)
                out.columns.push_back(states[s].column);
            std::sort(out.columns.begin(), out.columns.end());
            if (stats) stats->explored += states.size();
            return out;
        }
        for (std::size_t c = 0; c < weights.size(); ++c) {
            RowSet next = states[id].rows & masks[c];
            if (next == states[id].rows) continue;
            const Weight nc = cost + weights[c];
            auto it = best.find(next);
            if (it != best.end() && states[it->second].cost <= nc) continue;
            if (states.size() >= limits.max_memo)
                throw ResourceError("certificate search exceeded " + std::to_string(limits.max_memo) +
                                    " subtables (max-memo)");
            states.push_back({next, nc, id, c});
            if (it != best.end()) it->second = states.size() - 1;
            else best.emplace(std::move(next), states.size() - 1);
            open.push({nc, states.size() - 1});
        }
    }
    throw Error("internal: certificate search exhausted");
}

void check_tuple(const DecisionTable& t, std::span<const Value> tuple) {
    if (tuple.size() != t.columns())
        throw InvalidArgument("tuple has " + std::to_string(tuple.size()) + " values, table has " +
                              std::to_string(t.columns()) + " columns");
    for (auto v : tuple)
        if (v >= t.k()) throw InvalidArgument("tuple value " + std::to_string(v) + " is outside E_k");
}

}  // namespace

SolveResult solve_det(const DecisionTable& t, const Measure& m, const Limits& limits) {
    const auto start = std::chrono::steady_clock::now();
    m.require_bounded();
    detail::check_size(t, limits);
    SolveResult out;
    if (t.is_empty()) return out;
    DetSolver solver(t, m, limits);
    const RowSet all = t.all_rows();
    out.value = solver.solve(all);
    DecisionTree g;
    solver.build(all, g, g.root(), 0);
    out.tree = std::move(g);
    out.stats = solver.stats;
    out.stats.wall_ms = elapsed_ms(start);
    return out;
}

Certificate certificate(const DecisionTable& t, std::span<const Value> tuple, const Measure& m,
                        const Limits& limits) {
    m.require_bounded();
    detail::check_size(t, limits);
    check_tuple(t, tuple);
    TableIndex idx(t);
    return search_certificate(idx, m.column_weights(t), tuple, limits, nullptr);
}

Weight certificate_cost(const DecisionTable& t, std::span<const Value> tuple, const Measure& m,
                        const Limits& limits) {
    return certificate(t, tuple, m, limits).cost;
}

Weight m_param(const DecisionTable& t, const Measure& m, Scope scope, const Limits& limits) {
    m.require_bounded();
    detail::check_size(t, limits);
    if (t.is_empty()) return 0;
    TableIndex idx(t);
    const auto weights = m.column_weights(t);
    Weight out = 0;
    if (scope == Scope::rows) {
        for (std::size_t r = 0; r < t.rows(); ++r)
            out = std::max(out, search_certificate(idx, weights, t.row(r), limits, nullptr).cost);
        return out;
    }
    std::size_t total = 1;
    for (std::size_t c = 0; c < t.columns(); ++c) {
        if (total > limits.max_tuples / t.k())
            throw ResourceError("scope 'all' needs " + std::to_string(t.k()) + "^" + std::to_string(t.columns()) +
                                " tuples, limit is " + std::to_string(limits.max_tuples) + " (max-tuples)");
        total *= t.k();
    }
    Tuple tuple(t.columns(), 0);
    for (std::size_t i = 0; i < total; ++i) {
        out = std::max(out, search_certificate(idx, weights, tuple, limits, nullptr).cost);
        for (std::size_t c = t.columns(); c-- > 0;) {
            if (++tuple[c] < t.k()) break;
            tuple[c] = 0;
        }
    }
    return out;
}

SolveResult solve_nondet(const DecisionTable& t, const Measure& m, const Limits& limits) {
    const auto start = std::chrono::steady_clock::now();
    m.require_bounded();
    detail::check_size(t, limits);
    SolveResult out;
    if (t.is_empty()) return out;
    TableIndex idx(t);
    const auto weights = m.column_weights(t);
    DecisionTree g;
    std::map<std::vector<std::pair<std::size_t, Value>>, bool> seen;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        Certificate cert = search_certificate(idx, weights, t.row(r), limits, &out.stats);
        out.value = std::max(out.value, cert.cost);
        std::vector<std::pair<std::size_t, Value>> word;
        for (auto c : cert.columns) word.emplace_back(c, t.at(r, c));
        if (!seen.emplace(word, true).second) continue;
        RowSet reached = idx.all();
        NodeId at = g.root();
        Value edge = 0;
        for (const auto& [c, v] : word) {
            reached &= idx.mask(c, v);
            at = g.add_inner(at, edge, t.attribute(c));
            edge = v;
        }
        g.add_terminal(at, edge, idx.common(reached).front());
    }
    out.tree = std::move(g);
    out.stats.wall_ms = elapsed_ms(start);
    return out;
}

namespace {

struct CoverWord {
    std::vector<std::pair<std::size_t, Value>> letters;  // column order
    RowSet rows;
    Decision decision = 0;
};

class SequentialBuilder {
public:
    SequentialBuilder(const TableIndex& idx, const std::vector<CoverWord>& words) : idx_(idx), words_(words) {}

    void build(std::size_t i, std::size_t j, RowSet rows, DecisionTree& g, NodeId parent, Value edge) {
        if (i >= words_.size()) throw Error("internal: rows left after the last cover word");
        const auto& w = words_[i];
        for (; j < w.letters.size(); ++j) {
            const auto [c, want] = w.letters[j];
            auto parts = idx_.split(rows, c);
            const bool present = std::any_of(parts.begin(), parts.end(), [&](const auto& p) { return p.first == want; });
            if (!present) return build(i + 1, 0, rows, g, parent, edge);
            if (parts.size() == 1) continue;
            NodeId node = g.add_inner(parent, edge, idx_.table().attribute(c));
            for (auto& [v, part] : parts) {
                if (v == want) build(i, j + 1, part, g, node, v);
                else build(i + 1, 0, part, g, node, v);
            }
            return;
        }
        g.add_terminal(parent, edge, w.decision);
    }

private:
    const TableIndex& idx_;
    const std::vector<CoverWord>& words_;
};

}  // namespace

DecisionTree tree_from_cover(const DecisionTable& t, std::span<const Assignment> words, CoverMode mode,
                             const Measure&) {
    if (t.is_empty()) throw InvalidArgument("no tree is defined for the empty table");
    TableIndex idx(t);
    std::vector<CoverWord> cw;
    RowSet covered(t.rows());
    for (const auto& a : words) {
        CoverWord w;
        for (const auto& l : a) {
            auto c = t.column_of(l.attribute);
            if (!c) throw InvalidArgument("word " + a.to_string() + " uses unknown attribute '" + l.attribute + "'");
            w.letters.emplace_back(*c, l.value);
        }
        std::sort(w.letters.begin(), w.letters.end());
        w.rows = t.matching(a);
        auto common = idx.common(w.rows);
        if (w.rows.any() && common.empty())
            throw InvalidArgument("word " + a.to_string() + " reaches a non-degenerate subtable");
        w.decision = common.empty() ? 0 : common.front();
        covered |= w.rows;
        cw.push_back(std::move(w));
    }
    if (covered != t.all_rows()) {
        std::string missing;
        (t.all_rows() - covered).for_each([&](std::size_t r) { missing += (missing.empty() ? "" : ", ") + std::to_string(r); });
        throw InvalidArgument("the words do not cover rows " + missing);
    }
    DecisionTree g;
    if (mode == CoverMode::parallel) {
        for (const auto& w : cw) {
            NodeId at = g.root();
            Value edge = 0;
            for (const auto& [c, v] : w.letters) {
                at = g.add_inner(at, edge, t.attribute(c));
                edge = v;
            }
            g.add_terminal(at, edge, w.decision);
        }
        return g;
    }
    SequentialBuilder(idx, cw).build(0, 0, t.all_rows(), g, g.root(), 0);
    return g;
}

Weight total_weight(const DecisionTable& t, const Measure& m) {
    if (t.is_empty()) return 0;
    Weight out = 0;
    for (auto w : m.column_weights(t)) out = m.combine(out, w);
    return out;
}

}  // namespace mvd
