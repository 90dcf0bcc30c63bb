#include "mvd/params.hpp"

#include <algorithm>
#include <unordered_map>

#include "mvd/errors.hpp"
#include "table_index.hpp"

namespace mvd {

using detail::TableIndex;

namespace {

void require_binary(const DecisionTable& t, const char* what) {
    if (t.k() != 2) throw InvalidArgument(std::string(what) + " is defined only for binary tables");
}

void count_node(std::size_t& nodes, const Limits& limits, const char* what) {
    if (++nodes > limits.max_bb_nodes)
        throw ResourceError(std::string(what) + " exceeded " + std::to_string(limits.max_bb_nodes) +
                            " search nodes (max-bb-nodes)");
}

class ZSearch {
public:
    ZSearch(const DecisionTable& t, const Limits& limits) : t_(t), limits_(limits) {}

    void run(std::size_t next, const std::vector<std::uint32_t>& codes, std::vector<std::size_t>& cols) {
        count_node(nodes_, limits_, "shattered-set search");
        if (cols.size() > best.size()) best = cols;
        const std::size_t n = t_.columns();
        const std::size_t size = cols.size() + 1;
        if ((std::size_t{1} << size) > t_.rows()) return;
        std::vector<std::uint32_t> next_codes(codes.size());
        std::vector<char> seen(std::size_t{1} << size);
        for (std::size_t c = next; c < n; ++c) {
            if (cols.size() + (n - c) <= best.size()) break;
            std::fill(seen.begin(), seen.end(), 0);
            std::size_t distinct = 0;
            for (std::size_t r = 0; r < codes.size(); ++r) {
                next_codes[r] = (codes[r] << 1) | t_.at(r, c);
                if (!seen[next_codes[r]]) {
                    seen[next_codes[r]] = 1;
                    ++distinct;
                }
            }
            if (distinct != seen.size()) continue;
            cols.push_back(c);
            run(c + 1, next_codes, cols);
            cols.pop_back();
        }
    }

    std::vector<std::size_t> best;

private:
    const DecisionTable& t_;
    const Limits& limits_;
    std::size_t nodes_ = 0;
};

class GSearch {
public:
    GSearch(const DecisionTable& t, const Limits& limits) : idx_(t), limits_(limits) {}

    void run(std::size_t next, const RowSet& rows) {
        count_node(nodes_, limits_, "annihilating-word search");
        const std::size_t n = idx_.table().columns();
        const std::size_t s = word_.size();
        if (s + 1 > idx_.table().rows()) return;
        for (std::size_t c = next; c < n; ++c) {
            if (s + (n - c) <= best.size()) break;
            for (Value v = 2; v-- > 0;) {
                RowSet r = rows & idx_.mask(c, v);
                if (r == rows) continue;
                word_.emplace_back(c, v);
                if (r.none()) {
                    if (word_.size() > best.size() && irreducible()) best = word_;
                } else {
                    run(c + 1, r);
                }
                word_.pop_back();
            }
        }
    }

    std::vector<std::pair<std::size_t, Value>> best;

private:
    // Dropping any single letter must leave a surviving row; the last letter is
    // known to matter, since the prefix reached a nonempty subtable.
    bool irreducible() const {
        for (std::size_t skip = 0; skip + 1 < word_.size(); ++skip) {
            RowSet r = idx_.all();
            for (std::size_t i = 0; i < word_.size(); ++i)
                if (i != skip) r &= idx_.mask(word_[i].first, word_[i].second);
            if (r.none()) return false;
        }
        return true;
    }

    TableIndex idx_;
    const Limits& limits_;
    std::vector<std::pair<std::size_t, Value>> word_;
    std::size_t nodes_ = 0;
};

class WordSearch {
public:
    WordSearch(const DecisionTable& t, const Measure& m, Weight budget, const Limits& limits)
        : idx_(t), weights_(m.column_weights(t)), m_(m), budget_(budget), limits_(limits) {}

    void run(std::size_t next, const RowSet& rows, Weight cost) {
        count_node(nodes_, limits_, "budget-word search");
        record(rows, cost);
        for (std::size_t c = next; c < weights_.size(); ++c) {
            const Weight nc = m_.combine(cost, weights_[c]);
            if (nc > budget_) continue;
            for (const auto& [v, part] : idx_.split(rows, c)) {
                if (part == rows) continue;
                word_.push_back({idx_.table().attribute(c), v});
                run(c + 1, part, nc);
                word_.pop_back();
            }
        }
    }

    std::vector<BudgetWord> take() {
        std::stable_sort(out_.begin(), out_.end(), [](const auto& a, const auto& b) { return a.cost < b.cost; });
        return std::move(out_);
    }

private:
    void record(const RowSet& rows, Weight cost) {
        auto it = by_rows_.find(rows);
        if (it != by_rows_.end()) {
            auto& w = out_[it->second];
            if (cost < w.cost) {
                w.cost = cost;
                w.word = Assignment(word_);
            }
            return;
        }
        if (out_.size() >= limits_.max_words)
            throw ResourceError("more than " + std::to_string(limits_.max_words) +
                                " coverage-distinct words (max-words)");
        by_rows_.emplace(rows, out_.size());
        out_.push_back({Assignment(word_), cost, rows});
    }

    TableIndex idx_;
    std::vector<Weight> weights_;
    const Measure& m_;
    Weight budget_;
    const Limits& limits_;
    std::vector<Letter> word_;
    std::vector<BudgetWord> out_;
    std::unordered_map<RowSet, std::size_t, RowSetHash> by_rows_;
    std::size_t nodes_ = 0;
};

// Branch and bound over coverage sets. Every chosen set keeps a private row.
// Branching picks the uncovered row with the fewest admissible sets and tries
// each of them, excluding earlier siblings, so every family is visited once.
class CoverSearch {
public:
    CoverSearch(std::vector<RowSet> cands, std::size_t universe, const Limits& limits)
        : cands_(std::move(cands)), uncovered_(RowSet::full(universe)), excluded_(cands_.size(), 0),
          limits_(limits) {}

    void run() {
        count_node(nodes_, limits_, "cover search");
        if (uncovered_.none()) {
            if (chosen_.size() > best.size()) best = chosen_;
            return;
        }
        const std::size_t open = uncovered_.count();
        if (chosen_.size() + open <= best.size()) return;
        std::vector<std::size_t> feasible;
        for (std::size_t i = 0; i < cands_.size(); ++i)
            if (!excluded_[i] && admissible(cands_[i])) feasible.push_back(i);
        if (chosen_.size() + std::min(open, trace_bound(feasible)) <= best.size()) return;

        // Row with the fewest admissible sets reaching it.
        std::size_t pick = 0, fewest = static_cast<std::size_t>(-1);
        uncovered_.for_each([&](std::size_t r) {
            if (fewest == 0) return;
            std::size_t n = 0;
            for (auto i : feasible)
                if (cands_[i].test(r)) ++n;
            if (n < fewest) {
                fewest = n;
                pick = r;
            }
        });
        if (fewest == 0) return;

        std::vector<std::size_t> branch;
        for (auto i : feasible)
            if (cands_[i].test(pick)) branch.push_back(i);
        std::vector<std::size_t> tried;
        for (auto i : branch) {
            if (admissible(cands_[i])) {
                const RowSet& c = cands_[i];
                const auto saved_own = own_;
                const RowSet saved_uncovered = uncovered_;
                for (auto& p : own_) p -= c;
                own_.push_back(c & uncovered_);
                chosen_.push_back(i);
                excluded_[i] = 1;
                uncovered_ -= c;
                run();
                chosen_.pop_back();
                own_ = saved_own;
                uncovered_ = saved_uncovered;
            }
            excluded_[i] = 1;
            tried.push_back(i);
            if (best.size() == uncovered_.universe()) break;
        }
        for (auto i : tried) excluded_[i] = 0;
    }

    std::vector<std::size_t> best;

private:
    // Reaches an uncovered row and leaves every chosen set a private row.
    bool admissible(const RowSet& c) const {
        if (!c.intersects(uncovered_)) return false;
        for (const auto& p : own_)
            if (p.is_subset_of(c)) return false;
        return true;
    }

    // Future members keep private rows among the uncovered ones, so their traces
    // on those rows form an antichain. Any chain partition bounds its size.
    std::size_t trace_bound(const std::vector<std::size_t>& feasible) const {
        std::vector<RowSet> traces;
        traces.reserve(feasible.size());
        for (auto i : feasible) traces.push_back(cands_[i] & uncovered_);
        std::sort(traces.begin(), traces.end(), [](const RowSet& a, const RowSet& b) { return a.count() < b.count(); });
        std::vector<RowSet> tops;
        for (auto& tr : traces) {
            bool placed = false;
            for (auto& top : tops)
                if (top.is_subset_of(tr)) {
                    top = tr;
                    placed = true;
                    break;
                }
            if (!placed) tops.push_back(tr);
        }
        return tops.size();
    }

    std::vector<RowSet> cands_;
    RowSet uncovered_;
    std::vector<char> excluded_;
    std::vector<RowSet> own_;
    std::vector<std::size_t> chosen_;
    const Limits& limits_;
    std::size_t nodes_ = 0;
};

}  // namespace

ZResult z_param(const DecisionTable& t, const Limits& limits) {
    require_binary(t, "Z");
    detail::check_size(t, limits);
    ZResult out;
    if (t.rows() < 2) return out;
    ZSearch s(t, limits);
    std::vector<std::size_t> cols;
    s.run(0, std::vector<std::uint32_t>(t.rows(), 0), cols);
    out.value = s.best.size();
    for (auto c : s.best) out.columns.push_back(t.attribute(c));
    return out;
}

GResult g_param(const DecisionTable& t, const Limits& limits) {
    require_binary(t, "G");
    detail::check_size(t, limits);
    GResult out;
    if (t.is_empty()) return out;
    GSearch s(t, limits);
    s.run(0, t.all_rows());
    out.value = s.best.size();
    std::vector<Letter> letters;
    for (const auto& [c, v] : s.best) letters.push_back({t.attribute(c), v});
    out.word = Assignment(std::move(letters));
    return out;
}

std::vector<BudgetWord> budget_words(const DecisionTable& t, const Measure& m, Weight n, const Limits& limits) {
    m.require_bounded();
    detail::check_size(t, limits);
    if (t.is_empty()) return {};
    WordSearch s(t, m, n, limits);
    s.run(0, t.all_rows(), 0);
    return s.take();
}

LResult l_param(const DecisionTable& t, const Measure& m, Weight n, const Limits& limits) {
    LResult out;
    out.cover.budget = n;
    if (t.is_empty()) {
        m.require_bounded();
        return out;
    }
    auto words = budget_words(t, m, n, limits);
    std::vector<std::size_t> order(words.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return words[a].rows.count() < words[b].rows.count(); });
    std::vector<RowSet> cands;
    for (auto i : order) cands.push_back(words[i].rows);
    CoverSearch s(std::move(cands), t.rows(), limits);
    s.run();

    std::vector<std::size_t> picked;
    for (auto i : s.best) picked.push_back(order[i]);
    std::sort(picked.begin(), picked.end());
    out.value = picked.size();
    for (auto w : picked) {
        out.cover.words.push_back(words[w].word);
        out.cover.coverage.push_back(words[w].rows.members());
        RowSet own = words[w].rows;
        for (auto o : picked)
            if (o != w) own -= words[o].rows;
        out.cover.own_rows.push_back(own.members());
    }
    return out;
}

std::vector<std::string> cover_problems(const DecisionTable& t, const Measure& m, const Cover& c) {
    std::vector<std::string> out;
    if (c.coverage.size() != c.words.size())
        out.push_back("coverage list does not match the words");
    RowSet all(t.rows());
    std::vector<RowSet> reach;
    for (std::size_t i = 0; i < c.words.size(); ++i) {
        const auto& w = c.words[i];
        if (m.eval_word(w) > c.budget)
            out.push_back("word " + w.to_string() + " costs more than " + std::to_string(c.budget));
        RowSet r = t.matching(w);
        if (i < c.coverage.size() && r.members() != c.coverage[i])
            out.push_back("recorded coverage of " + w.to_string() + " is wrong");
        all |= r;
        reach.push_back(std::move(r));
    }
    if (all != t.all_rows()) out.push_back("the words do not cover every row");
    for (std::size_t i = 0; i < reach.size(); ++i) {
        RowSet own = reach[i];
        for (std::size_t j = 0; j < reach.size(); ++j)
            if (j != i) own -= reach[j];
        if (own.none()) out.push_back("word " + c.words[i].to_string() + " has no private row");
    }
    return out;
}

}  // namespace mvd
