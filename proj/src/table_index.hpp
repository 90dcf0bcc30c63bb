#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "mvd/errors.hpp"
#include "mvd/limits.hpp"
#include "mvd/rowset.hpp"
#include "mvd/table.hpp"

namespace mvd::detail {

// Per-column value masks over the rows of a table.
class TableIndex {
public:
    explicit TableIndex(const DecisionTable& t) : table_(t), masks_(t.columns()) {
        for (std::size_t c = 0; c < t.columns(); ++c) {
            auto& col = masks_[c];
            for (std::size_t r = 0; r < t.rows(); ++r) {
                const Value v = t.at(r, c);
                auto it = std::lower_bound(col.begin(), col.end(), v,
                                           [](const auto& p, Value x) { return p.first < x; });
                if (it == col.end() || it->first != v) it = col.insert(it, {v, RowSet(t.rows())});
                it->second.set(r);
            }
        }
    }

    const DecisionTable& table() const { return table_; }
    RowSet all() const { return table_.all_rows(); }

    // Rows of the column holding value v (empty if no row does).
    RowSet mask(std::size_t column, Value v) const {
        const auto& col = masks_[column];
        auto it = std::lower_bound(col.begin(), col.end(), v, [](const auto& p, Value x) { return p.first < x; });
        if (it == col.end() || it->first != v) return RowSet(table_.rows());
        return it->second;
    }

    // Nonempty parts of rows split by the column's values, ascending by value.
    std::vector<std::pair<Value, RowSet>> split(const RowSet& rows, std::size_t column) const {
        std::vector<std::pair<Value, RowSet>> out;
        for (const auto& [v, m] : masks_[column]) {
            RowSet part = rows & m;
            if (part.any()) out.emplace_back(v, std::move(part));
        }
        return out;
    }

    // Intersection of the decision sets of the rows; empty input yields empty output.
    DecisionSet common(const RowSet& rows) const {
        DecisionSet acc;
        bool first = true;
        rows.for_each([&](std::size_t r) {
            if (!first && acc.empty()) return;
            const auto& ds = table_.decisions(r);
            if (first) {
                acc = ds;
                first = false;
                return;
            }
            DecisionSet next;
            std::set_intersection(acc.begin(), acc.end(), ds.begin(), ds.end(), std::back_inserter(next));
            acc = std::move(next);
        });
        return acc;
    }

    bool degenerate(const RowSet& rows) const { return rows.none() || !common(rows).empty(); }

private:
    const DecisionTable& table_;
    std::vector<std::vector<std::pair<Value, RowSet>>> masks_;
};

inline void check_size(const DecisionTable& t, const Limits& limits) {
    if (t.columns() > limits.max_columns)
        throw ResourceError("table has " + std::to_string(t.columns()) + " columns, limit is " +
                            std::to_string(limits.max_columns) + " (max-columns)");
    if (t.rows() > limits.max_rows)
        throw ResourceError("table has " + std::to_string(t.rows()) + " rows, limit is " +
                            std::to_string(limits.max_rows) + " (max-rows)");
}

}  // namespace mvd::detail
