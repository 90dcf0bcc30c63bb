#pragma once

// Exact deterministic and nondeterministic complexity of decision tables.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mvd/limits.hpp"
#include "mvd/measure.hpp"
#include "mvd/table.hpp"
#include "mvd/tree.hpp"

namespace mvd {

struct SolveStats {
    std::size_t explored = 0;   // distinct subtables evaluated
    std::size_t memo_hits = 0;
    double wall_ms = 0.0;
};

struct SolveResult {
    Weight value = 0;
    // Absent only for a table without rows.
    std::optional<DecisionTree> tree;
    SolveStats stats;
};

// Minimum complexity over deterministic trees. Memoized on the surviving row
// set; among optimal attributes the leftmost column wins, branches follow
// ascending values. Throws MeasureError for partially bounded measures,
// ResourceError when a limit is exceeded.
SolveResult solve_det(const DecisionTable& t, const Measure& m, const Limits& limits = {});

struct Certificate {
    Weight cost = 0;
    std::vector<std::size_t> columns;  // ascending column indices
};

// Cheapest column set S such that restricting t to tuple's values on S leaves
// a degenerate (or empty) table. The tuple need not be a row.
Certificate certificate(const DecisionTable& t, std::span<const Value> tuple, const Measure& m,
                        const Limits& limits = {});
Weight certificate_cost(const DecisionTable& t, std::span<const Value> tuple, const Measure& m,
                        const Limits& limits = {});

enum class Scope { rows, all };

// Maximum certificate cost over the rows of t, or over every tuple of E_k^n.
Weight m_param(const DecisionTable& t, const Measure& m, Scope scope, const Limits& limits = {});

// Minimum complexity over nondeterministic trees, as the largest per-row
// certificate cost. The witness has one root branch per distinct certificate word.
SolveResult solve_nondet(const DecisionTable& t, const Measure& m, const Limits& limits = {});

enum class CoverMode { parallel, sequential };

// Parallel: one root branch per word (a nondeterministic tree). Sequential: a
// deterministic tree checking the words one after another. Every word must
// reach a degenerate subtable. Throws InvalidArgument for uncovered rows or a
// non-degenerate word.
DecisionTree tree_from_cover(const DecisionTable& t, std::span<const Assignment> words, CoverMode mode,
                             const Measure& m);

// W_psi(T); 0 for a table without rows.
Weight total_weight(const DecisionTable& t, const Measure& m);

}  // namespace mvd
