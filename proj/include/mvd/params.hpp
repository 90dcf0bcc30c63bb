#pragma once

// Structural parameters: Z (widest shattered column set), G (longest
// irreducible annihilating word), and l (largest irreducible cover).

#include <cstddef>
#include <string>
#include <vector>

#include "mvd/limits.hpp"
#include "mvd/measure.hpp"
#include "mvd/table.hpp"

namespace mvd {

struct ZResult {
    std::size_t value = 0;
    std::vector<std::string> columns;  // table order
};

// Binary tables only (InvalidArgument otherwise).
ZResult z_param(const DecisionTable& t, const Limits& limits = {});

struct GResult {
    std::size_t value = 0;
    Assignment word;
};

// Binary tables only.
GResult g_param(const DecisionTable& t, const Limits& limits = {});

struct BudgetWord {
    Assignment word;
    Weight cost = 0;
    RowSet rows;
};

// Words of cost <= n with nonempty coverage, one per coverage set (the cheapest,
// earliest found). Sorted by cost; lambda comes first.
std::vector<BudgetWord> budget_words(const DecisionTable& t, const Measure& m, Weight n,
                                     const Limits& limits = {});

struct Cover {
    std::vector<Assignment> words;
    std::vector<std::vector<std::size_t>> coverage;  // rows reached by each word
    std::vector<std::vector<std::size_t>> own_rows;  // rows reached by no other word
    Weight budget = 0;
};

struct LResult {
    std::size_t value = 0;
    Cover cover;
};

// Largest irreducible (m, n)-cover. 0 for a table without rows.
LResult l_param(const DecisionTable& t, const Measure& m, Weight n, const Limits& limits = {});

// Checks the cover invariants against t; returns a description of each problem.
std::vector<std::string> cover_problems(const DecisionTable& t, const Measure& m, const Cover& c);

}  // namespace mvd
