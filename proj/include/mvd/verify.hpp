#pragma once

// Executable checks of the complexity bounds and constructions, family checks,
// empirical class profiles, and a one-table summary.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvd/families.hpp"
#include "mvd/limits.hpp"
#include "mvd/measure.hpp"
#include "mvd/table.hpp"

namespace mvd {

enum class CheckStatus { pass, fail, skipped, error };
std::string_view to_string(CheckStatus s);

struct CheckRecord {
    std::string check;     // e.g. "nondet_le_det"
    std::string anchor;    // the relation in words, e.g. "psi_a(T) <= psi_d(T)"
    std::string table_id;
    std::string measure;
    std::optional<Weight> budget;
    double left = 0;
    std::string relation;  // "<=", "=", ">="
    double right = 0;
    CheckStatus status = CheckStatus::pass;
    std::string detail;    // witness summary, skip reason or error message
    double wall_ms = 0;
};

struct VerificationReport {
    std::vector<CheckRecord> records;

    void append(VerificationReport other);
    // Canonical order: check name, then table id, then budget.
    void sort();
    std::size_t count(CheckStatus s) const;
    // 0 when nothing failed, 1 on a failed check, 3 when an error (and no failure) occurred.
    int exit_code() const;
    std::string to_text() const;
    std::string to_json() const;
};

VerificationReport check_bounds(const DecisionTable& t, const Measure& m, const std::string& table_id,
                                const Limits& limits = {});

enum class Construction { m1, m10 };

VerificationReport check_construction(const DecisionTable& t, const Measure& m, Weight n, Construction which,
                                      const std::string& table_id, const Limits& limits = {});

enum class FamilyCheck { tk, qn, threshold };

struct FamilyCheckParams {
    std::size_t min_k = 1, max_k = 3;          // tk
    Weight min_n = 1, max_n = 4;               // qn
    PhiSpec phi = PhiSpec::twice();            // qn
    std::size_t count = 20;                    // threshold: random sets drawn
    std::size_t max_size = 6;                  // threshold: largest set
    std::uint64_t max_threshold = 100;         // threshold: values drawn from 1..max_threshold
    std::vector<std::vector<std::uint64_t>> sets;  // threshold: explicit sets, checked first
    std::uint64_t seed = 1;
};

VerificationReport check_families(FamilyCheck which, const FamilyCheckParams& params, const Limits& limits = {});

struct NamedTable {
    std::string id;
    DecisionTable table;
};

struct ClassProfile {
    std::vector<std::string> table_ids;
    std::string measure;
    Weight n_max = 0;
    std::vector<Weight> h, l, z, g;  // indexed by n
    bool lower_bound = true;         // computed over a finite set only
    bool partial = false;
    std::vector<std::string> errors;

    std::string to_text() const;
    std::string to_json() const;
};

ClassProfile empirical_profile(const std::vector<NamedTable>& tables, const Measure& m, Weight n_max,
                               const Limits& limits = {});

// One value of a summary; `note` explains an absent value.
struct SummaryValue {
    std::string key;
    std::optional<Weight> value;
    std::string note;
    bool resource_limited = false;  // absent because a cap was exceeded
};

struct TableSummary {
    std::vector<SummaryValue> values;
    bool resource_limited() const;
    std::string to_text() const;
    std::string to_json() const;
};

// N, W, W_psi, m_psi, M_rows, M_all, psi_a, psi_d, Z, G and l(n) for each budget.
TableSummary summarize(const DecisionTable& t, const Measure& m, const std::vector<Weight>& budgets,
                       const Limits& limits = {});

}  // namespace mvd
