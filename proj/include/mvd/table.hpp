#pragma once

// Decision tables with many-valued decisions and the three table operations:
// restriction by an assignment, column removal, and decision rewriting.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mvd/rowset.hpp"

namespace mvd {

using Value = std::uint32_t;
using Decision = std::uint32_t;
// Sorted ascending, no duplicates, nonempty when attached to a row.
using DecisionSet = std::vector<Decision>;
using Tuple = std::vector<Value>;

DecisionSet make_decision_set(std::vector<Decision> ds);

struct Letter {
    std::string attribute;
    Value value = 0;

    auto operator<=>(const Letter&) const = default;
};

class Assignment;

// Result of reducing a raw word to its canonical assignment.
struct CanonicalWord;

// A consistent set of letters with pairwise distinct attributes. Order-free:
// letters are kept sorted by attribute name.
class Assignment {
public:
    Assignment() = default;

    // Throws InvalidArgument if the letters repeat an attribute.
    explicit Assignment(std::vector<Letter> letters);

    // Accepts duplicates and contradictions.
    static CanonicalWord canonicalize(std::span<const Letter> word);

    // Returns false (and leaves the assignment unchanged) if attribute already
    // carries a different value.
    bool add(std::string_view attribute, Value value);

    std::optional<Value> value_of(std::string_view attribute) const;
    bool contains(std::string_view attribute) const { return value_of(attribute).has_value(); }
    bool is_subset_of(const Assignment& other) const;

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const std::vector<Letter>& letters() const { return letters_; }
    auto begin() const { return letters_.begin(); }
    auto end() const { return letters_.end(); }

    Assignment without(std::string_view attribute) const;

    // "(f2,1)(f4,0)"; the empty assignment prints as "lambda".
    std::string to_string() const;

    bool operator==(const Assignment&) const = default;
    auto operator<=>(const Assignment&) const = default;

private:
    std::vector<Letter> letters_;
};

struct CanonicalWord {
    Assignment assignment;
    // The raw word held two letters with one attribute and different values.
    bool annihilates = false;
};

class DecisionTable {
public:
    DecisionTable() : DecisionTable(2, {}) {}
    // Creates a table with the given columns and no rows.
    DecisionTable(Value k, std::vector<std::string> attributes);

    // Throws FormatError on arity mismatch, out-of-range values, empty decision
    // sets or duplicate rows.
    void add_row(std::span<const Value> values, std::vector<Decision> decisions);

    Value k() const { return k_; }
    std::size_t columns() const { return attrs_.size(); }
    std::size_t rows() const { return decisions_.size(); }
    // Zero rows; every predicate treats such a table as the empty table.
    bool is_empty() const { return decisions_.empty(); }

    const std::vector<std::string>& attributes() const { return attrs_; }
    const std::string& attribute(std::size_t column) const { return attrs_[column]; }
    std::optional<std::size_t> column_of(std::string_view name) const;

    std::span<const Value> row(std::size_t i) const {
        return {values_.data() + i * attrs_.size(), attrs_.size()};
    }
    Value at(std::size_t row, std::size_t column) const { return values_[row * attrs_.size() + column]; }
    const DecisionSet& decisions(std::size_t i) const { return decisions_[i]; }

    std::optional<std::size_t> find_row(std::span<const Value> values) const;

    // Rows matching every letter of a. Throws InvalidArgument on unknown attributes.
    RowSet matching(const Assignment& a) const;
    RowSet all_rows() const { return RowSet::full(rows()); }

    // Same columns, only the listed rows (in their original order).
    DecisionTable select(const RowSet& rows) const;

    bool operator==(const DecisionTable& o) const {
        return k_ == o.k_ && attrs_ == o.attrs_ && values_ == o.values_ && decisions_ == o.decisions_;
    }

private:
    struct TupleHash {
        std::size_t operator()(const Tuple& t) const;
    };

    Value k_;
    std::vector<std::string> attrs_;
    std::vector<Value> values_;
    std::vector<DecisionSet> decisions_;
    std::unordered_map<Tuple, std::size_t, TupleHash> index_;
};

// A total mapping from value tuples to nonempty decision sets.
class DecisionMap {
public:
    using Rule = std::function<DecisionSet(std::span<const Value>)>;

    DecisionMap(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}

    // Lookup table; tuples missing from it map to `fallback`, or are undefined
    // when no fallback is given.
    static DecisionMap extensional(std::map<Tuple, DecisionSet> table,
                                   std::optional<DecisionSet> fallback = std::nullopt,
                                   std::string name = "table");
    static DecisionMap constant(DecisionSet ds);
    // nu(x) = {min(x), max(x)}.
    static DecisionMap min_max();
    // Maps every row of t to its current set; other tuples to {0}.
    static DecisionMap identity_of(const DecisionTable& t);

    const std::string& name() const { return name_; }
    // Returns std::nullopt where the map is undefined.
    std::optional<DecisionSet> operator()(std::span<const Value> tuple) const;
    // Present only for extensional maps.
    const std::map<Tuple, DecisionSet>* table() const { return table_ ? &*table_ : nullptr; }

private:
    std::string name_;
    Rule rule_;
    std::optional<std::map<Tuple, DecisionSet>> table_;
};

// Pi(T). For a table without rows `universal` is set and `decisions` is empty.
struct CommonDecisions {
    bool universal = false;
    DecisionSet decisions;
};

DecisionTable subtable(const DecisionTable& t, const Assignment& a);
DecisionTable remove_columns(const DecisionTable& t, std::span<const std::string> removed);
DecisionTable change_decisions(const DecisionTable& t, const DecisionMap& nu);
CommonDecisions common_decisions(const DecisionTable& t);
bool is_degenerate(const DecisionTable& t);

struct ClosureStep {
    std::vector<std::string> removed;
    DecisionMap map;
};

struct ClosureMember {
    ClosureStep step;
    DecisionTable table;
};

// J(map, I(removed, t)) for every requested step.
std::vector<DecisionTable> closure_sample(const DecisionTable& t, std::span<const ClosureStep> steps);

// Draws `count` random members of [t]: the removed set uniformly over subsets of
// the columns, each reduced row labeled with a random nonempty subset of
// {0, ..., universe-1}. The recorded step reproduces each member.
std::vector<ClosureMember> closure_sample(const DecisionTable& t, std::uint64_t seed, std::size_t count,
                                          Decision universe = 4);

}  // namespace mvd
