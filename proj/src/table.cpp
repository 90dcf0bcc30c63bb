#include "mvd/table.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "mvd/errors.hpp"
#include "mvd/rng.hpp"

namespace mvd {

DecisionSet make_decision_set(std::vector<Decision> ds) {
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

// ---------------------------------------------------------------- Assignment

Assignment::Assignment(std::vector<Letter> letters) {
    for (auto& l : letters) {
        if (contains(l.attribute)) {
            throw InvalidArgument("assignment repeats attribute '" + l.attribute + "'");
        }
        add(l.attribute, l.value);
    }
}

CanonicalWord Assignment::canonicalize(std::span<const Letter> word) {
    CanonicalWord out;
    for (const auto& l : word) {
        if (!out.assignment.add(l.attribute, l.value)) out.annihilates = true;
    }
    return out;
}

bool Assignment::add(std::string_view attribute, Value value) {
    auto it = std::lower_bound(letters_.begin(), letters_.end(), attribute,
                               [](const Letter& l, std::string_view a) { return l.attribute < a; });
    if (it != letters_.end() && it->attribute == attribute) return it->value == value;
    letters_.insert(it, Letter{std::string(attribute), value});
    return true;
}

std::optional<Value> Assignment::value_of(std::string_view attribute) const {
    auto it = std::lower_bound(letters_.begin(), letters_.end(), attribute,
                               [](const Letter& l, std::string_view a) { return l.attribute < a; });
    if (it != letters_.end() && it->attribute == attribute) return it->value;
    return std::nullopt;
}

bool Assignment::is_subset_of(const Assignment& other) const {
    for (const auto& l : letters_) {
        auto v = other.value_of(l.attribute);
        if (!v || *v != l.value) return false;
    }
    return true;
}

Assignment Assignment::without(std::string_view attribute) const {
    Assignment out;
    for (const auto& l : letters_)
        if (l.attribute != attribute) out.letters_.push_back(l);
    return out;
}

std::string Assignment::to_string() const {
    if (letters_.empty()) return "lambda";
    std::ostringstream os;
    for (const auto& l : letters_) os << '(' << l.attribute << ',' << l.value << ')';
    return os.str();
}

// ------------------------------------------------------------- DecisionTable

std::size_t DecisionTable::TupleHash::operator()(const Tuple& t) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : t) {
        h ^= v;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

DecisionTable::DecisionTable(Value k, std::vector<std::string> attributes) : k_(k), attrs_(std::move(attributes)) {
    if (k_ < 2) throw InvalidArgument("alphabet size k must be at least 2");
    std::vector<std::string> sorted = attrs_;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw FormatError("duplicate attribute '" + *dup + "'");
    for (const auto& a : attrs_)
        if (a.empty()) throw FormatError("empty attribute name");
}

void DecisionTable::add_row(std::span<const Value> values, std::vector<Decision> decisions) {
    const std::size_t index = rows();
    if (values.size() != attrs_.size()) {
        std::ostringstream os;
        os << "row " << index << ": expected " << attrs_.size() << " values, got " << values.size();
        throw FormatError(os.str());
    }
    for (auto v : values) {
        if (v >= k_) {
            std::ostringstream os;
            os << "row " << index << ": value " << v << " is not below k=" << k_;
            throw FormatError(os.str());
        }
    }
    if (decisions.empty()) {
        throw FormatError("row " + std::to_string(index) + ": empty decision set");
    }
    Tuple key(values.begin(), values.end());
    auto [it, inserted] = index_.emplace(std::move(key), index);
    if (!inserted) {
        std::ostringstream os;
        os << "duplicate row: row " << index << " repeats row " << it->second;
        throw FormatError(os.str());
    }
    values_.insert(values_.end(), values.begin(), values.end());
    decisions_.push_back(make_decision_set(std::move(decisions)));
}

std::optional<std::size_t> DecisionTable::column_of(std::string_view name) const {
    for (std::size_t c = 0; c < attrs_.size(); ++c)
        if (attrs_[c] == name) return c;
    return std::nullopt;
}

std::optional<std::size_t> DecisionTable::find_row(std::span<const Value> values) const {
    auto it = index_.find(Tuple(values.begin(), values.end()));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

RowSet DecisionTable::matching(const Assignment& a) const {
    std::vector<std::pair<std::size_t, Value>> tests;
    for (const auto& l : a) {
        auto c = column_of(l.attribute);
        if (!c) throw InvalidArgument("unknown attribute '" + l.attribute + "'");
        tests.emplace_back(*c, l.value);
    }
    RowSet out(rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        bool ok = true;
        for (auto [c, v] : tests)
            if (at(r, c) != v) {
                ok = false;
                break;
            }
        if (ok) out.set(r);
    }
    return out;
}

DecisionTable DecisionTable::select(const RowSet& rows) const {
    DecisionTable out(k_, attrs_);
    rows.for_each([&](std::size_t r) { out.add_row(row(r), decisions_[r]); });
    return out;
}

// --------------------------------------------------------------- DecisionMap

DecisionMap DecisionMap::extensional(std::map<Tuple, DecisionSet> table, std::optional<DecisionSet> fallback,
                                     std::string name) {
    auto shared = std::make_shared<const std::map<Tuple, DecisionSet>>(table);
    DecisionMap m(std::move(name), [shared, fallback](std::span<const Value> t) -> DecisionSet {
        auto it = shared->find(Tuple(t.begin(), t.end()));
        if (it != shared->end()) return it->second;
        if (fallback) return *fallback;
        throw InvalidArgument("undefined");
    });
    m.table_ = std::move(table);
    return m;
}

DecisionMap DecisionMap::constant(DecisionSet ds) {
    ds = make_decision_set(std::move(ds));
    return DecisionMap("constant", [ds](std::span<const Value>) { return ds; });
}

DecisionMap DecisionMap::min_max() {
    return DecisionMap("min_max", [](std::span<const Value> t) -> DecisionSet {
        if (t.empty()) return {};
        auto [lo, hi] = std::minmax_element(t.begin(), t.end());
        return make_decision_set({*lo, *hi});
    });
}

DecisionMap DecisionMap::identity_of(const DecisionTable& t) {
    std::map<Tuple, DecisionSet> table;
    for (std::size_t r = 0; r < t.rows(); ++r) table.emplace(Tuple(t.row(r).begin(), t.row(r).end()), t.decisions(r));
    return extensional(std::move(table), DecisionSet{0}, "identity");
}

std::optional<DecisionSet> DecisionMap::operator()(std::span<const Value> tuple) const {
    try {
        return make_decision_set(rule_(tuple));
    } catch (const InvalidArgument&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------- operations

DecisionTable subtable(const DecisionTable& t, const Assignment& a) { return t.select(t.matching(a)); }

DecisionTable remove_columns(const DecisionTable& t, std::span<const std::string> removed) {
    std::vector<bool> drop(t.columns(), false);
    for (const auto& name : removed) {
        auto c = t.column_of(name);
        if (!c) throw InvalidArgument("cannot remove unknown attribute '" + name + "'");
        drop[*c] = true;
    }
    std::vector<std::string> kept_attrs;
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < t.columns(); ++c) {
        if (!drop[c]) {
            kept.push_back(c);
            kept_attrs.push_back(t.attribute(c));
        }
    }
    DecisionTable out(t.k(), kept_attrs);
    // Removing every column yields the empty table.
    if (kept.empty()) return out;
    Tuple reduced(kept.size());
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t i = 0; i < kept.size(); ++i) reduced[i] = t.at(r, kept[i]);
        if (!out.find_row(reduced)) out.add_row(reduced, t.decisions(r));
    }
    return out;
}

DecisionTable change_decisions(const DecisionTable& t, const DecisionMap& nu) {
    DecisionTable out(t.k(), t.attributes());
    for (std::size_t r = 0; r < t.rows(); ++r) {
        auto ds = nu(t.row(r));
        if (!ds) throw InvalidArgument("decision map '" + nu.name() + "' is undefined on row " + std::to_string(r));
        if (ds->empty())
            throw InvalidArgument("decision map '" + nu.name() + "' assigns an empty set to row " + std::to_string(r));
        out.add_row(t.row(r), *ds);
    }
    return out;
}

CommonDecisions common_decisions(const DecisionTable& t) {
    CommonDecisions out;
    if (t.is_empty()) {
        out.universal = true;
        return out;
    }
    out.decisions = t.decisions(0);
    for (std::size_t r = 1; r < t.rows() && !out.decisions.empty(); ++r) {
        DecisionSet next;
        const auto& ds = t.decisions(r);
        std::set_intersection(out.decisions.begin(), out.decisions.end(), ds.begin(), ds.end(),
                              std::back_inserter(next));
        out.decisions = std::move(next);
    }
    return out;
}

bool is_degenerate(const DecisionTable& t) {
    auto pi = common_decisions(t);
    return pi.universal || !pi.decisions.empty();
}

std::vector<DecisionTable> closure_sample(const DecisionTable& t, std::span<const ClosureStep> steps) {
    std::vector<DecisionTable> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(change_decisions(remove_columns(t, s.removed), s.map));
    return out;
}

std::vector<ClosureMember> closure_sample(const DecisionTable& t, std::uint64_t seed, std::size_t count,
                                          Decision universe) {
    if (universe == 0) throw InvalidArgument("decision universe must be nonempty");
    Rng rng(seed);
    std::vector<ClosureMember> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::string> removed;
        for (const auto& a : t.attributes())
            if (rng.coin()) removed.push_back(a);
        DecisionTable reduced = remove_columns(t, removed);
        std::map<Tuple, DecisionSet> table;
        for (std::size_t r = 0; r < reduced.rows(); ++r) {
            DecisionSet ds;
            while (ds.empty()) {
                for (Decision d = 0; d < universe; ++d)
                    if (rng.coin()) ds.push_back(d);
            }
            table.emplace(Tuple(reduced.row(r).begin(), reduced.row(r).end()), std::move(ds));
        }
        ClosureStep step{std::move(removed), DecisionMap::extensional(std::move(table), DecisionSet{0}, "sampled")};
        DecisionTable member = change_decisions(reduced, step.map);
        out.push_back(ClosureMember{std::move(step), std::move(member)});
    }
    return out;
}

}  // namespace mvd
