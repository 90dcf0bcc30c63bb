#include "mvd/families.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <set>

#include "mvd/errors.hpp"
#include "mvd/rng.hpp"

namespace mvd {

LayeredGraph gen_gk(std::size_t k) {
    if (k == 0) throw InvalidArgument("G_k needs k >= 1");
    LayeredGraph g;
    g.k = k;
    g.m = k * (k + 1) / 2;
    g.layer.assign(g.m + 1, 0);
    g.children.assign(g.m + 1, {0, 0});
    std::size_t i = 1;
    for (std::size_t j = 1; j <= k; ++j) {
        for (std::size_t c = 0; c < j; ++c, ++i) {
            g.layer[i] = j;
            if (j < k) g.children[i] = {i + j, i + j + 1};
        }
    }
    return g;
}

DecisionSet nu_k(const LayeredGraph& g, std::span<const Value> t) {
    if (t.size() != g.m)
        throw InvalidArgument("nu_k expects " + std::to_string(g.m) + " values, got " + std::to_string(t.size()));
    DecisionSet out;
    if (t[0] == 0) out.push_back(0);
    for (std::size_t i = 1; i <= g.m; ++i) {
        if (t[i - 1] != 1) continue;
        if (g.last_layer(i)) {
            out.push_back(static_cast<Decision>(i));
        } else {
            auto [l, p] = g.children[i];
            if (t[l - 1] == 0 && t[p - 1] == 0) out.push_back(static_cast<Decision>(i));
        }
    }
    return out;
}

std::vector<Tuple> gk_paths(const LayeredGraph& g) {
    std::vector<Tuple> out;
    Tuple cur(g.m, 0);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        cur[i - 1] = 1;
        if (g.last_layer(i)) {
            out.push_back(cur);
        } else {
            walk(g.children[i].first);
            walk(g.children[i].second);
        }
        cur[i - 1] = 0;
    };
    walk(1);
    return out;
}

PhiSpec PhiSpec::identity() { return PhiSpec(Kind::identity, "identity"); }
PhiSpec PhiSpec::twice() { return PhiSpec(Kind::twice, "double"); }
PhiSpec PhiSpec::square() { return PhiSpec(Kind::square, "square"); }

PhiSpec PhiSpec::values(std::vector<Weight> values) {
    if (values.empty()) throw InvalidArgument("phi value list is empty");
    std::string name;
    for (auto v : values) name += (name.empty() ? "" : ",") + std::to_string(v);
    PhiSpec p(Kind::list, name, std::move(values));
    p.validate(p.values_.size() - 1);
    return p;
}

PhiSpec PhiSpec::parse(std::string_view text) {
    if (text == "identity") return identity();
    if (text == "double") return twice();
    if (text == "square") return square();
    std::vector<Weight> vals;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        auto item = text.substr(pos, end - pos);
        Weight v = 0;
        auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || p != item.data() + item.size())
            throw InvalidArgument("unknown phi '" + std::string(text) + "'");
        vals.push_back(v);
        pos = end + 1;
    }
    return values(std::move(vals));
}

Weight PhiSpec::operator()(Weight n) const {
    switch (kind_) {
        case Kind::identity: return n;
        case Kind::twice: return 2 * n;
        case Kind::square: return n * n;
        case Kind::list:
            if (n >= values_.size())
                throw InvalidArgument("phi " + name_ + " is not defined at " + std::to_string(n));
            return values_[n];
    }
    return 0;
}

void PhiSpec::validate(Weight n_max) const {
    if ((*this)(0) != 0) throw InvalidArgument("phi(0) must be 0");
    for (Weight n = 1; n <= n_max; ++n) {
        const Weight v = (*this)(n);
        if (v < n) throw InvalidArgument("phi(" + std::to_string(n) + ") is below " + std::to_string(n));
        if (v < (*this)(n - 1)) throw InvalidArgument("phi decreases at " + std::to_string(n));
    }
}

DecisionTable gen_t0() {
    DecisionTable t(2, {"f2", "f4", "f3"});
    t.add_row(std::vector<Value>{1, 1, 1}, {1});
    t.add_row(std::vector<Value>{0, 1, 1}, {0, 1, 2});
    t.add_row(std::vector<Value>{1, 1, 0}, {1, 3});
    t.add_row(std::vector<Value>{0, 0, 1}, {2});
    t.add_row(std::vector<Value>{1, 0, 0}, {3});
    t.add_row(std::vector<Value>{0, 0, 0}, {2, 3});
    return t;
}

namespace {

std::vector<std::string> f_names(std::size_t m) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= m; ++i) out.push_back("f" + std::to_string(i));
    return out;
}

}  // namespace

DecisionTable gen_tk(std::size_t k, const Limits& limits) {
    if (k == 0) throw InvalidArgument("T_k needs k >= 1");
    const std::size_t m = k * (k + 1) / 2;
    if (m > limits.max_columns || m >= 63 || (std::size_t{1} << m) > limits.max_rows)
        throw ResourceError("T_" + std::to_string(k) + " has 2^" + std::to_string(m) + " rows over " +
                            std::to_string(m) + " columns, beyond max-rows/max-columns");
    const auto g = gen_gk(k);
    DecisionTable t(2, f_names(m));
    Tuple row(m);
    for (std::size_t x = 0; x < (std::size_t{1} << m); ++x) {
        for (std::size_t c = 0; c < m; ++c) row[c] = static_cast<Value>((x >> (m - 1 - c)) & 1U);
        t.add_row(row, nu_k(g, row));
    }
    return t;
}

DecisionTable gen_tkstar(std::size_t k) {
    const auto g = gen_gk(k);
    DecisionTable t(2, f_names(g.m));
    for (const auto& p : gk_paths(g)) t.add_row(p, nu_k(g, p));
    return t;
}

FamilyTable gen_qn(Weight n, const PhiSpec& phi) {
    if (n == 0) throw InvalidArgument("Q_n needs n >= 1");
    phi.validate(n);
    const Weight v = phi(n);
    const Weight m = v / n;
    const Weight j = v % n;
    if (m + 2 > 4096) throw ResourceError("Q_" + std::to_string(n) + " would have more than 4096 columns");
    const std::size_t size = static_cast<std::size_t>(m + 2);
    const std::size_t first = j == 0 ? 1 : 0;
    std::vector<std::string> attrs;
    WeightMap weights;
    for (std::size_t c = first; c < size; ++c) {
        attrs.push_back("q" + std::to_string(n) + "_" + std::to_string(c + 1));
        weights.emplace(attrs.back(), c == 0 ? j : n);
    }
    DecisionTable t(2, attrs);
    Tuple row(attrs.size());
    for (std::size_t r = first; r < size; ++r) {
        std::fill(row.begin(), row.end(), 0);
        row[r - first] = 1;
        t.add_row(row, {static_cast<Decision>(r + 1)});
    }
    return FamilyTable{"Q_" + std::to_string(n) + "[" + phi.name() + "]", std::move(t), std::move(weights)};
}

DecisionTable gen_threshold(std::vector<std::uint64_t> thresholds, const std::optional<DecisionMap>& nu) {
    std::sort(thresholds.begin(), thresholds.end());
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (thresholds[i] == 0) throw InvalidArgument("thresholds must be positive");
        if (i && thresholds[i] == thresholds[i - 1])
            throw InvalidArgument("threshold " + std::to_string(thresholds[i]) + " is repeated");
    }
    std::vector<std::string> attrs;
    for (auto s : thresholds) attrs.push_back("f" + std::to_string(s));
    DecisionTable t(2, attrs);
    Tuple row(thresholds.size(), 0);
    for (std::size_t r = 0; r <= thresholds.size(); ++r) {
        if (r) row[r - 1] = 1;
        t.add_row(row, {static_cast<Decision>(r)});
    }
    return nu ? change_decisions(t, *nu) : t;
}

DecisionTable gen_random(const RandomSpec& spec) {
    if (spec.k < 2) throw InvalidArgument("random tables need k >= 2");
    if (spec.universe == 0 || spec.universe > 32) throw InvalidArgument("decision universe must be 1..32");
    double space = 1.0;
    for (std::size_t c = 0; c < spec.columns; ++c) space *= spec.k;
    if (static_cast<double>(spec.rows) > space)
        throw InvalidArgument("cannot draw " + std::to_string(spec.rows) + " distinct rows");
    Rng rng(spec.seed);
    DecisionTable t(spec.k, f_names(spec.columns));
    std::set<Tuple> used;
    Tuple row(spec.columns);
    const std::uint64_t subsets = (std::uint64_t{1} << spec.universe) - 1;
    while (t.rows() < spec.rows) {
        for (auto& v : row) v = static_cast<Value>(rng.below(spec.k));
        if (!used.insert(row).second) continue;
        const std::uint64_t mask = rng.below(subsets) + 1;
        DecisionSet ds;
        for (Decision d = 0; d < spec.universe; ++d)
            if ((mask >> d) & 1U) ds.push_back(d);
        t.add_row(row, std::move(ds));
    }
    return t;
}

FamilyTable generate(const FamilySpec& spec, const Limits& limits) {
    switch (spec.kind) {
        case FamilyKind::t0: return {"T_0", gen_t0(), std::nullopt};
        case FamilyKind::tk: return {"T_" + std::to_string(spec.k), gen_tk(spec.k, limits), std::nullopt};
        case FamilyKind::tkstar: return {"T*_" + std::to_string(spec.k), gen_tkstar(spec.k), std::nullopt};
        case FamilyKind::qn: return gen_qn(spec.n, spec.phi);
        case FamilyKind::threshold: {
            std::string id = "threshold{";
            for (std::size_t i = 0; i < spec.thresholds.size(); ++i)
                id += (i ? "," : "") + std::to_string(spec.thresholds[i]);
            return {id + "}", gen_threshold(spec.thresholds), std::nullopt};
        }
        case FamilyKind::random:
            return {"random(" + std::to_string(spec.random.seed) + ")", gen_random(spec.random), std::nullopt};
    }
    throw InvalidArgument("unknown family");
}

std::size_t r_param(const DecisionTable& t) {
    std::set<DecisionSet> sets;
    for (std::size_t r = 0; r < t.rows(); ++r) sets.insert(t.decisions(r));
    return sets.size();
}

Weight h_step(std::span<const Weight> d, Weight n) {
    if (d.empty()) throw InvalidArgument("H_D needs a nonempty set D");
    Weight out = 0;
    bool any = false;
    for (auto x : d)
        if (x <= n && (!any || x > out)) {
            out = x;
            any = true;
        }
    return any ? out : 0;
}

}  // namespace mvd
