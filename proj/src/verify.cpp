#include "mvd/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mvd/errors.hpp"
#include "mvd/params.hpp"
#include "mvd/rng.hpp"
#include "mvd/solvers.hpp"

namespace mvd {

using nlohmann::json;

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
        case CheckStatus::error: return "error";
    }
    return "?";
}

namespace {

struct Skip {
    std::string reason;
};

struct Outcome {
    double left = 0;
    double right = 0;
    bool pass = false;
    std::string detail;
};

std::string format_number(double x) {
    if (std::isfinite(x) && std::floor(x) == x && std::fabs(x) < 9.0e15) {
        std::ostringstream os;
        os << static_cast<long long>(x);
        return os.str();
    }
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

struct CheckContext {
    std::string table_id;
    std::string measure;
    std::optional<Weight> budget;
};

CheckRecord run_check(const CheckContext& ctx, std::string check, std::string anchor, std::string relation,
                      const std::function<Outcome()>& body) {
    CheckRecord r;
    r.check = std::move(check);
    r.anchor = std::move(anchor);
    r.relation = std::move(relation);
    r.table_id = ctx.table_id;
    r.measure = ctx.measure;
    r.budget = ctx.budget;
    const auto start = std::chrono::steady_clock::now();
    try {
        Outcome o = body();
        r.left = o.left;
        r.right = o.right;
        r.status = o.pass ? CheckStatus::pass : CheckStatus::fail;
        r.detail = std::move(o.detail);
    } catch (const Skip& s) {
        r.status = CheckStatus::skipped;
        r.detail = s.reason;
    } catch (const std::exception& e) {
        r.status = CheckStatus::error;
        r.detail = e.what();
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

Outcome le(Weight a, Weight b) { return {double(a), double(b), a <= b, {}}; }
Outcome ge(Weight a, Weight b) { return {double(a), double(b), a >= b, {}}; }
Outcome eq(Weight a, Weight b) { return {double(a), double(b), a == b, {}}; }

Weight det_value(const DecisionTable& t, const Measure& m, const Limits& l) { return solve_det(t, m, l).value; }
Weight nondet_value(const DecisionTable& t, const Measure& m, const Limits& l) {
    return solve_nondet(t, m, l).value;
}

// base^exp, saturating at the largest Weight.
Weight sat_pow(Weight base, Weight exp) {
    Weight out = 1;
    for (Weight i = 0; i < exp; ++i) {
        if (base != 0 && out > std::numeric_limits<Weight>::max() / base) return std::numeric_limits<Weight>::max();
        out *= base;
    }
    return out;
}

}  // namespace

void VerificationReport::append(VerificationReport other) {
    for (auto& r : other.records) records.push_back(std::move(r));
}

void VerificationReport::sort() {
    std::stable_sort(records.begin(), records.end(), [](const CheckRecord& a, const CheckRecord& b) {
        return std::tie(a.check, a.table_id, a.budget) < std::tie(b.check, b.table_id, b.budget);
    });
}

std::size_t VerificationReport::count(CheckStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [&](const CheckRecord& r) { return r.status == s; }));
}

int VerificationReport::exit_code() const {
    if (count(CheckStatus::fail)) return 1;
    if (count(CheckStatus::error)) return 3;
    return 0;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    for (const auto& r : records) {
        std::string tag(to_string(r.status));
        std::transform(tag.begin(), tag.end(), tag.begin(), ::toupper);
        os << '[' << tag << "] " << r.check << ' ' << r.table_id << ' ' << r.measure;
        if (r.budget) os << " n=" << *r.budget;
        if (r.status == CheckStatus::pass || r.status == CheckStatus::fail)
            os << ": " << format_number(r.left) << ' ' << r.relation << ' ' << format_number(r.right) << " ("
               << r.anchor << ')';
        if (!r.detail.empty()) os << (r.status == CheckStatus::pass || r.status == CheckStatus::fail ? " " : ": ")
                                  << r.detail;
        os << '\n';
    }
    os << count(CheckStatus::pass) << " passed, " << count(CheckStatus::fail) << " failed, "
       << count(CheckStatus::skipped) << " skipped, " << count(CheckStatus::error) << " errors\n";
    return os.str();
}

std::string VerificationReport::to_json() const {
    json recs = json::array();
    for (const auto& r : records) {
        json j{{"check", r.check},   {"anchor", r.anchor},           {"table", r.table_id},
               {"measure", r.measure}, {"status", to_string(r.status)}, {"relation", r.relation},
               {"left", r.left},     {"right", r.right},             {"detail", r.detail},
               {"wall_ms", r.wall_ms}};
        j["budget"] = r.budget ? json(*r.budget) : json(nullptr);
        recs.push_back(std::move(j));
    }
    json out{{"schema", 1},
             {"kind", "verification-report"},
             {"records", std::move(recs)},
             {"summary",
              {{"pass", count(CheckStatus::pass)},
               {"fail", count(CheckStatus::fail)},
               {"skipped", count(CheckStatus::skipped)},
               {"error", count(CheckStatus::error)}}}};
    return out.dump(2) + "\n";
}

VerificationReport check_bounds(const DecisionTable& t, const Measure& m, const std::string& table_id,
                                const Limits& limits) {
    VerificationReport rep;
    const CheckContext ctx{table_id, m.describe(), std::nullopt};

    rep.records.push_back(run_check(ctx, "det_le_total_weight", "psi_d(T) <= W_psi(T)", "<=", [&] {
        return le(det_value(t, m, limits), total_weight(t, m));
    }));

    rep.records.push_back(run_check(ctx, "det_le_cert_log_rows", "psi_d(T) <= M_psi(T) * log2 N(T)", "<=", [&] {
        const Weight d = det_value(t, m, limits);
        if (t.is_empty() || is_degenerate(t)) return Outcome{double(d), 0.0, d == 0, "degenerate table"};
        const double rhs = double(m_param(t, m, Scope::all, limits)) * std::log2(double(t.rows()));
        return Outcome{double(d), rhs, double(d) <= rhs + 1e-9, {}};
    }));

    rep.records.push_back(run_check(ctx, "nondet_le_det", "psi_a(T) <= psi_d(T)", "<=", [&] {
        return le(nondet_value(t, m, limits), det_value(t, m, limits));
    }));

    rep.records.push_back(run_check(ctx, "nondet_eq_row_cert", "psi_a(T) = max over rows of M_psi(T, row)", "=", [&] {
        return eq(nondet_value(t, m, limits), m_param(t, m, Scope::rows, limits));
    }));

    rep.records.push_back(run_check(ctx, "rows_le_shatter_bound", "N(T) <= (4 W(T))^Z(T)", "<=", [&]() -> Outcome {
        if (t.k() != 2) throw Skip{"binary tables only"};
        if (t.is_empty()) throw Skip{"empty table"};
        const Weight z = z_param(t, limits).value;
        const Weight rhs = sat_pow(4 * t.columns(), z);
        Outcome o{double(t.rows()), std::pow(4.0 * double(t.columns()), double(z)), t.rows() <= rhs,
                  "Z=" + std::to_string(z)};
        return o;
    }));

    rep.records.push_back(run_check(ctx, "det_ge_cert_all", "h_d(T) >= M(T)", ">=", [&]() -> Outcome {
        if (m.kind() != MeasureKind::depth) throw Skip{"depth measure only"};
        return ge(det_value(t, m, limits), m_param(t, m, Scope::all, limits));
    }));
    rep.sort();
    return rep;
}

namespace {

VerificationReport construction_m1(const DecisionTable& t, const Measure& m, Weight n, const CheckContext& ctx,
                                   const Limits& limits) {
    VerificationReport rep;
    std::optional<DecisionTable> star;
    std::size_t l = 0;
    auto prepare = [&] {
        if (star) return;
        if (t.is_empty()) throw Skip{"empty table"};
        const LResult lr = l_param(t, m, n, limits);
        l = lr.value;
        if (l == 0) throw Skip{"l(T, n) = 0"};
        if (auto p = cover_problems(t, m, lr.cover); !p.empty()) throw Error("cover witness broken: " + p.front());
        std::map<Tuple, DecisionSet> rule;
        for (std::size_t r = 0; r < t.rows(); ++r) {
            DecisionSet ds;
            for (std::size_t j = 0; j < lr.cover.coverage.size(); ++j) {
                const auto& cov = lr.cover.coverage[j];
                if (std::binary_search(cov.begin(), cov.end(), r)) ds.push_back(static_cast<Decision>(j + 1));
            }
            rule.emplace(Tuple(t.row(r).begin(), t.row(r).end()), std::move(ds));
        }
        star = change_decisions(t, DecisionMap::extensional(std::move(rule), DecisionSet{0}, "cover-index"));
    };
    rep.records.push_back(run_check(ctx, "m1_nondet_le_budget", "psi_a(T*) <= n", "<=", [&] {
        prepare();
        return le(nondet_value(*star, m, limits), n);
    }));
    rep.records.push_back(run_check(ctx, "m1_det_ge_log_cover", "psi_d(T*) >= log_k l(T, n)", ">=", [&] {
        prepare();
        const Weight d = det_value(*star, m, limits);
        const double rhs = std::log(double(l)) / std::log(double(t.k()));
        return Outcome{double(d), rhs, sat_pow(t.k(), d) >= l, "l=" + std::to_string(l)};
    }));
    return rep;
}

VerificationReport construction_m10(const DecisionTable& t, const Measure& m, Weight n, const CheckContext& ctx,
                                    const Limits& limits) {
    VerificationReport rep;
    std::optional<DecisionTable> star;
    std::size_t g = 0;
    std::string word;
    auto prepare = [&] {
        if (star) return;
        if (t.k() != 2) throw Skip{"binary tables only"};
        if (t.is_empty()) throw Skip{"empty table"};
        if (m.m_psi(t) > n) throw Skip{"m_psi(T) exceeds n"};
        const GResult gr = g_param(t, limits);
        g = gr.value;
        if (g == 0) throw Skip{"G(T) = 0"};
        word = gr.word.to_string();
        std::vector<std::string> removed;
        Tuple sigma;
        for (const auto& a : t.attributes()) {
            if (auto v = gr.word.value_of(a)) sigma.push_back(*v);
            else removed.push_back(a);
        }
        const DecisionTable reduced = remove_columns(t, removed);
        DecisionMap nu("annihilator-diff", [sigma](std::span<const Value> x) {
            DecisionSet ds;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i] != sigma[i]) ds.push_back(static_cast<Decision>(i + 1));
            if (ds.empty()) ds.push_back(0);
            return ds;
        });
        star = change_decisions(reduced, nu);
    };
    rep.records.push_back(run_check(ctx, "m10_nondet_le_budget", "psi_a(T*) <= n", "<=", [&] {
        prepare();
        auto o = le(nondet_value(*star, m, limits), n);
        o.detail = "word " + word;
        return o;
    }));
    rep.records.push_back(run_check(ctx, "m10_depth_nondet_le_1", "h_a(T*) <= 1", "<=", [&] {
        prepare();
        return le(nondet_value(*star, Measure::depth(), limits), 1);
    }));
    rep.records.push_back(run_check(ctx, "m10_det_ge_g_minus_1", "psi_d(T*) >= G(T) - 1", ">=", [&] {
        prepare();
        auto o = ge(det_value(*star, m, limits), g - 1);
        o.detail = "G=" + std::to_string(g);
        return o;
    }));
    return rep;
}

}  // namespace

VerificationReport check_construction(const DecisionTable& t, const Measure& m, Weight n, Construction which,
                                      const std::string& table_id, const Limits& limits) {
    const CheckContext ctx{table_id, m.describe(), n};
    auto rep = which == Construction::m1 ? construction_m1(t, m, n, ctx, limits) : construction_m10(t, m, n, ctx, limits);
    rep.sort();
    return rep;
}

namespace {

VerificationReport families_tk(const FamilyCheckParams& p, const Limits& limits) {
    VerificationReport rep;
    const Measure depth = Measure::depth();
    for (std::size_t k = p.min_k; k <= p.max_k; ++k) {
        const CheckContext ctx{"T_" + std::to_string(k), depth.describe(), std::nullopt};
        rep.records.push_back(run_check(ctx, "tk_nondet_le_3", "h_a(T_k) <= 3", "<=", [&] {
            return le(nondet_value(gen_tk(k, limits), depth, limits), 3);
        }));
        rep.records.push_back(run_check(ctx, "tk_det_ge_k_minus_1", "h_d(T_k) >= k - 1", ">=", [&] {
            return ge(det_value(gen_tk(k, limits), depth, limits), k - 1);
        }));
        const CheckContext sctx{"T*_" + std::to_string(k), depth.describe(), std::nullopt};
        rep.records.push_back(run_check(sctx, "tkstar_zero_chain_decisions",
                                        "r(T*_k restricted to n zero letters) >= max(1, k - n), violations", "=", [&] {
            const DecisionTable star = gen_tkstar(k);
            const std::size_t m = star.columns();
            std::vector<std::uint64_t> subsets;
            const bool exhaustive = m < 13;
            if (exhaustive) {
                for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) subsets.push_back(s);
            } else {
                Rng rng(p.seed ^ k);
                for (int i = 0; i < 4096; ++i) subsets.push_back(rng.next() & ((std::uint64_t{1} << m) - 1));
            }
            std::size_t violations = 0, checked = 0;
            for (auto s : subsets) {
                std::vector<Letter> letters;
                for (std::size_t c = 0; c < m; ++c)
                    if ((s >> c) & 1U) letters.push_back({star.attribute(c), 0});
                const std::size_t len = letters.size();
                const DecisionTable sub = subtable(star, Assignment(std::move(letters)));
                if (sub.is_empty()) continue;
                ++checked;
                const std::size_t need = std::max<std::size_t>(1, k > len ? k - len : 0);
                if (r_param(sub) < need) ++violations;
            }
            return Outcome{double(violations), 0.0, violations == 0,
                           std::to_string(checked) + (exhaustive ? " chains (all)" : " chains (sampled)")};
        }));
    }
    return rep;
}

VerificationReport families_qn(const FamilyCheckParams& p) {
    VerificationReport rep;
    for (Weight n = p.min_n; n <= p.max_n; ++n) {
        const CheckContext ctx{"Q_" + std::to_string(n) + "[" + p.phi.name() + "]", "wsum(Q_n weights)", n};
        auto make = [&] {
            FamilyTable f = gen_qn(n, p.phi);
            return std::make_pair(f.table, Measure::weighted_sum(*f.weights));
        };
        rep.records.push_back(run_check(ctx, "qn_nondet_eq_n", "psi_a(Q_n) = n", "=", [&] {
            auto [t, m] = make();
            return eq(nondet_value(t, m, {}), n);
        }));
        rep.records.push_back(run_check(ctx, "qn_det_eq_phi", "psi_d(Q_n) = phi(n)", "=", [&] {
            auto [t, m] = make();
            return eq(det_value(t, m, {}), p.phi(n));
        }));
    }
    return rep;
}

VerificationReport families_threshold(const FamilyCheckParams& p, const Limits& limits) {
    VerificationReport rep;
    std::vector<std::vector<std::uint64_t>> sets = p.sets;
    Rng rng(p.seed);
    const std::uint64_t range = std::max<std::uint64_t>(p.max_threshold, p.max_size);
    for (std::size_t i = 0; i < p.count && p.max_size > 0; ++i) {
        const std::size_t size = 1 + rng.below(p.max_size);
        std::set<std::uint64_t> s;
        while (s.size() < size) s.insert(1 + rng.below(range));
        sets.emplace_back(s.begin(), s.end());
    }
    const Measure depth = Measure::depth();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::string id = "threshold{";
        auto sorted = sets[i];
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t j = 0; j < sorted.size(); ++j) id += (j ? "," : "") + std::to_string(sorted[j]);
        id += "}#" + std::to_string(i);
        const CheckContext ctx{id, depth.describe(), std::nullopt};
        rep.records.push_back(run_check(ctx, "threshold_z_le_1", "Z(T) <= 1", "<=", [&] {
            return le(z_param(gen_threshold(sets[i]), limits).value, 1);
        }));
        rep.records.push_back(run_check(ctx, "threshold_g_le_2", "G(T) <= 2", "<=", [&] {
            return le(g_param(gen_threshold(sets[i]), limits).value, 2);
        }));
    }
    return rep;
}

}  // namespace

VerificationReport check_families(FamilyCheck which, const FamilyCheckParams& params, const Limits& limits) {
    VerificationReport rep;
    switch (which) {
        case FamilyCheck::tk: rep = families_tk(params, limits); break;
        case FamilyCheck::qn: rep = families_qn(params); break;
        case FamilyCheck::threshold: rep = families_threshold(params, limits); break;
    }
    rep.sort();
    return rep;
}

ClassProfile empirical_profile(const std::vector<NamedTable>& tables, const Measure& m, Weight n_max,
                               const Limits& limits) {
    m.require_bounded();
    ClassProfile out;
    out.measure = m.describe();
    out.n_max = n_max;
    out.h.assign(n_max + 1, 0);
    out.l.assign(n_max + 1, 0);
    out.z.assign(n_max + 1, 0);
    out.g.assign(n_max + 1, 0);
    auto note = [&](const std::string& id, const std::string& what, const std::exception& e) {
        out.partial = true;
        out.errors.push_back(id + ": " + what + ": " + e.what());
    };
    for (const auto& nt : tables) {
        out.table_ids.push_back(nt.id);
        const auto& t = nt.table;
        try {
            const Weight a = nondet_value(t, m, limits);
            const Weight d = det_value(t, m, limits);
            for (Weight n = a; n <= n_max; ++n) out.h[n] = std::max(out.h[n], d);
        } catch (const std::exception& e) {
            note(nt.id, "psi_a/psi_d", e);
        }
        for (Weight n = 0; n <= n_max; ++n) {
            try {
                out.l[n] = std::max<Weight>(out.l[n], l_param(t, m, n, limits).value);
            } catch (const std::exception& e) {
                note(nt.id, "l(" + std::to_string(n) + ")", e);
            }
        }
        if (t.k() != 2) continue;
        const Weight mp = m.m_psi(t);
        if (mp > n_max) continue;
        try {
            const Weight z = z_param(t, limits).value;
            const Weight g = g_param(t, limits).value;
            for (Weight n = mp; n <= n_max; ++n) {
                out.z[n] = std::max(out.z[n], z);
                out.g[n] = std::max(out.g[n], g);
            }
        } catch (const std::exception& e) {
            note(nt.id, "Z/G", e);
        }
    }
    return out;
}

std::string ClassProfile::to_text() const {
    std::ostringstream os;
    os << "tables";
    for (const auto& id : table_ids) os << ' ' << id;
    os << "\nmeasure " << measure << "\n";
    os << "# finite-set lower bound" << (partial ? ", partial" : "") << "\n";
    os << "n H L Z G\n";
    for (Weight n = 0; n <= n_max; ++n)
        os << n << ' ' << h[n] << ' ' << l[n] << ' ' << z[n] << ' ' << g[n] << '\n';
    for (const auto& e : errors) os << "# error " << e << '\n';
    return os.str();
}

std::string ClassProfile::to_json() const {
    json flags = json::array({"finite-set lower bound"});
    if (partial) flags.push_back("partial");
    json out{{"schema", 1}, {"kind", "class-profile"}, {"tables", table_ids}, {"measure", measure},
             {"n_max", n_max}, {"H", h}, {"L", l}, {"Z", z}, {"G", g}, {"flags", flags}, {"errors", errors}};
    return out.dump(2) + "\n";
}

TableSummary summarize(const DecisionTable& t, const Measure& m, const std::vector<Weight>& budgets,
                       const Limits& limits) {
    TableSummary s;
    auto add = [&](std::string key, const std::function<Weight()>& f) {
        SummaryValue v{std::move(key), std::nullopt, {}};
        try {
            v.value = f();
        } catch (const ResourceError& e) {
            v.note = e.what();
            v.resource_limited = true;
        } catch (const std::exception& e) {
            v.note = e.what();
        }
        s.values.push_back(std::move(v));
    };
    add("N", [&] { return Weight(t.rows()); });
    add("W", [&] { return Weight(t.columns()); });
    add("W_psi", [&] { return total_weight(t, m); });
    add("m_psi", [&] { return m.m_psi(t); });
    add("M_rows", [&] { return m_param(t, m, Scope::rows, limits); });
    add("M_all", [&] { return m_param(t, m, Scope::all, limits); });
    add("psi_a", [&] { return nondet_value(t, m, limits); });
    add("psi_d", [&] { return det_value(t, m, limits); });
    add("Z", [&] { return Weight(z_param(t, limits).value); });
    add("G", [&] { return Weight(g_param(t, limits).value); });
    for (auto n : budgets) add("l(" + std::to_string(n) + ")", [&] { return Weight(l_param(t, m, n, limits).value); });
    return s;
}

bool TableSummary::resource_limited() const {
    return std::any_of(values.begin(), values.end(), [](const SummaryValue& v) { return v.resource_limited; });
}

std::string TableSummary::to_text() const {
    std::ostringstream os;
    for (const auto& v : values) {
        os << v.key << ' ';
        if (v.value) os << *v.value;
        else os << "n/a (" << v.note << ')';
        os << '\n';
    }
    return os.str();
}

std::string TableSummary::to_json() const {
    json vals = json::object();
    json notes = json::object();
    for (const auto& v : values) {
        vals[v.key] = v.value ? json(*v.value) : json(nullptr);
        if (!v.value) notes[v.key] = v.note;
    }
    json out{{"schema", 1}, {"kind", "table-summary"}, {"values", vals}, {"notes", notes}};
    return out.dump(2) + "\n";
}

}  // namespace mvd
