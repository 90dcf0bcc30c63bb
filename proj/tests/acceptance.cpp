// Acceptance suite: one [PASS]/[FAIL] line per criterion. Exits nonzero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvd/families.hpp"
#include "mvd/io.hpp"
#include "mvd/params.hpp"
#include "mvd/solvers.hpp"
#include "mvd/verify.hpp"
#include "oracles.hpp"

#ifndef MVD_TEST_DATA
#define MVD_TEST_DATA "tests/data"
#endif

using namespace mvd;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) note << "; ";
            ok = false;
            note << what;
        }
    }
};

int failures = 0;

void criterion(const char* id, const char* title, double budget_ms, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.note << "exception: " << e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (ms > budget_ms) {
        o.ok = false;
        o.note << (o.note.tellp() > 0 ? "; " : "") << "runtime over " << budget_ms << " ms";
    }
    std::printf("[%s] %s %s (%.0f ms of %.0f) %s\n", o.ok ? "PASS" : "FAIL", id, title, ms, budget_ms,
                o.note.str().c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
}

std::string str(std::uint64_t v) { return std::to_string(v); }

std::string mismatch(const char* what, std::uint64_t got, std::uint64_t want) {
    return std::string(what) + " = " + str(got) + ", expected " + str(want);
}

}  // namespace

int main() {
    criterion("AC1", "example table golden values", 1000, [](Outcome& o) {
        const auto t = load_table_file(MVD_TEST_DATA "/t0.mvd").table;
        const auto d = Measure::depth();
        const std::vector<std::pair<const char*, std::pair<std::uint64_t, std::uint64_t>>> values{
            {"h_d", {solve_det(t, d).value, 2}},
            {"h_a", {solve_nondet(t, d).value, 1}},
            {"m_h", {d.m_psi(t), 1}},
            {"W", {total_weight(t, d), 3}},
            {"N", {t.rows(), 6}},
            {"M(all)", {m_param(t, d, Scope::all), 2}},
            {"Z", {z_param(t).value, 2}},
            {"G", {g_param(t).value, 3}},
            {"l(0)", {l_param(t, d, 0).value, 1}},
            {"l(1)", {l_param(t, d, 1).value, 3}},
            {"l(2)", {l_param(t, d, 2).value, 6}},
        };
        for (const auto& [name, v] : values) o.expect(v.first == v.second, mismatch(name, v.first, v.second));
        o.note << (o.ok ? "all 11 values exact" : "");
    });

    criterion("AC2", "column removal then min/max rewriting", 1000, [](Outcome& o) {
        const std::vector<std::string> removed{"f4"};
        const auto j = change_decisions(remove_columns(gen_t0(), removed), DecisionMap::min_max());
        DecisionTable expected(2, {"f2", "f3"});
        expected.add_row(std::vector<Value>{1, 1}, {1});
        expected.add_row(std::vector<Value>{0, 1}, {0, 1});
        expected.add_row(std::vector<Value>{1, 0}, {0, 1});
        expected.add_row(std::vector<Value>{0, 0}, {0});
        o.expect(j == expected, "table differs:\n" + serialize_table(j));
        if (o.ok) o.note << "4 rows match cell for cell";
    });

    criterion("AC3", "T_k separation for k = 1..4", 60000, [](Outcome& o) {
        for (std::size_t k = 1; k <= 4; ++k) {
            const auto t = gen_tk(k);
            const auto a = solve_nondet(t, Measure::depth()).value;
            const auto d = solve_det(t, Measure::depth()).value;
            o.note << "k=" << k << ": h_a=" << a << " h_d=" << d << (k < 4 ? ", " : "");
            o.expect(a <= 3, "h_a(T_" + str(k) + ") > 3");
            o.expect(d + 1 >= k, "h_d(T_" + str(k) + ") < k-1");
        }
    });

    criterion("AC4", "Q_n equalities, identity and double, n = 1..4", 5000, [](Outcome& o) {
        for (const auto& phi : {PhiSpec::identity(), PhiSpec::twice()}) {
            for (Weight n = 1; n <= 4; ++n) {
                const auto q = gen_qn(n, phi);
                const auto m = Measure::weighted_sum(*q.weights);
                const auto a = solve_nondet(q.table, m).value;
                const auto d = solve_det(q.table, m).value;
                const std::string id = "Q_" + str(n) + "[" + phi.name() + "]";
                o.expect(a == n, id + ": " + mismatch("psi_a", a, n));
                o.expect(d == phi(n), id + ": " + mismatch("psi_d", d, phi(n)));
            }
        }
        if (o.ok) o.note << "8 tables, psi_a = n and psi_d = phi(n) exactly";
    });

    criterion("AC5", "bound suite on 200 random binary tables", 60000, [](Outcome& o) {
        VerificationReport all;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            RandomSpec s;
            s.seed = 1000 + seed;
            s.columns = 1 + seed % 5;
            s.rows = std::min<std::size_t>(1 + (seed * 7) % 20, std::size_t{1} << s.columns);
            s.universe = 2 + seed % 3;
            all.append(check_bounds(gen_random(s), Measure::depth(), "random-" + str(seed)));
        }
        const auto fail = all.count(CheckStatus::fail);
        const auto err = all.count(CheckStatus::error);
        o.expect(all.records.size() == 200 * 6, "expected 1200 records");
        o.expect(fail == 0, str(fail) + " failed checks");
        o.expect(err == 0, str(err) + " checks raised errors");
        o.note << all.count(CheckStatus::pass) << " passed, " << all.count(CheckStatus::skipped) << " skipped";
        if (!o.ok) {
            for (auto& r : all.records)
                if (r.status == CheckStatus::fail || r.status == CheckStatus::error)
                    o.note << "\n  " << r.check << ' ' << r.table_id << ' ' << r.detail;
        }
    });

    criterion("AC6", "constructions on the example table", 5000, [](Outcome& o) {
        const auto t = gen_t0();
        auto pick = [](const VerificationReport& r, const std::string& check) -> const CheckRecord& {
            for (const auto& x : r.records)
                if (x.check == check) return x;
            throw std::runtime_error("missing record " + check);
        };
        const auto m1 = check_construction(t, Measure::depth(), 1, Construction::m1, "t0");
        const auto& m1a = pick(m1, "m1_nondet_le_budget");
        const auto& m1d = pick(m1, "m1_det_ge_log_cover");
        o.expect(m1a.status == CheckStatus::pass && m1a.left <= 1, "m1: psi_a(T*) > 1");
        o.expect(m1d.status == CheckStatus::pass && m1d.left >= 2, "m1: psi_d(T*) < 2");
        const auto m10 = check_construction(t, Measure::depth(), 1, Construction::m10, "t0");
        const auto& m10a = pick(m10, "m10_depth_nondet_le_1");
        const auto& m10d = pick(m10, "m10_det_ge_g_minus_1");
        o.expect(m10a.status == CheckStatus::pass && m10a.left <= 1, "m10: h_a(T*) > 1");
        o.expect(m10d.status == CheckStatus::pass && m10d.left >= 2, "m10: h_d(T*) < 2");
        o.note << "m1: psi_a=" << m1a.left << " psi_d=" << m1d.left << "; m10: h_a=" << m10a.left
               << " h_d=" << m10d.left;
    });

    criterion("AC7", "brute-force oracle equivalence", 600000, [](Outcome& o) {
        auto tables = oracle::all_two_column_tables();
        const std::size_t two = tables.size();
        for (auto& t : oracle::three_column_tables(5000, 2024)) tables.push_back(std::move(t));
        std::size_t det_bad = 0, l_bad = 0;
        for (const auto& t : tables) {
            const auto w = oracle::unit(t);
            if (solve_det(t, Measure::depth()).value != oracle::det_value(t, w)) ++det_bad;
            for (Weight n = 0; n <= 3; ++n)
                if (l_param(t, Measure::depth(), n).value != oracle::l_value(t, w, n)) ++l_bad;
        }
        o.expect(det_bad == 0, str(det_bad) + " solve_det mismatches");
        o.expect(l_bad == 0, str(l_bad) + " l_param mismatches");
        o.note << two << " two-column and " << tables.size() - two << " three-column tables";
    });

    criterion("AC8", "threshold tables: Z <= 1 and G <= 2", 10000, [](Outcome& o) {
        FamilyCheckParams p;
        p.count = 20;
        p.max_size = 6;
        p.seed = 8;
        const auto r = check_families(FamilyCheck::threshold, p);
        o.expect(r.records.size() == 40, "expected 40 records, got " + str(r.records.size()));
        o.expect(r.count(CheckStatus::pass) == r.records.size(), "not every check passed");
        o.note << r.count(CheckStatus::pass) << " of " << r.records.size() << " checks passed";
    });

    criterion("AC9", "profile over T_0, T_1..T_3, Q_1..Q_3", 60000, [](Outcome& o) {
        std::vector<NamedTable> tables{{"t0", gen_t0()}};
        WeightMap weights;
        for (std::size_t k = 1; k <= 3; ++k) tables.push_back({"T_" + str(k), gen_tk(k)});
        for (Weight n = 1; n <= 3; ++n) {
            auto q = gen_qn(n, PhiSpec::twice());
            weights.insert(q.weights->begin(), q.weights->end());
            tables.push_back({q.id, q.table});
        }
        // Unweighted tables fall back to unit weights, i.e. depth.
        const auto m = Measure::weighted_sum(weights, 1);
        const Weight n_max = 2;
        const auto p = empirical_profile(tables, m, n_max);
        o.expect(!p.partial, "profile is partial");
        o.expect(p.h.size() == n_max + 1 && p.h[0] == 0, "H(0) != 0");
        for (std::size_t n = 1; n < p.h.size(); ++n) o.expect(p.h[n - 1] <= p.h[n], "H decreases at " + str(n));
        std::vector<Weight> present;
        for (const auto& t : tables) present.push_back(solve_nondet(t.table, m).value);
        for (Weight n = 0; n <= n_max; ++n)
            o.expect(p.h[n] >= h_step(present, n), "H(" + str(n) + ") below the step bound");
        o.note << "H =";
        for (auto v : p.h) o.note << ' ' << v;
        o.note << ", L =";
        for (auto v : p.l) o.note << ' ' << v;
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
