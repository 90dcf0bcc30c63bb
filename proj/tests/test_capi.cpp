#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "mvd.h"

#ifndef MVD_TEST_DATA
#define MVD_TEST_DATA "tests/data"
#endif

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    mvd_string_free(s);
    return out;
}

const char* kT0 = MVD_TEST_DATA "/t0.mvd";

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("load, inspect and solve") {
    mvd_table* t = nullptr;
    REQUIRE(mvd_table_load(kT0, &t) == MVD_OK);
    CHECK(mvd_table_rows(t) == 6);
    CHECK(mvd_table_columns(t) == 3);
    CHECK(mvd_table_k(t) == 2);
    CHECK(std::string(mvd_table_attribute(t, 1)) == "f4");
    CHECK(mvd_table_attribute(t, 9) == nullptr);
    CHECK_FALSE(mvd_table_has_weights(t));
    CHECK_FALSE(mvd_table_is_degenerate(t));

    mvd_measure* m = nullptr;
    REQUIRE(mvd_measure_create("depth", &m) == MVD_OK);
    uint64_t value = 0;
    mvd_tree* g = nullptr;
    REQUIRE(mvd_solve(t, m, MVD_DETERMINISTIC, nullptr, &value, &g) == MVD_OK);
    CHECK(value == 2);
    size_t violations = 99;
    char* msgs = nullptr;
    REQUIRE(mvd_tree_validate(g, t, MVD_DETERMINISTIC, &violations, &msgs) == MVD_OK);
    CHECK(violations == 0);
    CHECK(take(msgs).empty());
    uint64_t cost = 0;
    REQUIRE(mvd_tree_eval(g, m, &cost) == MVD_OK);
    CHECK(cost == 2);

    char* s = nullptr;
    REQUIRE(mvd_tree_export(g, MVD_TREE_STRUCTURED, &s) == MVD_OK);
    mvd_tree* back = nullptr;
    REQUIRE(mvd_tree_import(s, &back) == MVD_OK);
    mvd_string_free(s);
    REQUIRE(mvd_tree_validate(back, t, MVD_DETERMINISTIC, &violations, nullptr) == MVD_OK);
    CHECK(violations == 0);

    REQUIRE(mvd_solve(t, m, MVD_NONDETERMINISTIC, nullptr, &value, nullptr) == MVD_OK);
    CHECK(value == 1);

    mvd_tree_free(back);
    mvd_tree_free(g);
    mvd_measure_free(m);
    mvd_table_free(t);
}

TEST_CASE("analysis text") {
    mvd_table* t = nullptr;
    REQUIRE(mvd_table_load(kT0, &t) == MVD_OK);
    mvd_measure* m = nullptr;
    REQUIRE(mvd_measure_create("depth", &m) == MVD_OK);
    const uint64_t budgets[] = {1};
    char* out = nullptr;
    int limited = 1;
    REQUIRE(mvd_analyze(t, m, budgets, 1, nullptr, 0, &out, &limited) == MVD_OK);
    CHECK(limited == 0);
    auto text = take(out);
    CHECK(text.find("psi_d 2\n") != std::string::npos);
    CHECK(text.find("l(1) 3\n") != std::string::npos);
    REQUIRE(mvd_analyze(t, m, budgets, 1, nullptr, 1, &out, nullptr) == MVD_OK);
    CHECK(take(out).find("\"schema\"") != std::string::npos);
    mvd_limits lim;
    mvd_limits_default(&lim);
    lim.max_bb_nodes = 1;
    REQUIRE(mvd_analyze(t, m, budgets, 1, &lim, 0, &out, &limited) == MVD_OK);
    CHECK(limited == 1);
    CHECK(take(out).find("l(1) n/a (") != std::string::npos);
    mvd_measure_free(m);
    mvd_table_free(t);
}

TEST_CASE("error codes and messages") {
    mvd_table* t = nullptr;
    const char bad[] = "k 2\nattrs a\nrow 3 : 1\n";
    CHECK(mvd_table_parse(bad, std::strlen(bad), &t) == MVD_ERR_FORMAT);
    CHECK(t == nullptr);
    CHECK(std::string(mvd_last_error()).find("line 3") != std::string::npos);
    CHECK(mvd_table_load("/nonexistent/x.mvd", &t) == MVD_ERR_IO);
    CHECK(mvd_table_load(nullptr, &t) == MVD_ERR_INVALID_ARGUMENT);
    mvd_measure* m = nullptr;
    CHECK(mvd_measure_create("cubic", &m) == MVD_ERR_INVALID_ARGUMENT);
    CHECK(mvd_measure_create(nullptr, &m) == MVD_ERR_INVALID_ARGUMENT);
    CHECK(std::string(mvd_status_name(MVD_ERR_RESOURCE)) == "resource limit");

    REQUIRE(mvd_table_load(kT0, &t) == MVD_OK);
    REQUIRE(mvd_measure_create("wmax", &m) == MVD_OK);
    REQUIRE(mvd_measure_set_fallback(m, 1) == MVD_OK);
    uint64_t v = 0;
    CHECK(mvd_solve(t, m, MVD_DETERMINISTIC, nullptr, &v, nullptr) == MVD_ERR_MEASURE);
    mvd_measure_free(m);

    REQUIRE(mvd_measure_create("depth", &m) == MVD_OK);
    mvd_limits lim;
    mvd_limits_default(&lim);
    lim.max_memo = 1;
    CHECK(mvd_solve(t, m, MVD_DETERMINISTIC, &lim, &v, nullptr) == MVD_ERR_RESOURCE);
    CHECK(std::string(mvd_last_error()).find("max-memo") != std::string::npos);
    CHECK(mvd_solve(nullptr, m, MVD_DETERMINISTIC, nullptr, &v, nullptr) == MVD_ERR_INVALID_ARGUMENT);
    mvd_measure_free(m);
    mvd_table_free(t);
}

TEST_CASE("weights and measures") {
    mvd_family_spec spec;
    mvd_family_spec_default(&spec);
    spec.kind = MVD_FAMILY_QN;
    spec.n = 3;
    spec.phi = "double";
    mvd_table* q = nullptr;
    REQUIRE(mvd_generate(&spec, nullptr, &q) == MVD_OK);
    CHECK(mvd_table_has_weights(q));
    mvd_measure* m = nullptr;
    REQUIRE(mvd_measure_create("wsum", &m) == MVD_OK);
    REQUIRE(mvd_measure_add_table_weights(m, q) == MVD_OK);
    uint64_t v = 0;
    REQUIRE(mvd_solve(q, m, MVD_DETERMINISTIC, nullptr, &v, nullptr) == MVD_OK);
    CHECK(v == 6);
    REQUIRE(mvd_solve(q, m, MVD_NONDETERMINISTIC, nullptr, &v, nullptr) == MVD_OK);
    CHECK(v == 3);
    REQUIRE(mvd_measure_set_weight(m, "q3_1", 1) == MVD_OK);
    CHECK(mvd_measure_set_weight(m, "q3_1", 0) == MVD_ERR_MEASURE);
    char* d = nullptr;
    REQUIRE(mvd_measure_describe(m, &d) == MVD_OK);
    CHECK(take(d).rfind("wsum{", 0) == 0);
    mvd_measure_free(m);

    auto path = (std::filesystem::temp_directory_path() / "mvd_capi_q3.mvd").string();
    REQUIRE(mvd_table_save(q, path.c_str(), 0) == MVD_OK);
    mvd_table* again = nullptr;
    REQUIRE(mvd_table_load(path.c_str(), &again) == MVD_OK);
    char* a = nullptr;
    char* b = nullptr;
    REQUIRE(mvd_table_serialize(q, 0, &a) == MVD_OK);
    REQUIRE(mvd_table_serialize(again, 0, &b) == MVD_OK);
    CHECK(take(a) == take(b));
    std::filesystem::remove(path);
    mvd_table_free(again);
    mvd_table_free(q);
}

TEST_CASE("verification reports") {
    mvd_report* r = nullptr;
    REQUIRE(mvd_report_create(&r) == MVD_OK);
    mvd_table* t = nullptr;
    REQUIRE(mvd_table_load(kT0, &t) == MVD_OK);
    mvd_measure* m = nullptr;
    REQUIRE(mvd_measure_create("depth", &m) == MVD_OK);
    REQUIRE(mvd_verify_table(r, t, "t0", m, nullptr) == MVD_OK);
    REQUIRE(mvd_verify_construction(r, t, "t0", m, 1, MVD_CONSTRUCTION_M1, nullptr) == MVD_OK);
    mvd_family_check_params p;
    mvd_family_check_params_default(&p);
    p.max_k = 2;
    REQUIRE(mvd_verify_family(r, MVD_CHECK_TK, &p, nullptr) == MVD_OK);
    CHECK(mvd_report_count(r, MVD_CHECK_FAIL) == 0);
    CHECK(mvd_report_count(r, MVD_CHECK_PASS) >= 8);
    CHECK(mvd_report_exit_code(r) == 0);
    char* text = nullptr;
    REQUIRE(mvd_report_render(r, 0, &text) == MVD_OK);
    CHECK(take(text).find("[PASS] m1_nondet_le_budget t0") != std::string::npos);

    const mvd_table* tables[] = {t};
    const char* ids[] = {"t0"};
    char* prof = nullptr;
    int partial = 1;
    REQUIRE(mvd_profile(tables, ids, 1, m, 2, nullptr, 0, &prof, &partial) == MVD_OK);
    CHECK(partial == 0);
    CHECK_FALSE(take(prof).empty());

    mvd_measure_free(m);
    mvd_table_free(t);
    mvd_report_free(r);
}

TEST_CASE("limits from the environment") {
    mvd_limits lim;
    mvd_limits_default(&lim);
    CHECK(lim.max_memo > 0);
    CHECK(std::string(mvd_version()).size() > 0);
}

TEST_CASE("freeing null handles is a no-op") {
    mvd_table_free(nullptr);
    mvd_measure_free(nullptr);
    mvd_tree_free(nullptr);
    mvd_report_free(nullptr);
    mvd_string_free(nullptr);
}

}  // TEST_SUITE
