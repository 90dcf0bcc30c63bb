#include "mvd.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "mvd/errors.hpp"
#include "mvd/families.hpp"
#include "mvd/io.hpp"
#include "mvd/measure.hpp"
#include "mvd/solvers.hpp"
#include "mvd/tree.hpp"
#include "mvd/verify.hpp"

struct mvd_table {
    mvd::TableFile file;
};

struct mvd_measure {
    mvd::MeasureKind kind;
    mvd::WeightMap weights;
    std::optional<mvd::Weight> fallback;

    mvd::Measure build() const {
        switch (kind) {
            case mvd::MeasureKind::depth: return mvd::Measure::depth();
            case mvd::MeasureKind::weighted_sum: return mvd::Measure::weighted_sum(weights, fallback);
            case mvd::MeasureKind::weighted_max: return mvd::Measure::weighted_max(weights, fallback);
        }
        return mvd::Measure::depth();
    }
};

struct mvd_tree {
    mvd::DecisionTree tree;
};

struct mvd_report {
    mvd::VerificationReport report;
};

namespace {

thread_local std::string g_last_error;

mvd_status set_error(mvd_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

template <class F>
mvd_status guard(F&& f) {
    try {
        g_last_error.clear();
        f();
        return MVD_OK;
    } catch (const mvd::FormatError& e) {
        return set_error(MVD_ERR_FORMAT, e.what());
    } catch (const mvd::InvalidArgument& e) {
        return set_error(MVD_ERR_INVALID_ARGUMENT, e.what());
    } catch (const mvd::MeasureError& e) {
        return set_error(MVD_ERR_MEASURE, e.what());
    } catch (const mvd::ResourceError& e) {
        return set_error(MVD_ERR_RESOURCE, e.what());
    } catch (const std::bad_alloc&) {
        return set_error(MVD_ERR_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return set_error(MVD_ERR_INTERNAL, e.what());
    }
}

struct Unreadable {};

template <class T>
T* need(T* p, const char* what) {
    if (!p) throw mvd::InvalidArgument(std::string(what) + " is NULL");
    return p;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

mvd::Limits to_limits(const mvd_limits* l) {
    mvd::Limits out;
    if (!l) return out;
    out.max_columns = l->max_columns;
    out.max_rows = l->max_rows;
    out.max_memo = l->max_memo;
    out.max_words = l->max_words;
    out.max_bb_nodes = l->max_bb_nodes;
    out.max_tuples = l->max_tuples;
    return out;
}

void from_limits(const mvd::Limits& l, mvd_limits* out) {
    out->max_columns = l.max_columns;
    out->max_rows = l.max_rows;
    out->max_memo = l.max_memo;
    out->max_words = l.max_words;
    out->max_bb_nodes = l.max_bb_nodes;
    out->max_tuples = l.max_tuples;
}

std::string read_file(const char* path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Unreadable{};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

extern "C" {

const char* mvd_last_error(void) { return g_last_error.c_str(); }

const char* mvd_status_name(mvd_status s) {
    switch (s) {
        case MVD_OK: return "ok";
        case MVD_ERR_FORMAT: return "format error";
        case MVD_ERR_INVALID_ARGUMENT: return "invalid argument";
        case MVD_ERR_MEASURE: return "measure error";
        case MVD_ERR_RESOURCE: return "resource limit";
        case MVD_ERR_IO: return "i/o error";
        case MVD_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* mvd_version(void) { return "1.0.0"; }

void mvd_string_free(char* s) { std::free(s); }

void mvd_limits_default(mvd_limits* out) {
    if (out) from_limits(mvd::Limits{}, out);
}

mvd_status mvd_limits_from_env(mvd_limits* out) {
    return guard([&] { from_limits(mvd::Limits::from_env(), need(out, "out")); });
}

mvd_status mvd_table_parse(const char* text, size_t len, mvd_table** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        *out = new mvd_table{mvd::parse_table_file(std::string_view(need(text, "text"), len))};
    });
}

mvd_status mvd_table_load(const char* path, mvd_table** out) {
    if (!out || !path) return set_error(MVD_ERR_INVALID_ARGUMENT, "path and out must not be NULL");
    *out = nullptr;
    std::string text;
    try {
        text = read_file(path);
    } catch (const Unreadable&) {
        return set_error(MVD_ERR_IO, std::string("cannot read '") + path + "'");
    }
    return guard([&] {
        try {
            *out = new mvd_table{mvd::parse_table_file(text)};
        } catch (const mvd::FormatError& e) {
            throw mvd::FormatError(std::string(path) + ": " + e.what());
        }
    });
}

mvd_status mvd_table_serialize(const mvd_table* t, int structured, char** out) {
    return guard([&] {
        need(t, "table");
        const auto* w = t->file.weights ? &*t->file.weights : nullptr;
        *need(out, "out") = dup_string(mvd::serialize_table(
            t->file.table, w, structured ? mvd::FileFormat::structured : mvd::FileFormat::text));
    });
}

mvd_status mvd_table_save(const mvd_table* t, const char* path, int structured) {
    char* text = nullptr;
    if (auto s = mvd_table_serialize(t, structured, &text); s != MVD_OK) return s;
    if (!path) {
        mvd_string_free(text);
        return set_error(MVD_ERR_INVALID_ARGUMENT, "path is NULL");
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        mvd_string_free(text);
        return set_error(MVD_ERR_IO, std::string("cannot write '") + path + "'");
    }
    f << text;
    mvd_string_free(text);
    return f ? MVD_OK : set_error(MVD_ERR_IO, std::string("write to '") + path + "' failed");
}

void mvd_table_free(mvd_table* t) { delete t; }

size_t mvd_table_rows(const mvd_table* t) { return t ? t->file.table.rows() : 0; }
size_t mvd_table_columns(const mvd_table* t) { return t ? t->file.table.columns() : 0; }
uint32_t mvd_table_k(const mvd_table* t) { return t ? t->file.table.k() : 0; }

const char* mvd_table_attribute(const mvd_table* t, size_t column) {
    if (!t || column >= t->file.table.columns()) return nullptr;
    return t->file.table.attribute(column).c_str();
}

int mvd_table_has_weights(const mvd_table* t) { return t && t->file.weights ? 1 : 0; }

int mvd_table_is_degenerate(const mvd_table* t) { return t && mvd::is_degenerate(t->file.table) ? 1 : 0; }

mvd_status mvd_measure_create(const char* kind, mvd_measure** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        *out = new mvd_measure{mvd::parse_measure_kind(need(kind, "kind")), {}, std::nullopt};
    });
}

mvd_status mvd_measure_set_weight(mvd_measure* m, const char* attribute, uint64_t weight) {
    return guard([&] {
        need(m, "measure");
        if (weight == 0) throw mvd::MeasureError("weights must be at least 1");
        m->weights[need(attribute, "attribute")] = weight;
    });
}

mvd_status mvd_measure_set_fallback(mvd_measure* m, uint64_t weight) {
    return guard([&] {
        need(m, "measure");
        if (weight == 0) throw mvd::MeasureError("weights must be at least 1");
        m->fallback = weight;
    });
}

mvd_status mvd_measure_load_weights(mvd_measure* m, const char* path) {
    if (!m || !path) return set_error(MVD_ERR_INVALID_ARGUMENT, "measure and path must not be NULL");
    std::string text;
    try {
        text = read_file(path);
    } catch (const Unreadable&) {
        return set_error(MVD_ERR_IO, std::string("cannot read '") + path + "'");
    }
    return guard([&] {
        try {
            for (auto& [k, v] : mvd::parse_weights(text)) m->weights[k] = v;
        } catch (const mvd::FormatError& e) {
            throw mvd::FormatError(std::string(path) + ": " + e.what());
        }
    });
}

mvd_status mvd_measure_add_table_weights(mvd_measure* m, const mvd_table* t) {
    return guard([&] {
        need(m, "measure");
        need(t, "table");
        if (t->file.weights)
            for (auto& [k, v] : *t->file.weights) m->weights[k] = v;
    });
}

mvd_status mvd_measure_describe(const mvd_measure* m, char** out) {
    return guard([&] { *need(out, "out") = dup_string(need(m, "measure")->build().describe()); });
}

void mvd_measure_free(mvd_measure* m) { delete m; }

mvd_status mvd_solve(const mvd_table* t, const mvd_measure* m, mvd_mode mode, const mvd_limits* limits,
                     uint64_t* value, mvd_tree** tree) {
    return guard([&] {
        need(t, "table");
        need(m, "measure");
        if (tree) *tree = nullptr;
        const auto measure = m->build();
        const auto lim = to_limits(limits);
        auto r = mode == MVD_DETERMINISTIC ? mvd::solve_det(t->file.table, measure, lim)
                                           : mvd::solve_nondet(t->file.table, measure, lim);
        if (value) *value = r.value;
        if (tree && r.tree) *tree = new mvd_tree{std::move(*r.tree)};
    });
}

mvd_status mvd_tree_export(const mvd_tree* g, mvd_tree_format format, char** out) {
    return guard([&] {
        *need(out, "out") = dup_string(mvd::export_tree(
            need(g, "tree")->tree, format == MVD_TREE_DOT ? mvd::TreeFormat::dot : mvd::TreeFormat::structured));
    });
}

mvd_status mvd_tree_import(const char* structured, mvd_tree** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        *out = new mvd_tree{mvd::import_tree(need(structured, "text"))};
    });
}

mvd_status mvd_tree_validate(const mvd_tree* g, const mvd_table* t, mvd_mode mode, size_t* violations,
                             char** messages) {
    return guard([&] {
        auto v = mvd::validate_tree(need(g, "tree")->tree, need(t, "table")->file.table,
                                    mode == MVD_DETERMINISTIC ? mvd::TreeMode::deterministic
                                                              : mvd::TreeMode::nondeterministic);
        if (violations) *violations = v.size();
        if (messages) {
            std::string text;
            for (const auto& x : v) text += x.kind + ": " + x.message + "\n";
            *messages = dup_string(text);
        }
    });
}

mvd_status mvd_tree_eval(const mvd_tree* g, const mvd_measure* m, uint64_t* value) {
    return guard([&] { *need(value, "value") = need(m, "measure")->build().eval_tree(need(g, "tree")->tree); });
}

void mvd_tree_free(mvd_tree* g) { delete g; }

mvd_status mvd_analyze(const mvd_table* t, const mvd_measure* m, const uint64_t* budgets, size_t n_budgets,
                       const mvd_limits* limits, int structured, char** out, int* limited) {
    return guard([&] {
        need(t, "table");
        need(out, "out");
        std::vector<mvd::Weight> b;
        for (size_t i = 0; i < n_budgets; ++i) b.push_back(need(budgets, "budgets")[i]);
        const auto s = mvd::summarize(t->file.table, need(m, "measure")->build(), b, to_limits(limits));
        *out = dup_string(structured ? s.to_json() : s.to_text());
        if (limited) *limited = s.resource_limited() ? 1 : 0;
    });
}

void mvd_family_spec_default(mvd_family_spec* out) {
    if (!out) return;
    *out = mvd_family_spec{};
    out->kind = MVD_FAMILY_T0;
    out->k = 1;
    out->n = 1;
    out->phi = "identity";
    out->seed = 0;
    out->columns = 3;
    out->rows = 4;
    out->arity = 2;
    out->universe = 3;
}

mvd_status mvd_generate(const mvd_family_spec* spec, const mvd_limits* limits, mvd_table** out) {
    return guard([&] {
        need(spec, "spec");
        need(out, "out");
        *out = nullptr;
        mvd::FamilySpec s;
        switch (spec->kind) {
            case MVD_FAMILY_T0: s.kind = mvd::FamilyKind::t0; break;
            case MVD_FAMILY_TK: s.kind = mvd::FamilyKind::tk; break;
            case MVD_FAMILY_TKSTAR: s.kind = mvd::FamilyKind::tkstar; break;
            case MVD_FAMILY_QN: s.kind = mvd::FamilyKind::qn; break;
            case MVD_FAMILY_THRESHOLD: s.kind = mvd::FamilyKind::threshold; break;
            case MVD_FAMILY_RANDOM: s.kind = mvd::FamilyKind::random; break;
            default: throw mvd::InvalidArgument("unknown family kind");
        }
        s.k = spec->k;
        s.n = spec->n;
        if (spec->kind == MVD_FAMILY_QN) s.phi = mvd::PhiSpec::parse(spec->phi ? spec->phi : "identity");
        for (size_t i = 0; i < spec->n_thresholds; ++i) s.thresholds.push_back(need(spec->thresholds, "thresholds")[i]);
        s.random = mvd::RandomSpec{spec->seed, spec->columns, spec->rows, spec->arity, spec->universe};
        auto f = mvd::generate(s, to_limits(limits));
        *out = new mvd_table{mvd::TableFile{std::move(f.table), std::move(f.weights)}};
    });
}

void mvd_family_check_params_default(mvd_family_check_params* out) {
    if (!out) return;
    const mvd::FamilyCheckParams d;
    *out = mvd_family_check_params{};
    out->min_k = d.min_k;
    out->max_k = d.max_k;
    out->min_n = d.min_n;
    out->max_n = d.max_n;
    out->phi = "double";
    out->count = d.count;
    out->max_size = d.max_size;
    out->seed = d.seed;
}

mvd_status mvd_report_create(mvd_report** out) {
    return guard([&] { *need(out, "out") = new mvd_report{}; });
}

void mvd_report_free(mvd_report* r) { delete r; }

mvd_status mvd_verify_table(mvd_report* r, const mvd_table* t, const char* id, const mvd_measure* m,
                            const mvd_limits* limits) {
    return guard([&] {
        need(r, "report")->report.append(mvd::check_bounds(need(t, "table")->file.table, need(m, "measure")->build(),
                                                           id ? id : "table", to_limits(limits)));
    });
}

mvd_status mvd_verify_construction(mvd_report* r, const mvd_table* t, const char* id, const mvd_measure* m,
                                   uint64_t n, mvd_construction which, const mvd_limits* limits) {
    return guard([&] {
        need(r, "report")->report.append(mvd::check_construction(
            need(t, "table")->file.table, need(m, "measure")->build(), n,
            which == MVD_CONSTRUCTION_M1 ? mvd::Construction::m1 : mvd::Construction::m10, id ? id : "table",
            to_limits(limits)));
    });
}

mvd_status mvd_verify_family(mvd_report* r, mvd_family_check which, const mvd_family_check_params* p,
                             const mvd_limits* limits) {
    return guard([&] {
        need(r, "report");
        need(p, "params");
        mvd::FamilyCheckParams fp;
        fp.min_k = p->min_k;
        fp.max_k = p->max_k;
        fp.min_n = p->min_n;
        fp.max_n = p->max_n;
        fp.phi = mvd::PhiSpec::parse(p->phi ? p->phi : "double");
        fp.count = p->count;
        fp.max_size = p->max_size;
        fp.seed = p->seed;
        if (p->n_thresholds)
            fp.sets.emplace_back(need(p->thresholds, "thresholds"), p->thresholds + p->n_thresholds);
        mvd::FamilyCheck w = which == MVD_CHECK_TK   ? mvd::FamilyCheck::tk
                             : which == MVD_CHECK_QN ? mvd::FamilyCheck::qn
                                                     : mvd::FamilyCheck::threshold;
        r->report.append(mvd::check_families(w, fp, to_limits(limits)));
    });
}

size_t mvd_report_count(const mvd_report* r, mvd_check_status s) {
    if (!r) return 0;
    switch (s) {
        case MVD_CHECK_PASS: return r->report.count(mvd::CheckStatus::pass);
        case MVD_CHECK_FAIL: return r->report.count(mvd::CheckStatus::fail);
        case MVD_CHECK_SKIPPED: return r->report.count(mvd::CheckStatus::skipped);
        case MVD_CHECK_ERROR: return r->report.count(mvd::CheckStatus::error);
    }
    return 0;
}

int mvd_report_exit_code(const mvd_report* r) { return r ? r->report.exit_code() : 0; }

mvd_status mvd_report_render(mvd_report* r, int structured, char** out) {
    return guard([&] {
        need(r, "report")->report.sort();
        *need(out, "out") = dup_string(structured ? r->report.to_json() : r->report.to_text());
    });
}

mvd_status mvd_profile(const mvd_table* const* tables, const char* const* ids, size_t count, const mvd_measure* m,
                       uint64_t n_max, const mvd_limits* limits, int structured, char** out, int* partial) {
    return guard([&] {
        std::vector<mvd::NamedTable> set;
        for (size_t i = 0; i < count; ++i) {
            const mvd_table* t = need(need(tables, "tables")[i], "table");
            std::string id = ids && ids[i] ? ids[i] : "table" + std::to_string(i);
            set.push_back({std::move(id), t->file.table});
        }
        const auto p = mvd::empirical_profile(set, need(m, "measure")->build(), n_max, to_limits(limits));
        if (partial) *partial = p.partial ? 1 : 0;
        *need(out, "out") = dup_string(structured ? p.to_json() : p.to_text());
    });
}

}  // extern "C"
