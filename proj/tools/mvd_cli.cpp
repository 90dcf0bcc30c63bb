// mvd: command-line front end over the C interface.
//
// Exit status: 0 ok, 1 a verification check failed, 2 usage or input error,
// 3 a resource limit was hit, 4 internal error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mvd.h"

namespace {

struct Failure {
    int code;
    std::string message;
};

int exit_for(mvd_status s) {
    switch (s) {
        case MVD_OK: return 0;
        case MVD_ERR_RESOURCE: return 3;
        case MVD_ERR_INTERNAL: return 4;
        default: return 2;
    }
}

void check(mvd_status s) {
    if (s != MVD_OK) throw Failure{exit_for(s), mvd_last_error()};
}

struct StringDeleter {
    void operator()(char* p) const { mvd_string_free(p); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct TableDeleter {
    void operator()(mvd_table* p) const { mvd_table_free(p); }
};
struct MeasureDeleter {
    void operator()(mvd_measure* p) const { mvd_measure_free(p); }
};
struct TreeDeleter {
    void operator()(mvd_tree* p) const { mvd_tree_free(p); }
};
struct ReportDeleter {
    void operator()(mvd_report* p) const { mvd_report_free(p); }
};
using Table = std::unique_ptr<mvd_table, TableDeleter>;
using MeasureHandle = std::unique_ptr<mvd_measure, MeasureDeleter>;
using Tree = std::unique_ptr<mvd_tree, TreeDeleter>;
using Report = std::unique_ptr<mvd_report, ReportDeleter>;

std::string take(char* s) {
    CString owned(s);
    return s ? std::string(s) : std::string();
}

Table load(const std::string& path) {
    mvd_table* t = nullptr;
    check(mvd_table_load(path.c_str(), &t));
    return Table(t);
}

struct MeasureOptions {
    std::string kind = "depth";
    std::string weights_file;
    std::optional<std::uint64_t> fallback;
};

// Weighted kinds take the table's own weights line, then the sidecar file.
MeasureHandle make_measure(const MeasureOptions& o, const std::vector<const mvd_table*>& tables) {
    mvd_measure* m = nullptr;
    check(mvd_measure_create(o.kind.c_str(), &m));
    MeasureHandle out(m);
    if (o.kind != "depth") {
        for (auto* t : tables) check(mvd_measure_add_table_weights(m, t));
        if (!o.weights_file.empty()) check(mvd_measure_load_weights(m, o.weights_file.c_str()));
        if (o.fallback) check(mvd_measure_set_fallback(m, *o.fallback));
    } else if (!o.weights_file.empty() || o.fallback) {
        throw Failure{2, "--weights and --fallback-weight need a weighted measure (wsum or wmax)"};
    }
    return out;
}

void add_measure_options(CLI::App* cmd, MeasureOptions& o) {
    cmd->add_option("--measure", o.kind, "depth, wsum or wmax")->check(CLI::IsMember({"depth", "wsum", "wmax"}));
    cmd->add_option("--weights", o.weights_file, "weight file of 'name value' lines");
    cmd->add_option("--fallback-weight", o.fallback, "weight of attributes without one")->check(CLI::PositiveNumber);
}

struct Global {
    std::string format = "text";
    std::optional<std::uint64_t> max_memo, max_words, max_bb_nodes, max_rows, max_columns;
    mvd_limits limits{};

    bool structured() const { return format == "structured"; }

    void resolve() {
        check(mvd_limits_from_env(&limits));
        if (max_memo) limits.max_memo = *max_memo;
        if (max_words) limits.max_words = *max_words;
        if (max_bb_nodes) limits.max_bb_nodes = *max_bb_nodes;
        if (max_rows) limits.max_rows = *max_rows;
        if (max_columns) limits.max_columns = *max_columns;
    }
};

std::vector<std::uint64_t> parse_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Failure{2, "expected a comma separated list of integers, got '" + s + "'"};
        }
    }
    return out;
}

int run_analyze(const Global& g, const std::string& file, const MeasureOptions& mo,
                const std::vector<std::uint64_t>& budgets) {
    Table t = load(file);
    MeasureHandle m = make_measure(mo, {t.get()});
    char* out = nullptr;
    int limited = 0;
    check(mvd_analyze(t.get(), m.get(), budgets.data(), budgets.size(), &g.limits, g.structured(), &out, &limited));
    std::cout << take(out);
    if (limited) {
        std::cerr << "mvd: error: some values exceeded a resource cap (see n/a entries)\n";
        return 3;
    }
    return 0;
}

int run_solve(const Global& g, const std::string& mode, const std::string& file, const MeasureOptions& mo,
              const std::string& emit, bool validate) {
    Table t = load(file);
    MeasureHandle m = make_measure(mo, {t.get()});
    const mvd_mode md = mode == "det" ? MVD_DETERMINISTIC : MVD_NONDETERMINISTIC;
    std::uint64_t value = 0;
    mvd_tree* raw = nullptr;
    check(mvd_solve(t.get(), m.get(), md, &g.limits, &value, &raw));
    Tree tree(raw);
    std::string tree_text;
    std::size_t violations = 0;
    if (tree) {
        char* s = nullptr;
        check(mvd_tree_export(tree.get(), emit == "dot" ? MVD_TREE_DOT : MVD_TREE_STRUCTURED, &s));
        tree_text = take(s);
        if (validate) check(mvd_tree_validate(tree.get(), t.get(), md, &violations, nullptr));
    }
    if (g.structured()) {
        nlohmann::json j{{"schema", 1}, {"kind", "solve"}, {"mode", mode}, {"value", value}};
        if (!tree) j["tree"] = nullptr;
        else if (emit == "dot") j["tree"] = tree_text;
        else j["tree"] = nlohmann::json::parse(tree_text).at("tree");
        if (validate) j["valid"] = violations == 0;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "value " << value << "\n";
        if (validate && tree) std::cout << "valid " << (violations == 0 ? "yes" : "no") << "\n";
        if (tree) std::cout << tree_text;
        else std::cout << "# no tree: the table has no rows\n";
    }
    return violations == 0 ? 0 : 1;
}

struct GenOptions {
    std::string family;
    std::vector<std::string> params;
    std::string phi = "identity";
    std::string thresholds;
    std::uint64_t seed = 0, cols = 3, rows = 4;
    std::uint32_t arity = 2, universe = 3;
    std::string output;
};

std::uint64_t positional(const GenOptions& o, const char* what) {
    if (o.params.size() != 1) throw Failure{2, "gen " + o.family + " takes one argument: " + what};
    auto v = parse_list(o.params[0]);
    if (v.size() != 1) throw Failure{2, "gen " + o.family + ": " + what + " must be a single integer"};
    return v[0];
}

int run_gen(const Global& g, const GenOptions& o) {
    mvd_family_spec spec;
    mvd_family_spec_default(&spec);
    std::vector<std::uint64_t> thresholds;
    if (o.family == "t0") {
        spec.kind = MVD_FAMILY_T0;
    } else if (o.family == "tk" || o.family == "tkstar") {
        spec.kind = o.family == "tk" ? MVD_FAMILY_TK : MVD_FAMILY_TKSTAR;
        spec.k = positional(o, "k");
    } else if (o.family == "qn") {
        spec.kind = MVD_FAMILY_QN;
        spec.n = positional(o, "n");
        spec.phi = o.phi.c_str();
    } else if (o.family == "threshold") {
        spec.kind = MVD_FAMILY_THRESHOLD;
        std::string list = o.thresholds;
        for (const auto& p : o.params) list += "," + p;
        thresholds = parse_list(list);
        spec.thresholds = thresholds.data();
        spec.n_thresholds = thresholds.size();
    } else {
        spec.kind = MVD_FAMILY_RANDOM;
        spec.seed = o.seed;
        spec.columns = o.cols;
        spec.rows = o.rows;
        spec.arity = o.arity;
        spec.universe = o.universe;
    }
    mvd_table* raw = nullptr;
    check(mvd_generate(&spec, &g.limits, &raw));
    Table t(raw);
    if (o.output.empty() || o.output == "-") {
        char* s = nullptr;
        check(mvd_table_serialize(t.get(), g.structured(), &s));
        std::cout << take(s);
    } else {
        check(mvd_table_save(t.get(), o.output.c_str(), g.structured()));
    }
    return 0;
}

struct VerifyOptions {
    std::vector<std::string> tables;
    MeasureOptions measure;
    std::string family;
    std::uint64_t min_k = 1, max_k = 3, min_n = 1, max_n = 4, count = 20, max_size = 6, seed = 1;
    std::string phi = "double";
    std::string thresholds;
    std::string construction;
    std::optional<std::uint64_t> budget;
};

int run_verify(const Global& g, const VerifyOptions& o) {
    if (o.tables.empty() && o.family.empty()) throw Failure{2, "verify needs --table or --family"};
    if (!o.construction.empty() && !o.budget) throw Failure{2, "--construction needs --budget"};
    if (!o.construction.empty() && o.tables.empty()) throw Failure{2, "--construction needs --table"};
    mvd_report* raw = nullptr;
    check(mvd_report_create(&raw));
    Report rep(raw);
    for (const auto& path : o.tables) {
        Table t = load(path);
        MeasureHandle m = make_measure(o.measure, {t.get()});
        const std::string id = std::filesystem::path(path).filename().string();
        if (o.construction.empty()) {
            check(mvd_verify_table(rep.get(), t.get(), id.c_str(), m.get(), &g.limits));
        } else {
            const auto which = o.construction == "m1" ? MVD_CONSTRUCTION_M1 : MVD_CONSTRUCTION_M10;
            check(mvd_verify_construction(rep.get(), t.get(), id.c_str(), m.get(), *o.budget, which, &g.limits));
        }
    }
    if (!o.family.empty()) {
        mvd_family_check_params p;
        mvd_family_check_params_default(&p);
        p.min_k = o.min_k;
        p.max_k = o.max_k;
        p.min_n = o.min_n;
        p.max_n = o.max_n;
        p.phi = o.phi.c_str();
        p.count = o.count;
        p.max_size = o.max_size;
        p.seed = o.seed;
        const auto list = parse_list(o.thresholds);
        p.thresholds = list.data();
        p.n_thresholds = list.size();
        const auto which = o.family == "tk" ? MVD_CHECK_TK : o.family == "qn" ? MVD_CHECK_QN : MVD_CHECK_THRESHOLD;
        check(mvd_verify_family(rep.get(), which, &p, &g.limits));
    }
    char* s = nullptr;
    check(mvd_report_render(rep.get(), g.structured(), &s));
    std::cout << take(s);
    return mvd_report_exit_code(rep.get());
}

int run_profile(const Global& g, const std::string& dir, MeasureOptions mo, std::uint64_t n_max) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    std::error_code ec;
    for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec))
        if (it->is_regular_file() && it->path().extension() == ".mvd") files.push_back(it->path());
    if (ec) throw Failure{2, "cannot list '" + dir + "': " + ec.message()};
    if (files.empty()) throw Failure{2, "no .mvd files in '" + dir + "'"};
    std::sort(files.begin(), files.end());
    std::vector<Table> tables;
    std::vector<const mvd_table*> ptrs;
    std::vector<std::string> ids;
    for (const auto& f : files) {
        tables.push_back(load(f.string()));
        ptrs.push_back(tables.back().get());
        ids.push_back(f.stem().string());
    }
    if (mo.kind != "depth" && !mo.fallback) mo.fallback = 1;
    MeasureHandle m = make_measure(mo, ptrs);
    std::vector<const char*> cids;
    for (const auto& id : ids) cids.push_back(id.c_str());
    char* s = nullptr;
    int partial = 0;
    check(mvd_profile(ptrs.data(), cids.data(), ptrs.size(), m.get(), n_max, &g.limits, g.structured(), &s, &partial));
    std::cout << take(s);
    if (partial) {
        std::cerr << "mvd: error: profile is partial; some tables exceeded a resource cap\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decision tables with many-valued decisions: exact complexity, parameters and checks", "mvd"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--format", g.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--max-memo", g.max_memo, "memo entries per search");
    app.add_option("--max-words", g.max_words, "coverage-distinct words in cover searches");
    app.add_option("--max-bb-nodes", g.max_bb_nodes, "branch-and-bound nodes");
    app.add_option("--max-rows", g.max_rows, "rows accepted by the solvers");
    app.add_option("--max-columns", g.max_columns, "columns accepted by the solvers");

    std::string file;
    MeasureOptions analyze_measure;
    std::vector<std::uint64_t> budgets;
    auto* analyze = app.add_subcommand("analyze", "print the parameters of a table");
    analyze->add_option("file", file, "table file")->required();
    add_measure_options(analyze, analyze_measure);
    analyze->add_option("--l-budget", budgets, "budget n for l(n); repeatable");

    std::string mode;
    std::string emit = "dot";
    bool validate = false;
    MeasureOptions solve_measure;
    auto* solve = app.add_subcommand("solve", "optimal deterministic or nondeterministic tree");
    solve->add_option("mode", mode, "det or nondet")->required()->check(CLI::IsMember({"det", "nondet"}));
    solve->add_option("file", file, "table file")->required();
    solve->add_option("--emit", emit, "dot or structured")->check(CLI::IsMember({"dot", "structured"}));
    solve->add_flag("--validate", validate, "re-validate the tree against the table");
    add_measure_options(solve, solve_measure);

    GenOptions gen_opts;
    auto* gen = app.add_subcommand("gen", "generate a family table");
    gen->add_option("family", gen_opts.family, "t0, tk, tkstar, qn, threshold or random")
        ->required()
        ->check(CLI::IsMember({"t0", "tk", "tkstar", "qn", "threshold", "random"}));
    gen->add_option("params", gen_opts.params, "k for tk/tkstar, n for qn, thresholds for threshold");
    gen->add_option("--phi", gen_opts.phi, "qn: identity, double, square or a value list 0,1,4");
    gen->add_option("--thresholds", gen_opts.thresholds, "threshold: comma separated positive integers");
    gen->add_option("--seed", gen_opts.seed, "random: seed");
    gen->add_option("--cols", gen_opts.cols, "random: columns");
    gen->add_option("--rows", gen_opts.rows, "random: rows");
    gen->add_option("--arity", gen_opts.arity, "random: k");
    gen->add_option("--universe", gen_opts.universe, "random: decisions drawn from 0..universe-1");
    gen->add_option("-o,--output", gen_opts.output, "output file (default stdout)");

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "run bound, construction and family checks");
    verify->add_option("--table", vo.tables, "table file; repeatable");
    add_measure_options(verify, vo.measure);
    verify->add_option("--family", vo.family, "tk, qn or threshold")->check(CLI::IsMember({"tk", "qn", "threshold"}));
    verify->add_option("--min-k", vo.min_k);
    verify->add_option("--max-k", vo.max_k);
    verify->add_option("--min-n", vo.min_n);
    verify->add_option("--max-n", vo.max_n);
    verify->add_option("--phi", vo.phi);
    verify->add_option("--count", vo.count, "threshold: random sets");
    verify->add_option("--max-size", vo.max_size, "threshold: largest set");
    verify->add_option("--thresholds", vo.thresholds, "threshold: an explicit set");
    verify->add_option("--seed", vo.seed);
    verify->add_option("--construction", vo.construction, "m1 or m10")->check(CLI::IsMember({"m1", "m10"}));
    verify->add_option("--budget", vo.budget, "budget n for constructions");

    std::string dir;
    MeasureOptions profile_measure;
    std::uint64_t n_max = 2;
    auto* profile = app.add_subcommand("profile", "empirical class profile over a directory of tables");
    profile->add_option("--tables", dir, "directory of .mvd files")->required();
    add_measure_options(profile, profile_measure);
    profile->add_option("--n-max", n_max, "largest budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "mvd: error: " << e.what() << "\n";
        return 2;
    }

    try {
        g.resolve();
        if (*analyze) return run_analyze(g, file, analyze_measure, budgets);
        if (*solve) return run_solve(g, mode, file, solve_measure, emit, validate);
        if (*gen) return run_gen(g, gen_opts);
        if (*verify) return run_verify(g, vo);
        if (*profile) return run_profile(g, dir, profile_measure, n_max);
    } catch (const Failure& f) {
        std::cerr << "mvd: error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "mvd: error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
