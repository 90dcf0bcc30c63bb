#include <doctest.h>

#include "mvd/errors.hpp"
#include "mvd/families.hpp"
#include "mvd/measure.hpp"
#include "mvd/tree.hpp"

using namespace mvd;

TEST_SUITE("measure") {

TEST_CASE("depth, weighted sum and weighted max on words") {
    Assignment a({{"a", 1}, {"b", 0}});
    CHECK(Measure::depth().eval_word(a) == 2);
    CHECK(Measure::depth().eval_word(Assignment()) == 0);
    auto ws = Measure::weighted_sum({{"a", 3}, {"b", 4}});
    CHECK(ws.eval_word(a) == 7);
    auto wm = Measure::weighted_max({{"a", 3}, {"b", 4}});
    CHECK(wm.eval_word(a) == 4);
    CHECK_FALSE(wm.bounded());
    CHECK_THROWS_AS(wm.require_bounded(), MeasureError);
}

TEST_CASE("missing weights") {
    auto ws = Measure::weighted_sum({{"a", 3}});
    CHECK_THROWS_AS(ws.weight("b"), MeasureError);
    auto fb = Measure::weighted_sum({{"a", 3}}, 2);
    CHECK(fb.weight("b") == 2);
    CHECK(fb.describe() == "wsum{a=3,*=2}");
    CHECK(Measure::depth().describe() == "depth");
}

TEST_CASE("table quantities") {
    auto t = gen_t0();
    auto ws = Measure::weighted_sum({{"f2", 2}, {"f3", 5}, {"f4", 1}});
    CHECK(ws.m_psi(t) == 5);
    CHECK(ws.column_weights(t) == std::vector<Weight>{2, 1, 5});
    CHECK(Measure::depth().m_psi(t) == 1);
    CHECK(Measure::depth().m_psi(DecisionTable(2, {"a"})) == 0);
}

TEST_CASE("measure kind names") {
    CHECK(parse_measure_kind("wsum") == MeasureKind::weighted_sum);
    CHECK(to_string(MeasureKind::weighted_max) == "wmax");
    CHECK_THROWS_AS(parse_measure_kind("bogus"), InvalidArgument);
}

TEST_CASE("tree cost is the worst complete path") {
    DecisionTree g;
    auto x = g.add_inner(g.root(), 0, "a");
    g.add_terminal(x, 0, 1);
    auto y = g.add_inner(x, 1, "b");
    g.add_terminal(y, 0, 2);
    g.add_terminal(y, 1, 3);
    CHECK(Measure::depth().eval_tree(g) == 2);
    CHECK(Measure::weighted_sum({{"a", 1}, {"b", 7}}).eval_tree(g) == 8);
    CHECK(Measure::depth().eval_tree(DecisionTree::leaf(4)) == 0);
}

TEST_CASE("repeated attributes on a path count once") {
    DecisionTree g;
    auto x = g.add_inner(g.root(), 0, "a");
    auto y = g.add_inner(x, 1, "a");
    g.add_terminal(y, 1, 0);
    g.add_terminal(x, 0, 0);
    CHECK(Measure::depth().eval_tree(g) == 1);
}

}  // TEST_SUITE

TEST_SUITE("tree") {

namespace {

// f2 at the root, then f4 under f2 = 1.
DecisionTree t0_tree() {
    DecisionTree g;
    auto f2 = g.add_inner(g.root(), 0, "f2");
    g.add_terminal(f2, 0, 2);
    auto f4 = g.add_inner(f2, 1, "f4");
    g.add_terminal(f4, 0, 3);
    g.add_terminal(f4, 1, 1);
    return g;
}

}  // namespace

TEST_CASE("a valid deterministic tree") {
    auto t = gen_t0();
    auto g = t0_tree();
    CHECK(validate_tree(g, t, TreeMode::deterministic).empty());
    CHECK(validate_tree(g, t, TreeMode::nondeterministic).empty());
}

TEST_CASE("violations are reported") {
    auto t = gen_t0();
    DecisionTree g;
    auto f2 = g.add_inner(g.root(), 0, "f2");
    g.add_terminal(f2, 0, 3);
    g.add_terminal(f2, 1, 1);
    auto v = validate_tree(g, t, TreeMode::deterministic);
    REQUIRE_FALSE(v.empty());
    bool unsound = false;
    for (const auto& x : v) unsound = unsound || x.kind == "unsound path";
    CHECK(unsound);

    DecisionTree partial;
    auto a = partial.add_inner(partial.root(), 0, "f2");
    partial.add_terminal(a, 0, 2);
    auto pv = validate_tree(partial, t, TreeMode::deterministic);
    REQUIRE(pv.size() >= 1);
    CHECK(pv.front().kind == "uncovered row");

    DecisionTree unknown;
    auto u = unknown.add_inner(unknown.root(), 0, "zz");
    unknown.add_terminal(u, 0, 1);
    auto uv = validate_tree(unknown, t, TreeMode::deterministic);
    CHECK(uv.front().kind == "attribute");
}

TEST_CASE("root out-degree distinguishes the modes") {
    auto t = gen_t0();
    DecisionTree g;
    auto a = g.add_inner(g.root(), 0, "f4");
    g.add_terminal(a, 1, 1);
    auto b = g.add_inner(g.root(), 0, "f2");
    g.add_terminal(b, 0, 2);
    auto c = g.add_inner(g.root(), 0, "f3");
    g.add_terminal(c, 0, 3);
    CHECK(validate_tree(g, t, TreeMode::nondeterministic).empty());
    auto v = validate_tree(g, t, TreeMode::deterministic);
    REQUIRE_FALSE(v.empty());
    CHECK(v.front().kind == "root out-degree");
}

TEST_CASE("duplicate edge labels are rejected in deterministic mode") {
    auto t = gen_t0();
    DecisionTree g;
    auto a = g.add_inner(g.root(), 0, "f2");
    g.add_terminal(a, 0, 2);
    g.add_terminal(a, 0, 3);
    bool dup = false;
    for (const auto& x : validate_tree(g, t, TreeMode::deterministic)) dup = dup || x.kind == "duplicate edge label";
    CHECK(dup);
}

TEST_CASE("structural problems") {
    DecisionTree empty;
    CHECK_FALSE(empty.structural_problems().empty());
    DecisionTree dangling;
    dangling.add_inner(dangling.root(), 0, "a");
    CHECK_FALSE(dangling.structural_problems().empty());
    CHECK(DecisionTree::leaf(0).structural_problems().empty());
    CHECK_THROWS_AS(validate_tree(DecisionTree::leaf(0), DecisionTable(2, {"a"}), TreeMode::deterministic),
                    InvalidArgument);
}

TEST_CASE("complete paths") {
    auto paths = complete_paths(t0_tree());
    REQUIRE(paths.size() == 3);
    CHECK(paths[0].word.assignment.to_string() == "(f2,0)");
    CHECK(paths[0].decision == 2);
    CHECK(paths[2].word.assignment.to_string() == "(f2,1)(f4,1)");
}

TEST_CASE("structured export round trips and DOT is stable") {
    auto g = t0_tree();
    auto s = export_tree(g, TreeFormat::structured);
    CHECK(import_tree(s) == g);
    auto dot = export_tree(g, TreeFormat::dot);
    CHECK(dot == export_tree(import_tree(s), TreeFormat::dot));
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("label=\"f4\"") != std::string::npos);
    CHECK_THROWS_AS(import_tree("{\"schema\": 1}"), FormatError);
    CHECK_THROWS_AS(import_tree("nope"), FormatError);
}

TEST_CASE("graft copies a subtree") {
    DecisionTree g;
    auto a = g.add_inner(g.root(), 0, "f3");
    g.graft(a, 1, t0_tree());
    g.add_terminal(a, 0, 3);
    CHECK(g.size() == t0_tree().size() - 1 + 3);
    CHECK(g.attributes() == std::vector<std::string>{"f3", "f2", "f4"});
}

}  // TEST_SUITE
