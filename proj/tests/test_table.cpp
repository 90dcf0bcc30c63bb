#include <doctest.h>

#include "mvd/errors.hpp"
#include "mvd/families.hpp"
#include "mvd/io.hpp"
#include "mvd/table.hpp"

using namespace mvd;

namespace {

DecisionTable small() {
    DecisionTable t(2, {"x", "y"});
    t.add_row(std::vector<Value>{0, 0}, {1});
    t.add_row(std::vector<Value>{0, 1}, {2, 1});
    t.add_row(std::vector<Value>{1, 1}, {3});
    return t;
}

}  // namespace

TEST_SUITE("table-core") {

TEST_CASE("rows keep insertion order and sorted decision sets") {
    auto t = small();
    CHECK(t.rows() == 3);
    CHECK(t.columns() == 2);
    CHECK(t.decisions(1) == DecisionSet{1, 2});
    CHECK(t.find_row(std::vector<Value>{1, 1}) == 2);
    CHECK_FALSE(t.find_row(std::vector<Value>{1, 0}));
    CHECK(t.column_of("y") == 1);
}

TEST_CASE("invalid rows are rejected") {
    auto t = small();
    CHECK_THROWS_AS(t.add_row(std::vector<Value>{0, 0}, {4}), FormatError);
    CHECK_THROWS_AS(t.add_row(std::vector<Value>{2, 0}, {1}), FormatError);
    CHECK_THROWS_AS(t.add_row(std::vector<Value>{1}, {1}), FormatError);
    CHECK_THROWS_AS(t.add_row(std::vector<Value>{1, 0}, {}), FormatError);
    CHECK_THROWS_AS(DecisionTable(2, {"a", "a"}), FormatError);
    CHECK_THROWS_AS(DecisionTable(1, {"a"}), InvalidArgument);
}

TEST_CASE("assignments") {
    Assignment a({{"y", 1}, {"x", 0}});
    CHECK(a.to_string() == "(x,0)(y,1)");
    CHECK(Assignment().to_string() == "lambda");
    CHECK_THROWS_AS(Assignment({{"x", 0}, {"x", 1}}), InvalidArgument);
    CHECK_FALSE(a.add("x", 1));
    CHECK(a.add("z", 0));
    CHECK(a.value_of("z") == 0u);
    CHECK(Assignment({{"x", 0}}).is_subset_of(a));
    CHECK(a.without("z").size() == 2);

    std::vector<Letter> raw{{"x", 1}, {"y", 0}, {"x", 1}};
    auto c = Assignment::canonicalize(raw);
    CHECK_FALSE(c.annihilates);
    CHECK(c.assignment.size() == 2);
    raw.push_back({"y", 1});
    CHECK(Assignment::canonicalize(raw).annihilates);
}

TEST_CASE("subtable keeps matching rows") {
    auto t = small();
    auto s = subtable(t, Assignment({{"y", 1}}));
    CHECK(s.rows() == 2);
    CHECK(s.row(0)[0] == 0);
    CHECK(s.row(1)[0] == 1);
    CHECK(subtable(t, Assignment()).rows() == 3);
    CHECK(subtable(t, Assignment({{"x", 1}, {"y", 0}})).is_empty());
    CHECK_THROWS_AS(subtable(t, Assignment({{"q", 1}})), InvalidArgument);
}

TEST_CASE("common decisions and degeneracy") {
    auto t = small();
    CHECK_FALSE(is_degenerate(t));
    auto s = subtable(t, Assignment({{"x", 0}}));
    CHECK(is_degenerate(s));
    CHECK(common_decisions(s).decisions == DecisionSet{1});
    DecisionTable empty(2, {"x"});
    CHECK(is_degenerate(empty));
    CHECK(common_decisions(empty).universal);
}

TEST_CASE("column removal keeps the first row of each group") {
    auto t = gen_t0();
    std::vector<std::string> d{"f4"};
    auto r = remove_columns(t, d);
    REQUIRE(r.rows() == 4);
    CHECK(r.attributes() == std::vector<std::string>{"f2", "f3"});
    CHECK(r.decisions(0) == DecisionSet{1});
    CHECK(r.decisions(1) == DecisionSet{0, 1, 2});
    CHECK(r.decisions(2) == DecisionSet{1, 3});
    CHECK(r.decisions(3) == DecisionSet{2, 3});

    std::vector<std::string> everything = t.attributes();
    CHECK(remove_columns(t, everything).is_empty());
    std::vector<std::string> none;
    CHECK(remove_columns(t, none) == t);
    std::vector<std::string> bad{"nope"};
    CHECK_THROWS_AS(remove_columns(t, bad), InvalidArgument);
}

TEST_CASE("decision rewriting") {
    auto t = small();
    auto j = change_decisions(t, DecisionMap::min_max());
    CHECK(j.decisions(0) == DecisionSet{0});
    CHECK(j.decisions(1) == DecisionSet{0, 1});
    CHECK(j.decisions(2) == DecisionSet{1});
    CHECK(change_decisions(t, DecisionMap::identity_of(t)) == t);

    auto partial = DecisionMap::extensional({{Tuple{0, 0}, {5}}});
    CHECK_THROWS_AS(change_decisions(t, partial), InvalidArgument);
    auto with_fallback = DecisionMap::extensional({{Tuple{0, 0}, {5}}}, DecisionSet{7});
    auto k = change_decisions(t, with_fallback);
    CHECK(k.decisions(0) == DecisionSet{5});
    CHECK(k.decisions(2) == DecisionSet{7});
}

TEST_CASE("closure samples are reproducible") {
    auto t = gen_t0();
    auto a = closure_sample(t, 9, 12);
    auto b = closure_sample(t, 9, 12);
    REQUIRE(a.size() == 12);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].table == b[i].table);
        std::vector<ClosureStep> step{a[i].step};
        CHECK(closure_sample(t, step).front() == a[i].table);
    }
}

}  // TEST_SUITE

TEST_SUITE("io") {

TEST_CASE("text round trip with weights") {
    const char* text =
        "# comment\n"
        "k 3\n"
        "attrs a b\n"
        "weights 2 5\n"
        "row 0 2 : 1\n"
        "row 1 0 : 0 4\n";
    auto f = parse_table_file(text);
    CHECK(f.table.k() == 3);
    REQUIRE(f.weights);
    CHECK(f.weights->at("b") == 5);
    auto again = parse_table_file(serialize_table(f.table, &*f.weights));
    CHECK(again.table == f.table);
    CHECK(*again.weights == *f.weights);
}

TEST_CASE("structured round trip") {
    auto t = gen_t0();
    auto s = serialize_table(t, nullptr, FileFormat::structured);
    CHECK(s.front() == '{');
    auto f = parse_table_file(s);
    CHECK(f.table == t);
    CHECK_FALSE(f.weights);
}

TEST_CASE("malformed files") {
    CHECK_THROWS_AS(parse_table("attrs a\nrow 0 : 1\n"), FormatError);
    CHECK_THROWS_AS(parse_table("k 2\nrow 0 : 1\n"), FormatError);
    CHECK_THROWS_AS(parse_table("k 2\nattrs a\nrow 0 : \n"), FormatError);
    CHECK_THROWS_AS(parse_table("k 2\nattrs a\nrow 0 1 : 1\n"), FormatError);
    CHECK_THROWS_AS(parse_table("k 2\nattrs a\nrow 0 : 1\nrow 0 : 2\n"), FormatError);
    CHECK_THROWS_AS(parse_table("k 2\nattrs a\nweights 0\nrow 0 : 1\n"), FormatError);
    CHECK_THROWS_AS(parse_table("k 2\nattrs a\nbogus\n"), FormatError);
    CHECK_THROWS_AS(parse_table("{\"k\": 2}"), FormatError);
    CHECK_THROWS_AS(parse_table("{not json"), FormatError);
}

TEST_CASE("a table without rows parses") {
    auto t = parse_table("k 2\nattrs a b\n");
    CHECK(t.is_empty());
    CHECK(t.columns() == 2);
}

TEST_CASE("weight files") {
    auto w = parse_weights("# w\na 3\nb 1\n");
    CHECK(w.at("a") == 3);
    CHECK_THROWS_AS(parse_weights("a 0\n"), FormatError);
    CHECK_THROWS_AS(parse_weights("a\n"), FormatError);
}

}  // TEST_SUITE
