#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef MVD_CLI_PATH
#define MVD_CLI_PATH "mvd"
#endif
#ifndef MVD_TEST_DATA
#define MVD_TEST_DATA "tests/data"
#endif

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs a shell command with stderr folded into stdout.
Run shell(const std::string& cmd) {
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int raw = pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

Run run(const std::string& args) { return shell(std::string(MVD_CLI_PATH) + " " + args + " 2>&1"); }

const std::string t0 = MVD_TEST_DATA "/t0.mvd";

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "mvd_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("analyze prints the example values") {
    auto r = run("analyze " + t0 + " --measure depth --l-budget 1");
    CHECK(r.status == 0);
    for (const char* s : {"psi_d 2\n", "psi_a 1\n", "Z 2\n", "G 3\n", "l(1) 3\n"})
        CHECK(r.out.find(s) != std::string::npos);
}

TEST_CASE("solve det emits a tree that re-validates") {
    auto r = run("solve det " + t0 + " --emit dot --validate");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("value 2\nvalid yes\ndigraph", 0) == 0);
    auto s = run("--format structured solve nondet " + t0 + " --emit structured");
    CHECK(s.status == 0);
    CHECK(s.out.find("\"value\": 1") != std::string::npos);
    CHECK(s.out.find("\"schema\": 1") != std::string::npos);
}

TEST_CASE("gen then verify") {
    auto file = scratch("tk2.mvd").string();
    CHECK(run("gen tk 2 -o " + file).status == 0);
    CHECK(std::filesystem::exists(file));
    auto v = run("verify --family tk --max-k 2");
    CHECK(v.status == 0);
    CHECK(v.out.find("0 failed") != std::string::npos);
    auto t = run("verify --table " + file + " --construction m10 --budget 2");
    CHECK(t.status == 0);
}

TEST_CASE("gen writes every family") {
    CHECK(run("gen t0").out.rfind("k 2\nattrs f2 f4 f3\n", 0) == 0);
    CHECK(run("gen qn 2 --phi double").out.find("weights") != std::string::npos);
    CHECK(run("gen tkstar 3").status == 0);
    CHECK(run("gen threshold 5,2").out.find("attrs f2 f5") != std::string::npos);
    auto a = run("gen random --seed 7 --cols 4 --rows 6");
    CHECK(a.status == 0);
    CHECK(a.out == run("gen random --seed 7 --cols 4 --rows 6").out);
    CHECK(run("--format structured gen t0").out.front() == '{');
}

TEST_CASE("profile over a directory") {
    auto dir = scratch("profile");
    std::filesystem::create_directories(dir);
    CHECK(run("gen t0 -o " + (dir / "t0.mvd").string()).status == 0);
    auto r = run("profile --tables " + dir.string() + " --measure depth --n-max 2");
    CHECK(r.status == 0);
    CHECK(r.out.find("n H L Z G\n0 0 1 0 0\n1 2 3 2 3\n2 2 6 2 3\n") != std::string::npos);
    CHECK(r.out.find("finite-set lower bound") != std::string::npos);
    CHECK(run("profile --tables " + dir.string() + " --n-max 2 --max-bb-nodes 1").status == 3);
}

TEST_CASE("usage and input errors exit with 2 and one line") {
    auto unknown = run("analyze " + t0 + " --bogus");
    CHECK(unknown.status == 2);
    CHECK(unknown.out.rfind("mvd: error:", 0) == 0);
    CHECK(unknown.out.find('\n') == unknown.out.size() - 1);
    CHECK(run("").status == 2);
    CHECK(run("analyze /nonexistent.mvd").status == 2);
    CHECK(run("verify").status == 2);
    CHECK(run("gen tk").status == 2);
    CHECK(run("verify --table " + t0 + " --construction m1").status == 2);

    auto bad = scratch("bad.mvd");
    std::ofstream(bad) << "k 2\nattrs a\nrow 0 : 1\nrow 0 : 2\n";
    auto b = run("analyze " + bad.string());
    CHECK(b.status == 2);
    CHECK(b.out.find("duplicate") != std::string::npos);
}

TEST_CASE("resource errors have their own exit code") {
    auto r = run("solve det " + t0 + " --max-memo 2");
    CHECK(r.status == 3);
    CHECK(r.out.find("max-memo") != std::string::npos);
    auto env = shell("MVD_LIMITS=max-memo=2 " MVD_CLI_PATH " solve det " + t0 + " 2>&1");
    CHECK(env.status == 3);
    CHECK(shell("MVD_LIMITS=max-memo=2 " MVD_CLI_PATH " --max-memo 1000 solve det " + t0).status == 0);
    CHECK(shell("MVD_LIMITS=bogus=1 " MVD_CLI_PATH " solve det " + t0 + " 2>/dev/null").status == 2);
    auto a = run("analyze " + t0 + " --l-budget 2 --max-bb-nodes 1");
    CHECK(a.status == 3);
    CHECK(a.out.find("psi_d 2\n") != std::string::npos);
    auto e = run("solve nondet " + t0 + " --measure wmax --fallback-weight 1");
    CHECK(e.status == 2);
}

TEST_CASE("checks that hit errors exit with 3") {
    auto r = run("verify --table " + t0 + " --measure wmax --fallback-weight 1");
    CHECK(r.status == 3);
}

}  // TEST_SUITE
