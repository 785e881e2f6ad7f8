#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("PDGEO_CLI");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buffer;
    while (fgets(buffer.data(), buffer.size(), pipe) != nullptr)
        result.output += buffer.data();
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("info reports the dimensions") {
    auto r = run_cli("info spinor:5");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"n\": 10"));
    CHECK(contains(r.output, "\"N\": 15"));
}

TEST_CASE("defects reproduces the classic secant row") {
    auto r = run_cli("--seed 7 defects segre:2,2 --secant 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"dim\": 7"));
    CHECK(contains(r.output, "\"defect\": 2"));
    CHECK(contains(r.output, "\"seed\": 7"));
}

TEST_CASE("byte-identical output for identical configurations") {
    auto a = run_cli("--seed 42 defects segre:1,2 --secant 2");
    auto b = run_cli("--seed 42 defects segre:1,2 --secant 2");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    auto c = run_cli("--seed 43 monge \'graph:2;x1*x2\'");
    auto d = run_cli("--seed 43 monge \'graph:2;x1*x2\'");
    CHECK(c.output == d.output);
}

TEST_CASE("matspace certification") {
    auto r = run_cli("matspace C_II --certify 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"certified\": true"));
    auto s = run_cli("matspace B_I --certify 2 --mode symbolic");
    CHECK(s.exit_code == 0);
    CHECK(contains(s.output, "\"minors_vanish_identically\": true"));
}

TEST_CASE("ff filtration output") {
    auto r = run_cli("ff grassmannian:3,6 --order 4 --height 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"filtration\": ["));
    CHECK(contains(r.output, "9,"));
}

TEST_CASE("clifford relation suite") {
    auto r = run_cli("clifford --dim 6 --check");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"fundamental_relation\": true"));
}

TEST_CASE("clifford module command") {
    auto r = run_cli("clifford-module severi:2 --height 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"relation_verified\": true"));
}

TEST_CASE("osc, monge, syzygies and line subcommands") {
    auto osc = run_cli("osc veronese:1,3 -d 2 -p 2 --height 3");
    CHECK(osc.exit_code == 0);
    CHECK(contains(osc.output, "\"dimension\": 7"));

    auto monge = run_cli("monge \'graph:2;x1*x2\' --height 3");
    CHECK(monge.exit_code == 0);
    CHECK(contains(monge.output, "\"verdict\": \"holds\""));

    auto syz = run_cli("syzygies segre:2,2 --height 3");
    CHECK(syz.exit_code == 0);
    CHECK(contains(syz.output, "\"has_witness\": true"));

    auto line = run_cli("line segre:1,1 --dir 0,1 --height 3");
    CHECK(line.exit_code == 0);
    CHECK(contains(line.output, "\"contained\": \"yes\""));
}

TEST_CASE("dual command reports the constant rank") {
    auto r = run_cli("dual grassmannian:2,5 --height 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"rank\": 4"));
    CHECK(contains(r.output, "\"constant_over_100_samples\": true"));
}

TEST_CASE("parse errors exit with code 2") {
    auto r = run_cli("info");
    CHECK(r.exit_code != 0);
    auto s = run_cli("nonsense");
    CHECK(s.exit_code != 0);
}

TEST_CASE("computation errors produce structured error objects") {
    auto r = run_cli("info veronese:0,1");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "\"error\""));
    CHECK(contains(r.output, "\"module\": \"catalog\""));
}

namespace {

std::string read_file(const std::string& path) {
    FILE* f = fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::string content;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), f)) > 0)
        content.append(buffer.data(), got);
    fclose(f);
    return content;
}

std::string golden_dir() {
    const char* dir = std::getenv("PDGEO_GOLDEN");
    REQUIRE(dir != nullptr);
    return dir;
}

}  // namespace

TEST_CASE("golden outputs are reproduced byte for byte") {
    struct Row {
        const char* args;
        const char* file;
    };
    const Row rows[] = {
        {"info spinor:5", "info_spinor5.json"},
        {"--seed 7 defects segre:2,2 --secant 2", "defects_segre22_seed7.json"},
        {"--seed 11 --height 3 osc veronese:1,3 -d 2 -p 2",
         "osc_twisted_cubic.json"},
        {"--seed 5 --height 3 monge 'graph:2;x1*x2'",
         "monge_quadric_graph.json"},
        {"--seed 3 matspace C_II --certify 2", "matspace_cii.json"},
    };
    for (const auto& row : rows) {
        auto r = run_cli(row.args);
        CHECK(r.exit_code == 0);
        CHECK(r.output == read_file(golden_dir() + "/" + row.file));
    }
}

TEST_CASE("single acceptance rows run through the report subcommand") {
    auto r = run_cli("report acceptance --row 11");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "PASS"));
    CHECK(contains(r.output, "syzygy"));
}
