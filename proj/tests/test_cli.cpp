#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "riesz/cli.hpp"
#include "riesz/fuzz.hpp"

namespace fs = std::filesystem;
namespace io = riesz::io;
using io::json;
using riesz::Rational;
using R = Rational;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

/// Runs the installed binary through the shell, capturing stdout.
CliResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" RIESZ_CLI_PATH "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("riesz_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string write(const std::string& name, const json& j) const {
        return write(name, j.dump());
    }
};

json singleton_family(std::size_t n) {
    json fam = json::object();
    for (std::size_t i = 0; i < n; ++i)
        fam[std::to_string(i + 1)] = json::array({i});
    return fam;
}

json shift_matrix_json(std::size_t n) {
    riesz::Matrix<R> s(n);
    for (std::size_t i = 0; i + 1 < n; ++i) s(i, i + 1) = R(1);
    return io::to_json(s);
}

} // namespace

TEST_CASE("project subcommand masks the shift operator") {
    TempDir dir;
    const auto fam = dir.write("family.json", singleton_family(6));
    const auto rel = dir.write("relation.json",
                               json::array({json::array({"1", "2"}),
                                            json::array({"4", "5"})}));
    const auto mat = dir.write("shift.json", shift_matrix_json(6));

    const auto res = run_cli("project " + fam + " " + rel + " " + mat);
    REQUIRE(res.exit_code == 0);
    const auto out = json::parse(res.out);
    const auto masked = io::matrix_from_json<R>(out);
    riesz::Matrix<R> expected(6);
    expected(0, 1) = R(1);
    expected(3, 4) = R(1);
    CHECK(masked == expected);

    SECTION("output re-fed as input is a fixed point of the projection") {
        const auto again = dir.write("masked.json", out);
        const auto res2 = run_cli("project " + fam + " " + rel + " " + again);
        REQUIRE(res2.exit_code == 0);
        CHECK(json::parse(res2.out) == out);
    }
}

TEST_CASE("project with an empty relation emits the zero matrix") {
    TempDir dir;
    const auto fam = dir.write("family.json", singleton_family(3));
    const auto rel = dir.write("relation.json", json::array());
    const auto mat = dir.write("shift.json", shift_matrix_json(3));
    const auto res = run_cli("project " + fam + " " + rel + " " + mat);
    REQUIRE(res.exit_code == 0);
    CHECK(io::matrix_from_json<R>(json::parse(res.out)).is_zero());
}

TEST_CASE("exit codes distinguish parse and shape problems") {
    TempDir dir;
    const auto fam = dir.write("family.json", singleton_family(3));
    const auto rel = dir.write("relation.json", json::array());
    const auto garbled = dir.write("bad.json", std::string("{not json"));
    CHECK(run_cli("project " + fam + " " + rel + " " + garbled).exit_code == 2);

    const auto missing = (dir.path / "no_such_file.json").string();
    CHECK(run_cli("project " + fam + " " + rel + " " + missing).exit_code == 2);

    // family indices outside the matrix dimension: a shape problem
    const auto mat2 = dir.write("small.json", shift_matrix_json(2));
    CHECK(run_cli("project " + fam + " " + rel + " " + mat2).exit_code == 3);

    // relation labels outside the family: also shape
    const auto badrel = dir.write("badrel.json",
                                  json::array({json::array({"9", "9"})}));
    const auto mat3 = dir.write("m3.json", shift_matrix_json(3));
    CHECK(run_cli("project " + fam + " " + badrel + " " + mat3).exit_code == 3);
}

TEST_CASE("detect shape problems exit with 3") {
    TempDir dir;
    json bad = {{"n", 3},
                {"vec", "col-major"},
                {"entries", {{1, 0}, {0, 1}}}}; // 2x2 entries for n = 3
    CHECK(run_cli("detect " + dir.write("bad.json", bad)).exit_code == 3);
}

TEST_CASE("detect subcommand echoes the recovered relation") {
    TempDir dir;
    riesz::AtomRelation gamma{{0, 1}, {1, 0}};
    const auto p = riesz::assemble<R>(riesz::to_inner_projection(gamma, 2));
    const auto sup = dir.write("mask.json", io::to_json(p));
    const auto res = run_cli("detect " + sup);
    REQUIRE(res.exit_code == 0);
    const auto verdict = json::parse(res.out);
    CHECK(verdict.at("is_band_projection") == true);
    CHECK(verdict.at("gamma") ==
          json::array({json::array({0, 1}), json::array({1, 0})}));
}

TEST_CASE("detect rejections name the stage") {
    TempDir dir;
    const auto half =
        R::from_fraction(1, 2) * riesz::SuperOperator<R>::identity(2);
    const auto res = run_cli("detect " + dir.write("half.json", io::to_json(half)));
    REQUIRE(res.exit_code == 0);
    CHECK(json::parse(res.out).at("rejection_stage") == "idempotence");

    for (const auto& crafted : riesz::fuzz::crafted_non_examples<R>(2)) {
        if (crafted.expected != riesz::DetectStage::positivity) continue;
        const auto path = dir.write("nonpos.json", io::to_json(crafted.op));
        const auto r = run_cli("detect " + path);
        REQUIRE(r.exit_code == 0);
        CHECK(json::parse(r.out).at("rejection_stage") == "positivity");
        break;
    }
}

TEST_CASE("classify-mult subcommand") {
    TempDir dir;
    riesz::Matrix<R> a(2), b(2);
    a(0, 0) = R(2);
    b(0, 0) = R::from_fraction(1, 2);
    b(1, 1) = R::from_fraction(1, 2);
    const auto pa = dir.write("a.json", io::to_json(a));
    const auto pb = dir.write("b.json", io::to_json(b));
    const auto res = run_cli("classify-mult --a " + pa + " --b " + pb);
    REQUIRE(res.exit_code == 0);
    const auto cls = json::parse(res.out);
    CHECK(cls.at("positive") == true);
    CHECK(cls.at("sign_case") == "both_positive");
    CHECK(cls.at("positive_projection") == true);
    CHECK(cls.at("band_projection") == true);
    CHECK(cls.at("lambda") == "1/2");

    const auto zero = dir.write("zero.json", io::to_json(riesz::Matrix<R>(2)));
    CHECK(run_cli("classify-mult --a " + zero + " --b " + pb).exit_code == 1);
}

TEST_CASE("boolean subcommand works at the relation level") {
    TempDir dir;
    const auto fam = dir.write("family.json", singleton_family(2));
    const auto g = dir.write("g.json",
                             json::array({json::array({"1", "1"}),
                                          json::array({"1", "2"})}));
    const auto d = dir.write("d.json", json::array({json::array({"1", "2"})}));
    const auto met = run_cli("boolean --family " + fam + " --op meet --gamma " + g +
                             " --delta " + d);
    REQUIRE(met.exit_code == 0);
    CHECK(json::parse(met.out) == json::array({json::array({"1", "2"})}));

    const auto comp = run_cli("boolean --family " + fam + " --op complement --gamma " + d);
    REQUIRE(comp.exit_code == 0);
    CHECK(json::parse(comp.out).size() == 3);
}

TEST_CASE("dyadic subcommand prints the decay table") {
    const auto res = run_cli("dyadic --max-level 3");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("1 2 1/2\n") != std::string::npos);
    CHECK(res.out.find("2 4 1/4\n") != std::string::npos);
    CHECK(res.out.find("3 8 1/8\n") != std::string::npos);
    CHECK(res.out.find("stretching operator in band: yes") != std::string::npos);
    CHECK(res.out.find("condition-3 violator in band: no") != std::string::npos);
    CHECK(res.out.find("16/16") != std::string::npos);
}

TEST_CASE("fuzz subcommand is deterministic and honors the exit contract") {
    const std::string args = "fuzz --seed 5 --trials 3 --max-dim 2";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const auto mutant =
        run_cli("fuzz --seed 5 --trials 3 --max-dim 2 --modules detect --inject-mutant");
    CHECK(mutant.exit_code == 1);
    CHECK(mutant.out.find("FAIL detect/roundtrip") != std::string::npos);
    CHECK(mutant.out.find("counterexample: ") != std::string::npos);
}

TEST_CASE("scalar mode can be forced from the environment") {
    TempDir dir;
    // undeclared file: plain integers parse in either mode
    json bare = {{"n", 2},
                 {"entries", {{1, 0}, {0, 1}}}};
    const auto pa = dir.write("a.json", bare);
    const auto pb = dir.write("b.json", bare);
    const auto exact = run_cli("classify-mult --a " + pa + " --b " + pb);
    REQUIRE(exact.exit_code == 0);
    CHECK(json::parse(exact.out).at("lambda") == "1/1");

    const auto floaty = run_cli("classify-mult --a " + pa + " --b " + pb,
                                "RIESZ_SCALAR_MODE=float");
    REQUIRE(floaty.exit_code == 0);
    CHECK(json::parse(floaty.out).at("lambda") == json(1.0));

    // conflicting declaration is a parse error
    json declared = bare;
    declared["scalar_mode"] = "exact";
    const auto pc = dir.write("c.json", declared);
    CHECK(run_cli("classify-mult --a " + pc + " --b " + pc,
                  "RIESZ_SCALAR_MODE=float")
              .exit_code == 2);
}

TEST_CASE("version flag") {
    const auto res = run_cli("--version");
    REQUIRE(res.exit_code == 0);
    CHECK(res.out.find("riesz") != std::string::npos);
}
