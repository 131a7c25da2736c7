// Command line front end: project | boolean | detect | classify-mult |
// dyadic | fuzz over the JSON file formats.
//
// Exit codes: 0 success, 1 failed property or rejected precondition,
// 2 parse error, 3 shape/dimension error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "riesz/cli.hpp"
#include "riesz/riesz.hpp"

namespace {

riesz::io::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw riesz::ParseError("cannot open \"" + path + "\"");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return riesz::io::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw riesz::ParseError("\"" + path + "\": " + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"band projection calculus on finite atomic lattices"};
    app.set_version_flag("--version", std::string(riesz::kVersion));

    double epsilon = 1e-9;
    app.add_option("--epsilon", epsilon, "comparison tolerance in float mode")
        ->capture_default_str();

    std::string family_path, relation_path, matrix_path;
    auto* project = app.add_subcommand("project", "apply an inner band projection");
    project->add_option("family", family_path, "block family file")->required();
    project->add_option("relation", relation_path, "index relation file")->required();
    project->add_option("matrix", matrix_path, "operator file")->required();

    std::string bool_family, bool_op, gamma_path, delta_path;
    auto* boolean = app.add_subcommand("boolean", "relation-level Boolean algebra");
    boolean->add_option("--family", bool_family, "block family file")->required();
    boolean->add_option("--op", bool_op, "meet | join | complement")->required();
    boolean->add_option("--gamma", gamma_path, "first relation file")->required();
    boolean->add_option("--delta", delta_path, "second relation file");

    std::string superop_path;
    auto* detect = app.add_subcommand("detect", "band projection detector");
    detect->add_option("superoperator", superop_path, "superoperator file")->required();

    std::string a_path, b_path;
    auto* classify = app.add_subcommand("classify-mult", "classify L_A R_B");
    classify->add_option("--a", a_path, "left symbol file")->required();
    classify->add_option("--b", b_path, "right symbol file")->required();

    unsigned max_level = 5;
    auto* dyadic = app.add_subcommand("dyadic", "dyadic meet-with-identity decay table");
    dyadic->add_option("--max-level", max_level, "levels to tabulate")
        ->capture_default_str();

    riesz::fuzz::FuzzConfig fuzz_cfg;
    std::vector<std::string> fuzz_modules;
    auto* fuzz = app.add_subcommand("fuzz", "deterministic property fuzzing");
    fuzz->add_option("--seed", fuzz_cfg.seed, "64-bit stream seed")->capture_default_str();
    fuzz->add_option("--trials", fuzz_cfg.trials, "trials per property")
        ->capture_default_str();
    fuzz->add_option("--max-dim", fuzz_cfg.max_dim, "largest lattice dimension (<= 6)")
        ->capture_default_str();
    fuzz->add_option("--modules", fuzz_modules,
                     "subset of: lattice inner boolean orthogonality detect mult")
        ->delimiter(',');
    fuzz->add_flag("--inject-mutant", fuzz_cfg.inject_mutant,
                   "corrupt one detector input (harness self-test)");

    app.require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    riesz::FloatScalar::set_epsilon(epsilon);

    try {
        const auto env = riesz::cli::env_scalar_mode();
        if (*project) {
            std::cout << riesz::cli::cmd_project(load_json(family_path),
                                                 load_json(relation_path),
                                                 load_json(matrix_path), env)
                             .dump(2)
                      << "\n";
        } else if (*boolean) {
            riesz::io::json delta;
            const bool has_delta = !delta_path.empty();
            if (has_delta) delta = load_json(delta_path);
            std::cout << riesz::cli::cmd_boolean(load_json(bool_family), bool_op,
                                                 load_json(gamma_path),
                                                 has_delta ? &delta : nullptr)
                             .dump(2)
                      << "\n";
        } else if (*detect) {
            std::cout << riesz::cli::cmd_detect(load_json(superop_path), env).dump(2)
                      << "\n";
        } else if (*classify) {
            std::cout << riesz::cli::cmd_classify_mult(load_json(a_path),
                                                       load_json(b_path), env)
                             .dump(2)
                      << "\n";
        } else if (*dyadic) {
            std::cout << riesz::cli::cmd_dyadic(max_level);
        } else if (*fuzz) {
            for (const std::string& m : fuzz_modules) fuzz_cfg.modules.insert(m);
            const auto report = riesz::fuzz::run_fuzz(fuzz_cfg);
            std::cout << report.text;
            return report.all_passed ? 0 : 1;
        }
    } catch (const riesz::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const riesz::DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
