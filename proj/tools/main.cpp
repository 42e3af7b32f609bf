// hypertet — dihedral-angle calculus for generalized hyperbolic tetrahedra.
//
// JSON in, JSON out.  Subcommands: angles, gram, jacobian, check, solve,
// symmetries, sample.  Results go to stdout; structured error objects go
// to stderr.  Exit codes: 0 success, 1 parse/usage error, 2 inadmissible
// configuration, 3 numeric failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hypertet/commands.hpp"
#include "hypertet/errors.hpp"
#include "hypertet/json_io.hpp"

namespace {

hypertet::json read_input_document(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream file(path);
        if (!file)
            throw hypertet::parse_error("cannot open input file: " + path);
        std::ostringstream buf;
        buf << file.rdbuf();
        text = buf.str();
    }
    try {
        return hypertet::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw hypertet::parse_error(std::string("invalid JSON: ") + e.what());
    }
}

void emit_error(const char* kind, const hypertet::json& extra,
                const std::string& message) {
    hypertet::json err = {{"kind", kind}, {"message", message}};
    for (const auto& item : extra.items())
        err[item.key()] = item.value();
    std::cerr << hypertet::json{{"error", err}}.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dihedral-angle calculus for generalized hyperbolic tetrahedra"};
    app.require_subcommand(1);
    // --h is the finite-difference step, so help is long-form only.
    app.set_help_flag("--help", "print help");

    std::string input = "-";
    hypertet::cli_flags flags;

    const auto add_input = [&](CLI::App* cmd) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--input,-i", input,
                        "input document path, or - for standard input")
            ->capture_default_str();
    };
    const auto add_fd = [&](CLI::App* cmd) {
        cmd->add_flag("--fd", flags.fd, "also evaluate the finite-difference oracle");
        cmd->add_option("--h", flags.h, "finite-difference step")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };
    const auto add_tol = [&](CLI::App* cmd) {
        cmd->add_option("--tol", flags.tol, "symmetry-report tolerance")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    };

    CLI::App* angles =
        app.add_subcommand("angles", "dihedral angles by both routes");
    add_input(angles);

    CLI::App* gram = app.add_subcommand(
        "gram", "Gram matrix, determinants, eigenvalue signature");
    add_input(gram);

    CLI::App* jacobian = app.add_subcommand(
        "jacobian", "analytic Jacobian, optional FD oracle, symmetry report");
    add_input(jacobian);
    add_fd(jacobian);
    add_tol(jacobian);

    CLI::App* check = app.add_subcommand("check", "admissibility report");
    add_input(check);

    CLI::App* solve =
        app.add_subcommand("solve", "solve for lengths matching target angles");
    add_input(solve);

    CLI::App* symmetries = app.add_subcommand(
        "symmetries", "symmetry families of the normalized Jacobian");
    add_input(symmetries);
    add_fd(symmetries);
    add_tol(symmetries);

    CLI::App* sample = app.add_subcommand(
        "sample", "stream admissible configurations for a type signature");
    add_input(sample);
    sample->add_option("--seed", flags.seed, "sampling seed")
        ->capture_default_str();
    sample->add_option("--count", flags.count, "number of documents to emit")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    sample->add_flag("--parallel", flags.parallel,
                     "sample documents concurrently (same bytes, any core count)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const hypertet::json doc = read_input_document(input);
        hypertet::json result;
        if (app.got_subcommand(angles)) {
            result = hypertet::cmd_angles(doc);
        } else if (app.got_subcommand(gram)) {
            result = hypertet::cmd_gram(doc);
        } else if (app.got_subcommand(jacobian)) {
            result = hypertet::cmd_jacobian(doc, flags);
        } else if (app.got_subcommand(check)) {
            result = hypertet::cmd_check(doc);
        } else if (app.got_subcommand(solve)) {
            result = hypertet::cmd_solve(doc);
        } else if (app.got_subcommand(symmetries)) {
            result = hypertet::cmd_symmetries(doc, flags);
        } else {
            hypertet::cmd_sample(doc, flags, std::cout);
            return 0;
        }
        std::cout << hypertet::dump_checked(result, 2) << '\n';
        if (app.got_subcommand(check) && !result["admissible"].get<bool>())
            return 2;
        return 0;
    } catch (const hypertet::parse_error& e) {
        emit_error("parse", {}, e.what());
        return 1;
    } catch (const hypertet::inadmissible_error& e) {
        emit_error("inadmissible", {{"failures", e.failures}}, e.what());
        return 2;
    } catch (const hypertet::solver_error& e) {
        emit_error("numeric",
                   {{"best_residual", e.best_residual}, {"iterations", e.iterations}},
                   e.what());
        return 3;
    } catch (const hypertet::numeric_error& e) {
        emit_error("numeric", {}, e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error("internal", {}, e.what());
        return 3;
    }
}
