#pragma once

// Command implementations behind the CLI subcommands.  Each cmd_* takes
// the parsed input document (plus flags where relevant) and returns the
// result document; errors are thrown and turned into structured error
// objects plus exit codes by the CLI front-end.
//
// Every result document carries: the echoed input, the canonical edge
// order used to label matrices and edge-keyed objects, the requested
// payload, and a "tolerances" object recording the numeric thresholds
// involved.

#include <array>
#include <cstdint>
#include <exception>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "jacobian.hpp"
#include "json_io.hpp"
#include "sample.hpp"
#include "solver.hpp"
#include "tetra.hpp"

namespace hypertet {

struct cli_flags {
    bool fd = false;
    double h = 1e-5;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int count = 1;
    bool parallel = false;
};

namespace detail {

inline void require_admissible(const tet_config& cfg) {
    const admissibility_report rep = admissible(cfg);
    if (!rep.ok)
        throw inadmissible_error("configuration inadmissible", rep.failures);
}

inline json result_header(const char* command, const json& input_echo) {
    json out = json::object();
    out["command"] = command;
    out["input"] = input_echo;
    out["edge_order"] = edge_order_json();
    return out;
}

// Thresholds baked into the admissibility checks.
inline json admissibility_tolerances() {
    return {{"determinant_floor", 1e-14}, {"cosine_margin", 1e-12}};
}

inline json symmetry_report_to_json(const symmetry_report& rep) {
    json families = json::array();
    for (const auto& fam : rep.families)
        families.push_back({{"name", fam.name},
                            {"max_deviation", fam.max_deviation},
                            {"pass", fam.pass}});
    return {{"tolerance", rep.tolerance},
            {"all_pass", rep.all_pass},
            {"families", families}};
}

} // namespace detail

// angles: both routes plus their maximum deviation.
inline json cmd_angles(const json& in) {
    const tet_config cfg = parse_config(in);
    detail::require_admissible(cfg);
    const std::array<double, 6> ac = angles_cofactor(cfg);
    const std::array<double, 6> al = angles_link(cfg);
    double dev = 0.0;
    for (int e = 0; e < 6; ++e)
        dev = std::max(dev, std::fabs(ac[e] - al[e]));

    json out = detail::result_header("angles", config_to_json(cfg));
    out["angles"] = {{"cofactor", edge_object_to_json(ac)},
                     {"link", edge_object_to_json(al)},
                     {"max_route_deviation", dev}};
    out["tolerances"] = detail::admissibility_tolerances();
    return out;
}

// gram: Gram matrix diagnostics for any positive lengths; admissibility is
// reported, not required, so the command can explain rejected inputs.
inline json cmd_gram(const json& in) {
    const tet_config cfg = parse_config(in);
    const Eigen::Matrix4d g = gram(cfg);
    const admissibility_report rep = admissible(cfg);

    json vertex_order = json::array();
    for (int v = 1; v <= 4; ++v)
        vertex_order.push_back(std::to_string(v));

    json minors = json::object();
    for (int i = 0; i < 4; ++i)
        minors[std::to_string(i + 1)] = detail::minor_det(g, i, i);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(g, Eigen::EigenvaluesOnly);
    json eigenvalues = json::array();
    int pos = 0, neg = 0, zero = 0;
    for (int i = 0; i < 4; ++i) {
        const double ev = es.eigenvalues()[i];
        eigenvalues.push_back(ev);
        (ev > 0.0 ? pos : (ev < 0.0 ? neg : zero))++;
    }

    json out = detail::result_header("gram", config_to_json(cfg));
    out["gram"] = {{"vertex_order", vertex_order},
                   {"matrix", matrix_to_json(g)},
                   {"determinant", g.determinant()},
                   {"face_minor_determinants", minors},
                   {"eigenvalues", eigenvalues},
                   {"signature", {{"positive", pos}, {"negative", neg}, {"zero", zero}}}};
    if (rep.ok) {
        const det_identity_residuals res = det_identities(cfg);
        json face = json::object(), link = json::object();
        for (int i = 0; i < 4; ++i) {
            face[std::to_string(i + 1)] = res.face[i];
            link[std::to_string(i + 1)] = res.link[i];
        }
        out["determinant_identities"] = {{"face_residuals", face},
                                         {"link_residuals", link}};
    }
    out["admissible"] = rep.ok;
    out["failures"] = rep.failures;
    out["tolerances"] = detail::admissibility_tolerances();
    return out;
}

// check: the admissibility report itself.
inline json cmd_check(const json& in) {
    const tet_config cfg = parse_config(in);
    const admissibility_report rep = admissible(cfg);
    json out = detail::result_header("check", config_to_json(cfg));
    out["admissible"] = rep.ok;
    out["failures"] = rep.failures;
    out["tolerances"] = detail::admissibility_tolerances();
    return out;
}

// jacobian: analytic J (optionally the FD oracle and their deviation) and
// the symmetry report on the analytic matrix.
inline json cmd_jacobian(const json& in, const cli_flags& flags) {
    const tet_config cfg = parse_config(in);
    detail::require_admissible(cfg);
    const std::array<double, 6> angles = angles_cofactor(cfg);
    const matrix6 j = jacobian_analytic(cfg);

    json out = detail::result_header("jacobian", config_to_json(cfg));
    out["angles"] = edge_object_to_json(angles);
    out["prefactor"] = prefactor(cfg);
    json jac = {{"analytic", matrix_to_json(j)}};
    if (flags.fd) {
        const matrix6 jf = jacobian_fd(cfg, flags.h);
        jac["fd"] = matrix_to_json(jf);
        jac["max_abs_deviation"] = (j - jf).cwiseAbs().maxCoeff();
        jac["fd_step"] = flags.h;
    }
    out["jacobian"] = jac;
    out["symmetries"] =
        detail::symmetry_report_to_json(check_symmetries(j, angles, flags.tol));
    json tol = detail::admissibility_tolerances();
    tol["symmetry_tolerance"] = flags.tol;
    if (flags.fd)
        tol["fd_step"] = flags.h;
    out["tolerances"] = tol;
    return out;
}

// symmetries: the five-family report, on the analytic Jacobian by default
// or on the finite-difference one with --fd.
inline json cmd_symmetries(const json& in, const cli_flags& flags) {
    const tet_config cfg = parse_config(in);
    detail::require_admissible(cfg);
    const std::array<double, 6> angles = angles_cofactor(cfg);
    const matrix6 j = flags.fd ? jacobian_fd(cfg, flags.h) : jacobian_analytic(cfg);

    json out = detail::result_header("symmetries", config_to_json(cfg));
    out["matrix_source"] = flags.fd ? "fd" : "analytic";
    out["symmetries"] =
        detail::symmetry_report_to_json(check_symmetries(j, angles, flags.tol));
    json tol = detail::admissibility_tolerances();
    tol["symmetry_tolerance"] = flags.tol;
    if (flags.fd)
        tol["fd_step"] = flags.h;
    out["tolerances"] = tol;
    return out;
}

// solve: inverse problem.  Two document forms:
//   - {"types", "target", ...}: solve for lengths matching the target.
//   - {"types", "lengths", ...}: round-trip form — the target is the
//     forward angles of the given lengths (which also serve as the default
//     initial point), so the command verifies the configuration reproduces
//     its own angles; supply "initial_lengths" to watch a genuine solve.
inline json cmd_solve(const json& in) {
    if (!in.is_object())
        throw parse_error("solve document must be a JSON object");
    detail::reject_unknown_keys(in,
                                {"types", "target", "lengths", "initial_lengths",
                                 "tolerance", "max_iterations"},
                                "solve document");
    solve_request req;
    req.types = parse_types(in);

    if (in.contains("tolerance")) {
        req.tolerance = detail::require_number(in["tolerance"], "\"tolerance\"");
        if (!(req.tolerance > 0.0))
            throw parse_error("\"tolerance\" must be positive");
    }
    if (in.contains("max_iterations")) {
        if (!in["max_iterations"].is_number_integer() ||
            in["max_iterations"].get<long long>() < 1)
            throw parse_error("\"max_iterations\" must be a positive integer");
        req.max_iterations = static_cast<int>(in["max_iterations"].get<long long>());
    }
    if (in.contains("initial_lengths"))
        req.initial_lengths = parse_edge_object(in["initial_lengths"], "initial_lengths");

    if (in.contains("target")) {
        if (in.contains("lengths"))
            throw parse_error("provide either \"target\" or \"lengths\", not both");
        req.target = parse_edge_object(in["target"], "target");
    } else {
        const tet_config generator{req.types, parse_lengths(in)};
        detail::require_admissible(generator);
        req.target = angles_cofactor(generator);
        if (!req.initial_lengths)
            req.initial_lengths = generator.lengths;
    }

    const solve_result result = solve(req);
    const tet_config solved{req.types, result.lengths};

    json echo = json::object();
    echo["types"] = types_to_json(req.types);
    echo["target"] = edge_object_to_json(req.target);
    echo["initial_lengths"] = edge_object_to_json(
        req.initial_lengths.value_or(std::array<double, 6>{1, 1, 1, 1, 1, 1}));
    echo["tolerance"] = req.tolerance;
    echo["max_iterations"] = req.max_iterations;

    json out = detail::result_header("solve", echo);
    out["solve"] = {{"lengths", edge_object_to_json(result.lengths)},
                    {"residual", result.residual},
                    {"iterations", result.iterations},
                    {"rank_deficient", result.rank_deficient},
                    {"angles", edge_object_to_json(angles_cofactor(solved))}};
    out["tolerances"] = {{"tolerance", req.tolerance}};
    return out;
}

// sample: stream `count` admissible configuration documents, one compact
// JSON object per line.  Document k is a pure function of (types, seed, k),
// so --parallel changes wall time only, never bytes.
inline void cmd_sample(const json& in, const cli_flags& flags, std::ostream& os) {
    if (!in.is_object())
        throw parse_error("sample document must be a JSON object");
    detail::reject_unknown_keys(in, {"types", "lengths"}, "sample document");
    const std::array<vertex_type, 4> types = parse_types(in);
    if (in.contains("lengths"))
        parse_lengths(in); // validated, then ignored: sampling draws fresh lengths
    if (flags.count < 1)
        throw parse_error("sample: count must be at least 1");

    std::vector<std::string> lines(static_cast<std::size_t>(flags.count));
    const auto render = [&](int i) {
        const tet_config cfg =
            sample_config(types, flags.seed, static_cast<std::uint64_t>(i));
        lines[static_cast<std::size_t>(i)] = dump_checked(config_to_json(cfg));
    };

    const unsigned hw = std::thread::hardware_concurrency();
    const int workers =
        flags.parallel ? static_cast<int>(std::min<unsigned>(hw ? hw : 1,
                                                             static_cast<unsigned>(
                                                                 flags.count)))
                       : 1;
    if (workers > 1) {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int i = w; i < flags.count; i += workers)
                        render(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool)
            t.join();
        for (const auto& err : errors)
            if (err)
                std::rethrow_exception(err);
    } else {
        for (int i = 0; i < flags.count; ++i)
            render(i);
    }

    for (const auto& line : lines)
        os << line << '\n';
}

} // namespace hypertet
