#pragma once

// Error hierarchy shared by the whole library.  The three categories map
// onto the CLI exit codes: parse_error -> 1, inadmissible_error -> 2,
// numeric_error -> 3.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hypertet {

// Malformed input: bad JSON, unknown keys, wrong types, out-of-range scalars.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A configuration that fails the admissibility checks.  Carries the list of
// failed checks so callers can report all of them, not just the first.
struct inadmissible_error : std::runtime_error {
    std::vector<std::string> failures;

    explicit inadmissible_error(const std::string& what,
                                std::vector<std::string> fails = {})
        : std::runtime_error(what), failures(std::move(fails)) {}
};

// Numeric failure during an otherwise well-posed computation: domain errors
// in the scalar kernels, degenerate triangles/links, finite-difference
// perturbations leaving the admissible region, solver non-convergence.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Solver non-convergence; carries the best residual reached and the number
// of iterations performed so the caller can report best effort.
struct solver_error : numeric_error {
    double best_residual;
    int iterations;

    solver_error(const std::string& what, double residual, int iters)
        : numeric_error(what), best_residual(residual), iterations(iters) {}
};

} // namespace hypertet
