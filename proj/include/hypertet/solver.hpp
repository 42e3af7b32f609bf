#pragma once

// Inverse problem: given a type signature and six target dihedral angles,
// find edge lengths whose forward angles match.
//
// Damped Newton iteration on r(x) = angles(x) - target with the analytic
// Jacobian.  The Newton step solves J d = -r in the minimum-norm
// least-squares sense through a rank-revealing orthogonal factorization:
// ideal vertices make J exactly rank-deficient (uniformly shifting the
// three edges at an ideal vertex changes no angle), so a pseudo-inverse
// step is required, and the returned lengths are then one representative
// of a solution family.  The step length is halved until the iterate stays
// admissible and strictly reduces the max-norm residual.
//
// This is a local method: no global convergence claim is made, and
// non-convergence is reported as an error carrying the best residual.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"
#include "jacobian.hpp"
#include "tetra.hpp"

namespace hypertet {

struct solve_request {
    std::array<vertex_type, 4> types;
    std::array<double, 6> target; // angles in (0, pi), canonical edge order
    std::optional<std::array<double, 6>> initial_lengths; // default: all 1.0
    double tolerance = 1e-10;
    int max_iterations = 100;
};

struct solve_result {
    std::array<double, 6> lengths;
    double residual; // max |angles(lengths) - target|
    int iterations;
    bool rank_deficient; // numerical rank of J at the solution < 6
};

namespace detail {

inline double max_abs_residual(const std::array<double, 6>& angles,
                               const std::array<double, 6>& target) {
    double r = 0.0;
    for (int e = 0; e < 6; ++e)
        r = std::max(r, std::fabs(angles[e] - target[e]));
    return r;
}

} // namespace detail

inline solve_result solve(const solve_request& req) {
    for (int e = 0; e < 6; ++e)
        if (!(req.target[e] > 0.0 && req.target[e] < 3.14159265358979323846))
            throw parse_error(std::string("solve: target angle for edge ") +
                              edge_names[e] + " outside (0, pi)");
    if (!(req.tolerance > 0.0))
        throw parse_error("solve: tolerance must be positive");
    if (req.max_iterations < 0)
        throw parse_error("solve: max_iterations must be nonnegative");

    tet_config cfg{req.types, req.initial_lengths.value_or(
                                  std::array<double, 6>{1, 1, 1, 1, 1, 1})};
    {
        const admissibility_report rep = admissible(cfg);
        if (!rep.ok)
            throw inadmissible_error("solve: initial point inadmissible",
                                     rep.failures);
    }

    std::array<double, 6> angles = angles_cofactor(cfg);
    double res = detail::max_abs_residual(angles, req.target);
    int iters = 0;

    // Rank detection threshold, relative to the largest pivot (~ |J|).
    constexpr double rank_threshold = 1e-10;

    while (res >= req.tolerance) {
        if (iters >= req.max_iterations)
            throw solver_error("solve: max iterations exceeded (best residual " +
                                   std::to_string(res) + ")",
                               res, iters);

        // An iterate can sit close enough to the admissibility boundary
        // that the Jacobian is no longer computable; that is a solver
        // failure, not a statement about the caller's input.
        matrix6 j;
        try {
            j = jacobian_analytic(cfg);
        } catch (const std::exception& err) {
            throw solver_error(std::string("solve: Jacobian undefined at iterate (") +
                                   err.what() + "; best residual " +
                                   std::to_string(res) + ")",
                               res, iters);
        }
        Eigen::CompleteOrthogonalDecomposition<matrix6> cod;
        cod.setThreshold(rank_threshold);
        cod.compute(j);
        Eigen::Matrix<double, 6, 1> r;
        for (int e = 0; e < 6; ++e)
            r(e) = angles[e] - req.target[e];
        const Eigen::Matrix<double, 6, 1> delta = cod.solve(-r);

        bool accepted = false;
        for (double lambda = 1.0; lambda >= 0x1p-20; lambda *= 0.5) {
            tet_config trial = cfg;
            for (int e = 0; e < 6; ++e)
                trial.lengths[e] = cfg.lengths[e] + lambda * delta(e);
            if (!admissible(trial).ok)
                continue;
            const std::array<double, 6> trial_angles = angles_cofactor(trial);
            const double trial_res = detail::max_abs_residual(trial_angles, req.target);
            if (trial_res < res) {
                cfg = trial;
                angles = trial_angles;
                res = trial_res;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw solver_error("solve: line search stalled (best residual " +
                                   std::to_string(res) + ")",
                               res, iters);
        ++iters;
    }

    // Rank is evaluated at the final point so rank deficiency is reported
    // even when the initial point already meets the tolerance.  A solution
    // where the Jacobian is not even computable counts as rank-deficient.
    bool deficient = true;
    try {
        Eigen::CompleteOrthogonalDecomposition<matrix6> cod;
        cod.setThreshold(rank_threshold);
        cod.compute(jacobian_analytic(cfg));
        deficient = cod.rank() < 6;
    } catch (const std::exception&) {
    }

    return {cfg.lengths, res, iters, deficient};
}

} // namespace hypertet
