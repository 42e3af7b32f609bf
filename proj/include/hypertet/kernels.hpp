#pragma once

// Scalar kernels shared by every module.
//
// A vertex of a generalized hyperbolic tetrahedron is classified by
// epsilon in {1, 0, -1}: finite (inside H^3), ideal (on the light cone),
// or hyperideal (on the de Sitter sheet, i.e. truncated by a half-space).
//
// For an edge of length x joining vertices of types e_i, e_j:
//
//     tau(x)  = e^x/2 - e_i e_j e^{-x}/2
//     tau'(x) = e^x/2 + e_i e_j e^{-x}/2
//
// which specialize by the product e_i*e_j to (sinh x, cosh x), the common
// value e^x/2, or (cosh x, sinh x).  For a generalized angle b at a vertex
// of type epsilon:
//
//     rho(b)  = sin b, b, sinh b      for epsilon = 1, 0, -1
//     rho'(b) = cos b, 1, cosh b
//
// Branch selection is always by exact integer match on epsilon; epsilon is
// combinatorial data, never a continuum parameter.

#include <cmath>
#include <string>

#include "errors.hpp"

namespace hypertet {

enum class vertex_type : int {
    finite = 1,     // point inside H^3
    ideal = 0,      // point on the light cone, truncated by a horoball
    hyperideal = -1 // point on the de Sitter sheet, truncated by a half-space
};

constexpr int eps(vertex_type t) { return static_cast<int>(t); }

struct tau_pair {
    double tau;       // tau(x)
    double tau_prime; // d/dx tau(x)
};

struct rho_pair {
    double rho;       // rho(b)
    double rho_prime; // d/db rho(b)
};

// Edge kernel for an edge of length x between vertices of types ei, ej.
// Total on finite x; the x > 0 requirement for product >= 0 is enforced
// upstream where configurations are validated.
inline tau_pair tau(double x, vertex_type ei, vertex_type ej) {
    switch (eps(ei) * eps(ej)) {
    case 1:
        return {std::sinh(x), std::cosh(x)};
    case 0:
        return {0.5 * std::exp(x), 0.5 * std::exp(x)};
    default:
        return {std::cosh(x), std::sinh(x)};
    }
}

// Angle kernel for a generalized angle b at a vertex of type e.
// For a finite vertex the angle lives on a sphere, so b must be in (0, pi).
inline rho_pair rho(double b, vertex_type e) {
    switch (eps(e)) {
    case 1:
        if (!(b > 0.0 && b < 3.14159265358979323846))
            throw numeric_error("rho: spherical length " + std::to_string(b) +
                                " outside (0, pi)");
        return {std::sin(b), std::cos(b)};
    case 0:
        return {b, 1.0};
    default:
        return {std::sinh(b), std::cosh(b)};
    }
}

// Recover b from rho'(b).  Invertible only for finite (arccos branch into
// (0, pi)) and hyperideal (positive arccosh branch) vertices; for an ideal
// vertex rho' is identically 1 and carries no information.
inline double inverse_rho_prime(double rp, vertex_type e) {
    switch (eps(e)) {
    case 1:
        if (!(rp > -1.0 && rp < 1.0))
            throw numeric_error("inverse_rho_prime: value " + std::to_string(rp) +
                                " outside (-1, 1) for a finite vertex");
        return std::acos(rp);
    case 0:
        throw numeric_error("inverse_rho_prime: uninformative for ideal vertex");
    default:
        if (!(rp > 1.0))
            throw numeric_error("inverse_rho_prime: value " + std::to_string(rp) +
                                " not above 1 for a hyperideal vertex");
        return std::acosh(rp);
    }
}

} // namespace hypertet
