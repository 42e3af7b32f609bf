#pragma once

// Link triangle at a vertex of the tetrahedron.
//
// Cutting the tetrahedron at vertex i (by a small sphere, a horosphere, or
// the truncating plane, according to the vertex type) produces a triangle
// whose geometry is spherical (eps = 1), Euclidean (eps = 0), or hyperbolic
// (eps = -1), whose edges are the generalized angles b of the three faces
// meeting at i, and whose inner angles are the dihedral angles of the
// tetrahedron along the three edges meeting at i.
//
// Local labeling convention: edges[k] is the side OPPOSITE inner angle k.
//
// The amplitude A = rho(b_adj1) * rho(b_adj2) * sin(angle) is independent
// of which angle/edge pairing is used, and the angle derivatives have the
// uniform closed form implemented by link_angle_derivatives.

#include <array>
#include <cmath>

#include "errors.hpp"
#include "kernels.hpp"

namespace hypertet {

struct link_triangle {
    vertex_type geometry;        // type of the apex vertex
    std::array<double, 3> edges; // edges[k] is opposite inner angle k
};

// Inner angle opposite the chosen edge, by the classical law of cosines of
// the link's geometry.  The Euclidean branch uses the side-squared law
// directly: the unified spherical/hyperbolic expression degenerates to 0/0
// at eps = 0.
inline double link_angle(const link_triangle& lt, int opposite_edge) {
    const int k = opposite_edge;
    const int i = (k == 0) ? 1 : 0;
    const int j = (k == 2) ? 1 : 2;
    double c;
    switch (eps(lt.geometry)) {
    case 0: {
        const double bi = lt.edges[i], bj = lt.edges[j], bk = lt.edges[k];
        c = (bi * bi + bj * bj - bk * bk) / (2.0 * bi * bj);
        break;
    }
    case 1: {
        const rho_pair ri = rho(lt.edges[i], lt.geometry);
        const rho_pair rj = rho(lt.edges[j], lt.geometry);
        const rho_pair rk = rho(lt.edges[k], lt.geometry);
        c = (rk.rho_prime - ri.rho_prime * rj.rho_prime) / (ri.rho * rj.rho);
        break;
    }
    default: {
        const rho_pair ri = rho(lt.edges[i], lt.geometry);
        const rho_pair rj = rho(lt.edges[j], lt.geometry);
        const rho_pair rk = rho(lt.edges[k], lt.geometry);
        c = (ri.rho_prime * rj.rho_prime - rk.rho_prime) / (ri.rho * rj.rho);
        break;
    }
    }
    if (!(std::fabs(c) < 1.0))
        throw numeric_error("link_angle: degenerate link (cosine out of range)");
    return std::acos(c);
}

// Amplitude A = rho(b_1) * rho(b_2) * sin(angle_0); the same value results
// from any of the three pairings (well-definedness is a tested property).
inline double link_amplitude(const link_triangle& lt) {
    const double a0 = link_angle(lt, 0);
    return rho(lt.edges[1], lt.geometry).rho * rho(lt.edges[2], lt.geometry).rho *
           std::sin(a0);
}

// Derivatives of the chosen inner angle with respect to the three edges,
// indexed like `edges`.  Uniform formula:
//
//     da_m/db_opp = rho(b_opp) / A
//     da_m/db_adj = (rho(b_opp) / A) * (-cos of the angle enclosed by
//                                        b_opp and b_adj)
//
// where for the adjacent edge n the enclosed angle is the third one,
// p = 3 - m - n.
inline std::array<double, 3> link_angle_derivatives(const link_triangle& lt,
                                                    int angle_index) {
    const int m = angle_index;
    const double a = link_amplitude(lt);
    const double rm = rho(lt.edges[m], lt.geometry).rho;
    std::array<double, 3> out{};
    out[m] = rm / a;
    for (int n = 0; n < 3; ++n) {
        if (n == m)
            continue;
        const int p = 3 - m - n;
        out[n] = (rm / a) * (-std::cos(link_angle(lt, p)));
    }
    return out;
}

} // namespace hypertet
