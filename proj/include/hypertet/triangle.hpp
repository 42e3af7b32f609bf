#pragma once

// Generalized hyperbolic triangle: each face of the tetrahedron is one.
//
// Vertices carry types (epsilon in {1,0,-1}) like the tetrahedron itself.
// Local labeling convention used throughout: vertices 0,1,2 and
// lengths[v] = the edge OPPOSITE vertex v (i.e. joining the other two).
//
// The face Gram matrix has diagonal -epsilon_v and off-diagonal entries
// -tau'(opposite edge).  Its determinant is negative exactly when the
// triangle is realizable, and the amplitude
//
//     A = sqrt(-det)
//
// equals tau_vu * tau_vw * rho(b_v) for every vertex v, where b_v is the
// generalized angle at v.  The generalized cosine law gives
//
//     rho'(b_v) = (-eps_v * tau'_uw + tau'_vu * tau'_vw) / (tau_vu * tau_vw)
//
// and the derivative of b_v with respect to the edge lengths has the
// uniform closed form implemented by face_angle_derivatives.

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "errors.hpp"
#include "kernels.hpp"

namespace hypertet {

struct triangle_config {
    std::array<vertex_type, 3> types;
    std::array<double, 3> lengths; // lengths[v] is the edge opposite vertex v
};

// 3x3 Gram matrix: diagonal -eps_p, entry (p,q) = -tau'(edge pq).
inline Eigen::Matrix3d face_gram(const triangle_config& cfg) {
    Eigen::Matrix3d g;
    for (int p = 0; p < 3; ++p) {
        g(p, p) = -static_cast<double>(eps(cfg.types[p]));
        for (int q = p + 1; q < 3; ++q) {
            const int r = 3 - p - q; // vertex opposite edge pq
            const double tp = tau(cfg.lengths[r], cfg.types[p], cfg.types[q]).tau_prime;
            g(p, q) = g(q, p) = -tp;
        }
    }
    return g;
}

// rho'(b) of the generalized angle at the chosen vertex (cosine law).
inline double face_rho_prime(const triangle_config& cfg, int at_vertex) {
    const int v = at_vertex;
    const int u = (v == 0) ? 1 : 0;
    const int w = (v == 2) ? 1 : 2;
    const tau_pair t_opp = tau(cfg.lengths[v], cfg.types[u], cfg.types[w]);
    const tau_pair t_vu = tau(cfg.lengths[w], cfg.types[v], cfg.types[u]);
    const tau_pair t_vw = tau(cfg.lengths[u], cfg.types[v], cfg.types[w]);
    return (-eps(cfg.types[v]) * t_opp.tau_prime + t_vu.tau_prime * t_vw.tau_prime) /
           (t_vu.tau * t_vw.tau);
}

// Amplitude A = sqrt(-det faceGram).  Degenerate (flat) faces make the
// amplitude vanish and all angle derivatives blow up, so determinants are
// required to sit strictly below a small negative floor.
inline double face_amplitude(const triangle_config& cfg) {
    const double d = face_gram(cfg).determinant();
    if (d >= -1e-14)
        throw numeric_error("face_amplitude: triangle not realizable "
                            "(Gram determinant not negative)");
    return std::sqrt(-d);
}

// Generalized angle b at the chosen vertex.
//
// At finite/hyperideal vertices b is recovered from rho'(b).  At an ideal
// vertex rho' is identically 1, so b is recovered from the amplitude
// instead: rho(b) = b = A / (tau_vu * tau_vw).  For an all-ideal triangle
// this reduces to the closed form b = 2 e^{(x_opp - x_adj1 - x_adj2)/2}.
inline double face_b(const triangle_config& cfg, int at_vertex) {
    const int v = at_vertex;
    const int u = (v == 0) ? 1 : 0;
    const int w = (v == 2) ? 1 : 2;
    if (cfg.types[v] == vertex_type::ideal) {
        const double t_vu = tau(cfg.lengths[w], cfg.types[v], cfg.types[u]).tau;
        const double t_vw = tau(cfg.lengths[u], cfg.types[v], cfg.types[w]).tau;
        return face_amplitude(cfg) / (t_vu * t_vw);
    }
    const double rp = face_rho_prime(cfg, v);
    if (cfg.types[v] == vertex_type::finite && !(rp > -1.0 && rp < 1.0))
        throw numeric_error("face_b: degenerate triangle (angle cosine out of range)");
    if (cfg.types[v] == vertex_type::hyperideal && !(rp > 1.0))
        throw numeric_error("face_b: degenerate triangle (hyperbolic angle "
                            "cosine not above 1)");
    return inverse_rho_prime(rp, cfg.types[v]);
}

// Derivatives of the angle b at `at_vertex` with respect to the three edge
// lengths, indexed like `lengths`.  Uniform formula:
//
//     db_v/dx_opp = tau_opp / A
//     db_v/dx_adj = (tau_opp / A) * (-rho' at the far endpoint of x_adj)
//
// where x_adj = lengths[u] joins v to the third vertex w = 3-v-u, and the
// far endpoint (as seen from v) is w.
inline std::array<double, 3> face_angle_derivatives(const triangle_config& cfg,
                                                    int at_vertex) {
    const int v = at_vertex;
    const int u0 = (v == 0) ? 1 : 0;
    const int w0 = (v == 2) ? 1 : 2;
    const double a = face_amplitude(cfg);
    const double t_opp = tau(cfg.lengths[v], cfg.types[u0], cfg.types[w0]).tau;
    std::array<double, 3> out{};
    out[v] = t_opp / a;
    for (int u = 0; u < 3; ++u) {
        if (u == v)
            continue;
        const int w = 3 - v - u; // lengths[u] joins v and w
        out[u] = (t_opp / a) * (-face_rho_prime(cfg, w));
    }
    return out;
}

} // namespace hypertet
