#pragma once

// The generalized hyperbolic tetrahedron: configuration data, the 4x4 Gram
// matrix, admissibility checks, dihedral angles by two independent routes,
// and the determinant identities tying faces and links to Gram minors.
//
// Vertices are 0..3 internally (1..4 in labels and messages).  Edges use
// the canonical order
//
//     (12, 13, 14, 23, 24, 34)  ->  indices 0..5
//
// which places opposite-edge pairs (12|34, 13|24, 14|23) at antidiagonal
// positions e and 5-e of any 6x6 matrix in this order.

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "kernels.hpp"
#include "link.hpp"
#include "triangle.hpp"

namespace hypertet {

struct tet_config {
    std::array<vertex_type, 4> types;
    std::array<double, 6> lengths; // canonical edge order
};

// Endpoints of each edge in canonical order.
inline constexpr std::array<std::pair<int, int>, 6> edge_list{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Human-readable edge names, 1-based vertex labels.
inline constexpr std::array<const char*, 6> edge_names{"12", "13", "14",
                                                       "23", "24", "34"};

constexpr int edge_index(int i, int j) {
    const int a = i < j ? i : j;
    const int b = i < j ? j : i;
    // (0,1)->0 (0,2)->1 (0,3)->2 (1,2)->3 (1,3)->4 (2,3)->5
    return a == 0 ? b - 1 : a + b;
}

constexpr int opposite_edge(int e) { return 5 - e; }

// 4x4 Gram matrix: diagonal -eps_p, entry (p,q) = -tau'(x_pq).
inline Eigen::Matrix4d gram(const tet_config& cfg) {
    Eigen::Matrix4d g;
    for (int p = 0; p < 4; ++p) {
        g(p, p) = -static_cast<double>(eps(cfg.types[p]));
        for (int q = p + 1; q < 4; ++q) {
            const double tp =
                tau(cfg.lengths[edge_index(p, q)], cfg.types[p], cfg.types[q]).tau_prime;
            g(p, q) = g(q, p) = -tp;
        }
    }
    return g;
}

// The face opposite vertex `omit`, as a triangle_config plus the global
// vertex labels of its three local vertices (ascending).  Local vertex m
// gets the edge joining the other two as lengths[m], matching the
// triangle module's opposite-edge convention.
struct face_view {
    triangle_config tri;
    std::array<int, 3> vertices; // global label of local vertex m
};

inline face_view face_of(const tet_config& cfg, int omit) {
    face_view f{};
    int n = 0;
    for (int v = 0; v < 4; ++v)
        if (v != omit)
            f.vertices[n++] = v;
    for (int m = 0; m < 3; ++m) {
        f.tri.types[m] = cfg.types[f.vertices[m]];
        f.tri.lengths[m] =
            cfg.lengths[edge_index(f.vertices[(m + 1) % 3], f.vertices[(m + 2) % 3])];
    }
    return f;
}

// The link triangle at vertex `apex`, plus the global labels of the other
// three vertices (ascending).  Link edge m is the generalized angle of the
// face NOT containing others[m], taken at the apex; the inner angle at
// position m is the dihedral angle along edge (apex, others[m]).
struct link_view {
    link_triangle link;
    std::array<int, 3> others; // others[m] labels the angle opposite edge m
};

inline link_view link_of(const tet_config& cfg, int apex) {
    link_view lv{};
    lv.link.geometry = cfg.types[apex];
    int n = 0;
    for (int v = 0; v < 4; ++v)
        if (v != apex)
            lv.others[n++] = v;
    for (int m = 0; m < 3; ++m) {
        const face_view f = face_of(cfg, lv.others[m]);
        int local = 0;
        while (f.vertices[local] != apex)
            ++local;
        lv.link.edges[m] = face_b(f.tri, local);
    }
    return lv;
}

namespace detail {

// Determinant of the 3x3 minor of g with row p and column q removed.
inline double minor_det(const Eigen::Matrix4d& g, int p, int q) {
    Eigen::Matrix3d m;
    int r = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == p)
            continue;
        int c = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == q)
                continue;
            m(r, c++) = g(i, j);
        }
        ++r;
    }
    return m.determinant();
}

// Signed cofactor c_pq = (-1)^{p+q} det(minor pq).
inline double cofactor(const Eigen::Matrix4d& g, int p, int q) {
    const double d = minor_det(g, p, q);
    return ((p + q) % 2 == 0) ? d : -d;
}

// cos of the dihedral angle along edge e from Gram cofactors.  The global
// sign below is the one that makes this route agree with the vertex-link
// route; the agreement is asserted by the test suite on every build.
inline constexpr double cofactor_sign = 1.0;

inline double dihedral_cos_cofactor(const Eigen::Matrix4d& g, int e) {
    const auto [i, j] = edge_list[e];
    int k = -1, l = -1;
    for (int v = 0; v < 4; ++v) {
        if (v == i || v == j)
            continue;
        (k < 0 ? k : l) = v;
    }
    const double ckk = cofactor(g, k, k);
    const double cll = cofactor(g, l, l);
    const double prod = ckk * cll;
    if (!(prod > 0.0))
        throw numeric_error(std::string("dihedral angle for edge ") + edge_names[e] +
                            " undefined (cofactor product not positive)");
    return cofactor_sign * cofactor(g, k, l) / std::sqrt(prod);
}

} // namespace detail

struct admissibility_report {
    bool ok = false;
    std::vector<std::string> failures;
};

// Necessary admissibility conditions, checked in order: edge positivity;
// each face Gram determinant < -1e-14; det G < -1e-14; eigenvalue
// signature of G equal to (3 positive, 1 negative); every dihedral cosine
// strictly inside (-1, 1) with a 1e-12 margin.  All failures are reported,
// except that nonpositive lengths short-circuit (nothing downstream is
// well defined without positive lengths).
inline admissibility_report admissible(const tet_config& cfg) {
    admissibility_report rep;
    for (int e = 0; e < 6; ++e)
        if (!(std::isfinite(cfg.lengths[e]) && cfg.lengths[e] > 0.0))
            rep.failures.push_back(std::string("edge ") + edge_names[e] +
                                   " length not positive and finite");
    if (!rep.failures.empty())
        return rep;

    for (int omit = 0; omit < 4; ++omit) {
        const face_view f = face_of(cfg, omit);
        if (!(face_gram(f.tri).determinant() < -1e-14)) {
            std::string label;
            for (int v : f.vertices)
                label += std::to_string(v + 1);
            rep.failures.push_back("face " + label + " Gram determinant not negative");
        }
    }

    const Eigen::Matrix4d g = gram(cfg);
    if (!(g.determinant() < -1e-14))
        rep.failures.push_back("Gram determinant not negative");

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(g, Eigen::EigenvaluesOnly);
    int pos = 0, neg = 0;
    for (int i = 0; i < 4; ++i) {
        if (es.eigenvalues()[i] > 0.0)
            ++pos;
        else if (es.eigenvalues()[i] < 0.0)
            ++neg;
    }
    if (!(pos == 3 && neg == 1))
        rep.failures.push_back("Gram eigenvalue signature not (3 positive, 1 negative)");

    for (int e = 0; e < 6; ++e) {
        try {
            const double c = detail::dihedral_cos_cofactor(g, e);
            if (!(std::fabs(c) < 1.0 - 1e-12))
                rep.failures.push_back(std::string("dihedral cosine for edge ") +
                                       edge_names[e] + " out of range");
        } catch (const numeric_error& err) {
            rep.failures.push_back(err.what());
        }
    }

    rep.ok = rep.failures.empty();
    return rep;
}

// Dihedral angles by the Gram-cofactor route:
//
//     cos a_ij = c_kl / sqrt(c_kk * c_ll),   {k,l} = {0..3} \ {i,j}
inline std::array<double, 6> angles_cofactor(const tet_config& cfg) {
    const Eigen::Matrix4d g = gram(cfg);
    std::array<double, 6> out{};
    for (int e = 0; e < 6; ++e) {
        const double c = detail::dihedral_cos_cofactor(g, e);
        if (!(std::fabs(c) < 1.0))
            throw numeric_error(std::string("degenerate dihedral angle on edge ") +
                                edge_names[e]);
        out[e] = std::acos(c);
    }
    return out;
}

// Dihedral angles by the vertex-link route.  The angle along edge (i,j)
// appears in the links at both endpoints; both are computed, required to
// agree, and averaged.
inline std::array<double, 6> angles_link(const tet_config& cfg) {
    std::array<link_view, 4> links;
    for (int v = 0; v < 4; ++v)
        links[v] = link_of(cfg, v);
    std::array<double, 6> out{};
    for (int e = 0; e < 6; ++e) {
        const auto [i, j] = edge_list[e];
        const auto& li = links[i];
        const auto& lj = links[j];
        int mi = 0, mj = 0;
        while (li.others[mi] != j)
            ++mi;
        while (lj.others[mj] != i)
            ++mj;
        const double ai = link_angle(li.link, mi);
        const double aj = link_angle(lj.link, mj);
        if (std::fabs(ai - aj) > 1e-6)
            throw numeric_error(std::string("vertex-link computations disagree on edge ") +
                                edge_names[e]);
        out[e] = 0.5 * (ai + aj);
    }
    return out;
}

// Residuals of the eight determinant identities (relative):
//
//     sqrt(-det G_ii) = A(face opposite i)        for each i
//     sqrt(-det G)    = tau_ij tau_ik tau_il A(link at i)   for each i
struct det_identity_residuals {
    std::array<double, 4> face; // indexed by the omitted vertex
    std::array<double, 4> link; // indexed by the apex vertex
};

inline det_identity_residuals det_identities(const tet_config& cfg) {
    const Eigen::Matrix4d g = gram(cfg);
    const double sq = std::sqrt(-g.determinant());
    det_identity_residuals res{};
    for (int i = 0; i < 4; ++i) {
        const double mi = std::sqrt(-detail::minor_det(g, i, i));
        const face_view f = face_of(cfg, i);
        const double af = face_amplitude(f.tri);
        res.face[i] = std::fabs(mi - af) / af;

        const link_view lv = link_of(cfg, i);
        double tt = link_amplitude(lv.link);
        for (int j : lv.others)
            tt *= tau(cfg.lengths[edge_index(i, j)], cfg.types[i], cfg.types[j]).tau;
        res.link[i] = std::fabs(sq - tt) / sq;
    }
    return res;
}

} // namespace hypertet
