#pragma once

// Analytic Jacobian J = d(angles)/d(lengths) of the forward map, its
// finite-difference oracle, and the checker for the five symmetry families
// of the normalized matrix P.
//
// With angles a and the canonical edge order, the Jacobian factors as
//
//     J = s * D * M * D
//
// where s is a scalar built from Gram determinants, D = diag(sin a), and M
// has diagonal w_e, antidiagonal 1, and entry (e,f) = -cos a_g for edge
// pairs sharing a vertex, g being the edge joining the two endpoints not
// shared by e and f.  J is symmetric by construction.
//
// The normalized matrix P(e,f) = J(e,f) / (sin a_e sin a_f) satisfies five
// exact symmetry families, checked by check_symmetries:
//
//     1. P symmetric
//     2. the six antidiagonal entries P(e, 5-e) are all equal
//     3. P(e,f) = -P(e, 5-e) * cos a_g     (f adjacent to e, g as above)
//     4. P(e,e) = P(e, 5-e) * w_e
//     5. P(e,f) = P(5-e, 5-f)              (f adjacent to e)

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"
#include "tetra.hpp"

namespace hypertet {

using matrix6 = Eigen::Matrix<double, 6, 6>;

namespace detail {

// Edge joining the symmetric difference of the endpoint sets of edges e
// and f; defined exactly when e and f share one vertex (f != e, 5-e).
inline int joining_edge(int e, int f) {
    const auto [a, b] = edge_list[e];
    const auto [c, d] = edge_list[f];
    int u, v;
    if (a == c) {
        u = b, v = d;
    } else if (a == d) {
        u = b, v = c;
    } else if (b == c) {
        u = a, v = d;
    } else {
        u = a, v = c;
    }
    return edge_index(u, v);
}

} // namespace detail

// Diagonal entry w_e of M:
//
//     w_ij = (cos a_ij cos a_jk cos a_ki + cos a_ij cos a_jl cos a_li
//             + cos a_ik cos a_jl + cos a_il cos a_jk) / sin^2 a_ij
inline double w_entry(const std::array<double, 6>& angles, int e) {
    const double s = std::sin(angles[e]);
    if (!(s >= 1e-12))
        throw numeric_error(std::string("w_entry: sin of angle on edge ") +
                            edge_names[e] + " below 1e-12");
    const auto [i, j] = edge_list[e];
    int k = -1, l = -1;
    for (int v = 0; v < 4; ++v) {
        if (v == i || v == j)
            continue;
        (k < 0 ? k : l) = v;
    }
    const auto c = [&](int p, int q) { return std::cos(angles[edge_index(p, q)]); };
    const double num = c(i, j) * c(j, k) * c(k, i) + c(i, j) * c(j, l) * c(l, i) +
                       c(i, k) * c(j, l) + c(i, l) * c(j, k);
    return num / (s * s);
}

// The 6x6 matrix M: diagonal w_e, antidiagonal 1, off entries -cos a_g.
// Symmetric exactly: the rule for (e,f) and (f,e) evaluates the same cos.
inline matrix6 m_matrix(const std::array<double, 6>& angles) {
    matrix6 m;
    for (int e = 0; e < 6; ++e) {
        for (int f = 0; f < 6; ++f) {
            if (f == e)
                m(e, f) = w_entry(angles, e);
            else if (f == opposite_edge(e))
                m(e, f) = 1.0;
            else
                m(e, f) = -std::cos(angles[detail::joining_edge(e, f)]);
        }
    }
    return m;
}

// Scalar prefactor s = sqrt(prod_i det G_ii / -(det G)^3).
inline double prefactor(const tet_config& cfg) {
    const Eigen::Matrix4d g = gram(cfg);
    double num = 1.0;
    for (int i = 0; i < 4; ++i)
        num *= detail::minor_det(g, i, i);
    const double d = g.determinant();
    const double radicand = num / -(d * d * d);
    if (!(radicand > 0.0))
        throw inadmissible_error("prefactor: radicand not positive "
                                 "(configuration inadmissible)");
    return std::sqrt(radicand);
}

// J = s * D M D, assembled entrywise so symmetry is exact in floating
// point (each (e,f)/(f,e) pair is assigned from a single product).
inline matrix6 jacobian_analytic(const tet_config& cfg) {
    const std::array<double, 6> angles = angles_cofactor(cfg);
    const double s = prefactor(cfg);
    const matrix6 m = m_matrix(angles);
    std::array<double, 6> d{};
    for (int e = 0; e < 6; ++e)
        d[e] = std::sin(angles[e]);
    matrix6 j;
    for (int e = 0; e < 6; ++e)
        for (int f = e; f < 6; ++f)
            j(e, f) = j(f, e) = s * d[e] * m(e, f) * d[f];
    return j;
}

// Central-difference oracle: column f is (a(x + h e_f) - a(x - h e_f)) / 2h.
// Every perturbed configuration must itself be admissible.
inline matrix6 jacobian_fd(const tet_config& cfg, double h = 1e-5) {
    matrix6 j;
    for (int f = 0; f < 6; ++f) {
        std::array<std::array<double, 6>, 2> a{};
        for (int s = 0; s < 2; ++s) {
            tet_config pert = cfg;
            pert.lengths[f] += (s == 0) ? h : -h;
            if (!admissible(pert).ok)
                throw numeric_error(
                    std::string("finite-difference perturbation of edge ") +
                    edge_names[f] + " left the admissible region");
            a[s] = angles_cofactor(pert);
        }
        for (int e = 0; e < 6; ++e)
            j(e, f) = (a[0][e] - a[1][e]) / (2.0 * h);
    }
    return j;
}

struct symmetry_family {
    std::string name;
    double max_deviation = 0.0;
    bool pass = false;
};

struct symmetry_report {
    double tolerance = 0.0;
    bool all_pass = false;
    std::array<symmetry_family, 5> families;
};

// Evaluate the five symmetry families of P(e,f) = J(e,f)/(sin a_e sin a_f)
// as residuals; each family passes when its max deviation is below tol.
inline symmetry_report check_symmetries(const matrix6& j,
                                        const std::array<double, 6>& angles,
                                        double tol) {
    std::array<double, 6> s{};
    for (int e = 0; e < 6; ++e) {
        s[e] = std::sin(angles[e]);
        if (!(s[e] >= 1e-12))
            throw numeric_error(std::string("check_symmetries: sin of angle on edge ") +
                                edge_names[e] + " below 1e-12");
    }
    matrix6 p;
    for (int e = 0; e < 6; ++e)
        for (int f = 0; f < 6; ++f)
            p(e, f) = j(e, f) / (s[e] * s[f]);

    symmetry_report rep;
    rep.tolerance = tol;
    rep.families[0].name = "symmetric";
    rep.families[1].name = "opposite_pairs_equal";
    rep.families[2].name = "shared_vertex_factor";
    rep.families[3].name = "diagonal_scaling";
    rep.families[4].name = "antidiagonal_reflection";

    auto& dev = rep.families;
    double anti_min = p(0, 5), anti_max = p(0, 5);
    for (int e = 0; e < 6; ++e) {
        anti_min = std::min(anti_min, p(e, 5 - e));
        anti_max = std::max(anti_max, p(e, 5 - e));
        dev[3].max_deviation = std::max(
            dev[3].max_deviation,
            std::fabs(p(e, e) - p(e, 5 - e) * w_entry(angles, e)));
        for (int f = 0; f < 6; ++f) {
            if (f == e)
                continue;
            dev[0].max_deviation =
                std::max(dev[0].max_deviation, std::fabs(p(e, f) - p(f, e)));
            if (f == 5 - e)
                continue;
            const int g = detail::joining_edge(e, f);
            dev[2].max_deviation = std::max(
                dev[2].max_deviation,
                std::fabs(p(e, f) + p(e, 5 - e) * std::cos(angles[g])));
            dev[4].max_deviation = std::max(
                dev[4].max_deviation, std::fabs(p(e, f) - p(5 - e, 5 - f)));
        }
    }
    dev[1].max_deviation = anti_max - anti_min;

    rep.all_pass = true;
    for (auto& fam : rep.families) {
        fam.pass = fam.max_deviation < tol;
        rep.all_pass = rep.all_pass && fam.pass;
    }
    return rep;
}

} // namespace hypertet
