#pragma once

// Rejection sampler for admissible configurations, plus enumeration of the
// 15 type signatures (multisets of four vertex types).
//
// Lengths are drawn log-uniformly from [0.2, 3.0] and rejected until the
// configuration passes all admissibility checks, with a bounded attempt
// budget per document.
//
// Determinism: document index k under seed s uses a dedicated generator
// seeded from (s, k) through a 64-bit mixer, so the k-th document is a
// pure function of (types, s, k) — independent of thread scheduling and of
// how many documents are requested.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "tetra.hpp"

namespace hypertet {

struct sampler_options {
    double min_length = 0.2;
    double max_length = 3.0;
    int attempt_budget = 10000; // per document
};

// The 15 signatures, ordered by (finite count, ideal count) descending:
// (f,f,f,f), (f,f,f,i), (f,f,f,h), (f,f,i,i), ... , (h,h,h,h).
inline std::vector<std::array<vertex_type, 4>> all_type_signatures() {
    std::vector<std::array<vertex_type, 4>> sigs;
    for (int nf = 4; nf >= 0; --nf) {
        for (int ni = 4 - nf; ni >= 0; --ni) {
            std::array<vertex_type, 4> sig{};
            int v = 0;
            for (int c = 0; c < nf; ++c)
                sig[v++] = vertex_type::finite;
            for (int c = 0; c < ni; ++c)
                sig[v++] = vertex_type::ideal;
            while (v < 4)
                sig[v++] = vertex_type::hyperideal;
            sigs.push_back(sig);
        }
    }
    return sigs;
}

namespace detail {

// SplitMix64 finalizer: bijective 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform double in [0,1) from the top 53 bits of one generator draw.
// Spelled out (rather than std::uniform_real_distribution) so the stream
// is identical across standard library implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

inline std::string signature_to_string(const std::array<vertex_type, 4>& types) {
    std::string out = "[";
    for (int v = 0; v < 4; ++v) {
        switch (types[v]) {
        case vertex_type::finite:
            out += "finite";
            break;
        case vertex_type::ideal:
            out += "ideal";
            break;
        case vertex_type::hyperideal:
            out += "hyperideal";
            break;
        }
        if (v < 3)
            out += ", ";
    }
    return out + "]";
}

// The index-th admissible sample for this signature and seed.
inline tet_config sample_config(const std::array<vertex_type, 4>& types,
                                std::uint64_t seed, std::uint64_t index,
                                const sampler_options& opt = {}) {
    std::mt19937_64 rng(detail::mix64(seed ^ detail::mix64(index)));
    const double lo = std::log(opt.min_length);
    const double hi = std::log(opt.max_length);
    tet_config cfg{types, {}};
    for (int attempt = 0; attempt < opt.attempt_budget; ++attempt) {
        for (int e = 0; e < 6; ++e)
            cfg.lengths[e] = std::exp(lo + detail::uniform01(rng) * (hi - lo));
        if (admissible(cfg).ok)
            return cfg;
    }
    throw numeric_error("sampling budget exhausted for type signature " +
                        signature_to_string(types));
}

} // namespace hypertet
