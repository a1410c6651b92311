#pragma once

// Random modules for the property tests.

#include <vector>

#include "philab/decompose.hpp"
#include "philab/module.hpp"
#include "philab/poly.hpp"

namespace philab::testing {

inline std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng.bits() % n); }

inline Module random_projective_sum(const AlgebraPtr& alg, Rng& rng, std::size_t max_parts) {
    std::vector<Module> parts;
    std::size_t n = 1 + pick(rng, max_parts);
    for (std::size_t i = 0; i < n; ++i) parts.push_back(projective(alg, pick(rng, alg->vertex_count())));
    return direct_sum(parts);
}

// Image of a random map between sums of indecomposable projectives, plus
// sometimes a simple. Gives a spread of small modules over any algebra.
inline Module random_module(const AlgebraPtr& alg, Rng& rng, std::size_t max_parts = 3) {
    Module p = random_projective_sum(alg, rng, max_parts);
    Module q = random_projective_sum(alg, rng, max_parts);
    HomSpace h(p, q);
    Module m = h.dim() ? image(h.random(rng)).module : Module::zero(alg);
    if (m.is_zero() || rng.bits() % 3 == 0) m = direct_sum({m, simple(alg, pick(rng, alg->vertex_count()))});
    return m;
}

inline std::vector<Matrix> random_invertibles(const Module& m, Rng& rng) {
    std::vector<Matrix> g;
    for (std::size_t v = 0; v < m.algebra()->vertex_count(); ++v) {
        std::size_t d = m.dim(v);
        for (;;) {
            Matrix x(d, d);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) x(r, c) = rng.scalar();
            if (is_invertible(x)) {
                g.push_back(x);
                break;
            }
        }
    }
    return g;
}

}  // namespace philab::testing
