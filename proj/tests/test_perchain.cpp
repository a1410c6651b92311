#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "philab/builtin.hpp"
#include "philab/complex.hpp"
#include "philab/counterex.hpp"
#include "support.hpp"

using namespace philab;
using philab::testing::random_module;

namespace {

Module lit(const char* s) { return parse_module_literal(algebra_A(), s); }

bool same_map(const Morphism& f, const Morphism& g) {
    if (!(f.source() == g.source()) || !(f.target() == g.target())) return false;
    for (std::size_t v = 0; v < f.components().size(); ++v)
        if (!(f.component(v) == g.component(v))) return false;
    return true;
}

bool same_periodic(const PeriodicComplex& p, const PeriodicComplex& q) {
    for (std::size_t c = 0; c < 3; ++c)
        if (!(p.modules[c] == q.modules[c]) || !same_map(p.diffs[c], q.diffs[c])) return false;
    return true;
}

Morphism random_hom(const Module& s, const Module& t, Rng& rng) {
    HomSpace h(s, t);
    return h.dim() ? h.random(rng) : Morphism::zero(s, t);
}

// 0 <- M0 <- M1 <- M2 <- M3 <- M4 <- 0 in degrees -1 .. 3, with d0 and d2
// random and d1 = d3 = 0, so d^2 = 0 for free.
BoundedComplex five_term(Rng& rng) {
    BoundedComplex x;
    x.algebra = algebra_A();
    x.lo = -1;
    for (int i = 0; i < 5; ++i) x.modules.push_back(random_module(algebra_A(), rng, 2));
    for (int i = 0; i < 4; ++i)
        x.diffs.push_back(i % 2 == 0 ? random_hom(x.modules[i + 1], x.modules[i], rng)
                                     : Morphism::zero(x.modules[i + 1], x.modules[i]));
    x.validate();
    return x;
}

}  // namespace

TEST_CASE("degree classes") {
    CHECK(degree_class(-1) == 0);
    CHECK(degree_class(0) == 1);
    CHECK(degree_class(1) == 2);
    CHECK(degree_class(2) == 0);
    CHECK(degree_class(-4) == 0);
    CHECK(class_name(0) == "[-1]");
}

TEST_CASE("wrapping the five-term complex") {
    Rng rng(3);
    for (int it = 0; it < 10; ++it) {
        BoundedComplex x = five_term(rng);
        PeriodicComplex w = wrap(x);
        w.validate();
        const auto& m = x.modules;
        CHECK(w.modules[0] == direct_sum({m[0], m[3]}));
        CHECK(w.modules[1] == direct_sum({m[1], m[4]}));
        CHECK(w.modules[2] == m[2]);
        for (std::size_t v = 0; v < 4; ++v) {
            const Matrix& d0 = x.diffs[0].component(v);
            const Matrix& d1 = x.diffs[1].component(v);
            const Matrix& d2 = x.diffs[2].component(v);
            const Matrix& d3 = x.diffs[3].component(v);
            CHECK(w.diffs[1].component(v) == Matrix::direct_sum(d0, d3));
            CHECK(w.diffs[2].component(v) == Matrix::vcat(d1, Matrix(m[4].dim(v), m[2].dim(v))));
            CHECK(w.diffs[0].component(v) == Matrix::hcat(Matrix(m[2].dim(v), m[0].dim(v)), d2));
        }
    }
}

TEST_CASE("wrapping stalks") {
    Module m = lit("S2 + P3");
    PeriodicComplex a = wrap(BoundedComplex::stalk(m, -1));
    CHECK(a.modules[0] == m);
    CHECK(a.modules[1].is_zero());
    CHECK(a.modules[2].is_zero());
    for (auto& d : a.diffs) CHECK(d.is_zero());
    PeriodicComplex b = wrap(BoundedComplex::stalk(m, 2));
    CHECK(same_periodic(a, b));

    Module t = periodic_to_module(a);
    auto& info = *t.algebra()->tensor();
    for (std::size_t v = 0; v < 4; ++v) {
        CHECK(t.dim(info.vertex(v, 0)) == m.dim(v));
        CHECK(t.dim(info.vertex(v, 1)) == 0);
        CHECK(t.dim(info.vertex(v, 2)) == 0);
    }
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t v = 0; v < 4; ++v) CHECK(t.action(info.d_arrow(v, c)).is_zero());
}

TEST_CASE("wrapping is not full") {
    Module m = lit("S2");
    BoundedComplex x;
    x.algebra = algebra_A();
    x.lo = -1;
    x.modules = {m, Module::zero(algebra_A()), Module::zero(algebra_A()), m};
    for (int i = 0; i < 3; ++i) x.diffs.push_back(Morphism::zero(x.modules[i + 1], x.modules[i]));
    Module w = periodic_to_module(wrap(x));
    CHECK(hom_dim(w, w) == 4 * hom_dim(m, m));
}

TEST_CASE("periodic complexes and tensor modules") {
    Rng rng(5);
    for (int it = 0; it < 10; ++it) {
        PeriodicComplex p = wrap(five_term(rng));
        Module t = periodic_to_module(p);
        CHECK(t.algebra() == algebra_A_tensor());
        CHECK(t.total_dim() == p.total_dim());
        CHECK(same_periodic(module_to_periodic(t), p));
        CHECK(periodic_to_module(module_to_periodic(t)) == t);
        for (std::size_t c = 0; c < 3; ++c) CHECK(class_component(t, c) == p.modules[c]);
        CHECK(same_periodic(periodic_from_json(periodic_to_json(p), algebra_A()), p));
    }

    auto k = parse_presentation("vertices 1\n", "K");
    BoundedComplex y;
    y.algebra = k;
    y.lo = -1;
    y.modules = {simple(k, 0), simple(k, 0)};
    y.diffs = {Morphism::identity(simple(k, 0))};
    Module over_c3 = periodic_to_module(wrap(y));
    CHECK(over_c3.algebra()->vertex_count() == 3);
    CHECK(over_c3.algebra()->dimension() == 6);
    CHECK(over_c3.total_dim() == 2);
    CHECK(is_projective(over_c3));
}

TEST_CASE("d^2 = 0 is enforced") {
    BoundedComplex x;
    x.algebra = algebra_A();
    x.lo = 0;
    Module p = lit("P2");
    x.modules = {p, p, p};
    x.diffs = {Morphism::identity(p), Morphism::identity(p)};
    CHECK_THROWS_AS(x.validate(), RelationViolation);
}

TEST_CASE("periodic syzygy") {
    Module p = lit("P1 + P2");
    BoundedComplex x;
    x.algebra = algebra_A();
    x.lo = 0;
    x.modules = {p, p};
    x.diffs = {Morphism::identity(p)};
    CHECK(periodic_syzygy(wrap(x)).total_dim() == 0);

    // Omega WZ_0^3 = WZ_0^1
    Rng rng(1);
    auto z3 = wrap(make_family({'Z', 0, 3}).complex());
    auto z1 = wrap(make_family({'Z', 0, 1}).complex());
    CHECK(periodic_iso(periodic_syzygy(z3), z1, rng).isomorphic);
    periodic_syzygy(z3).validate();
}

TEST_CASE("periodic decomposition and isomorphism") {
    Rng rng(2);
    auto wx = wrap(make_family({'X', 1}).complex());
    CHECK(periodic_decompose(wx, rng).count() == 1);
    auto w3 = wrap(make_family({'Z', 0, 3}).complex());
    auto w4 = wrap(make_family({'Z', 0, 4}).complex());
    CHECK_FALSE(periodic_iso(w3, w4, rng).isomorphic);
    CHECK(periodic_iso(w3, w3, rng).isomorphic);
    auto both = periodic_to_module(w3);
    CHECK(periodic_decompose(module_to_periodic(direct_sum({both, periodic_to_module(w4)})), rng).count() == 2);
}

TEST_CASE("wrapping is exact on split sequences") {
    Rng rng(9);
    BoundedComplex a = five_term(rng), b = five_term(rng);
    BoundedComplex s;
    s.algebra = algebra_A();
    s.lo = -1;
    for (int i = 0; i < 5; ++i) s.modules.push_back(direct_sum({a.modules[i], b.modules[i]}));
    for (int i = 0; i < 4; ++i) {
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < 4; ++v)
            comps.push_back(Matrix::direct_sum(a.diffs[i].component(v), b.diffs[i].component(v)));
        s.diffs.emplace_back(s.modules[i + 1], s.modules[i], comps);
    }
    CHECK(is_isomorphic(periodic_to_module(wrap(s)),
                        direct_sum({periodic_to_module(wrap(a)), periodic_to_module(wrap(b))})));
}
