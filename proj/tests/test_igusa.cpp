#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "philab/builtin.hpp"
#include "philab/counterex.hpp"
#include "philab/igusa.hpp"
#include "support.hpp"

using namespace philab;
using philab::testing::random_module;

namespace {

Module lit(const char* s) { return parse_module_literal(algebra_A(), s); }

// phi straight from the definition with module-level syzygies: decompose
// Omega^t of every indecomposable summand of M, sort the non-projective
// pieces into classes by pairwise isomorphism tests, and take ranks up to
// a horizon.
struct BruteForce {
    std::vector<Module> classes;

    std::size_t cls(const Module& x) {
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (is_isomorphic(classes[i], x)) return i;
        classes.push_back(x);
        return classes.size() - 1;
    }

    std::map<std::size_t, long long> vec(const Module& x) {
        std::map<std::size_t, long long> v;
        if (x.is_zero()) return v;
        for (auto& s : decompose(x).summands)
            if (!is_projective(s.module)) v[cls(s.module)] += static_cast<long long>(s.multiplicity);
        return v;
    }

    std::vector<std::size_t> ranks(const Module& m, std::size_t horizon) {
        std::vector<Module> gens;
        for (auto& s : decompose(m).summands)
            if (!is_projective(s.module)) gens.push_back(s.module);
        std::vector<std::size_t> out;
        for (std::size_t t = 0; t <= horizon; ++t) {
            std::vector<K0Vector> vs;
            for (auto& g : gens) {
                auto v = vec(g);
                vs.push_back(K0Vector(v.begin(), v.end()));
                g = syzygy(g);
            }
            out.push_back(integer_rank(vs));
        }
        return out;
    }

    std::size_t phi(const Module& m, std::size_t horizon) {
        auto r = ranks(m, horizon);
        std::size_t t = r.size() - 1;
        while (t > 0 && r[t - 1] == r.back()) --t;
        return t;
    }
};

}  // namespace

TEST_CASE("K0 classes") {
    ClassRegistry reg(algebra_A());
    CHECK(k0_class(lit("P1 + P2"), reg).empty());
    auto v = k0_class(lit("S3 + S3"), reg);
    REQUIRE(v.size() == 1);
    CHECK(v.begin()->second == 2);
    CHECK(reg.representative(v.begin()->first).dims() == std::vector<std::size_t>{0, 0, 1, 0});
    auto w = k0_class(lit("S3 + S4"), reg);
    CHECK(w.size() == 2);
    for (auto [id, c] : w) CHECK(c == 1);
    auto sv = summand_vector(lit("P1 + P1 + S2"), reg);
    CHECK(sv.projectives[0] == 2);
    CHECK(sv.classes.size() == 1);
}

TEST_CASE("the syzygy operator L") {
    ClassRegistry reg(algebra_A());
    CHECK(L_apply(lit("S3"), reg) == k0_class(lit("S1"), reg));
    CHECK(L_apply(lit("S4"), reg) == k0_class(lit("S1"), reg));
    CHECK(L_apply(lit("S2"), reg) == k0_class(lit("S3 + S4"), reg));
    CHECK(L_apply(K0Vector{}, reg).empty());
    // linear
    K0Vector v = k0_class(lit("S2^2 + S3"), reg);
    CHECK(L_apply(v, reg) == k0_class(lit("S3^2 + S4^2 + S1"), reg));
}

TEST_CASE("phi examples") {
    ClassRegistry reg(algebra_A());
    CHECK(phi(lit("S3 + S4"), reg).value == 1);
    CHECK(phi(lit("P1"), reg).value == 0);
    CHECK(phi(lit("P1 + P3"), reg).value == 0);
    CHECK(phi(lit("S3"), reg).value == 0);
    auto r = phi(lit("S3 + S4"), reg);
    CHECK(r.exact);
    REQUIRE(r.ranks.size() >= 2);
    CHECK(r.ranks[0] == 2);
    CHECK(r.ranks[1] == 1);

    ClassRegistry c3(algebra_A3CT());
    for (std::size_t v = 0; v < 3; ++v) {
        CHECK(phi(simple(algebra_A3CT(), v), c3).value == 0);
        CHECK(phi(projective(algebra_A3CT(), v), c3).value == 0);
    }
}

TEST_CASE("phi agrees with the brute-force definition") {
    Rng rng(31);
    ClassRegistry reg(algebra_A());
    std::vector<Module> ms = {lit("S3 + S4"), lit("S1 + S2"), lit("S1 + S3"), lit("S2 + S3 + S4"), lit("P2 + S1")};
    for (int i = 0; i < 6; ++i) ms.push_back(random_module(algebra_A(), rng));
    for (auto& m : ms) {
        BruteForce bf;
        auto r = phi(m, reg);
        CHECK(r.value == bf.phi(m, 10));
        auto br = bf.ranks(m, 10);
        for (std::size_t t = 0; t < std::min(br.size(), r.ranks.size()); ++t) CHECK(r.ranks[t] == br[t]);
    }
}

TEST_CASE("rank monotonicity and stabilization") {
    Rng rng(32);
    ClassRegistry reg(algebra_A());
    for (int it = 0; it < 20; ++it) {
        Module m = random_module(algebra_A(), rng, 4);
        auto r = phi(m, reg);
        for (std::size_t t = 1; t < r.ranks.size(); ++t) CHECK(r.ranks[t] <= r.ranks[t - 1]);
        // ten more applications of L after phi keep the rank
        std::vector<K0Vector> basis;
        for (auto [id, c] : k0_class(m, reg)) basis.push_back({{id, 1}});
        for (std::size_t t = 0; t < r.value; ++t)
            for (auto& b : basis) b = L_apply(b, reg);
        std::size_t base = integer_rank(basis);
        for (int j = 0; j < 10; ++j) {
            for (auto& b : basis) b = L_apply(b, reg);
            CHECK(integer_rank(basis) == base);
        }
    }
}

TEST_CASE("phi ignores projective summands") {
    Rng rng(33);
    ClassRegistry reg(algebra_A());
    for (int it = 0; it < 15; ++it) {
        Module m = random_module(algebra_A(), rng);
        Module p = testing::random_projective_sum(algebra_A(), rng, 3);
        CHECK(phi(direct_sum({m, p}), reg).value == phi(m, reg).value);
    }
}

TEST_CASE("projective dimension") {
    ClassRegistry reg(algebra_A());
    auto pd = projective_dimension(lit("P1"), reg, 20);
    CHECK(pd.kind == PdResult::Kind::Finite);
    CHECK(pd.value == 0);
    CHECK(projective_dimension(lit("S3"), reg, 20).kind == PdResult::Kind::Infinite);
    CHECK(projective_dimension(Module::zero(algebra_A()), reg, 20).kind == PdResult::Kind::MinusInfinity);
    CHECK(projective_dimension(lit("S3"), reg, 20).to_string() == "inf");

    auto ss = parse_presentation("vertices 3\n", "K3");
    ClassRegistry r3(ss);
    for (std::size_t v = 0; v < 3; ++v) {
        auto p = projective_dimension(simple(ss, v), r3, 5);
        CHECK(p.kind == PdResult::Kind::Finite);
        CHECK(p.value == 0);
    }

    // A_3 linear with no relations: hereditary, pd S1 = 1, pd S3 = 0
    auto a3 = parse_presentation("vertices 3\narrow a 1 2\narrow b 2 3\n", "A3");
    ClassRegistry ra(a3);
    CHECK(projective_dimension(simple(a3, 0), ra, 5).to_string() == "1");
    CHECK(projective_dimension(simple(a3, 2), ra, 5).to_string() == "0");
    // a long rad^2 chain: pd S1 = n - 1
    auto chain = parse_presentation("vertices 6\narrow a 1 2\narrow b 2 3\narrow c 3 4\narrow d 4 5\narrow e 5 6\nrad2\n", "C6");
    ClassRegistry rc(chain);
    CHECK(projective_dimension(simple(chain, 0), rc, 10).to_string() == "5");
    auto cut = projective_dimension(simple(chain, 0), rc, 3);
    CHECK(cut.kind == PdResult::Kind::AtLeast);
    CHECK(cut.value == 4);
}

TEST_CASE("psi examples") {
    ClassRegistry reg(algebra_A());
    auto p = psi(lit("P1"), reg, 20);
    REQUIRE(p.value);
    CHECK(*p.value == 0);
    auto s = psi(lit("S3 + S4"), reg, 20);
    REQUIRE(s.value);
    CHECK(*s.value == 1);
    ClassRegistry c3(algebra_A3CT());
    Rng rng(5);
    for (int it = 0; it < 10; ++it) {
        auto r = psi(random_module(algebra_A3CT(), rng), c3, 20);
        REQUIRE(r.value);
        CHECK(*r.value == 0);
    }
}

TEST_CASE("phi = psi = pd for finite global dimension") {
    // acyclic quiver with rad^2 = 0: every pd is finite
    auto alg = parse_presentation(
        "vertices 5\narrow a 1 2\narrow b 1 3\narrow c 2 4\narrow d 3 4\narrow e 4 5\narrow f 2 5\nrad2\n", "D5");
    ClassRegistry reg(alg);
    Rng rng(44);
    for (int it = 0; it < 25; ++it) {
        Module m = random_module(alg, rng);
        auto pd = projective_dimension(m, reg, 20);
        REQUIRE(pd.kind == PdResult::Kind::Finite);
        // oracle: first t with Omega^t M projective
        std::size_t t = 0;
        for (Module x = m; !is_projective(x); x = syzygy(x)) ++t;
        CHECK(pd.value == t);
        CHECK(phi(m, reg).value == t);
        auto ps = psi(m, reg, 20);
        REQUIRE(ps.value);
        CHECK(*ps.value == t);
    }
}

TEST_CASE("lower bound certificates") {
    ClassRegistry reg(algebra_A());
    auto same = phi_lower_bound(lit("S2"), lit("S2"), 3, reg);
    CHECK_FALSE(same.holds);
    CHECK_FALSE(same.failure.empty());
    auto proj = phi_lower_bound(lit("P1"), lit("P2"), 1, reg);
    CHECK_FALSE(proj.holds);
    // Omega S3 = Omega S4 = S1 but S3 != S4: the hypotheses hold at t = 1,
    // which gives nothing
    CHECK_FALSE(phi_lower_bound(lit("S3"), lit("S4"), 1, reg).holds);
    auto two = phi_lower_bound(lit("S3"), lit("S4"), 2, reg);
    CHECK_FALSE(two.holds);
    CHECK(two.failure.find("isomorphic") != std::string::npos);
    auto diff = phi_lower_bound(lit("S1"), lit("S2"), 3, reg);
    CHECK_FALSE(diff.holds);
    CHECK(diff.failure.find("differ") != std::string::npos);
}

TEST_CASE("lower bound for WX1 + WY1") {
    auto t = algebra_A_tensor();
    ClassRegistry reg(t);
    Module wx = periodic_to_module(wrap(make_family({'X', 1}).complex()));
    Module wy = periodic_to_module(wrap(make_family({'Y', 1}).complex()));
    auto c = phi_lower_bound(wx, wy, 4, reg);
    CHECK(c.holds);
    CHECK(c.bound == 3);
    CHECK(c.certified);
    CHECK_FALSE(phi_lower_bound(wx, wy, 3, reg).holds);
}

TEST_CASE("registry file round trip") {
    auto path = std::filesystem::temp_directory_path() / "philab_registry_test.jsonl";
    std::filesystem::remove(path);
    std::size_t s2, s1;
    {
        ClassRegistry reg(algebra_A());
        reg.attach_file(path.string());
        s2 = reg.find_or_insert(lit("S2"));
        s1 = reg.find_or_insert(lit("S1"));
    }
    ClassRegistry again(algebra_A());
    again.attach_file(path.string());
    CHECK(again.size() == 2);
    CHECK(again.find(lit("S2")) == s2);
    CHECK(again.find(lit("S1")) == s1);
    CHECK_FALSE(again.find(lit("S3")));
    std::filesystem::remove(path);
}
