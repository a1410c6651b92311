#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "philab/builtin.hpp"
#include "philab/quiver.hpp"

using namespace philab;

namespace {

// Paths of length <= n counted by walking the quiver; the oracle for the
// basis sizes below.
std::size_t count_paths(const Quiver& q, std::size_t max_len) {
    std::size_t total = q.vertex_count();
    std::vector<std::size_t> ends(q.vertex_count(), 1);
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::size_t> next(q.vertex_count(), 0);
        for (auto& a : q.arrows()) next[a.target] += ends[a.source];
        for (auto c : next) total += c;
        ends = next;
    }
    return total;
}

}  // namespace

TEST_CASE("quiver of A") {
    auto a = algebra_A();
    const Quiver& q = a->quiver();
    CHECK(q.vertex_count() == 4);
    CHECK(q.arrow_count() == 5);
    REQUIRE(q.arrow_index("x2'"));
    CHECK(q.arrow(*q.arrow_index("x2'")).source == 1);
    CHECK(q.arrow(*q.arrow_index("x2'")).target == 3);
    CHECK(q.out_arrows(1).size() == 2);
    CHECK(q.in_arrows(0).size() == 2);
}

TEST_CASE("rad^2 basis sizes") {
    auto a = algebra_A();
    CHECK(a->dimension() == 9);
    CHECK(a->dimension() == count_paths(a->quiver(), 1));
    auto c3 = algebra_A3CT();
    CHECK(c3->dimension() == 6);
    auto k = parse_presentation("vertices 1\n", "K");
    CHECK(k->dimension() == 1);
    CHECK(k->basis().front() == Path::trivial(0));
}

TEST_CASE("path algebra of A2 and relations") {
    auto a2 = parse_presentation("vertices 2\narrow a 1 2\n", "A2");
    CHECK(a2->dimension() == 3);
    CHECK(a2->is_monomial());

    auto a3 = parse_presentation("vertices 3\narrow a 1 2\narrow b 2 3\n", "A3");
    CHECK(a3->dimension() == 6);
    auto a3r = parse_presentation("vertices 3\narrow a 1 2\narrow b 2 3\nrelation b a\n", "A3r");
    CHECK(a3r->dimension() == 5);
}

TEST_CASE("cycles without relations are rejected") {
    CHECK_THROWS_AS(parse_presentation("vertices 3\narrow y1 1 2\narrow y2 2 3\narrow y3 3 1\n", "KC3"), NonAdmissible);
    CHECK_THROWS_AS(parse_presentation("vertices 1\narrow l 1 1\n", "loop"), NonAdmissible);
}

TEST_CASE("presentation parse errors") {
    CHECK_THROWS_AS(parse_presentation("arrow a 1 2\n", "x"), ParseError);
    CHECK_THROWS_AS(parse_presentation("vertices 2\narrow a 1 3\n", "x"), ParseError);
    CHECK_THROWS_AS(parse_presentation("vertices 2\nfoo\n", "x"), ParseError);
    CHECK_THROWS_AS(parse_presentation("vertices 2\narrow a 1 2\nrelation z\n", "x"), ParseError);
    CHECK_THROWS_AS(resolve_algebra("/nonexistent/file.quiver"), ParseError);
}

TEST_CASE("projective bases of A") {
    auto a = algebra_A();
    // rad^2 = 0, so P_v has e_v and one path per arrow leaving v
    for (std::size_t v = 0; v < 4; ++v) {
        std::size_t n = 0;
        for (auto& per : a->projective_basis(v)) n += per.size();
        CHECK(n == 1 + a->quiver().out_arrows(v).size());
    }
}

TEST_CASE("tensor with A3CT: counts") {
    auto a = algebra_A();
    auto t = tensor_cycle3(a);
    CHECK(t->vertex_count() == 12);
    CHECK(t->arrow_count() == 27);
    REQUIRE(t->tensor());
    CHECK(t->tensor()->base == a);

    // Relations by type: copies of the base relations, d^2 = 0, and the
    // commutativity squares. Oracle: the number of length-2 paths of Q.
    std::size_t length2 = count_paths(a->quiver(), 2) - count_paths(a->quiver(), 1);
    CHECK(length2 == 6);
    std::size_t t1 = 0, t2 = 0, t3 = 0;
    const std::size_t copies = 3 * a->arrow_count();
    for (auto& r : t->relations()) {
        bool any_d = false, any_copy = false;
        for (auto& [c, p] : r.terms)
            for (auto x : p.arrows) (x >= copies ? any_d : any_copy) = true;
        if (!any_d) ++t1;
        else if (!any_copy) ++t2;
        else ++t3;
    }
    CHECK(t1 == 3 * length2);
    CHECK(t2 == 3 * a->vertex_count());
    CHECK(t3 == 3 * a->arrow_count());
    CHECK(t3 == 15);
    CHECK(t2 == 12);
    CHECK_FALSE(t->is_monomial());
    // dim (A (x) A3CT) = dim A * dim A3CT
    CHECK(t->dimension() == a->dimension() * algebra_A3CT()->dimension());
}

TEST_CASE("tensor layout") {
    auto a = algebra_A();
    auto t = tensor_of(a);
    const TensorInfo& info = *t->tensor();
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t ar = 0; ar < a->arrow_count(); ++ar) {
            auto& x = t->quiver().arrow(info.copy_arrow(ar, c));
            CHECK(x.source == info.vertex(a->quiver().arrow(ar).source, c));
            CHECK(x.target == info.vertex(a->quiver().arrow(ar).target, c));
        }
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t v = 0; v < 4; ++v) {
            auto& d = t->quiver().arrow(info.d_arrow(v, c));
            CHECK(d.source == info.vertex(v, c));
            CHECK(d.target == info.vertex(v, (c + 2) % 3));
        }
    CHECK(tensor_of(a) == t);
}

TEST_CASE("tensor of the one-vertex algebra is A3CT") {
    auto k = parse_presentation("vertices 1\n", "K");
    auto t = tensor_cycle3(k);
    CHECK(t->vertex_count() == 3);
    CHECK(t->arrow_count() == 3);
    CHECK(t->relations().size() == 3);
    CHECK(t->dimension() == 6);
    CHECK(t->is_monomial());
}

TEST_CASE("presentation files") {
    auto a = load_presentation(std::string(PHILAB_SOURCE_DIR) + "/data/A.quiver");
    CHECK(a->id() == "A");
    CHECK(a->dimension() == 9);
    auto c = load_presentation(std::string(PHILAB_SOURCE_DIR) + "/data/A3CT.quiver");
    CHECK(c->dimension() == 6);
}
