#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "philab/field.hpp"
#include "philab/matrix.hpp"
#include "philab/poly.hpp"

using namespace philab;

namespace {

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, unsigned sparsity = 0) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (sparsity == 0 || rng.bits() % sparsity == 0) m(i, j) = rng.scalar();
    return m;
}

// Low-rank matrices: a product through a thin middle.
Matrix random_rank(Rng& rng, std::size_t r, std::size_t c, std::size_t k) {
    return random_matrix(rng, r, k) * random_matrix(rng, k, c);
}

}  // namespace

TEST_CASE("field arithmetic mod 2^31-1") {
    CHECK(field::modulus() == 2147483647ULL);
    CHECK(field::mul(field::from_int(-1), field::from_int(-1)) == 1);
    CHECK(field::to_signed(field::from_int(-5)) == -5);
    Scalar a = 123456789;
    CHECK(field::mul(a, field::inv(a)) == 1);
    CHECK(field::pow(3, field::modulus() - 1) == 1);
    CHECK(field::add(field::modulus() - 1, 1) == 0);
}

TEST_CASE("non-default prime") {
    field::set_modulus(7);
    CHECK(field::mul(3, 5) == 1);
    CHECK(field::inv(3) == 5);
    CHECK(rank(Matrix::from_rows({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(Matrix::from_rows({{7, 0}, {0, 1}})) == 1);
    CHECK_THROWS_AS(field::set_modulus(9), ConfigurationError);
    field::set_modulus(kDefaultPrime);
    CHECK(field::modulus() == kDefaultPrime);
}

TEST_CASE("rank examples") {
    CHECK(rank(Matrix::identity(2)) == 2);
    CHECK(rank(Matrix(3, 5)) == 0);
    CHECK(rank(Matrix::from_rows({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(Matrix::identity(3)).cols() == 0);
    Matrix k = kernel_basis(Matrix(4, 4));
    CHECK(k.cols() == 4);
    CHECK(rank(k) == 4);
    Matrix k1 = kernel_basis(Matrix::from_rows({{1, 1}}));
    REQUIRE(k1.cols() == 1);
    // span{(1,-1)}: second coordinate is minus the first, first nonzero
    CHECK(k1(0, 0) != 0);
    CHECK(k1(1, 0) == field::neg(k1(0, 0)));
}

TEST_CASE("solve_right examples") {
    Rng rng(5);
    Matrix b = random_matrix(rng, 3, 2);
    auto x = solve_right(Matrix::identity(3), b);
    REQUIRE(x);
    CHECK(*x == b);
    auto z = solve_right(Matrix(2, 3), Matrix(2, 4));
    REQUIRE(z);
    CHECK(z->rows() == 3);
    CHECK(z->cols() == 4);
    CHECK(z->is_zero());
    CHECK_FALSE(solve_right(Matrix::from_rows({{1}, {0}}), Matrix::from_rows({{0}, {1}})));
}

TEST_CASE("rank-nullity, kernels and solutions on random matrices") {
    Rng rng(11);
    for (int it = 0; it < 200; ++it) {
        std::size_t r = 1 + rng.bits() % 9, c = 1 + rng.bits() % 9;
        Matrix m = it % 2 ? random_matrix(rng, r, c, 3) : random_rank(rng, r, c, rng.bits() % 4);
        Matrix k = kernel_basis(m);
        CHECK(rank(m) + k.cols() == c);
        CHECK((m * k).is_zero());
        CHECK(rank(k) == k.cols());
        Matrix x0 = random_matrix(rng, c, 2);
        Matrix b = m * x0;
        auto x = solve_right(m, b);
        REQUIRE(x);
        CHECK(m * *x == b);
    }
}

TEST_CASE("rank agrees with a determinant oracle on 2x2 and 3x3") {
    Rng rng(3);
    auto det3 = [](const Matrix& a) {
        using namespace field;
        Scalar t1 = mul(a(0, 0), sub(mul(a(1, 1), a(2, 2)), mul(a(1, 2), a(2, 1))));
        Scalar t2 = mul(a(0, 1), sub(mul(a(1, 0), a(2, 2)), mul(a(1, 2), a(2, 0))));
        Scalar t3 = mul(a(0, 2), sub(mul(a(1, 0), a(2, 1)), mul(a(1, 1), a(2, 0))));
        return add(sub(t1, t2), t3);
    };
    for (int it = 0; it < 100; ++it) {
        Matrix a = it % 3 ? random_matrix(rng, 3, 3) : random_rank(rng, 3, 3, 2);
        CHECK((det3(a) != 0) == (rank(a) == 3));
        CHECK((det3(a) != 0) == is_invertible(a));
        if (auto inv = inverse(a)) CHECK((a * *inv).is_identity());
    }
}

TEST_CASE("rref is reduced") {
    Matrix m = Matrix::from_rows({{0, 2, 4}, {1, 1, 1}, {1, 2, 3}});
    Echelon e = rref(m);
    REQUIRE(e.rank() == 2);
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    CHECK(e.reduced(0, 0) == 1);
    CHECK(e.reduced(1, 1) == 1);
    CHECK(e.reduced(0, 1) == 0);
    CHECK(e.reduced(1, 0) == 0);
}

TEST_CASE("image and complement") {
    Matrix m = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}});
    CHECK(image_basis(m).cols() == 1);
    CHECK(independent_columns(m) == std::vector<std::size_t>{0});
    Matrix e = Matrix::identity(2);
    auto comp = complement_columns(image_basis(m), e);
    CHECK(comp.size() == 1);
}

TEST_CASE("polynomial factoring over F_p") {
    Rng rng(1);
    // (x - 1)(x - 2)^2 (x^2 + 1)? x^2+1 splits when p = 1 mod 4; 2^31-1 = 3 mod 4 so it stays irreducible
    Poly f = poly::mul(poly::mul(Poly{field::from_int(-1), 1}, poly::mul(Poly{field::from_int(-2), 1}, Poly{field::from_int(-2), 1})),
                       Poly{1, 0, 1});
    auto fs = poly::factor(f, rng);
    std::size_t total = 0;
    int quad = 0;
    for (auto& fac : fs) {
        total += poly::degree(fac.f) * fac.multiplicity;
        if (poly::degree(fac.f) == 2) ++quad;
    }
    CHECK(total == 5);
    CHECK(quad == 1);
    CHECK(fs.size() == 3);
}

TEST_CASE("Cayley-Hamilton") {
    Rng rng(8);
    for (int it = 0; it < 20; ++it) {
        std::size_t n = 1 + rng.bits() % 6;
        Matrix m = random_matrix(rng, n, n, 2);
        Poly c = poly::charpoly(m);
        CHECK(poly::degree(c) == static_cast<int>(n));
        CHECK(poly::evaluate(c, m).is_zero());
    }
}
