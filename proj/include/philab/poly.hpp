#pragma once

// Univariate polynomials over F_p, coefficients stored low degree first.
// Enough to split a module along the generalized eigenspaces of an
// endomorphism: characteristic polynomials and full factorization.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "philab/matrix.hpp"

namespace philab {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    /// Uniform element of F_p.
    Scalar scalar();
    Scalar nonzero_scalar();
    std::uint64_t bits() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

using Poly = std::vector<Scalar>;

namespace poly {

void normalize(Poly& f);
int degree(const Poly& f);  // -1 for the zero polynomial
Poly monic(Poly f);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly mod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic
Poly derivative(const Poly& f);
Poly powmod(Poly base, std::uint64_t e, const Poly& m);
Poly pow(const Poly& f, unsigned e);

/// Characteristic polynomial det(xI - m), monic of degree m.rows().
Poly charpoly(const Matrix& m);

/// f(m) for a square matrix m.
Matrix evaluate(const Poly& f, const Matrix& m);

struct Factor {
    Poly f;  // monic irreducible
    unsigned multiplicity;
};

/// Complete factorization of a monic polynomial into irreducibles, sorted
/// by (degree, coefficients).
std::vector<Factor> factor(const Poly& f, Rng& rng);

}  // namespace poly
}  // namespace philab
