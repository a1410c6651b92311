#pragma once

// Krull-Schmidt decomposition and isomorphism testing.
//
// decompose splits M along the generalized eigenspaces (Fitting
// decomposition) of random endomorphisms, recursing on each piece with the
// projected endomorphism, until every piece has only a single irreducible
// factor in its characteristic polynomial over repeated trials.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "philab/module.hpp"
#include "philab/poly.hpp"

namespace philab {

class DecompositionFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 20240501;

struct Summand {
    Module module;
    std::size_t multiplicity = 0;
    /// One split inclusion module -> original per copy.
    std::vector<Morphism> inclusions;
};

struct Decomposition {
    Module original;
    /// Pairwise non-isomorphic, sorted by (total dim, dims, rank profile).
    std::vector<Summand> summands;
    /// Isomorphism from the direct sum of all copies, in summand order, to
    /// the original module.
    Morphism iso;

    std::size_t count() const;
};

Decomposition decompose(const Module& m, Rng& rng);
Decomposition decompose(const Module& m, std::uint64_t seed = kDefaultSeed);

/// Only the indecomposable summands (with repetition), without grouping.
std::vector<Submodule> split_indecomposables(const Module& m, Rng& rng);

struct IsoResult {
    bool isomorphic = false;
    /// True when the verdict is exact: an explicit verified witness, or an
    /// invariant that differs. False only for a negative answer that rests
    /// on random sampling.
    bool certified = false;
    std::optional<Morphism> witness;
    std::string reason;
};

IsoResult isomorphism(const Module& m, const Module& n, Rng& rng);
bool is_isomorphic(const Module& m, const Module& n, std::uint64_t seed = kDefaultSeed);

/// Deterministic invariants compared before any random search.
struct IsoInvariants {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> ranks;
    std::vector<std::size_t> simple_summands;
    friend bool operator==(const IsoInvariants&, const IsoInvariants&) = default;
};
IsoInvariants iso_invariants(const Module& m);

}  // namespace philab
