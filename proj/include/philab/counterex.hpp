#pragma once

// The families X_k, Y_k, Z_k^i of truncated projective resolutions over the
// algebra A, and the verification that phi(WX_k + WY_k) >= 3k in the
// category of 3-periodic complexes over A.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "philab/igusa.hpp"
#include "philab/trunres.hpp"

namespace philab {

struct FamilySpec {
    char kind = 'X';  // 'X', 'Y' or 'Z'
    std::size_t k = 0;
    /// Vertex 1..4, Z only.
    std::size_t i = 0;

    /// "X2", "Y1", "Z0^3".
    std::string name() const;
    /// Accepts the forms produced by name(), also "Z_0^3"; throws ParseError.
    static FamilySpec parse(const std::string& text);
    void validate() const;
};

SplitPlan family_plan(const FamilySpec& spec);
TruncatedResolution make_family(const FamilySpec& spec);

/// Expected P and Q names per degree -1 .. m, read off the diagrams:
/// X_k is S3 <- P3 <- {P1 <- P2 <- P4 (+ S3)}^k <- P1 <- P2 <- S4 + S3.
/// Only defined for X and Y.
std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> expected_shape(const FamilySpec& spec);
/// Degree-wise comparison of a resolution with expected_shape.
bool shape_matches(const FamilySpec& spec, const TruncatedResolution& t);

/// The automorphism of A exchanging vertices 3 and 4 (x2 <-> x2', x3 <-> x4).
Module swap34(const Module& m);
PeriodicComplex swap34(const PeriodicComplex& p);

enum class BigSyzygyFormula {
    /// As stated: the top pair depends on the parity of k, and Z_j^3 + Z_j^4
    /// appears k-j-1 times.
    Stated,
    /// What the computation gives for every k tried: X_k always ends in
    /// Z_k^4 + Z_{k-1}^3 and Z_j^3 + Z_j^4 appears 2^(k-j-2) times. Agrees
    /// with Stated for odd k <= 3.
    Computed,
};

/// Multiset of Z-type summands predicted for Omega^{3k} of X_k or Y_k.
std::vector<std::pair<FamilySpec, std::size_t>> big_syzygy_formula(const FamilySpec& spec,
                                                                   BigSyzygyFormula f = BigSyzygyFormula::Stated);

/// Registers WZ_j^i in a tensor-algebra registry under the name "WZ_j^i".
std::size_t register_wz(std::size_t j, std::size_t i, ClassRegistry& treg);

struct SmallSyzygyReport {
    std::size_t k = 0;
    /// Statement -> holds, e.g. "Omega Z^3 = Z^1".
    std::map<std::string, bool> checks;
    bool holds() const;
};

/// Omega Z_k^3 = Z_k^1 = Omega Z_k^4, Omega Z_k^1 = Z_k^2 and
/// Omega Z_k^2 = Z_k^3 + Z_k^4, each checked twice after wrapping: with the
/// syzygy formula and with the syzygy over the tensor algebra.
SmallSyzygyReport verify_small_syzygy_report(std::size_t k);
bool verify_small_syzygy(std::size_t k);

struct BigSyzygyReport {
    std::size_t k = 0;
    BigSyzygyFormula formula = BigSyzygyFormula::Stated;
    bool x_match = false, y_match = false;
    SummandVector x_actual, y_actual, x_expected, y_expected;
    bool holds() const { return x_match && y_match; }
};

BigSyzygyReport verify_big_syzygy_report(std::size_t k, ClassRegistry& treg,
                                         BigSyzygyFormula f = BigSyzygyFormula::Stated);
bool verify_big_syzygy(std::size_t k, BigSyzygyFormula f = BigSyzygyFormula::Stated);

struct VerifyOptions {
    bool exact_phi = false;
    PhiOptions phi;
    /// How far past 3k the non-projectivity sweep goes.
    std::size_t sweep_extra = 6;
    std::uint64_t seed = kDefaultSeed;
};

struct VerificationReport {
    std::size_t k = 0;
    bool structure_ok = false;
    bool indecomposable = false;
    bool iso_at_3k_plus_1 = false;
    std::string witness_hash;
    bool noniso_at_3k = false;
    json distinguishing;
    LowerBoundCertificate certificate;
    std::size_t phi_lower_bound = 0;
    std::optional<PhiResult> exact_phi;
    /// Omega^{3k} against the stated and the computed formula.
    bool big_syzygy_match = false;
    bool big_syzygy_computed_match = false;
    bool nonprojective_sweep = false;
    std::size_t sweep_depth = 0;
    bool all_certified = false;
    std::size_t dim_wx = 0, dim_wy = 0, max_syzygy_dim = 0, registry_classes = 0;
    std::map<std::string, double> seconds;
    std::string x_diagram, y_diagram;

    /// Structure, indecomposability, both halves of the iso/non-iso claim,
    /// the bound 3k, the computed big syzygy and the sweep. A mismatch with
    /// the stated big syzygy formula is reported but does not fail the run.
    bool passed() const;
    json to_json() const;
    std::string to_text() const;
};

VerificationReport verify_main(std::size_t k, const VerifyOptions& opt = {});
/// As above but with a caller-owned registry over A (x) A3CT.
VerificationReport verify_main(std::size_t k, ClassRegistry& treg, const VerifyOptions& opt = {});

}  // namespace philab
