#pragma once

// Truncated minimal projective resolutions
//
//   M <- P_0 <- P_1 <- ... <- P_{m-1}
//   with ker(P_{k-1} -> R_{k-1}) = Q_k + R_k, P_k the cover of R_k,
//   and Q_m the whole last kernel,
//
// their explicit syzygy in bounded complexes, and the indecomposability
// criterion for their wrappings.
//
// Every object is kept as a list of indecomposable parts (SumModule), so
// that block structure is visible and direct summands can be split off.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "philab/complex.hpp"
#include "philab/decompose.hpp"

namespace philab {

class ClassRegistry;

class InvalidPlan : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A module together with a fixed decomposition into parts; `sum` is
/// direct_sum(parts) with the parts stacked in order at every vertex.
struct SumModule {
    AlgebraPtr alg;
    std::vector<Module> parts;
    Module sum;
    /// offset[i][v]: first row of part i at vertex v.
    std::vector<std::vector<std::size_t>> offset;

    SumModule() = default;
    SumModule(AlgebraPtr a, std::vector<Module> ps);
    std::size_t size() const { return parts.size(); }
    bool empty() const { return parts.empty(); }
    SumModule concat(const SumModule& other) const;
    SumModule select(const std::vector<std::size_t>& idx) const;
};

/// The block of f from part `from` of src to part `to` of tgt.
Matrix block_component(const Morphism& f, const SumModule& src, std::size_t from, const SumModule& tgt,
                       std::size_t to, std::size_t v);
bool block_is_zero(const Morphism& f, const SumModule& src, std::size_t from, const SumModule& tgt, std::size_t to);

/// Top vertex of an indecomposable projective, if m is one.
std::optional<std::size_t> projective_top(const Module& m);
/// "S3", "P4", or "M(d1,...)" for other modules.
std::string part_name(const Module& m);
std::vector<std::string> part_names(const SumModule& s);

struct PeelSpec {
    Module module;
    std::size_t mult = 1;
};

/// For each step k (1 <= k <= m), the kernel summands moved into Q_k. At
/// k = m the whole kernel is Q_m anyway; a peel there is only checked.
struct SplitPlan {
    std::map<std::size_t, std::vector<PeelSpec>> steps;
};

json plan_to_json(const SplitPlan& plan, const ClassRegistry* reg = nullptr);
/// "class" is a registry id (needs reg) or a module literal such as "S3".
SplitPlan plan_from_json(const json& j, const AlgebraPtr& alg, const ClassRegistry* reg = nullptr);

struct TruncatedResolution {
    AlgebraPtr alg;
    std::size_t m = 0;
    SumModule M;
    /// P[k] for k = 0 .. m-1; Q[k] for k = 1 .. m; R[k] for k = 1 .. m-1.
    /// Unused indices hold empty SumModules.
    std::vector<SumModule> P, Q, R;
    Morphism cover0;                 // P_0 -> M
    std::vector<Morphism> rcover;    // P_k -> R_k
    std::vector<Morphism> rincl;     // R_k -> P_{k-1}
    std::vector<Morphism> qincl;     // Q_k -> P_{k-1}

    /// f_0 = cover0 and f_k = rincl_k rcover_k : P_k -> P_{k-1}.
    Morphism f(std::size_t k) const;
    /// X_k as parts: P_k then Q_k (M in degree -1, Q_m in degree m).
    SumModule X(int degree) const;
    BoundedComplex complex() const;
    std::size_t total_dim() const;
};

TruncatedResolution build(const Module& m, std::size_t length, const SplitPlan& plan);

struct FormulaSyzygy {
    TruncatedResolution result;
    /// The projective cover P_X -> X and the kernel inclusion Omega X -> P_X,
    /// one component per degree -1 .. m.
    BoundedComplex projective;
    std::vector<Morphism> g, h;
};

/// The explicit syzygy; verifies that g and h are chain maps, that every
/// column 0 -> Omega X_k -> P_X,k -> X_k -> 0 is exact, and throws
/// std::logic_error otherwise. sign multiplies every h_k.
FormulaSyzygy formula_syzygy_full(const TruncatedResolution& t, int sign = 1);
TruncatedResolution formula_syzygy(const TruncatedResolution& t);

/// Splits T along connected components of the nonzero blocks between parts.
std::vector<TruncatedResolution> components(const TruncatedResolution& t);

/// Applies formula_syzygy t times, splitting after every step.
std::vector<TruncatedResolution> iterate_syzygy(const TruncatedResolution& t, std::size_t steps);

struct CriterionReport {
    bool holds = false;
    bool base_indecomposable = false;
    /// ker(d_j) for j = -1 .. m.
    std::vector<Module> kernels;
    /// Pairs (i, j) with Hom(X_i, ker d_j) != 0.
    std::vector<std::pair<int, int>> violations;
};

CriterionReport indecomposability_criterion(const TruncatedResolution& t);
bool check_indecomposability_criterion(const TruncatedResolution& t);

/// Text rendering, degree -1 first: "P4 + S3" style names per degree.
std::string render(const TruncatedResolution& t);
json resolution_to_json(const TruncatedResolution& t, const SplitPlan* plan = nullptr);

/// Direct sum of resolutions as one bounded complex over degrees -1 .. max m.
BoundedComplex sum_complex(const std::vector<TruncatedResolution>& ts);

}  // namespace philab
