#pragma once

// Split Grothendieck group, the syzygy operator L and the Igusa-Todorov
// functions phi and psi.
//
// K0 classes are indecomposable non-projective modules kept in a
// ClassRegistry. Everything past the first decomposition of the input is
// computed on classes: the syzygy of a class is decomposed once and cached.

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "philab/decompose.hpp"
#include "philab/module.hpp"

namespace philab {

/// Sparse class id -> multiplicity; zero entries are never stored.
using K0Vector = std::map<std::size_t, long long>;

void k0_add(K0Vector& acc, const K0Vector& v, long long scale = 1);
std::string k0_string(const K0Vector& v);

/// Full Krull-Schmidt content of a module: non-projective classes plus the
/// multiplicity of each indecomposable projective P_v.
struct SummandVector {
    K0Vector classes;
    std::vector<long long> projectives;
    bool is_zero() const;
    friend bool operator==(const SummandVector&, const SummandVector&) = default;
};

class ClassRegistry {
  public:
    explicit ClassRegistry(AlgebraPtr alg, std::uint64_t seed = kDefaultSeed);

    /// Loads the classes stored in `path` (if it exists) and appends every
    /// later insertion to it, one JSON object per line.
    void attach_file(const std::string& path);

    const AlgebraPtr& algebra() const { return alg_; }
    std::uint64_t seed() const { return seed_; }

    /// Id of the class of an indecomposable non-projective module.
    std::size_t find_or_insert(const Module& indecomposable);
    std::optional<std::size_t> find(const Module& indecomposable) const;

    Module representative(std::size_t id) const;
    std::size_t size() const;
    /// False if some insertion rested on an uncertified non-isomorphism.
    bool all_distinctions_certified() const;

    /// Decomposition of Omega(representative), cached.
    const SummandVector& syzygy_of(std::size_t id);

    /// Optional display name, e.g. "WZ_1^3".
    void set_name(std::size_t id, std::string name);
    std::string name(std::size_t id) const;

  private:
    struct Entry {
        Module rep;
        IsoInvariants inv;
        std::string name;
        std::optional<SummandVector> syzygy;
    };
    std::optional<std::size_t> find_locked(const Module& m, const IsoInvariants& inv, bool& certified) const;
    void append_line(std::size_t id, const Module& m);

    AlgebraPtr alg_;
    std::uint64_t seed_;
    mutable std::shared_mutex mu_;
    std::vector<std::unique_ptr<Entry>> entries_;
    std::multimap<std::vector<std::size_t>, std::size_t> by_dims_;
    bool certified_ = true;
    std::string path_;
};

/// Decomposes m and registers its non-projective summands.
SummandVector summand_vector(const Module& m, ClassRegistry& reg);
K0Vector k0_class(const Module& m, ClassRegistry& reg);

/// L v = sum of v_i [Omega rep_i].
K0Vector L_apply(const K0Vector& v, ClassRegistry& reg);
K0Vector L_apply(const Module& m, ClassRegistry& reg);
/// Omega applied to the full summand content (projectives vanish).
SummandVector syzygy_apply(const SummandVector& s, ClassRegistry& reg);

/// Rank over Z (= over Q) of a set of integer vectors, by exact Bareiss
/// elimination.
std::size_t integer_rank(const std::vector<K0Vector>& vectors);

struct PhiOptions {
    /// Give up on closing the L-orbit after this many classes.
    std::size_t max_classes = 4000;
    /// Rank sequence length used when the orbit does not close.
    std::size_t horizon = 40;
};

struct PhiResult {
    std::size_t value = 0;
    /// True when the L-orbit of add M closed up, so that the rank sequence is
    /// known to be constant from index `ranks.size() - 1` on.
    bool exact = false;
    std::size_t horizon = 0;
    std::size_t closure_size = 0;
    /// r_t = rank L^t <add M>.
    std::vector<std::size_t> ranks;
    /// L^t [M] for t = 0 .. value (at least one entry).
    std::vector<K0Vector> trail;
};

PhiResult phi(const Module& m, ClassRegistry& reg, const PhiOptions& opt = {});
PhiResult phi_of_classes(const K0Vector& m, ClassRegistry& reg, const PhiOptions& opt = {});

struct PdResult {
    enum class Kind { Finite, Infinite, AtLeast, MinusInfinity };
    Kind kind = Kind::Finite;
    /// The pd for Finite; a lower bound for AtLeast.
    std::size_t value = 0;
    std::string to_string() const;
};

/// pd through the support sets of L^k [M]: Omega^k M is projective iff the
/// support is empty, and a repeated support set forces pd = infinity.
PdResult projective_dimension(const Module& m, ClassRegistry& reg, std::size_t cutoff);
PdResult projective_dimension_of_classes(const K0Vector& v, ClassRegistry& reg, std::size_t cutoff);

struct PsiResult {
    PhiResult phi;
    /// Set when every summand of Omega^phi M has a resolved pd.
    std::optional<std::size_t> value;
    /// pd of each non-projective summand class of Omega^phi M.
    std::map<std::size_t, PdResult> summand_pd;
};

PsiResult psi(const Module& m, ClassRegistry& reg, std::size_t cutoff, const PhiOptions& opt = {});

struct LowerBoundCertificate {
    bool holds = false;
    std::size_t t = 0;
    /// phi dim(M + N) >= bound when holds.
    std::size_t bound = 0;
    SummandVector omega_t_m, omega_t_n;
    SummandVector omega_prev_m, omega_prev_n;
    /// Whether the non-isomorphism at t-1 rests only on certified class
    /// distinctions.
    bool certified = false;
    std::string failure;
};

/// Checks Omega^t M = Omega^t N and Omega^{t-1} M != Omega^{t-1} N by
/// comparing Krull-Schmidt content, which yields phi dim(M + N) >= t - 1.
/// Needs t >= 2; t = 1 is always refuted.
LowerBoundCertificate phi_lower_bound(const Module& m, const Module& n, std::size_t t, ClassRegistry& reg);

/// Omega^t applied to the summand content, one entry per t = 0 .. t_max.
std::vector<SummandVector> syzygy_trail(const Module& m, std::size_t t_max, ClassRegistry& reg);

}  // namespace philab
