#pragma once

// Finite-dimensional modules over a bound quiver algebra, stored as
// representations: a vector space per vertex and a matrix per arrow.
//
// Convention: P_v is spanned by the standard paths leaving v and an arrow
// acts by appending itself, so rad P_v is spanned by the paths of length
// at least one. Over A this gives Omega S3 = S1.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "philab/quiver.hpp"

namespace philab {

class RelationViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Presentation;

class Module {
  public:
    Module() = default;
    /// Validates shapes and that every relation acts as zero.
    Module(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Matrix> action);
    static Module zero(AlgebraPtr alg);

    const AlgebraPtr& algebra() const { return d_->alg; }
    const std::vector<std::size_t>& dims() const { return d_->dims; }
    std::size_t dim(std::size_t v) const { return d_->dims[v]; }
    std::size_t total_dim() const { return d_->total; }
    bool is_zero() const { return d_->total == 0; }
    const Matrix& action(std::size_t arrow) const { return d_->action[arrow]; }
    const std::vector<Matrix>& actions() const { return d_->action; }

    /// Matrix of the path p acting from vertex p.source to p.target.
    Matrix path_action(const Path& p) const;

    /// Cached top/cover/kernel data, computed on first use.
    const Presentation& presentation() const;

    bool valid() const { return d_ != nullptr; }

    friend bool operator==(const Module& a, const Module& b);

  private:
    struct Data {
        AlgebraPtr alg;
        std::vector<std::size_t> dims;
        std::vector<Matrix> action;
        std::size_t total = 0;
        mutable std::once_flag pres_once;
        mutable std::shared_ptr<const Presentation> pres;
    };
    std::shared_ptr<Data> d_;
};

class Morphism {
  public:
    Morphism() = default;
    /// Components are dim target(v) x dim source(v). With check = true the
    /// commutation with every arrow is verified.
    Morphism(Module source, Module target, std::vector<Matrix> components, bool check = true);
    static Morphism zero(const Module& s, const Module& t);
    static Morphism identity(const Module& m);

    const Module& source() const { return s_; }
    const Module& target() const { return t_; }
    const Matrix& component(std::size_t v) const { return c_[v]; }
    const std::vector<Matrix>& components() const { return c_; }

    bool is_zero() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_iso() const;
    std::size_t rank() const;
    bool commutes() const;

    /// (g * f) = g after f.
    friend Morphism operator*(const Morphism& g, const Morphism& f);
    friend Morphism operator+(const Morphism& a, const Morphism& b);
    friend Morphism operator-(const Morphism& a, const Morphism& b);
    Morphism operator-() const;
    Morphism scaled(Scalar s) const;

  private:
    Module s_, t_;
    std::vector<Matrix> c_;
};

/// A submodule together with its inclusion.
struct Submodule {
    Module module;
    Morphism inclusion;
};

Module simple(const AlgebraPtr& alg, std::size_t v);
Module projective(const AlgebraPtr& alg, std::size_t v);

/// Modules from per-vertex dimensions and arrow matrices given by label.
Module direct_sum(const std::vector<Module>& parts);
Module power(const Module& m, std::size_t n);

/// Per-vertex change of basis: the new action is g_t a g_s^{-1}. Returns the
/// module and the isomorphism from the original to it.
std::pair<Module, Morphism> change_basis(const Module& m, const std::vector<Matrix>& g);

/// Submodule spanned by the given per-vertex bases (columns), which must be
/// closed under the action.
Submodule submodule(const Module& m, std::vector<Matrix> bases);
Submodule kernel(const Morphism& f);
Submodule image(const Morphism& f);

/// Per-vertex basis of rad M = sum of arrow images.
std::vector<Matrix> radical_basis(const Module& m);
/// Per-vertex basis of soc M = common kernel of outgoing arrows.
std::vector<Matrix> socle_basis(const Module& m);
std::vector<std::size_t> top_dims(const Module& m);
/// Multiplicity of S_v as a direct summand: dim soc_v - dim(soc_v cap rad_v).
std::vector<std::size_t> simple_summand_multiplicities(const Module& m);

struct Presentation {
    struct Generator {
        std::size_t vertex;
        std::size_t index;  // unit vector e_index of M_vertex
    };
    std::vector<Generator> gens;
    /// Parts of the cover: gens[i] generates the summand P_{gens[i].vertex}.
    std::vector<Module> cover_parts;
    Module cover;
    Morphism surj;
    Submodule kernel;
    /// Right inverse of surj at each vertex: surj_v * section_v = 1.
    std::vector<Matrix> section;
    /// Module generators of the kernel, as (vertex, column in cover_v).
    std::vector<std::pair<std::size_t, std::vector<Scalar>>> relations;
    /// Where generator g's paths live in cover_v: offset[g][v].
    std::vector<std::vector<std::size_t>> offset;
};

/// The projective cover P -> M (minimal).
inline const Morphism& projective_cover(const Module& m) { return m.presentation().surj; }
/// Omega M = kernel of the projective cover.
inline const Submodule& syzygy_with_inclusion(const Module& m) { return m.presentation().kernel; }
inline const Module& syzygy(const Module& m) { return m.presentation().kernel.module; }
Module syzygy_power(const Module& m, unsigned t);

bool is_projective(const Module& m);

/// Hom(M, N) as the solution space of the linear system coming from the
/// presentation of M: a map is fixed by the images of the top generators.
class HomSpace {
  public:
    HomSpace(const Module& m, const Module& n);
    std::size_t dim() const { return basis_.cols(); }
    Morphism element(std::size_t i) const;
    Morphism combination(const std::vector<Scalar>& coeffs) const;
    Morphism random(class Rng& rng) const;
    /// Just the vertex components, without the commutation re-check.
    std::vector<Matrix> random_components(class Rng& rng) const;
    const Module& source() const { return m_; }
    const Module& target() const { return n_; }

  private:
    std::vector<Matrix> materialize(const std::vector<Scalar>& x) const;

    Module m_, n_;
    Matrix basis_;                                     // unknowns x dim
    std::vector<std::size_t> unknown_offset_;          // per generator
    std::vector<std::vector<std::vector<Matrix>>> np_; // np_[g][w][j]: N(path j from v(g) at w) applied to generator image
};

std::vector<Morphism> hom_basis(const Module& m, const Module& n);
std::size_t hom_dim(const Module& m, const Module& n);

/// Cheap isomorphism invariants: dims and per-arrow ranks.
std::vector<std::size_t> rank_profile(const Module& m);

std::string dims_string(const std::vector<std::size_t>& dims);

}  // namespace philab
