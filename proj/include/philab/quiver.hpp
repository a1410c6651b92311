#pragma once

// Quivers and bound quiver algebras KQ/I with I generated by homogeneous
// linear combinations of parallel paths.
//
// Paths are stored in traversal order: arrows[0] leaves `source`. The text
// presentation format writes composites right to left, so
// `relation b a` is the path a then b.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "philab/matrix.hpp"

namespace philab {

class NonAdmissible : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Arrow {
    std::string label;
    std::size_t source;
    std::size_t target;
};

class Quiver {
  public:
    Quiver() = default;
    Quiver(std::size_t vertex_count, std::vector<Arrow> arrows);

    std::size_t vertex_count() const { return n_; }
    std::size_t arrow_count() const { return arrows_.size(); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(std::size_t a) const { return arrows_[a]; }
    std::optional<std::size_t> arrow_index(std::string_view label) const;
    const std::vector<std::size_t>& out_arrows(std::size_t v) const { return out_[v]; }
    const std::vector<std::size_t>& in_arrows(std::size_t v) const { return in_[v]; }

  private:
    std::size_t n_ = 0;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<std::size_t>> out_, in_;
    std::unordered_map<std::string, std::size_t> by_label_;
};

struct Path {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> arrows;

    std::size_t length() const { return arrows.size(); }
    static Path trivial(std::size_t v) { return {v, v, {}}; }
    friend bool operator==(const Path&, const Path&) = default;
};

Path make_path(const Quiver& q, std::size_t source, const std::vector<std::size_t>& arrows);
std::string path_name(const Quiver& q, const Path& p);

/// A relation sum_i c_i p_i; all p_i share source, target and length.
struct Relation {
    std::vector<std::pair<Scalar, Path>> terms;
};

struct TensorInfo;

class Algebra {
  public:
    /// Computes the standard-monomial basis; throws NonAdmissible when the
    /// quotient is not finite dimensional within the length bound.
    Algebra(std::string id, Quiver q, std::vector<Relation> relations);

    const std::string& id() const { return id_; }
    const Quiver& quiver() const { return quiver_; }
    std::size_t vertex_count() const { return quiver_.vertex_count(); }
    std::size_t arrow_count() const { return quiver_.arrow_count(); }
    const std::vector<Relation>& relations() const { return relations_; }
    bool is_monomial() const;

    /// Standard monomials sorted by (length, source, arrow labels).
    const std::vector<Path>& basis() const { return basis_; }
    std::size_t dimension() const { return basis_.size(); }

    /// Basis of P_v, grouped by target vertex: element j at vertex w is
    /// projective_basis(v)[w][j].
    const std::vector<std::vector<Path>>& projective_basis(std::size_t v) const { return proj_[v].paths; }
    /// Arrow action on P_v in module layout (rows: target vertex, cols: source).
    const std::vector<Matrix>& projective_action(std::size_t v) const { return proj_[v].action; }

    const TensorInfo* tensor() const { return tensor_.get(); }

    friend std::shared_ptr<const Algebra> tensor_cycle3(const std::shared_ptr<const Algebra>& base);

  private:
    struct Projective {
        std::vector<std::vector<Path>> paths;
        std::vector<Matrix> action;
    };

    void compute_basis();

    std::string id_;
    Quiver quiver_;
    std::vector<Relation> relations_;
    std::vector<Path> basis_;
    std::vector<Projective> proj_;
    std::shared_ptr<TensorInfo> tensor_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Layout of tensor_cycle3(base). Vertex (v, c) has index c*n + v where
/// c = 0, 1, 2 stands for the degree classes [-1], [0], [1]. Arrow copies
/// come first (copy of a in class c is c*arrows + a), then the differential
/// arrows d(v, c): (v, c) -> (v, c-1).
struct TensorInfo {
    AlgebraPtr base;
    std::size_t vertex(std::size_t v, std::size_t c) const { return c * base->vertex_count() + v; }
    std::size_t copy_arrow(std::size_t a, std::size_t c) const { return c * base->arrow_count() + a; }
    std::size_t d_arrow(std::size_t v, std::size_t c) const {
        return 3 * base->arrow_count() + c * base->vertex_count() + v;
    }
};

/// KQ/rad^2: every length-two path is a relation.
AlgebraPtr rad2_algebra(std::string id, const Quiver& q);

/// The algebra on Q x C3 with copied relations, d^2 = 0 and the
/// commutativity relations (copy of g in class c-1) d - d (copy of g in class c).
AlgebraPtr tensor_cycle3(const AlgebraPtr& base);
/// tensor_cycle3, built once per base algebra object so that modules over
/// the tensor algebra can be compared.
AlgebraPtr tensor_of(const AlgebraPtr& base);

/// Finite monomial basis; same as alg.basis().
const std::vector<Path>& path_basis(const Algebra& alg);

/// Reads the text presentation format; id defaults to `default_id`.
AlgebraPtr parse_presentation(std::string_view text, std::string default_id);
AlgebraPtr load_presentation(const std::string& path);

}  // namespace philab
