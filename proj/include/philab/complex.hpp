#pragma once

// Bounded and 3-periodic chain complexes over mod Lambda, wrapping, and the
// identification of 3-periodic complexes with modules over Lambda (x) A3CT.
//
// Degree classes are indexed c = 0, 1, 2 for [-1], [0], [1]; degree n lies
// in class (n + 1) mod 3, so degree -1 lands in [-1]. The differential of a
// class goes from c to c - 1, like d_n : X_n -> X_{n-1}.

#include <array>
#include <string>
#include <vector>

#include "philab/decompose.hpp"
#include "philab/module.hpp"
#include "philab/serialize.hpp"

namespace philab {

std::size_t degree_class(int degree);
std::string class_name(std::size_t c);

struct BoundedComplex {
    AlgebraPtr algebra;
    /// Degree of modules[0].
    int lo = 0;
    std::vector<Module> modules;
    /// diffs[i] : modules[i + 1] -> modules[i], i.e. d_{lo + i + 1}.
    std::vector<Morphism> diffs;

    int hi() const { return lo + static_cast<int>(modules.size()) - 1; }
    /// Zero outside [lo, hi].
    Module at(int degree) const;
    /// d_degree : X_degree -> X_{degree-1}; zero map outside the range.
    Morphism d(int degree) const;
    std::size_t total_dim() const;
    /// Throws RelationViolation unless every d_{n} d_{n+1} vanishes.
    void validate() const;

    static BoundedComplex stalk(const Module& m, int degree);
};

struct PeriodicComplex {
    AlgebraPtr base;
    std::array<Module, 3> modules;
    /// diffs[c] : modules[c] -> modules[(c + 2) % 3].
    std::array<Morphism, 3> diffs;

    std::size_t total_dim() const;
    void validate() const;
};

/// Direct sum over each class, blocks in ascending degree.
PeriodicComplex wrap(const BoundedComplex& x);

Module periodic_to_module(const PeriodicComplex& p);
PeriodicComplex module_to_periodic(const Module& m);

PeriodicComplex periodic_syzygy(const PeriodicComplex& p);
Decomposition periodic_decompose(const PeriodicComplex& p, Rng& rng);
IsoResult periodic_iso(const PeriodicComplex& p, const PeriodicComplex& q, Rng& rng);

/// Base-algebra module of a tensor-algebra module at degree class c.
Module class_component(const Module& tensor_module, std::size_t c);

json complex_to_json(const BoundedComplex& x);
json periodic_to_json(const PeriodicComplex& p);
PeriodicComplex periodic_from_json(const json& j, const AlgebraPtr& base);

}  // namespace philab
