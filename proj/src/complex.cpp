#include "philab/complex.hpp"

#include <stdexcept>

namespace philab {

std::size_t degree_class(int degree) { return static_cast<std::size_t>(((degree + 1) % 3 + 3) % 3); }

std::string class_name(std::size_t c) {
    static const char* names[] = {"[-1]", "[0]", "[1]"};
    return names[c % 3];
}

Module BoundedComplex::at(int degree) const {
    if (degree < lo || degree > hi()) return Module::zero(algebra);
    return modules[static_cast<std::size_t>(degree - lo)];
}

Morphism BoundedComplex::d(int degree) const {
    if (degree - 1 < lo || degree > hi()) return Morphism::zero(at(degree), at(degree - 1));
    return diffs[static_cast<std::size_t>(degree - 1 - lo)];
}

std::size_t BoundedComplex::total_dim() const {
    std::size_t t = 0;
    for (auto& m : modules) t += m.total_dim();
    return t;
}

void BoundedComplex::validate() const {
    if (diffs.size() + 1 != modules.size() && !(modules.empty() && diffs.empty()))
        throw std::invalid_argument("bounded complex: wrong number of differentials");
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (!(diffs[i].source() == modules[i + 1]) || !(diffs[i].target() == modules[i]))
            throw std::invalid_argument("bounded complex: differential has the wrong source or target");
        if (!diffs[i].commutes()) throw RelationViolation("bounded complex: differential is not a module map");
    }
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i)
        if (!(diffs[i] * diffs[i + 1]).is_zero())
            throw RelationViolation("bounded complex: d^2 != 0 at degree " + std::to_string(lo + static_cast<int>(i) + 2));
}

BoundedComplex BoundedComplex::stalk(const Module& m, int degree) {
    BoundedComplex x;
    x.algebra = m.algebra();
    x.lo = degree;
    x.modules = {m};
    return x;
}

std::size_t PeriodicComplex::total_dim() const {
    return modules[0].total_dim() + modules[1].total_dim() + modules[2].total_dim();
}

void PeriodicComplex::validate() const {
    for (std::size_t c = 0; c < 3; ++c) {
        const Morphism& d = diffs[c];
        if (!(d.source() == modules[c]) || !(d.target() == modules[(c + 2) % 3]))
            throw std::invalid_argument("periodic complex: differential has the wrong source or target");
        if (!d.commutes()) throw RelationViolation("periodic complex: differential is not a module map");
        if (!(diffs[(c + 2) % 3] * d).is_zero())
            throw RelationViolation("periodic complex: d^2 != 0 out of class " + class_name(c));
    }
}

PeriodicComplex wrap(const BoundedComplex& x) {
    const AlgebraPtr& alg = x.algebra;
    const std::size_t nv = alg->vertex_count();
    std::array<std::vector<int>, 3> degrees;
    for (int n = x.lo; n <= x.hi(); ++n) degrees[degree_class(n)].push_back(n);

    PeriodicComplex p;
    p.base = alg;
    // offset[n - lo][v]: where X_n sits inside its class at vertex v.
    std::vector<std::vector<std::size_t>> offset(x.modules.size(), std::vector<std::size_t>(nv, 0));
    for (std::size_t c = 0; c < 3; ++c) {
        std::vector<Module> parts;
        std::vector<std::size_t> run(nv, 0);
        for (int n : degrees[c]) {
            const Module& m = x.at(n);
            for (std::size_t v = 0; v < nv; ++v) {
                offset[static_cast<std::size_t>(n - x.lo)][v] = run[v];
                run[v] += m.dim(v);
            }
            parts.push_back(m);
        }
        p.modules[c] = parts.empty() ? Module::zero(alg) : direct_sum(parts);
    }
    for (std::size_t c = 0; c < 3; ++c) {
        const std::size_t tc = (c + 2) % 3;
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < nv; ++v) comps.emplace_back(p.modules[tc].dim(v), p.modules[c].dim(v));
        for (int n : degrees[c]) {
            if (n - 1 < x.lo) continue;
            const Morphism& d = x.d(n);
            for (std::size_t v = 0; v < nv; ++v)
                comps[v].set_block(offset[static_cast<std::size_t>(n - 1 - x.lo)][v],
                                   offset[static_cast<std::size_t>(n - x.lo)][v], d.component(v));
        }
        p.diffs[c] = Morphism(p.modules[c], p.modules[tc], std::move(comps), false);
    }
    return p;
}

Module periodic_to_module(const PeriodicComplex& p) {
    AlgebraPtr alg = tensor_of(p.base);
    const TensorInfo& ti = *alg->tensor();
    const std::size_t nv = p.base->vertex_count(), na = p.base->arrow_count();
    std::vector<std::size_t> dims(3 * nv);
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t v = 0; v < nv; ++v) dims[ti.vertex(v, c)] = p.modules[c].dim(v);
    std::vector<Matrix> action(alg->arrow_count());
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t a = 0; a < na; ++a) action[ti.copy_arrow(a, c)] = p.modules[c].action(a);
        for (std::size_t v = 0; v < nv; ++v) action[ti.d_arrow(v, c)] = p.diffs[c].component(v);
    }
    return Module(alg, std::move(dims), std::move(action));
}

Module class_component(const Module& m, std::size_t c) {
    const TensorInfo* ti = m.algebra()->tensor();
    if (!ti) throw std::invalid_argument("module is not over a tensor algebra");
    const AlgebraPtr& base = ti->base;
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < base->vertex_count(); ++v) dims.push_back(m.dim(ti->vertex(v, c)));
    std::vector<Matrix> action;
    for (std::size_t a = 0; a < base->arrow_count(); ++a) action.push_back(m.action(ti->copy_arrow(a, c)));
    return Module(base, std::move(dims), std::move(action));
}

PeriodicComplex module_to_periodic(const Module& m) {
    const TensorInfo* ti = m.algebra()->tensor();
    if (!ti) throw std::invalid_argument("module is not over a tensor algebra");
    PeriodicComplex p;
    p.base = ti->base;
    for (std::size_t c = 0; c < 3; ++c) p.modules[c] = class_component(m, c);
    for (std::size_t c = 0; c < 3; ++c) {
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < p.base->vertex_count(); ++v) comps.push_back(m.action(ti->d_arrow(v, c)));
        p.diffs[c] = Morphism(p.modules[c], p.modules[(c + 2) % 3], std::move(comps));
    }
    return p;
}

PeriodicComplex periodic_syzygy(const PeriodicComplex& p) {
    return module_to_periodic(syzygy(periodic_to_module(p)));
}

Decomposition periodic_decompose(const PeriodicComplex& p, Rng& rng) {
    return decompose(periodic_to_module(p), rng);
}

IsoResult periodic_iso(const PeriodicComplex& p, const PeriodicComplex& q, Rng& rng) {
    if (p.base != q.base) throw std::invalid_argument("periodic complexes over different algebras");
    return isomorphism(periodic_to_module(p), periodic_to_module(q), rng);
}

namespace {

json morphism_components(const Morphism& f) {
    json comps = json::array();
    for (auto& c : f.components()) comps.push_back(matrix_to_json(c));
    return comps;
}

}  // namespace

json complex_to_json(const BoundedComplex& x) {
    json mods = json::array(), diffs = json::array();
    for (auto& m : x.modules) mods.push_back(module_to_json(m));
    for (std::size_t i = 0; i < x.diffs.size(); ++i)
        diffs.push_back({{"degree", x.lo + static_cast<int>(i) + 1}, {"components", morphism_components(x.diffs[i])}});
    return {{"algebra_id", x.algebra->id()}, {"lo", x.lo}, {"modules", mods}, {"differentials", diffs}};
}

json periodic_to_json(const PeriodicComplex& p) {
    json classes = json::object(), diffs = json::object();
    for (std::size_t c = 0; c < 3; ++c) {
        classes[class_name(c)] = module_to_json(p.modules[c]);
        diffs[class_name(c)] = morphism_components(p.diffs[c]);
    }
    return {{"algebra_id", p.base->id()}, {"classes", classes}, {"differentials", diffs}};
}

PeriodicComplex periodic_from_json(const json& j, const AlgebraPtr& base) {
    try {
        PeriodicComplex p;
        p.base = base;
        for (std::size_t c = 0; c < 3; ++c) p.modules[c] = module_from_json(j.at("classes").at(class_name(c)), base);
        for (std::size_t c = 0; c < 3; ++c) {
            const json& comps = j.at("differentials").at(class_name(c));
            const std::size_t tc = (c + 2) % 3;
            if (comps.size() != base->vertex_count()) throw ParseError("differential has the wrong number of components");
            std::vector<Matrix> mats;
            for (std::size_t v = 0; v < base->vertex_count(); ++v)
                mats.push_back(matrix_from_json(comps[v], p.modules[tc].dim(v), p.modules[c].dim(v)));
            p.diffs[c] = Morphism(p.modules[c], p.modules[tc], std::move(mats));
        }
        p.validate();
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed complex JSON: ") + e.what());
    }
}

}  // namespace philab
