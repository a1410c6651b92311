#include "philab/module.hpp"

#include <numeric>
#include <sstream>

#include "philab/poly.hpp"

namespace philab {

namespace {

/// Left inverse data for a full-column-rank basis B: B^+ y = x when y = B x.
struct LeftInverse {
    std::vector<std::size_t> rows;
    Matrix inv;

    explicit LeftInverse(const Matrix& b) {
        rows = independent_columns(b.transpose());
        if (rows.size() != b.cols()) throw std::logic_error("basis is not of full column rank");
        inv = *inverse(b.rows_subset(rows));
    }
    Matrix apply(const Matrix& y) const { return inv * y.rows_subset(rows); }
};

}  // namespace

Module::Module(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Matrix> action) {
    if (!alg) throw std::invalid_argument("module without algebra");
    const Quiver& q = alg->quiver();
    if (dims.size() != q.vertex_count()) throw std::invalid_argument("dimension vector has the wrong length");
    if (action.size() != q.arrow_count()) throw std::invalid_argument("wrong number of arrow matrices");
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        if (action[a].rows() != dims[ar.target] || action[a].cols() != dims[ar.source])
            throw std::invalid_argument("arrow " + ar.label + " has a matrix of the wrong shape");
    }
    d_ = std::make_shared<Data>();
    d_->alg = std::move(alg);
    d_->dims = std::move(dims);
    d_->action = std::move(action);
    d_->total = std::accumulate(d_->dims.begin(), d_->dims.end(), std::size_t{0});
    for (auto& r : d_->alg->relations()) {
        const Path& p0 = r.terms.front().second;
        if (d_->dims[p0.source] == 0 || d_->dims[p0.target] == 0) continue;
        Matrix sum(d_->dims[p0.target], d_->dims[p0.source]);
        for (auto& [c, p] : r.terms) sum = sum + path_action(p).scaled(c);
        if (!sum.is_zero())
            throw RelationViolation("relation " + path_name(d_->alg->quiver(), p0) + " does not act as zero");
    }
}

Module Module::zero(AlgebraPtr alg) {
    const Quiver& q = alg->quiver();
    std::vector<Matrix> action(q.arrow_count());
    return Module(std::move(alg), std::vector<std::size_t>(q.vertex_count(), 0), std::move(action));
}

Matrix Module::path_action(const Path& p) const {
    Matrix m = Matrix::identity(d_->dims[p.source]);
    for (auto a : p.arrows) m = d_->action[a] * m;
    return m;
}

bool operator==(const Module& a, const Module& b) {
    if (a.d_ == b.d_) return true;
    return a.algebra() == b.algebra() && a.dims() == b.dims() && a.actions() == b.actions();
}

Morphism::Morphism(Module source, Module target, std::vector<Matrix> components, bool check)
    : s_(std::move(source)), t_(std::move(target)), c_(std::move(components)) {
    if (s_.algebra() != t_.algebra()) throw std::invalid_argument("morphism between modules over different algebras");
    const std::size_t nv = s_.dims().size();
    if (c_.size() != nv) throw std::invalid_argument("morphism has the wrong number of components");
    for (std::size_t v = 0; v < nv; ++v)
        if (c_[v].rows() != t_.dim(v) || c_[v].cols() != s_.dim(v))
            throw std::invalid_argument("morphism component of the wrong shape");
    if (check && !commutes()) throw RelationViolation("morphism does not commute with the arrows");
}

Morphism Morphism::zero(const Module& s, const Module& t) {
    std::vector<Matrix> c;
    for (std::size_t v = 0; v < s.dims().size(); ++v) c.emplace_back(t.dim(v), s.dim(v));
    return Morphism(s, t, std::move(c), false);
}

Morphism Morphism::identity(const Module& m) {
    std::vector<Matrix> c;
    for (auto d : m.dims()) c.push_back(Matrix::identity(d));
    return Morphism(m, m, std::move(c), false);
}

bool Morphism::commutes() const {
    const Quiver& q = s_.algebra()->quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        if (!(t_.action(a) * c_[ar.source] == c_[ar.target] * s_.action(a))) return false;
    }
    return true;
}

bool Morphism::is_zero() const {
    for (auto& m : c_)
        if (!m.is_zero()) return false;
    return true;
}

std::size_t Morphism::rank() const {
    std::size_t r = 0;
    for (auto& m : c_) r += philab::rank(m);
    return r;
}

bool Morphism::is_injective() const { return rank() == s_.total_dim(); }
bool Morphism::is_surjective() const { return rank() == t_.total_dim(); }
bool Morphism::is_iso() const { return s_.dims() == t_.dims() && is_injective(); }

Morphism operator*(const Morphism& g, const Morphism& f) {
    if (!(f.target().dims() == g.source().dims())) throw std::invalid_argument("composition of incompatible morphisms");
    std::vector<Matrix> c;
    for (std::size_t v = 0; v < f.components().size(); ++v) c.push_back(g.component(v) * f.component(v));
    return Morphism(f.source(), g.target(), std::move(c), false);
}

Morphism operator+(const Morphism& a, const Morphism& b) {
    std::vector<Matrix> c;
    for (std::size_t v = 0; v < a.components().size(); ++v) c.push_back(a.component(v) + b.component(v));
    return Morphism(a.source(), a.target(), std::move(c), false);
}

Morphism operator-(const Morphism& a, const Morphism& b) {
    std::vector<Matrix> c;
    for (std::size_t v = 0; v < a.components().size(); ++v) c.push_back(a.component(v) - b.component(v));
    return Morphism(a.source(), a.target(), std::move(c), false);
}

Morphism Morphism::operator-() const { return scaled(field::neg(1)); }

Morphism Morphism::scaled(Scalar s) const {
    std::vector<Matrix> c;
    for (auto& m : c_) c.push_back(m.scaled(s));
    return Morphism(s_, t_, std::move(c), false);
}

Module simple(const AlgebraPtr& alg, std::size_t v) {
    const Quiver& q = alg->quiver();
    if (v >= q.vertex_count()) throw std::out_of_range("simple: vertex out of range");
    std::vector<std::size_t> dims(q.vertex_count(), 0);
    dims[v] = 1;
    std::vector<Matrix> action;
    for (auto& ar : q.arrows()) action.emplace_back(dims[ar.target], dims[ar.source]);
    return Module(alg, std::move(dims), std::move(action));
}

Module projective(const AlgebraPtr& alg, std::size_t v) {
    if (v >= alg->vertex_count()) throw std::out_of_range("projective: vertex out of range");
    std::vector<std::size_t> dims;
    for (auto& ps : alg->projective_basis(v)) dims.push_back(ps.size());
    return Module(alg, std::move(dims), alg->projective_action(v));
}

Module direct_sum(const std::vector<Module>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum of nothing; use Module::zero");
    if (parts.size() == 1) return parts.front();
    const AlgebraPtr& alg = parts.front().algebra();
    const Quiver& q = alg->quiver();
    std::vector<std::size_t> dims(q.vertex_count(), 0);
    for (auto& p : parts)
        for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += p.dim(v);
    std::vector<Matrix> action;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        Matrix m(dims[ar.target], dims[ar.source]);
        std::size_t r = 0, c = 0;
        for (auto& p : parts) {
            m.set_block(r, c, p.action(a));
            r += p.dim(ar.target);
            c += p.dim(ar.source);
        }
        action.push_back(std::move(m));
    }
    return Module(alg, std::move(dims), std::move(action));
}

Module power(const Module& m, std::size_t n) {
    if (n == 0) return Module::zero(m.algebra());
    return direct_sum(std::vector<Module>(n, m));
}

std::pair<Module, Morphism> change_basis(const Module& m, const std::vector<Matrix>& g) {
    const Quiver& q = m.algebra()->quiver();
    std::vector<Matrix> ginv;
    for (auto& x : g) {
        auto inv = inverse(x);
        if (!inv) throw std::invalid_argument("change_basis: singular matrix");
        ginv.push_back(*inv);
    }
    std::vector<Matrix> action;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        action.push_back(g[ar.target] * m.action(a) * ginv[ar.source]);
    }
    Module n(m.algebra(), m.dims(), std::move(action));
    return {n, Morphism(m, n, g, false)};
}

Submodule submodule(const Module& m, std::vector<Matrix> bases) {
    const Quiver& q = m.algebra()->quiver();
    std::vector<std::size_t> dims;
    std::vector<std::optional<LeftInverse>> li(bases.size());
    for (std::size_t v = 0; v < bases.size(); ++v) {
        dims.push_back(bases[v].cols());
        if (bases[v].cols()) li[v].emplace(bases[v]);
    }
    std::vector<Matrix> action;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        if (dims[ar.target] == 0 || dims[ar.source] == 0) {
            action.emplace_back(dims[ar.target], dims[ar.source]);
            continue;
        }
        Matrix y = m.action(a) * bases[ar.source];
        Matrix x = li[ar.target]->apply(y);
        if (!(bases[ar.target] * x == y)) throw std::logic_error("submodule: subspaces not closed under the action");
        action.push_back(std::move(x));
    }
    Module sub(m.algebra(), std::move(dims), std::move(action));
    Morphism inc(sub, m, std::move(bases), false);
    return {sub, inc};
}

Submodule kernel(const Morphism& f) {
    std::vector<Matrix> bases;
    for (auto& c : f.components()) bases.push_back(kernel_basis(c));
    return submodule(f.source(), std::move(bases));
}

Submodule image(const Morphism& f) {
    std::vector<Matrix> bases;
    for (auto& c : f.components()) bases.push_back(image_basis(c));
    return submodule(f.target(), std::move(bases));
}

std::vector<Matrix> radical_basis(const Module& m) {
    const Quiver& q = m.algebra()->quiver();
    std::vector<Matrix> out;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        std::vector<Matrix> imgs;
        for (auto a : q.in_arrows(v)) imgs.push_back(m.action(a));
        if (imgs.empty() || m.dim(v) == 0) {
            out.emplace_back(m.dim(v), 0);
            continue;
        }
        out.push_back(image_basis(Matrix::hstack(imgs, m.dim(v))));
    }
    return out;
}

std::vector<Matrix> socle_basis(const Module& m) {
    const Quiver& q = m.algebra()->quiver();
    std::vector<Matrix> out;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        std::vector<Matrix> maps;
        for (auto a : q.out_arrows(v)) maps.push_back(m.action(a));
        if (maps.empty()) {
            out.push_back(Matrix::identity(m.dim(v)));
            continue;
        }
        out.push_back(kernel_basis(Matrix::vstack(maps, m.dim(v))));
    }
    return out;
}

std::vector<std::size_t> top_dims(const Module& m) {
    auto rad = radical_basis(m);
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < rad.size(); ++v) out.push_back(m.dim(v) - rad[v].cols());
    return out;
}

std::vector<std::size_t> simple_summand_multiplicities(const Module& m) {
    auto rad = radical_basis(m);
    auto soc = socle_basis(m);
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < rad.size(); ++v) {
        const std::size_t sum = rank(Matrix::hcat(soc[v], rad[v]));
        const std::size_t meet = soc[v].cols() + rad[v].cols() - sum;
        out.push_back(soc[v].cols() - meet);
    }
    return out;
}

const Presentation& Module::presentation() const {
    std::call_once(d_->pres_once, [this] {
        auto pres = std::make_shared<Presentation>();
        const AlgebraPtr& alg = d_->alg;
        const std::size_t nv = alg->vertex_count();
        auto rad = radical_basis(*this);
        for (std::size_t v = 0; v < nv; ++v)
            for (auto j : complement_columns(rad[v], Matrix::identity(dim(v)))) pres->gens.push_back({v, j});

        std::vector<std::size_t> cover_dims(nv, 0);
        for (auto& g : pres->gens) {
            pres->cover_parts.push_back(projective(alg, g.vertex));
            std::vector<std::size_t> off(nv);
            for (std::size_t w = 0; w < nv; ++w) {
                off[w] = cover_dims[w];
                cover_dims[w] += pres->cover_parts.back().dim(w);
            }
            pres->offset.push_back(std::move(off));
        }
        pres->cover = pres->cover_parts.empty() ? Module::zero(alg) : direct_sum(pres->cover_parts);

        std::vector<Matrix> pi;
        for (std::size_t w = 0; w < nv; ++w) pi.emplace_back(dim(w), cover_dims[w]);
        for (std::size_t g = 0; g < pres->gens.size(); ++g) {
            const auto& gen = pres->gens[g];
            const auto& paths = alg->projective_basis(gen.vertex);
            for (std::size_t w = 0; w < nv; ++w)
                for (std::size_t j = 0; j < paths[w].size(); ++j) {
                    Matrix act = path_action(paths[w][j]);
                    for (std::size_t r = 0; r < dim(w); ++r) pi[w](r, pres->offset[g][w] + j) = act(r, gen.index);
                }
        }
        pres->surj = Morphism(pres->cover, *this, pi, false);
        pres->kernel = philab::kernel(pres->surj);
        for (std::size_t w = 0; w < nv; ++w) {
            auto s = solve_right(pi[w], Matrix::identity(dim(w)));
            if (!s) throw std::logic_error("projective cover is not surjective");
            pres->section.push_back(std::move(*s));
        }
        const Module& k = pres->kernel.module;
        auto krad = radical_basis(k);
        for (std::size_t w = 0; w < nv; ++w)
            for (auto j : complement_columns(krad[w], Matrix::identity(k.dim(w))))
                pres->relations.emplace_back(w, pres->kernel.inclusion.component(w).col(j));
        d_->pres = std::move(pres);
    });
    return *d_->pres;
}

Module syzygy_power(const Module& m, unsigned t) {
    Module cur = m;
    for (unsigned i = 0; i < t; ++i) cur = syzygy(cur);
    return cur;
}

bool is_projective(const Module& m) { return syzygy(m).is_zero(); }

HomSpace::HomSpace(const Module& m, const Module& n) : m_(m), n_(n) {
    if (m.algebra() != n.algebra()) throw std::invalid_argument("Hom between modules over different algebras");
    const Presentation& pres = m.presentation();
    const AlgebraPtr& alg = m.algebra();
    const std::size_t nv = alg->vertex_count();

    np_.assign(nv, {});
    std::vector<char> need(nv, 0);
    for (auto& g : pres.gens) need[g.vertex] = 1;
    for (std::size_t v = 0; v < nv; ++v) {
        if (!need[v]) continue;
        const auto& paths = alg->projective_basis(v);
        np_[v].resize(nv);
        for (std::size_t w = 0; w < nv; ++w)
            for (auto& p : paths[w]) np_[v][w].push_back(n.path_action(p));
    }
    std::size_t unknowns = 0;
    for (auto& g : pres.gens) {
        unknown_offset_.push_back(unknowns);
        unknowns += n.dim(g.vertex);
    }
    std::size_t eqs = 0;
    for (auto& [w, kappa] : pres.relations) eqs += n.dim(w);
    Matrix sys(eqs, unknowns);
    std::size_t row = 0;
    for (auto& [w, kappa] : pres.relations) {
        const std::size_t nw = n.dim(w);
        if (nw == 0) continue;
        for (std::size_t g = 0; g < pres.gens.size(); ++g) {
            const std::size_t v = pres.gens[g].vertex;
            const std::size_t nvdim = n.dim(v);
            if (nvdim == 0) continue;
            const auto& mats = np_[v][w];
            for (std::size_t j = 0; j < mats.size(); ++j) {
                Scalar c = kappa[pres.offset[g][w] + j];
                if (c == 0) continue;
                for (std::size_t r = 0; r < nw; ++r)
                    for (std::size_t s = 0; s < nvdim; ++s) {
                        Scalar& e = sys(row + r, unknown_offset_[g] + s);
                        e = field::add(e, field::mul(c, mats[j](r, s)));
                    }
            }
        }
        row += nw;
    }
    basis_ = kernel_basis(sys);
}

std::vector<Matrix> HomSpace::materialize(const std::vector<Scalar>& x) const {
    const Presentation& pres = m_.presentation();
    const std::size_t nv = m_.algebra()->vertex_count();
    std::vector<Matrix> out;
    for (std::size_t w = 0; w < nv; ++w) {
        Matrix f(n_.dim(w), pres.cover.dim(w));
        if (n_.dim(w) && m_.dim(w)) {
            for (std::size_t g = 0; g < pres.gens.size(); ++g) {
                const std::size_t v = pres.gens[g].vertex;
                const std::size_t nvdim = n_.dim(v);
                const auto& mats = np_[v][w];
                for (std::size_t j = 0; j < mats.size(); ++j) {
                    const Matrix& a = mats[j];
                    const std::size_t col = pres.offset[g][w] + j;
                    for (std::size_t r = 0; r < a.rows(); ++r) {
                        std::uint64_t acc = 0;
                        Scalar s = 0;
                        for (std::size_t t = 0; t < nvdim; ++t) {
                            acc += std::uint64_t(a(r, t)) * x[unknown_offset_[g] + t];
                            if ((t & 1) == 1) {
                                s = field::add(s, field::reduce64(acc));
                                acc = 0;
                            }
                        }
                        f(r, col) = field::add(s, field::reduce64(acc));
                    }
                }
            }
        }
        out.push_back(f * pres.section[w]);
    }
    return out;
}

Morphism HomSpace::element(std::size_t i) const {
    return Morphism(m_, n_, materialize(basis_.col(i)), false);
}

Morphism HomSpace::combination(const std::vector<Scalar>& coeffs) const {
    if (coeffs.size() != dim()) throw std::invalid_argument("HomSpace::combination: wrong number of coefficients");
    Matrix c = Matrix::column(coeffs);
    return Morphism(m_, n_, materialize((basis_ * c).col(0)), false);
}

std::vector<Matrix> HomSpace::random_components(Rng& rng) const {
    std::vector<Scalar> coeffs(dim());
    for (auto& c : coeffs) c = rng.scalar();
    if (dim() == 0) return Morphism::zero(m_, n_).components();
    return materialize((basis_ * Matrix::column(coeffs)).col(0));
}

Morphism HomSpace::random(Rng& rng) const { return Morphism(m_, n_, random_components(rng), false); }

std::vector<Morphism> hom_basis(const Module& m, const Module& n) {
    HomSpace h(m, n);
    std::vector<Morphism> out;
    for (std::size_t i = 0; i < h.dim(); ++i) out.push_back(h.element(i));
    return out;
}

std::size_t hom_dim(const Module& m, const Module& n) { return HomSpace(m, n).dim(); }

std::vector<std::size_t> rank_profile(const Module& m) {
    std::vector<std::size_t> out;
    for (auto& a : m.actions()) out.push_back(rank(a));
    return out;
}

std::string dims_string(const std::vector<std::size_t>& dims) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << ')';
    return os.str();
}

}  // namespace philab
