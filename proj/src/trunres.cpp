#include "philab/trunres.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "philab/builtin.hpp"
#include "philab/igusa.hpp"

namespace philab {

SumModule::SumModule(AlgebraPtr a, std::vector<Module> ps) : alg(std::move(a)), parts(std::move(ps)) {
    const std::size_t nv = alg->vertex_count();
    sum = parts.empty() ? Module::zero(alg) : direct_sum(parts);
    std::vector<std::size_t> run(nv, 0);
    for (auto& p : parts) {
        offset.push_back(run);
        for (std::size_t v = 0; v < nv; ++v) run[v] += p.dim(v);
    }
}

SumModule SumModule::concat(const SumModule& other) const {
    if (other.empty()) return *this;
    if (empty()) return other;
    std::vector<Module> ps = parts;
    ps.insert(ps.end(), other.parts.begin(), other.parts.end());
    return SumModule(alg, std::move(ps));
}

SumModule SumModule::select(const std::vector<std::size_t>& idx) const {
    std::vector<Module> ps;
    for (auto i : idx) ps.push_back(parts[i]);
    return SumModule(alg, std::move(ps));
}

namespace {

std::vector<std::size_t> rows_of(const SumModule& s, const std::vector<std::size_t>& idx, std::size_t v) {
    std::vector<std::size_t> out;
    for (auto i : idx)
        for (std::size_t r = 0; r < s.parts[i].dim(v); ++r) out.push_back(s.offset[i][v] + r);
    return out;
}

std::vector<std::size_t> all_parts(const SumModule& s) {
    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

/// f restricted to the given parts of its source and target.
Morphism restrict(const Morphism& f, const SumModule& src, const std::vector<std::size_t>& sidx, const SumModule& nsrc,
                  const SumModule& tgt, const std::vector<std::size_t>& tidx, const SumModule& ntgt) {
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < src.alg->vertex_count(); ++v) {
        auto rows = rows_of(tgt, tidx, v);
        auto cols = rows_of(src, sidx, v);
        comps.push_back(f.component(v).rows_subset(rows).columns(cols));
    }
    return Morphism(nsrc.sum, ntgt.sum, std::move(comps), false);
}

/// Builds a morphism between two SumModules out of maps between runs of
/// consecutive parts.
class Assembler {
  public:
    Assembler(const SumModule& src, const SumModule& tgt) : src_(src), tgt_(tgt) {
        for (std::size_t v = 0; v < src.alg->vertex_count(); ++v) comps_.emplace_back(tgt.sum.dim(v), src.sum.dim(v));
    }
    /// f maps the parts starting at from (in src) to the parts starting at
    /// to (in tgt).
    void add(std::size_t from, std::size_t to, const Morphism& f, Scalar c = 1) {
        for (std::size_t v = 0; v < comps_.size(); ++v) {
            const Matrix& b = f.component(v);
            if (b.rows() == 0 || b.cols() == 0) continue;
            const std::size_t r0 = tgt_.offset.at(to)[v], c0 = src_.offset.at(from)[v];
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    comps_[v](r0 + i, c0 + j) = field::add(comps_[v](r0 + i, c0 + j), field::mul(c, b(i, j)));
        }
    }
    Morphism done() { return Morphism(src_.sum, tgt_.sum, std::move(comps_), false); }

  private:
    const SumModule& src_;
    const SumModule& tgt_;
    std::vector<Matrix> comps_;
};

struct Cover {
    SumModule P;
    Morphism surj;  // P.sum -> R.sum
};

/// Cover of every part separately, one indecomposable projective per top
/// generator.
Cover cover_of(const SumModule& r) {
    Cover c;
    std::vector<Module> parts;
    std::vector<std::size_t> start;
    for (auto& part : r.parts) {
        start.push_back(parts.size());
        for (auto& cp : part.presentation().cover_parts) parts.push_back(cp);
    }
    c.P = SumModule(r.alg, std::move(parts));
    Assembler a(c.P, r);
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!r.parts[i].presentation().cover_parts.empty()) a.add(start[i], i, r.parts[i].presentation().surj);
    c.surj = a.done();
    return c;
}

struct Kernel {
    SumModule K;
    Morphism incl;  // K.sum -> P.sum
};

/// Kernel of the cover, split into indecomposable parts.
Kernel kernel_of(const SumModule& r, const Cover& c) {
    Rng rng(kDefaultSeed);
    std::vector<Module> parts;
    std::vector<std::pair<std::size_t, Morphism>> maps;  // (cover start, part -> part cover)
    std::size_t start = 0;
    for (auto& part : r.parts) {
        const Presentation& pres = part.presentation();
        const Submodule& ker = pres.kernel;
        if (!ker.module.is_zero()) {
            Decomposition d = decompose(ker.module, rng);
            for (auto& s : d.summands)
                for (auto& inc : s.inclusions) {
                    parts.push_back(s.module);
                    maps.emplace_back(start, ker.inclusion * inc);
                }
        }
        start += pres.cover_parts.size();
    }
    Kernel k;
    k.K = SumModule(r.alg, std::move(parts));
    Assembler a(k.K, c.P);
    for (std::size_t i = 0; i < maps.size(); ++i) a.add(i, maps[i].first, maps[i].second);
    k.incl = a.done();
    return k;
}

Morphism restrict_source(const Morphism& f, const SumModule& src, const std::vector<std::size_t>& idx,
                         const SumModule& nsrc, const SumModule& tgt) {
    return restrict(f, src, idx, nsrc, tgt, all_parts(tgt), tgt);
}


}  // namespace

std::optional<std::size_t> projective_top(const Module& m) {
    auto top = top_dims(m);
    std::size_t count = 0, v = 0;
    for (std::size_t w = 0; w < top.size(); ++w)
        if (top[w]) {
            count += top[w];
            v = w;
        }
    if (count != 1) return std::nullopt;
    std::size_t pdim = 0;
    for (auto& ps : m.algebra()->projective_basis(v)) pdim += ps.size();
    return pdim == m.total_dim() ? std::optional<std::size_t>(v) : std::nullopt;
}

std::string part_name(const Module& m) {
    if (m.total_dim() == 1)
        for (std::size_t v = 0; v < m.dims().size(); ++v)
            if (m.dim(v)) return "S" + std::to_string(v + 1);
    if (auto v = projective_top(m)) return "P" + std::to_string(*v + 1);
    return "M" + dims_string(m.dims());
}

std::vector<std::string> part_names(const SumModule& s) {
    std::vector<std::string> out;
    for (auto& p : s.parts) out.push_back(part_name(p));
    return out;
}

namespace {

std::string names(const SumModule& s) {
    std::string out;
    for (auto& p : s.parts) out += (out.empty() ? "" : " + ") + part_name(p);
    return out;
}

}  // namespace

Matrix block_component(const Morphism& f, const SumModule& src, std::size_t from, const SumModule& tgt,
                       std::size_t to, std::size_t v) {
    return f.component(v).block(tgt.offset[to][v], src.offset[from][v], tgt.parts[to].dim(v), src.parts[from].dim(v));
}

bool block_is_zero(const Morphism& f, const SumModule& src, std::size_t from, const SumModule& tgt, std::size_t to) {
    for (std::size_t v = 0; v < src.alg->vertex_count(); ++v)
        if (!block_component(f, src, from, tgt, to, v).is_zero()) return false;
    return true;
}

Morphism TruncatedResolution::f(std::size_t k) const {
    if (k == 0) return cover0;
    return rincl.at(k) * rcover.at(k);
}

SumModule TruncatedResolution::X(int degree) const {
    if (degree == -1) return M;
    if (degree < -1 || degree > static_cast<int>(m)) return SumModule(alg, {});
    const auto k = static_cast<std::size_t>(degree);
    SumModule out = k < m ? P[k] : SumModule(alg, {});
    if (k >= 1) out = out.concat(Q[k]);
    return out;
}

BoundedComplex TruncatedResolution::complex() const {
    BoundedComplex x;
    x.algebra = alg;
    x.lo = -1;
    std::vector<SumModule> xs;
    for (int d = -1; d <= static_cast<int>(m); ++d) {
        xs.push_back(X(d));
        x.modules.push_back(xs.back().sum);
    }
    for (std::size_t k = 0; k <= m; ++k) {
        const SumModule& src = xs[k + 1];
        const SumModule& tgt = xs[k];
        Assembler a(src, tgt);
        if (k == 0) a.add(0, 0, cover0);
        else {
            if (k < m) a.add(0, 0, f(k));
            a.add(k < m ? P[k].size() : 0, 0, qincl[k]);
        }
        x.diffs.push_back(a.done());
    }
    return x;
}

std::size_t TruncatedResolution::total_dim() const {
    std::size_t t = 0;
    for (int d = -1; d <= static_cast<int>(m); ++d) t += X(d).sum.total_dim();
    return t;
}

TruncatedResolution build(const Module& base, std::size_t length, const SplitPlan& plan) {
    if (length == 0) throw InvalidPlan("resolution length must be positive");
    for (auto& [step, peel] : plan.steps)
        if (step == 0 || step > length)
            throw InvalidPlan("plan step " + std::to_string(step) + " outside 1.." + std::to_string(length));
    TruncatedResolution t;
    t.alg = base.algebra();
    t.m = length;
    t.M = SumModule(t.alg, {base});
    t.P.assign(length + 1, SumModule(t.alg, {}));
    t.Q = t.R = t.P;
    t.rcover.resize(length + 1);
    t.rincl.resize(length + 1);
    t.qincl.resize(length + 1);

    SumModule cur = t.M;
    for (std::size_t k = 1; k <= length; ++k) {
        Cover c = cover_of(cur);
        t.P[k - 1] = c.P;
        if (k == 1) t.cover0 = c.surj;
        else t.rcover[k - 1] = c.surj;
        Kernel ker = kernel_of(cur, c);
        if (ker.K.empty())
            throw InvalidPlan("kernel vanishes at step " + std::to_string(k) + ": projective dimension below the length");
        std::vector<char> taken(ker.K.size(), 0);
        auto it = plan.steps.find(k);
        if (it != plan.steps.end()) {
            Rng rng(kDefaultSeed);
            for (auto& spec : it->second) {
                std::size_t got = 0;
                for (std::size_t i = 0; i < ker.K.size() && got < spec.mult; ++i) {
                    if (taken[i]) continue;
                    if (isomorphism(ker.K.parts[i], spec.module, rng).isomorphic) {
                        taken[i] = 1;
                        ++got;
                    }
                }
                if (got < spec.mult)
                    throw InvalidPlan("step " + std::to_string(k) + ": kernel has fewer than " +
                                      std::to_string(spec.mult) + " summands " + part_name(spec.module));
            }
        }
        // The last kernel goes into Q_m whole; a peel there only has to exist.
        if (k == length) {
            t.Q[k] = ker.K;
            t.qincl[k] = ker.incl;
            break;
        }
        std::vector<std::size_t> qi, ri;
        for (std::size_t i = 0; i < ker.K.size(); ++i) (taken[i] ? qi : ri).push_back(i);
        if (ri.empty()) throw InvalidPlan("R_" + std::to_string(k) + " would vanish before the last step");
        t.Q[k] = ker.K.select(qi);
        t.R[k] = ker.K.select(ri);
        t.qincl[k] = restrict_source(ker.incl, ker.K, qi, t.Q[k], c.P);
        t.rincl[k] = restrict_source(ker.incl, ker.K, ri, t.R[k], c.P);
        cur = t.R[k];
    }
    t.complex().validate();
    return t;
}

FormulaSyzygy formula_syzygy_full(const TruncatedResolution& t, int sign) {
    const std::size_t m = t.m;
    const AlgebraPtr& alg = t.alg;
    const SumModule none(alg, {});
    std::vector<Cover> pq(m + 2);
    std::vector<Kernel> oq(m + 2);
    for (std::size_t k = 1; k <= m; ++k) {
        pq[k] = cover_of(t.Q[k]);
        oq[k] = kernel_of(t.Q[k], pq[k]);
    }
    pq[0] = pq[m + 1] = {none, Morphism::zero(none.sum, none.sum)};
    oq[0] = oq[m + 1] = {none, Morphism::zero(none.sum, none.sum)};
    auto Pk = [&](std::size_t k) -> const SumModule& { return k < m ? t.P[k] : none; };

    const bool shorter = oq[m].K.empty();
    const std::size_t m2 = shorter ? m - 1 : m;
    if (m2 == 0) throw std::domain_error("the syzygy is a projective complex (Q_1 projective and m = 1)");

    TruncatedResolution s;
    s.alg = alg;
    s.m = m2;
    s.M = t.Q[1].concat(m >= 2 ? t.R[1] : none);
    s.P.assign(m2 + 1, none);
    s.Q = s.R = s.P;
    s.rcover.resize(m2 + 1);
    s.rincl.resize(m2 + 1);
    s.qincl.resize(m2 + 1);
    for (std::size_t k = 0; k < m2; ++k) s.P[k] = pq[k + 1].P.concat(k + 1 < m ? t.P[k + 1] : none);
    {
        Assembler a(s.P[0], s.M);
        if (!pq[1].P.empty()) a.add(0, 0, pq[1].surj);
        if (m >= 2) a.add(pq[1].P.size(), t.Q[1].size(), t.rcover[1]);
        s.cover0 = a.done();
    }
    for (std::size_t k = 1; k < m2; ++k) {
        const bool has_r = k + 1 < m;
        s.R[k] = t.Q[k + 1].concat(has_r ? t.R[k + 1] : none);
        Assembler c(s.P[k], s.R[k]);
        if (!pq[k + 1].P.empty()) c.add(0, 0, pq[k + 1].surj);
        if (has_r) c.add(pq[k + 1].P.size(), t.Q[k + 1].size(), t.rcover[k + 1]);
        s.rcover[k] = c.done();
        Assembler i(s.R[k], s.P[k - 1]);
        const std::size_t pk = pq[k].P.size();
        if (!t.Q[k + 1].empty()) i.add(0, pk, t.qincl[k + 1]);
        if (has_r) i.add(t.Q[k + 1].size(), pk, t.rincl[k + 1]);
        s.rincl[k] = i.done();
    }
    for (std::size_t k = 1; k <= m2; ++k) {
        if (shorter && k == m2) {
            s.Q[k] = oq[k].K.concat(pq[m].P);
            Assembler a(s.Q[k], s.P[k - 1]);
            if (!oq[k].K.empty()) a.add(0, 0, oq[k].incl);
            a.add(oq[k].K.size(), pq[k].P.size(), t.qincl[m] * pq[m].surj);
            s.qincl[k] = a.done();
        } else {
            s.Q[k] = oq[k].K;
            Assembler a(s.Q[k], s.P[k - 1]);
            if (!oq[k].K.empty()) a.add(0, 0, oq[k].incl);
            s.qincl[k] = a.done();
        }
    }

    FormulaSyzygy out;
    const BoundedComplex X = t.complex();
    const BoundedComplex OX = s.complex();
    BoundedComplex PX;
    PX.algebra = alg;
    PX.lo = -1;

    // Groups of P_X,k: U_Q = P_{Q_k}, U_P = P_k, L_Q = P_{Q_{k+1}}, L_P = P_{k+1}.
    struct Deg {
        SumModule sum;
        std::size_t uq, up, lq, lp;
    };
    std::vector<Deg> px;
    for (int d = -1; d <= static_cast<int>(m); ++d) {
        const std::size_t k = static_cast<std::size_t>(d + 1) - 1;  // meaningful only for d >= 0
        Deg g;
        SumModule uq = d >= 1 ? pq[k].P : none;
        SumModule up = d >= 0 ? Pk(k) : none;
        SumModule lq = d + 1 >= 1 ? pq[static_cast<std::size_t>(d + 1)].P : none;
        SumModule lp = Pk(static_cast<std::size_t>(d + 1));
        g.uq = 0;
        g.up = uq.size();
        g.lq = g.up + up.size();
        g.lp = g.lq + lq.size();
        g.sum = uq.concat(up).concat(lq).concat(lp);
        px.push_back(std::move(g));
        PX.modules.push_back(px.back().sum.sum);
    }
    auto PXd = [&](int d) -> const Deg& { return px[static_cast<std::size_t>(d + 1)]; };
    for (int d = 0; d <= static_cast<int>(m); ++d) {
        const auto k = static_cast<std::size_t>(d);
        Assembler a(PXd(d).sum, PXd(d - 1).sum);
        if (k >= 1 && !pq[k].P.empty()) a.add(PXd(d).uq, PXd(d - 1).lq, Morphism::identity(pq[k].P.sum));
        if (k < m && !Pk(k).empty()) a.add(PXd(d).up, PXd(d - 1).lp, Morphism::identity(Pk(k).sum));
        PX.diffs.push_back(a.done());
    }

    const Scalar base_sign = sign >= 0 ? 1 : field::neg(1);
    for (int d = -1; d <= static_cast<int>(m); ++d) {
        const SumModule xs = t.X(d);
        const SumModule os = s.X(d);
        const Deg& p = PXd(d);
        // g_d : P_X,d -> X_d
        Assembler g(p.sum, xs);
        if (d == -1) g.add(p.lp, 0, t.cover0);
        else {
            const auto k = static_cast<std::size_t>(d);
            const std::size_t xq = Pk(k).size();
            if (k >= 1 && !pq[k].P.empty()) g.add(p.uq, xq, pq[k].surj);
            if (k < m && !Pk(k).empty()) g.add(p.up, 0, Morphism::identity(Pk(k).sum));
            if (k + 1 <= m && !pq[k + 1].P.empty()) g.add(p.lq, 0, t.qincl[k + 1] * pq[k + 1].surj);
            if (k + 1 < m) g.add(p.lp, 0, t.f(k + 1));
        }
        out.g.push_back(g.done());

        // h_d : Omega X_d -> P_X,d
        Assembler h(os, p.sum);
        if (d == -1) {
            const Scalar c = field::neg(base_sign);
            if (!t.Q[1].empty()) h.add(0, p.lp, t.qincl[1], c);
            if (m >= 2) h.add(t.Q[1].size(), p.lp, t.rincl[1], c);
        } else {
            const auto k = static_cast<std::size_t>(d);
            const Scalar c = (k % 2) ? field::neg(base_sign) : base_sign;
            const Scalar mc = field::neg(c);
            // Positions of Omega Q_k, P_{Q_{k+1}} and P_{k+1} inside Omega X_k.
            std::size_t o_oq, o_pq, o_p;
            bool has_pq = k + 1 <= m && !pq[k + 1].P.empty();
            bool has_p = k + 1 < m;
            if (shorter && k == m - 1) {
                o_oq = 0;
                o_pq = oq[k].K.size();
                o_p = 0;
            } else {
                o_pq = 0;
                o_p = pq[k + 1].P.size();
                o_oq = o_p + Pk(k + 1).size();
            }
            if (shorter && k == m) has_pq = has_p = false;
            if (k >= 1 && !oq[k].K.empty() && !(shorter && k == m)) h.add(o_oq, p.uq, oq[k].incl, mc);
            if (has_pq) {
                h.add(o_pq, p.up, t.qincl[k + 1] * pq[k + 1].surj, mc);
                h.add(o_pq, p.lq, Morphism::identity(pq[k + 1].P.sum), c);
            }
            if (has_p) {
                h.add(o_p, p.up, t.f(k + 1), mc);
                h.add(o_p, p.lp, Morphism::identity(Pk(k + 1).sum), c);
            }
        }
        out.h.push_back(h.done());
    }

    // Runtime verification of the construction.
    auto fail = [&](const std::string& what, int d) {
        throw std::logic_error("syzygy formula: " + what + " at degree " + std::to_string(d));
    };
    for (int d = -1; d <= static_cast<int>(m); ++d) {
        const auto i = static_cast<std::size_t>(d + 1);
        const Morphism& g = out.g[i];
        const Morphism& h = out.h[i];
        for (std::size_t v = 0; v < alg->vertex_count(); ++v)
            if (g.source().dim(v) != g.target().dim(v) + h.source().dim(v)) fail("dimensions do not add up", d);
        if (!g.commutes() || !h.commutes()) fail("component is not a module map", d);
        if (!g.is_surjective()) fail("g is not surjective", d);
        if (!h.is_injective()) fail("h is not injective", d);
        if (!(g * h).is_zero()) fail("g h != 0", d);
        if (d >= 0) {
            if (!((out.g[i - 1] * PX.d(d)) - (X.d(d) * g)).is_zero()) fail("g is not a chain map", d);
            if (!((out.h[i - 1] * OX.d(d)) - (PX.d(d) * h)).is_zero()) fail("h is not a chain map", d);
        }
    }
    PX.validate();
    out.projective = std::move(PX);
    out.result = std::move(s);
    return out;
}

TruncatedResolution formula_syzygy(const TruncatedResolution& t) { return formula_syzygy_full(t).result; }

std::vector<TruncatedResolution> components(const TruncatedResolution& t) {
    const std::size_t m = t.m;
    // Node numbering: M parts, then P_k, Q_k, R_k parts for k = 0 .. m.
    std::vector<std::size_t> base_m, base_p(m + 1), base_q(m + 1), base_r(m + 1);
    std::size_t n = t.M.size();
    for (std::size_t k = 0; k <= m; ++k) {
        base_p[k] = n;
        n += t.P[k].size();
        base_q[k] = n;
        n += t.Q[k].size();
        base_r[k] = n;
        n += t.R[k].size();
    }
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto join = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    auto link = [&](const Morphism& f, const SumModule& src, std::size_t sb, const SumModule& tgt, std::size_t tb) {
        for (std::size_t i = 0; i < src.size(); ++i)
            for (std::size_t j = 0; j < tgt.size(); ++j)
                if (!block_is_zero(f, src, i, tgt, j)) join(sb + i, tb + j);
    };
    link(t.cover0, t.P[0], base_p[0], t.M, 0);
    for (std::size_t k = 1; k <= m; ++k) {
        if (k < m) {
            link(t.rcover[k], t.P[k], base_p[k], t.R[k], base_r[k]);
            link(t.rincl[k], t.R[k], base_r[k], t.P[k - 1], base_p[k - 1]);
        }
        link(t.qincl[k], t.Q[k], base_q[k], t.P[k - 1], base_p[k - 1]);
    }
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < t.M.size(); ++i)
        if (std::find(roots.begin(), roots.end(), find(i)) == roots.end()) roots.push_back(find(i));
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(roots.begin(), roots.end(), find(i)) == roots.end())
            throw std::logic_error("resolution part not connected to the base module");
    if (roots.size() == 1) return {t};

    std::vector<TruncatedResolution> out;
    for (std::size_t root : roots) {
        auto pick = [&](const SumModule& s, std::size_t b) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (find(b + i) == root) idx.push_back(i);
            return idx;
        };
        TruncatedResolution c;
        c.alg = t.alg;
        auto mi = pick(t.M, 0);
        c.M = t.M.select(mi);
        std::vector<std::vector<std::size_t>> pi(m + 1), qi(m + 1), ri(m + 1);
        std::size_t len = 0;
        for (std::size_t k = 0; k <= m; ++k) {
            pi[k] = pick(t.P[k], base_p[k]);
            qi[k] = pick(t.Q[k], base_q[k]);
            ri[k] = pick(t.R[k], base_r[k]);
            if (!pi[k].empty()) len = k + 1;
        }
        if (len == 0) throw std::logic_error("component without projectives");
        c.m = len;
        c.P.assign(len + 1, SumModule(t.alg, {}));
        c.Q = c.R = c.P;
        c.rcover.resize(len + 1);
        c.rincl.resize(len + 1);
        c.qincl.resize(len + 1);
        for (std::size_t k = 0; k <= m; ++k) {
            if (k > len && !qi[k].empty()) throw std::logic_error("component has a kernel beyond its length");
            if (k >= len && !ri[k].empty()) throw std::logic_error("component has a cover target beyond its length");
        }
        for (std::size_t k = 0; k < len; ++k) c.P[k] = t.P[k].select(pi[k]);
        for (std::size_t k = 1; k <= len; ++k) c.Q[k] = t.Q[k].select(qi[k]);
        for (std::size_t k = 1; k < len; ++k) c.R[k] = t.R[k].select(ri[k]);
        c.cover0 = restrict(t.cover0, t.P[0], pi[0], c.P[0], t.M, mi, c.M);
        for (std::size_t k = 1; k < len; ++k) {
            c.rcover[k] = restrict(t.rcover[k], t.P[k], pi[k], c.P[k], t.R[k], ri[k], c.R[k]);
            c.rincl[k] = restrict(t.rincl[k], t.R[k], ri[k], c.R[k], t.P[k - 1], pi[k - 1], c.P[k - 1]);
        }
        for (std::size_t k = 1; k <= len; ++k)
            c.qincl[k] = restrict(t.qincl[k], t.Q[k], qi[k], c.Q[k], t.P[k - 1], pi[k - 1], c.P[k - 1]);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<TruncatedResolution> iterate_syzygy(const TruncatedResolution& t, std::size_t steps) {
    std::vector<TruncatedResolution> cur = components(t);
    for (std::size_t i = 0; i < steps; ++i) {
        std::vector<TruncatedResolution> next;
        for (auto& c : cur)
            for (auto& piece : components(formula_syzygy(c))) next.push_back(std::move(piece));
        cur = std::move(next);
    }
    return cur;
}

CriterionReport indecomposability_criterion(const TruncatedResolution& t) {
    CriterionReport r;
    const BoundedComplex x = t.complex();
    Rng rng(kDefaultSeed);
    r.base_indecomposable = !x.at(-1).is_zero() && decompose(x.at(-1), rng).count() == 1;
    for (int j = -1; j <= x.hi(); ++j) r.kernels.push_back(kernel(x.d(j)).module);
    for (int i = 0; i <= x.hi(); ++i)
        for (int j = -1; j <= x.hi(); ++j) {
            if (degree_class(i) != degree_class(j)) continue;
            if (hom_dim(x.at(i), r.kernels[static_cast<std::size_t>(j + 1)]) != 0) r.violations.emplace_back(i, j);
        }
    r.holds = r.base_indecomposable && r.violations.empty();
    return r;
}

bool check_indecomposability_criterion(const TruncatedResolution& t) { return indecomposability_criterion(t).holds; }

std::string render(const TruncatedResolution& t) {
    std::ostringstream os;
    for (int d = -1; d <= static_cast<int>(t.m); ++d) {
        os << (d < 0 ? "" : " ") << d << ": ";
        const auto k = static_cast<std::size_t>(d < 0 ? 0 : d);
        if (d == -1) os << names(t.M);
        else {
            std::string p = k < t.m ? names(t.P[k]) : "";
            std::string q = k >= 1 ? names(t.Q[k]) : "";
            os << p;
            if (!q.empty()) os << (p.empty() ? "" : "  |  ") << "Q: " << q;
        }
        os << "\n";
    }
    return os.str();
}

json plan_to_json(const SplitPlan& plan, const ClassRegistry* reg) {
    json out = json::array();
    for (auto& [step, peel] : plan.steps) {
        json ps = json::array();
        for (auto& spec : peel) {
            json cls;
            const std::string name = part_name(spec.module);
            if (name[0] != 'M') cls = name;
            else if (reg) {
                if (auto id = reg->find(spec.module)) cls = *id;
                else cls = module_to_json(spec.module);
            } else cls = module_to_json(spec.module);
            ps.push_back({{"class", cls}, {"mult", spec.mult}});
        }
        out.push_back({{"step", step}, {"peel", ps}});
    }
    return out;
}

SplitPlan plan_from_json(const json& j, const AlgebraPtr& alg, const ClassRegistry* reg) {
    SplitPlan plan;
    try {
        for (auto& step : j) {
            auto& peel = plan.steps[step.at("step").get<std::size_t>()];
            for (auto& p : step.at("peel")) {
                const json& cls = p.at("class");
                PeelSpec spec;
                spec.mult = p.value("mult", std::size_t{1});
                if (cls.is_number_integer()) {
                    if (!reg) throw ParseError("plan refers to class ids but no registry is loaded");
                    spec.module = reg->representative(cls.get<std::size_t>());
                } else if (cls.is_string()) spec.module = parse_module_literal(alg, cls.get<std::string>());
                else spec.module = module_from_json(cls, alg);
                peel.push_back(std::move(spec));
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed split plan: ") + e.what());
    }
    return plan;
}

json resolution_to_json(const TruncatedResolution& t, const SplitPlan* plan) {
    json j = {{"length", t.m}, {"complex", complex_to_json(t.complex())}};
    json shape = json::array();
    for (int d = -1; d <= static_cast<int>(t.m); ++d) {
        const auto k = static_cast<std::size_t>(d < 0 ? 0 : d);
        json deg = {{"degree", d}};
        if (d == -1) deg["base"] = names(t.M);
        else {
            if (k < t.m) deg["projective"] = names(t.P[k]);
            if (k >= 1) deg["peeled"] = names(t.Q[k]);
        }
        shape.push_back(deg);
    }
    j["shape"] = shape;
    if (plan) j["plan"] = plan_to_json(*plan);
    return j;
}

BoundedComplex sum_complex(const std::vector<TruncatedResolution>& ts) {
    if (ts.empty()) throw std::invalid_argument("sum_complex of nothing");
    std::size_t top = 0;
    for (auto& t : ts) top = std::max(top, t.m);
    std::vector<BoundedComplex> xs;
    for (auto& t : ts) xs.push_back(t.complex());
    BoundedComplex out;
    out.algebra = ts.front().alg;
    out.lo = -1;
    std::vector<SumModule> degs;
    for (int d = -1; d <= static_cast<int>(top); ++d) {
        std::vector<Module> parts;
        for (auto& x : xs) parts.push_back(x.at(d));
        degs.emplace_back(out.algebra, std::move(parts));
        out.modules.push_back(degs.back().sum);
    }
    for (int d = 0; d <= static_cast<int>(top); ++d) {
        const auto i = static_cast<std::size_t>(d + 1);
        Assembler a(degs[i], degs[i - 1]);
        for (std::size_t c = 0; c < xs.size(); ++c) a.add(c, c, xs[c].d(d));
        out.diffs.push_back(a.done());
    }
    return out;
}

}  // namespace philab
