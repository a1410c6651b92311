#include "philab/decompose.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace philab {

namespace {

constexpr int kLinearConfirmations = 3;
constexpr int kMaxSingleFactorTrials = 30;
constexpr int kMaxTrials = 400;
constexpr int kIsoTrials = 20;

struct Piece {
    std::vector<Matrix> basis;  // columns in M_v
    std::vector<Matrix> proj;   // proj_v * basis_v = 1
    std::size_t total() const {
        std::size_t t = 0;
        for (auto& b : basis) t += b.cols();
        return t;
    }
};

bool acts_trivially(const Module& m) {
    for (auto& a : m.actions())
        if (!a.is_zero()) return false;
    return true;
}

/// Splits `piece` along the Fitting decomposition of phi, or returns an
/// empty vector when phi has a single irreducible factor. Sets `linear`
/// to whether that single factor has degree one.
std::vector<Piece> fitting_split(const Piece& piece, const std::vector<Matrix>& phi, Rng& rng, bool& linear) {
    const std::size_t nv = phi.size();
    std::vector<std::vector<poly::Factor>> per_vertex(nv);
    std::vector<Poly> factors;
    for (std::size_t v = 0; v < nv; ++v) {
        if (phi[v].rows() == 0) continue;
        per_vertex[v] = poly::factor(poly::charpoly(phi[v]), rng);
        for (auto& f : per_vertex[v])
            if (std::find(factors.begin(), factors.end(), f.f) == factors.end()) factors.push_back(f.f);
    }
    if (factors.size() <= 1) {
        linear = factors.empty() || poly::degree(factors.front()) == 1;
        return {};
    }
    std::sort(factors.begin(), factors.end());
    std::vector<std::vector<Matrix>> spaces(factors.size(), std::vector<Matrix>(nv));
    for (std::size_t v = 0; v < nv; ++v) {
        const std::size_t k = phi[v].rows();
        std::size_t got = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            unsigned e = 0;
            for (auto& f : per_vertex[v])
                if (f.f == factors[i]) e = f.multiplicity;
            if (e == 0) {
                spaces[i][v] = Matrix(k, 0);
                continue;
            }
            spaces[i][v] = kernel_basis(poly::evaluate(poly::pow(factors[i], e), phi[v]));
            got += spaces[i][v].cols();
        }
        if (got != k) throw DecompositionFailure("generalized eigenspaces do not fill the vertex space");
    }
    std::vector<Piece> out(factors.size());
    for (std::size_t v = 0; v < nv; ++v) {
        const std::size_t k = phi[v].rows();
        std::vector<Matrix> cols;
        for (auto& s : spaces) cols.push_back(s[v]);
        Matrix all = Matrix::hstack(cols, k);
        auto inv = inverse(all);
        if (!inv) throw DecompositionFailure("generalized eigenspaces are not independent");
        std::size_t r = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const std::size_t c = spaces[i][v].cols();
            out[i].basis.push_back(piece.basis[v] * spaces[i][v]);
            out[i].proj.push_back(inv->block(r, 0, c, k) * piece.proj[v]);
            r += c;
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Piece& p) { return p.total() == 0; }), out.end());
    return out;
}

std::vector<Piece> split_pieces(const Module& m, Rng& rng) {
    const std::size_t nv = m.dims().size();
    std::vector<Piece> done;
    if (m.is_zero()) return done;
    if (acts_trivially(m)) {
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t j = 0; j < m.dim(v); ++j) {
                Piece p;
                for (std::size_t w = 0; w < nv; ++w) {
                    p.basis.emplace_back(m.dim(w), w == v ? 1 : 0);
                    p.proj.emplace_back(w == v ? 1 : 0, m.dim(w));
                }
                p.basis[v](j, 0) = 1;
                p.proj[v](0, j) = 1;
                done.push_back(std::move(p));
            }
        return done;
    }
    Piece whole;
    for (std::size_t v = 0; v < nv; ++v) {
        whole.basis.push_back(Matrix::identity(m.dim(v)));
        whole.proj.push_back(Matrix::identity(m.dim(v)));
    }
    std::vector<Piece> work{whole};
    std::optional<HomSpace> end;
    while (!work.empty()) {
        Piece piece = std::move(work.back());
        work.pop_back();
        if (piece.total() == 1) {
            done.push_back(std::move(piece));
            continue;
        }
        if (!end) end.emplace(m, m);
        int linear_hits = 0, single = 0, trials = 0;
        for (;;) {
            if (++trials > kMaxTrials) throw DecompositionFailure("no splitting decision within the trial bound");
            auto psi = end->random_components(rng);
            std::vector<Matrix> phi;
            for (std::size_t v = 0; v < nv; ++v) phi.push_back(piece.proj[v] * psi[v] * piece.basis[v]);
            bool linear = false;
            auto parts = fitting_split(piece, phi, rng, linear);
            if (!parts.empty()) {
                for (auto& p : parts) work.push_back(std::move(p));
                break;
            }
            ++single;
            if (linear) ++linear_hits;
            if (linear_hits >= kLinearConfirmations || single >= kMaxSingleFactorTrials) {
                done.push_back(std::move(piece));
                break;
            }
        }
    }
    return done;
}

using SortKey = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;

SortKey sort_key(const Module& m) { return {m.total_dim(), m.dims(), rank_profile(m)}; }

}  // namespace

std::size_t Decomposition::count() const {
    std::size_t c = 0;
    for (auto& s : summands) c += s.multiplicity;
    return c;
}

std::vector<Submodule> split_indecomposables(const Module& m, Rng& rng) {
    std::vector<Submodule> out;
    for (auto& p : split_pieces(m, rng)) out.push_back(submodule(m, p.basis));
    return out;
}

Decomposition decompose(const Module& m, Rng& rng) {
    auto pieces = split_indecomposables(m, rng);
    std::vector<std::pair<SortKey, Submodule>> keyed;
    for (auto& p : pieces) keyed.emplace_back(sort_key(p.module), std::move(p));
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    Decomposition d;
    d.original = m;
    std::vector<SortKey> keys;
    for (auto& [key, sub] : keyed) {
        bool placed = false;
        for (std::size_t i = 0; i < d.summands.size() && !placed; ++i) {
            if (keys[i] != key) continue;
            auto r = isomorphism(d.summands[i].module, sub.module, rng);
            if (r.isomorphic) {
                d.summands[i].inclusions.push_back(sub.inclusion * *r.witness);
                ++d.summands[i].multiplicity;
                placed = true;
            }
        }
        if (!placed) {
            d.summands.push_back({sub.module, 1, {sub.inclusion}});
            keys.push_back(key);
        }
    }
    const std::size_t nv = m.dims().size();
    std::vector<Module> copies;
    std::vector<std::vector<Matrix>> cols(nv);
    for (auto& s : d.summands)
        for (auto& inc : s.inclusions) {
            copies.push_back(s.module);
            for (std::size_t v = 0; v < nv; ++v) cols[v].push_back(inc.component(v));
        }
    Module sum = copies.empty() ? Module::zero(m.algebra()) : direct_sum(copies);
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < nv; ++v)
        comps.push_back(cols[v].empty() ? Matrix(m.dim(v), 0) : Matrix::hstack(cols[v], m.dim(v)));
    d.iso = Morphism(sum, m, std::move(comps), false);
    if (!d.iso.is_iso()) throw DecompositionFailure("assembled decomposition map is not an isomorphism");
    return d;
}

Decomposition decompose(const Module& m, std::uint64_t seed) {
    Rng rng(seed);
    return decompose(m, rng);
}

IsoInvariants iso_invariants(const Module& m) {
    return {m.dims(), rank_profile(m), simple_summand_multiplicities(m)};
}

IsoResult isomorphism(const Module& m, const Module& n, Rng& rng) {
    if (m.algebra() != n.algebra()) throw std::invalid_argument("isomorphism test across different algebras");
    IsoResult r;
    if (m.dims() != n.dims()) {
        r.certified = true;
        r.reason = "dimension vectors differ";
        return r;
    }
    if (rank_profile(m) != rank_profile(n)) {
        r.certified = true;
        r.reason = "arrow rank profiles differ";
        return r;
    }
    if (simple_summand_multiplicities(m) != simple_summand_multiplicities(n)) {
        r.certified = true;
        r.reason = "simple direct summand multiplicities differ";
        return r;
    }
    if (m.is_zero()) {
        r.isomorphic = r.certified = true;
        r.witness = Morphism::zero(m, n);
        r.reason = "both zero";
        return r;
    }
    HomSpace h(m, n);
    for (int t = 0; t < kIsoTrials && h.dim() > 0; ++t) {
        auto comps = h.random_components(rng);
        bool ok = true;
        for (auto& c : comps)
            if (!is_invertible(c)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        Morphism w(m, n, std::move(comps), false);
        if (!w.commutes()) throw std::logic_error("Hom solution does not commute with the arrows");
        r.isomorphic = r.certified = true;
        r.witness = std::move(w);
        r.reason = "invertible homomorphism found";
        return r;
    }
    const std::size_t hmn = h.dim();
    if (hom_dim(m, m) != hmn || hom_dim(n, n) != hmn) {
        r.certified = true;
        r.reason = "dim Hom(M,N) differs from dim End(M) or dim End(N)";
        return r;
    }
    r.reason = "no invertible element among random samples of Hom(M,N)";
    return r;
}

bool is_isomorphic(const Module& m, const Module& n, std::uint64_t seed) {
    Rng rng(seed);
    return isomorphism(m, n, rng).isomorphic;
}

}  // namespace philab
