#include "philab/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace philab {

Quiver::Quiver(std::size_t vertex_count, std::vector<Arrow> arrows)
    : n_(vertex_count), arrows_(std::move(arrows)), out_(vertex_count), in_(vertex_count) {
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
        const Arrow& ar = arrows_[a];
        if (ar.source >= n_ || ar.target >= n_)
            throw std::invalid_argument("arrow " + ar.label + " has an endpoint out of range");
        if (ar.label.empty()) throw std::invalid_argument("arrow with empty label");
        if (!by_label_.emplace(ar.label, a).second) throw std::invalid_argument("duplicate arrow label " + ar.label);
        out_[ar.source].push_back(a);
        in_[ar.target].push_back(a);
    }
}

std::optional<std::size_t> Quiver::arrow_index(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

Path make_path(const Quiver& q, std::size_t source, const std::vector<std::size_t>& arrows) {
    Path p{source, source, arrows};
    for (auto a : arrows) {
        if (q.arrow(a).source != p.target) throw std::invalid_argument("arrows do not compose");
        p.target = q.arrow(a).target;
    }
    return p;
}

std::string path_name(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return "e" + std::to_string(p.source + 1);
    std::string s;
    for (std::size_t i = p.arrows.size(); i-- > 0;) {
        s += q.arrow(p.arrows[i]).label;
        if (i) s += '*';
    }
    return s;
}

namespace {

using Sparse = std::vector<std::pair<std::size_t, Scalar>>;

std::vector<std::string> labels_of(const Quiver& q, const Path& p) {
    std::vector<std::string> out;
    for (auto a : p.arrows) out.push_back(q.arrow(a).label);
    return out;
}

bool path_less(const Quiver& q, const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.source != b.source) return a.source < b.source;
    return labels_of(q, a) < labels_of(q, b);
}

}  // namespace

Algebra::Algebra(std::string id, Quiver q, std::vector<Relation> relations)
    : id_(std::move(id)), quiver_(std::move(q)), relations_(std::move(relations)) {
    for (auto& r : relations_) {
        if (r.terms.empty()) throw std::invalid_argument("empty relation");
        const Path& p0 = r.terms.front().second;
        for (auto& [c, p] : r.terms) {
            if (p.source != p0.source || p.target != p0.target || p.length() != p0.length())
                throw std::invalid_argument("relation terms must be parallel paths of equal length");
            if (p.length() == 0) throw std::invalid_argument("relation of length zero");
            if (c == 0) throw std::invalid_argument("relation with a zero coefficient");
        }
    }
    compute_basis();
}

bool Algebra::is_monomial() const {
    return std::all_of(relations_.begin(), relations_.end(), [](const Relation& r) { return r.terms.size() == 1; });
}

void Algebra::compute_basis() {
    const Quiver& q = quiver_;
    const std::size_t nv = q.vertex_count();
    std::size_t max_rel = 0;
    for (auto& r : relations_) max_rel = std::max(max_rel, r.terms.front().second.length());
    const std::size_t bound = nv * (1 + max_rel);

    proj_.assign(nv, {});
    basis_.clear();
    for (std::size_t v = 0; v < nv; ++v) {
        // levels[n]: standard monomials of length n from v.
        std::vector<std::vector<Path>> levels{{Path::trivial(v)}};
        // cand[n][(b, arrow)] = normal form over levels[n] of levels[n-1][b] then arrow.
        std::vector<std::map<std::pair<std::size_t, std::size_t>, Sparse>> cand(1);

        auto nf = [&](const Path& p) {
            Sparse cur{{0, 1}};
            for (std::size_t i = 0; i < p.length(); ++i) {
                std::map<std::size_t, Scalar> next;
                for (auto [b, c] : cur)
                    for (auto [b2, c2] : cand[i + 1].at({b, p.arrows[i]}))
                        next[b2] = field::add(next[b2], field::mul(c, c2));
                cur.clear();
                for (auto [b, c] : next)
                    if (c) cur.emplace_back(b, c);
            }
            return cur;
        };

        for (std::size_t n = 1;; ++n) {
            const auto& prev = levels[n - 1];
            if (prev.empty()) break;
            if (n > bound)
                throw NonAdmissible("algebra " + id_ + " has surviving paths beyond length " + std::to_string(bound));
            struct Cand {
                std::size_t b, arrow;
                Path path;
            };
            std::vector<Cand> cs;
            for (std::size_t b = 0; b < prev.size(); ++b)
                for (auto a : q.out_arrows(prev[b].target)) {
                    Path p = prev[b];
                    p.arrows.push_back(a);
                    p.target = q.arrow(a).target;
                    cs.push_back({b, a, std::move(p)});
                }
            std::stable_sort(cs.begin(), cs.end(), [&](const Cand& x, const Cand& y) {
                return labels_of(q, x.path) < labels_of(q, y.path);
            });
            std::map<std::pair<std::size_t, std::size_t>, std::size_t> col_of;
            for (std::size_t i = 0; i < cs.size(); ++i) col_of[{cs[i].b, cs[i].arrow}] = i;
            const std::size_t nc = cs.size();

            // Rows: relation r placed after each standard monomial of length n - len(r).
            std::vector<std::vector<Scalar>> rows;
            for (auto& r : relations_) {
                const std::size_t len = r.terms.front().second.length();
                if (len > n) continue;
                const std::size_t s = r.terms.front().second.source;
                for (auto& b : levels[n - len]) {
                    if (b.target != s) continue;
                    std::vector<Scalar> row(nc, 0);
                    for (auto& [coef, p] : r.terms) {
                        Path full = b;
                        full.arrows.insert(full.arrows.end(), p.arrows.begin(), p.arrows.end());
                        Path prefix = full;
                        prefix.arrows.pop_back();
                        for (auto [pb, pc] : nf(prefix)) {
                            auto col = col_of.at({pb, full.arrows.back()});
                            row[col] = field::add(row[col], field::mul(coef, pc));
                        }
                    }
                    rows.push_back(std::move(row));
                }
            }
            // Reversed column order so that pivots (non-standard paths) fall
            // on the latest candidates.
            Matrix m(rows.size(), nc);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < nc; ++j) m(i, nc - 1 - j) = rows[i][j];
            Echelon e = rref(std::move(m));
            std::vector<long> pivot_row(nc, -1);
            for (std::size_t r = 0; r < e.rank(); ++r) pivot_row[nc - 1 - e.pivots[r]] = static_cast<long>(r);
            std::vector<std::size_t> std_index(nc, SIZE_MAX);
            std::vector<Path> level;
            for (std::size_t j = 0; j < nc; ++j)
                if (pivot_row[j] < 0) {
                    std_index[j] = level.size();
                    level.push_back(cs[j].path);
                }
            std::map<std::pair<std::size_t, std::size_t>, Sparse> table;
            for (std::size_t j = 0; j < nc; ++j) {
                Sparse s;
                if (pivot_row[j] < 0) {
                    s.emplace_back(std_index[j], 1);
                } else {
                    for (std::size_t k = 0; k < nc; ++k) {
                        if (pivot_row[k] >= 0) continue;
                        Scalar c = e.reduced(static_cast<std::size_t>(pivot_row[j]), nc - 1 - k);
                        if (c) s.emplace_back(std_index[k], field::neg(c));
                    }
                }
                table[{cs[j].b, cs[j].arrow}] = std::move(s);
            }
            cand.push_back(std::move(table));
            levels.push_back(std::move(level));
        }

        // P_v in module layout.
        Projective& P = proj_[v];
        P.paths.assign(nv, {});
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> where(levels.size());
        for (std::size_t n = 0; n < levels.size(); ++n)
            for (auto& p : levels[n]) {
                where[n].emplace_back(p.target, P.paths[p.target].size());
                P.paths[p.target].push_back(p);
                basis_.push_back(p);
            }
        P.action.clear();
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const Arrow& ar = q.arrow(a);
            P.action.emplace_back(P.paths[ar.target].size(), P.paths[ar.source].size());
        }
        for (std::size_t n = 0; n + 1 < levels.size(); ++n)
            for (std::size_t b = 0; b < levels[n].size(); ++b)
                for (auto a : q.out_arrows(levels[n][b].target))
                    for (auto [b2, c] : cand[n + 1].at({b, a}))
                        P.action[a](where[n + 1][b2].second, where[n][b].second) = c;
    }
    std::stable_sort(basis_.begin(), basis_.end(), [&](const Path& a, const Path& b) { return path_less(q, a, b); });
}

const std::vector<Path>& path_basis(const Algebra& alg) { return alg.basis(); }

AlgebraPtr rad2_algebra(std::string id, const Quiver& q) {
    if (q.vertex_count() == 0) throw std::invalid_argument("rad2_algebra on an empty quiver");
    std::vector<Relation> rels;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        for (auto b : q.out_arrows(q.arrow(a).target)) rels.push_back({{{1, make_path(q, q.arrow(a).source, {a, b})}}});
    return std::make_shared<Algebra>(std::move(id), q, std::move(rels));
}

AlgebraPtr tensor_cycle3(const AlgebraPtr& base) {
    const Quiver& q = base->quiver();
    const std::size_t nv = q.vertex_count(), na = q.arrow_count();
    auto info = std::make_shared<TensorInfo>();
    info->base = base;
    std::vector<Arrow> arrows;
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t a = 0; a < na; ++a) {
            const Arrow& ar = q.arrow(a);
            arrows.push_back({ar.label + "@" + std::to_string(c + 1), info->vertex(ar.source, c), info->vertex(ar.target, c)});
        }
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t v = 0; v < nv; ++v)
            arrows.push_back({"y" + std::to_string(c + 1) + "@" + std::to_string(v + 1), info->vertex(v, c),
                              info->vertex(v, (c + 2) % 3)});
    Quiver tq(3 * nv, std::move(arrows));

    auto copy = [&](const Path& p, std::size_t c) {
        std::vector<std::size_t> as;
        for (auto a : p.arrows) as.push_back(info->copy_arrow(a, c));
        return make_path(tq, info->vertex(p.source, c), as);
    };
    std::vector<Relation> rels;
    for (std::size_t c = 0; c < 3; ++c)
        for (auto& r : base->relations()) {
            Relation t;
            for (auto& [coef, p] : r.terms) t.terms.emplace_back(coef, copy(p, c));
            rels.push_back(std::move(t));
        }
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t v = 0; v < nv; ++v)
            rels.push_back({{{1, make_path(tq, info->vertex(v, c), {info->d_arrow(v, c), info->d_arrow(v, (c + 2) % 3)})}}});
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t a = 0; a < na; ++a) {
            const Arrow& ar = q.arrow(a);
            const std::size_t cm = (c + 2) % 3;
            Relation t;
            t.terms.emplace_back(1, make_path(tq, info->vertex(ar.source, c),
                                              {info->d_arrow(ar.source, c), info->copy_arrow(a, cm)}));
            t.terms.emplace_back(field::neg(1), make_path(tq, info->vertex(ar.source, c),
                                                          {info->copy_arrow(a, c), info->d_arrow(ar.target, c)}));
            rels.push_back(std::move(t));
        }
    auto alg = std::make_shared<Algebra>(base->id() + "_tensor_A3CT", std::move(tq), std::move(rels));
    alg->tensor_ = info;
    return alg;
}

AlgebraPtr parse_presentation(std::string_view text, std::string default_id) {
    std::istringstream in{std::string(text)};
    std::string line, id = std::move(default_id);
    std::size_t n = 0;
    bool have_n = false, rad2 = false;
    std::vector<Arrow> arrows;
    std::vector<std::vector<std::string>> rel_labels;
    int lineno = 0;
    auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "vertices") {
            long long v;
            if (!(ls >> v) || v <= 0) fail("expected a positive vertex count");
            n = static_cast<std::size_t>(v);
            have_n = true;
        } else if (kw == "name") {
            if (!(ls >> id)) fail("expected a name");
        } else if (kw == "arrow") {
            std::string label;
            long long s, t;
            if (!(ls >> label >> s >> t)) fail("expected: arrow <label> <src> <dst>");
            if (!have_n || s < 1 || t < 1 || static_cast<std::size_t>(s) > n || static_cast<std::size_t>(t) > n)
                fail("arrow endpoint out of range");
            arrows.push_back({label, static_cast<std::size_t>(s - 1), static_cast<std::size_t>(t - 1)});
        } else if (kw == "relation") {
            std::vector<std::string> labels;
            for (std::string l; ls >> l;) labels.push_back(l);
            if (labels.empty()) fail("empty relation");
            rel_labels.push_back(std::move(labels));
        } else if (kw == "rad2") {
            rad2 = true;
        } else {
            fail("unknown keyword '" + kw + "'");
        }
        std::string extra;
        if (kw != "relation" && ls >> extra) fail("trailing text '" + extra + "'");
    }
    if (!have_n) throw ParseError("missing 'vertices' line");
    Quiver q;
    try {
        q = Quiver(n, arrows);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    if (rad2 && rel_labels.empty()) return rad2_algebra(id, q);
    std::vector<Relation> rels;
    if (rad2) rels = rad2_algebra(id, q)->relations();
    for (auto& labels : rel_labels) {
        std::vector<std::size_t> as;
        for (std::size_t i = labels.size(); i-- > 0;) {
            auto a = q.arrow_index(labels[i]);
            if (!a) throw ParseError("relation uses unknown arrow " + labels[i]);
            as.push_back(*a);
        }
        try {
            rels.push_back({{{1, make_path(q, q.arrow(as.front()).source, as)}}});
        } catch (const std::invalid_argument&) {
            throw ParseError("relation arrows do not compose");
        }
    }
    return std::make_shared<Algebra>(id, std::move(q), std::move(rels));
}

AlgebraPtr load_presentation(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string stem = path;
    if (auto s = stem.find_last_of('/'); s != std::string::npos) stem = stem.substr(s + 1);
    if (auto d = stem.find('.'); d != std::string::npos) stem = stem.substr(0, d);
    return parse_presentation(ss.str(), stem);
}

AlgebraPtr tensor_of(const AlgebraPtr& base) {
    static std::mutex mu;
    static std::map<const Algebra*, std::pair<AlgebraPtr, AlgebraPtr>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(base.get());
    if (it != cache.end()) return it->second.second;
    auto t = tensor_cycle3(base);
    cache.emplace(base.get(), std::make_pair(base, t));
    return t;
}

}  // namespace philab
