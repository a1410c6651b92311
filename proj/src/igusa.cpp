#include "philab/igusa.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <mutex>
#include <set>
#include <sstream>

#include "philab/serialize.hpp"

namespace philab {

void k0_add(K0Vector& acc, const K0Vector& v, long long scale) {
    if (scale == 0) return;
    for (auto& [id, c] : v) {
        long long& slot = acc[id];
        slot += scale * c;
        if (slot == 0) acc.erase(id);
    }
}

std::string k0_string(const K0Vector& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [id, c] : v) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c << "*";
        os << "[" << id << "]";
    }
    return os.str();
}

bool SummandVector::is_zero() const {
    if (!classes.empty()) return false;
    return std::all_of(projectives.begin(), projectives.end(), [](long long c) { return c == 0; });
}

ClassRegistry::ClassRegistry(AlgebraPtr alg, std::uint64_t seed) : alg_(std::move(alg)), seed_(seed) {}

void ClassRegistry::attach_file(const std::string& path) {
    std::unique_lock lock(mu_);
    std::ifstream in(path);
    if (in) {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::exception& e) {
                throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
            }
            if (j.value("prime", std::uint64_t{0}) != field::modulus())
                throw ParseError(path + ": registry was written for a different prime");
            const std::size_t id = j.at("id").get<std::size_t>();
            if (id != entries_.size()) throw ParseError(path + ": registry ids are not consecutive");
            Module m = module_from_json(j.at("module"), alg_);
            auto e = std::make_unique<Entry>();
            e->rep = m;
            e->inv = iso_invariants(m);
            e->name = j.value("name", std::string());
            by_dims_.emplace(m.dims(), id);
            entries_.push_back(std::move(e));
        }
    }
    path_ = path;
}

void ClassRegistry::append_line(std::size_t id, const Module& m) {
    if (path_.empty()) return;
    json j = {{"id", id}, {"prime", field::modulus()}, {"module", module_to_json(m)}};
    const std::string line = j.dump() + "\n";
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out) throw std::runtime_error("cannot append to registry " + path_);
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.flush();
}

std::optional<std::size_t> ClassRegistry::find_locked(const Module& m, const IsoInvariants& inv,
                                                      bool& certified) const {
    certified = true;
    auto [lo, hi] = by_dims_.equal_range(m.dims());
    std::vector<std::size_t> ids;
    for (auto it = lo; it != hi; ++it) ids.push_back(it->second);
    std::sort(ids.begin(), ids.end());
    for (std::size_t id : ids) {
        const Entry& e = *entries_[id];
        if (!(e.inv == inv)) continue;
        Rng rng(seed_ ^ (0x9e3779b97f4a7c15ULL * (id + 1)));
        auto r = isomorphism(e.rep, m, rng);
        if (r.isomorphic) return id;
        if (!r.certified) certified = false;
    }
    return std::nullopt;
}

std::optional<std::size_t> ClassRegistry::find(const Module& m) const {
    std::shared_lock lock(mu_);
    bool certified = true;
    return find_locked(m, iso_invariants(m), certified);
}

std::size_t ClassRegistry::find_or_insert(const Module& m) {
    if (m.algebra() != alg_) throw std::invalid_argument("module is over a different algebra than the registry");
    const IsoInvariants inv = iso_invariants(m);
    bool certified = true;
    {
        std::shared_lock lock(mu_);
        if (auto id = find_locked(m, inv, certified)) return *id;
    }
    std::unique_lock lock(mu_);
    if (auto id = find_locked(m, inv, certified)) return *id;
    if (!certified) certified_ = false;
    const std::size_t id = entries_.size();
    auto e = std::make_unique<Entry>();
    e->rep = m;
    e->inv = inv;
    entries_.push_back(std::move(e));
    by_dims_.emplace(m.dims(), id);
    append_line(id, m);
    return id;
}

Module ClassRegistry::representative(std::size_t id) const {
    std::shared_lock lock(mu_);
    return entries_.at(id)->rep;
}

std::size_t ClassRegistry::size() const {
    std::shared_lock lock(mu_);
    return entries_.size();
}

bool ClassRegistry::all_distinctions_certified() const {
    std::shared_lock lock(mu_);
    return certified_;
}

void ClassRegistry::set_name(std::size_t id, std::string name) {
    std::unique_lock lock(mu_);
    entries_.at(id)->name = std::move(name);
}

std::string ClassRegistry::name(std::size_t id) const {
    std::shared_lock lock(mu_);
    const auto& e = entries_.at(id);
    return e->name.empty() ? "[" + std::to_string(id) + "]" : e->name;
}

const SummandVector& ClassRegistry::syzygy_of(std::size_t id) {
    Module rep;
    {
        std::shared_lock lock(mu_);
        const Entry& e = *entries_.at(id);
        if (e.syzygy) return *e.syzygy;
        rep = e.rep;
    }
    SummandVector s = summand_vector(syzygy(rep), *this);
    std::unique_lock lock(mu_);
    Entry& e = *entries_[id];
    if (!e.syzygy) e.syzygy = std::move(s);
    return *e.syzygy;
}

namespace {

/// Vertex of an indecomposable projective, or nullopt.
std::optional<std::size_t> projective_vertex(const Module& m) {
    auto top = top_dims(m);
    std::size_t count = 0, v = 0;
    for (std::size_t w = 0; w < top.size(); ++w)
        if (top[w]) {
            count += top[w];
            v = w;
        }
    if (count != 1) return std::nullopt;
    std::size_t pdim = 0;
    for (auto& paths : m.algebra()->projective_basis(v)) pdim += paths.size();
    if (pdim != m.total_dim()) return std::nullopt;
    return v;
}

std::set<std::size_t> support(const K0Vector& v) {
    std::set<std::size_t> s;
    for (auto& [id, c] : v) s.insert(id);
    return s;
}

}  // namespace

SummandVector summand_vector(const Module& m, ClassRegistry& reg) {
    SummandVector out;
    out.projectives.assign(m.algebra()->vertex_count(), 0);
    if (m.is_zero()) return out;
    Rng rng(reg.seed());
    Decomposition d = decompose(m, rng);
    for (auto& s : d.summands) {
        const auto mult = static_cast<long long>(s.multiplicity);
        if (auto v = projective_vertex(s.module)) {
            out.projectives[*v] += mult;
            continue;
        }
        k0_add(out.classes, {{reg.find_or_insert(s.module), mult}});
    }
    return out;
}

K0Vector k0_class(const Module& m, ClassRegistry& reg) { return summand_vector(m, reg).classes; }

K0Vector L_apply(const K0Vector& v, ClassRegistry& reg) {
    K0Vector out;
    for (auto& [id, c] : v) k0_add(out, reg.syzygy_of(id).classes, c);
    return out;
}

K0Vector L_apply(const Module& m, ClassRegistry& reg) { return k0_class(syzygy(m), reg); }

SummandVector syzygy_apply(const SummandVector& s, ClassRegistry& reg) {
    SummandVector out;
    out.projectives.assign(reg.algebra()->vertex_count(), 0);
    for (auto& [id, c] : s.classes) {
        const SummandVector& img = reg.syzygy_of(id);
        k0_add(out.classes, img.classes, c);
        for (std::size_t v = 0; v < out.projectives.size(); ++v) out.projectives[v] += c * img.projectives[v];
    }
    return out;
}

std::vector<SummandVector> syzygy_trail(const Module& m, std::size_t t_max, ClassRegistry& reg) {
    std::vector<SummandVector> trail{summand_vector(m, reg)};
    for (std::size_t t = 1; t <= t_max; ++t) trail.push_back(syzygy_apply(trail.back(), reg));
    return trail;
}

std::size_t integer_rank(const std::vector<K0Vector>& vectors) {
    using boost::multiprecision::cpp_int;
    std::map<std::size_t, std::size_t> col;
    for (auto& v : vectors)
        for (auto& [id, c] : v) col.emplace(id, 0);
    std::size_t nc = 0;
    for (auto& [id, idx] : col) idx = nc++;
    std::vector<std::vector<cpp_int>> a;
    for (auto& v : vectors) {
        if (v.empty()) continue;
        std::vector<cpp_int> row(nc);
        for (auto& [id, c] : v) row[col[id]] = c;
        a.push_back(std::move(row));
    }
    const std::size_t nr = a.size();
    std::size_t rank = 0;
    cpp_int prev = 1;
    for (std::size_t c = 0; c < nc && rank < nr; ++c) {
        std::size_t p = rank;
        while (p < nr && a[p][c] == 0) ++p;
        if (p == nr) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            for (std::size_t j = c + 1; j < nc; ++j) a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

PhiResult phi_of_classes(const K0Vector& m, ClassRegistry& reg, const PhiOptions& opt) {
    PhiResult r;
    std::vector<K0Vector> gens;
    for (auto& [id, c] : m) gens.push_back({{id, 1}});

    // Close up the L-orbit of the summand classes.
    std::set<std::size_t> seen;
    std::vector<std::size_t> queue;
    for (auto& [id, c] : m)
        if (seen.insert(id).second) queue.push_back(id);
    bool closed = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        if (seen.size() > opt.max_classes) {
            closed = false;
            break;
        }
        for (auto& [id, c] : reg.syzygy_of(queue[i]).classes)
            if (seen.insert(id).second) queue.push_back(id);
    }
    r.exact = closed;
    r.closure_size = closed ? seen.size() : 0;
    // Over the closure of size n, L^t is injective on L^n V, so the rank of
    // L^t <add M> is constant from t = n on.
    const std::size_t last = closed ? seen.size() : opt.horizon;
    r.horizon = last;

    std::vector<K0Vector> trail{m};
    r.ranks.push_back(integer_rank(gens));
    for (std::size_t t = 1; t <= last; ++t) {
        if (r.ranks.back() == 0) break;
        for (auto& g : gens) g = L_apply(g, reg);
        trail.push_back(L_apply(trail.back(), reg));
        r.ranks.push_back(integer_rank(gens));
    }
    const std::size_t final_rank = r.ranks.back();
    while (r.value < r.ranks.size() && r.ranks[r.value] != final_rank) ++r.value;
    const std::size_t keep = std::min(trail.size(), r.value + 2);
    r.trail.assign(trail.begin(), trail.begin() + static_cast<std::ptrdiff_t>(keep));
    return r;
}

PhiResult phi(const Module& m, ClassRegistry& reg, const PhiOptions& opt) {
    return phi_of_classes(k0_class(m, reg), reg, opt);
}

std::string PdResult::to_string() const {
    switch (kind) {
        case Kind::Finite: return std::to_string(value);
        case Kind::Infinite: return "inf";
        case Kind::AtLeast: return ">=" + std::to_string(value);
        case Kind::MinusInfinity: return "-inf";
    }
    return "?";
}

PdResult projective_dimension_of_classes(const K0Vector& v, ClassRegistry& reg, std::size_t cutoff) {
    std::set<std::size_t> cur = support(v);
    std::vector<std::set<std::size_t>> history{cur};
    for (std::size_t k = 0;; ++k) {
        if (cur.empty()) return {PdResult::Kind::Finite, k};
        if (k == cutoff) return {PdResult::Kind::AtLeast, cutoff + 1};
        std::set<std::size_t> next;
        for (std::size_t id : cur)
            for (auto& [j, c] : reg.syzygy_of(id).classes) next.insert(j);
        if (!next.empty() && std::find(history.begin(), history.end(), next) != history.end())
            return {PdResult::Kind::Infinite, 0};
        history.push_back(next);
        cur = std::move(next);
    }
}

PdResult projective_dimension(const Module& m, ClassRegistry& reg, std::size_t cutoff) {
    if (m.is_zero()) return {PdResult::Kind::MinusInfinity, 0};
    return projective_dimension_of_classes(k0_class(m, reg), reg, cutoff);
}

PsiResult psi(const Module& m, ClassRegistry& reg, std::size_t cutoff, const PhiOptions& opt) {
    PsiResult out;
    out.phi = phi(m, reg, opt);
    const K0Vector& top = out.phi.trail.at(out.phi.value);
    std::size_t best = 0;
    bool resolved = true;
    for (auto& [id, c] : top) {
        PdResult pd = projective_dimension_of_classes({{id, 1}}, reg, cutoff);
        if (pd.kind == PdResult::Kind::Finite) best = std::max(best, pd.value);
        if (pd.kind == PdResult::Kind::AtLeast) resolved = false;
        out.summand_pd.emplace(id, pd);
    }
    if (resolved) out.value = out.phi.value + best;
    return out;
}

LowerBoundCertificate phi_lower_bound(const Module& m, const Module& n, std::size_t t, ClassRegistry& reg) {
    if (t < 1) throw std::invalid_argument("phi_lower_bound needs t >= 1");
    LowerBoundCertificate c;
    c.t = t;
    c.bound = t - 1;
    auto tm = syzygy_trail(m, t, reg);
    auto tn = syzygy_trail(n, t, reg);
    c.omega_t_m = tm[t];
    c.omega_t_n = tn[t];
    c.omega_prev_m = tm[t - 1];
    c.omega_prev_n = tn[t - 1];
    const bool iso_t = c.omega_t_m == c.omega_t_n;
    const bool noniso_prev = !(c.omega_prev_m == c.omega_prev_n);
    if (t < 2) {
        // the argument runs through L^{t-2}; t = 1 says nothing
        c.failure = "t = 1 gives no bound";
        return c;
    }
    if (!iso_t) c.failure = "Omega^" + std::to_string(t) + " M and Omega^" + std::to_string(t) + " N differ";
    else if (!noniso_prev)
        c.failure = "Omega^" + std::to_string(t - 1) + " M and Omega^" + std::to_string(t - 1) + " N are isomorphic";
    c.holds = iso_t && noniso_prev;
    c.certified = c.holds && reg.all_distinctions_certified();
    return c;
}

}  // namespace philab
