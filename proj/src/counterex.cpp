#include "philab/counterex.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <regex>
#include <set>
#include <sstream>

#include "philab/builtin.hpp"
#include "philab/serialize.hpp"

namespace philab {

namespace {

constexpr std::size_t kS3 = 2, kS4 = 3;  // 0-based vertices 3 and 4

std::size_t swap_vertex(std::size_t v) { return v == kS3 ? kS4 : v == kS4 ? kS3 : v; }

/// Arrow permutation of A under 3 <-> 4, by label.
std::vector<std::size_t> arrow_swap(const AlgebraPtr& a) {
    static const std::map<std::string, std::string> pairs = {
        {"x1", "x1"}, {"x2", "x2'"}, {"x2'", "x2"}, {"x3", "x4"}, {"x4", "x3"}};
    const Quiver& q = a->quiver();
    std::vector<std::size_t> perm(q.arrow_count());
    for (std::size_t i = 0; i < q.arrow_count(); ++i) {
        auto it = pairs.find(q.arrow(i).label);
        if (it == pairs.end() || q.vertex_count() != 4) throw std::invalid_argument("swap34 is defined on A only");
        bool found = false;
        for (std::size_t j = 0; j < q.arrow_count(); ++j)
            if (q.arrow(j).label == it->second) {
                perm[i] = j;
                found = true;
            }
        if (!found) throw std::invalid_argument("swap34 is defined on A only");
    }
    return perm;
}

using clock = std::chrono::steady_clock;

double since(clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); }

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string summand_string(const SummandVector& s) {
    std::string out = k0_string(s.classes) + " | P";
    for (auto p : s.projectives) out += " " + std::to_string(p);
    return out;
}

std::size_t projective_dim(const AlgebraPtr& alg, std::size_t v) {
    std::size_t d = 0;
    for (auto& ps : alg->projective_basis(v)) d += ps.size();
    return d;
}

std::size_t summand_dim(const SummandVector& s, ClassRegistry& reg) {
    std::size_t d = 0;
    for (auto& [id, c] : s.classes) d += static_cast<std::size_t>(c) * reg.representative(id).total_dim();
    for (std::size_t v = 0; v < s.projectives.size(); ++v)
        d += static_cast<std::size_t>(s.projectives[v]) * projective_dim(reg.algebra(), v);
    return d;
}

Module wrapped(const FamilySpec& s) { return periodic_to_module(wrap(make_family(s).complex())); }

SummandVector expected_big(const FamilySpec& spec, ClassRegistry& treg, BigSyzygyFormula f) {
    SummandVector out;
    out.projectives.assign(treg.algebra()->vertex_count(), 0);
    for (auto& [z, mult] : big_syzygy_formula(spec, f))
        k0_add(out.classes, {{register_wz(z.k, z.i, treg), static_cast<long long>(mult)}});
    return out;
}

std::size_t simple_mult(const Module& m, std::size_t v) { return simple_summand_multiplicities(m).at(v); }

}  // namespace

std::string FamilySpec::name() const {
    std::string s(1, kind);
    s += std::to_string(k);
    if (kind == 'Z') s += "^" + std::to_string(i);
    return s;
}

FamilySpec FamilySpec::parse(const std::string& text) {
    static const std::regex re(R"(^\s*([XYZ])_?(\d+)(?:\^(\d))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw ParseError("bad family name '" + text + "' (expected X2, Y1 or Z0^3)");
    FamilySpec s;
    s.kind = m[1].str()[0];
    s.k = std::stoul(m[2].str());
    if (m[3].matched) s.i = std::stoul(m[3].str());
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return s;
}

void FamilySpec::validate() const {
    if (kind != 'X' && kind != 'Y' && kind != 'Z') throw std::invalid_argument("family kind must be X, Y or Z");
    if (kind == 'Z' && (i < 1 || i > 4)) throw std::invalid_argument("Z family needs a vertex 1..4");
    if (kind != 'Z' && i != 0) throw std::invalid_argument("only the Z family takes a vertex");
}

SplitPlan family_plan(const FamilySpec& spec) {
    spec.validate();
    SplitPlan plan;
    if (spec.kind == 'Z') return plan;
    const Module peel = simple(algebra_A(), spec.kind == 'X' ? kS3 : kS4);
    for (std::size_t j = 1; j <= spec.k; ++j) plan.steps[3 * j] = {PeelSpec{peel, 1}};
    return plan;
}

TruncatedResolution make_family(const FamilySpec& spec) {
    spec.validate();
    const std::size_t base = spec.kind == 'X' ? kS3 : spec.kind == 'Y' ? kS4 : spec.i - 1;
    return build(simple(algebra_A(), base), 3 + 3 * spec.k, family_plan(spec));
}

std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> expected_shape(const FamilySpec& spec) {
    if (spec.kind == 'Z') throw std::invalid_argument("expected_shape covers X and Y only");
    const std::string a = spec.kind == 'X' ? "3" : "4", b = spec.kind == 'X' ? "4" : "3";
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
    out.push_back({{"S" + a}, {}});
    out.push_back({{"P" + a}, {}});
    for (std::size_t j = 0; j <= spec.k; ++j) {
        out.push_back({{"P1"}, {}});
        out.push_back({{"P2"}, {}});
        if (j < spec.k) out.push_back({{"P" + b}, {"S" + a}});
        else out.push_back({{}, {"S3", "S4"}});
    }
    return out;
}

bool shape_matches(const FamilySpec& spec, const TruncatedResolution& t) {
    auto want = expected_shape(spec);
    if (want.size() != t.m + 2) return false;
    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    if (sorted(part_names(t.M)) != want[0].first) return false;
    for (std::size_t k = 0; k <= t.m; ++k) {
        auto p = k < t.m ? part_names(t.P[k]) : std::vector<std::string>{};
        auto q = k >= 1 ? part_names(t.Q[k]) : std::vector<std::string>{};
        if (sorted(p) != sorted(want[k + 1].first) || sorted(q) != sorted(want[k + 1].second)) return false;
    }
    return true;
}

Module swap34(const Module& m) {
    auto perm = arrow_swap(m.algebra());
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < 4; ++v) dims.push_back(m.dim(swap_vertex(v)));
    std::vector<Matrix> action;
    for (std::size_t a = 0; a < perm.size(); ++a) action.push_back(m.action(perm[a]));
    return Module(m.algebra(), std::move(dims), std::move(action));
}

PeriodicComplex swap34(const PeriodicComplex& p) {
    PeriodicComplex out;
    out.base = p.base;
    for (std::size_t c = 0; c < 3; ++c) out.modules[c] = swap34(p.modules[c]);
    for (std::size_t c = 0; c < 3; ++c) {
        std::vector<Matrix> comps;
        for (std::size_t v = 0; v < 4; ++v) comps.push_back(p.diffs[c].component(swap_vertex(v)));
        out.diffs[c] = Morphism(out.modules[c], out.modules[(c + 2) % 3], std::move(comps));
    }
    return out;
}

std::vector<std::pair<FamilySpec, std::size_t>> big_syzygy_formula(const FamilySpec& spec, BigSyzygyFormula f) {
    if (spec.kind == 'Z' || spec.k < 1) throw std::invalid_argument("big syzygy formula needs X_k or Y_k with k >= 1");
    const std::size_t k = spec.k;
    const bool stated = f == BigSyzygyFormula::Stated;
    // Vertex carried by Z_k in the X_k case; Y_k swaps it.
    std::size_t top = (stated && k % 2 == 0) ? 3 : 4;
    if (spec.kind == 'Y') top = 7 - top;
    std::vector<std::pair<FamilySpec, std::size_t>> out;
    out.push_back({FamilySpec{'Z', k, top}, 1});
    out.push_back({FamilySpec{'Z', k - 1, 7 - top}, 1});
    for (std::size_t j = 0; j + 2 <= k; ++j) {
        const std::size_t mult = stated ? k - j - 1 : std::size_t{1} << (k - j - 2);
        out.push_back({FamilySpec{'Z', j, 3}, mult});
        out.push_back({FamilySpec{'Z', j, 4}, mult});
    }
    return out;
}

std::size_t register_wz(std::size_t j, std::size_t i, ClassRegistry& treg) {
    const FamilySpec z{'Z', j, i};
    SummandVector s = summand_vector(wrapped(z), treg);
    const bool proj_free = std::all_of(s.projectives.begin(), s.projectives.end(), [](long long p) { return p == 0; });
    if (s.classes.size() != 1 || s.classes.begin()->second != 1 || !proj_free)
        throw std::logic_error("W" + z.name() + " is not indecomposable");
    const std::size_t id = s.classes.begin()->first;
    treg.set_name(id, "WZ_" + std::to_string(j) + "^" + std::to_string(i));
    return id;
}

bool SmallSyzygyReport::holds() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](auto& c) { return c.second; });
}

SmallSyzygyReport verify_small_syzygy_report(std::size_t k) {
    SmallSyzygyReport r;
    r.k = k;
    std::vector<TruncatedResolution> z;
    for (std::size_t i = 1; i <= 4; ++i) z.push_back(make_family({'Z', k, i}));
    const std::vector<std::pair<std::size_t, std::vector<std::size_t>>> claims = {
        {3, {1}}, {4, {1}}, {1, {2}}, {2, {3, 4}}};
    Rng rng(kDefaultSeed);
    for (auto& [src, tgt] : claims) {
        std::vector<TruncatedResolution> parts;
        std::string rhs;
        for (auto i : tgt) {
            parts.push_back(z[i - 1]);
            rhs += (rhs.empty() ? "Z^" : " + Z^") + std::to_string(i);
        }
        const PeriodicComplex want = wrap(sum_complex(parts));
        const std::string stmt = "Omega Z^" + std::to_string(src) + " = " + rhs;
        const PeriodicComplex via_formula = wrap(formula_syzygy(z[src - 1]).complex());
        r.checks[stmt + " (formula)"] = periodic_iso(via_formula, want, rng).isomorphic;
        const PeriodicComplex via_tensor = periodic_syzygy(wrap(z[src - 1].complex()));
        r.checks[stmt + " (tensor)"] = periodic_iso(via_tensor, want, rng).isomorphic;
    }
    return r;
}

bool verify_small_syzygy(std::size_t k) { return verify_small_syzygy_report(k).holds(); }

BigSyzygyReport verify_big_syzygy_report(std::size_t k, ClassRegistry& treg, BigSyzygyFormula f) {
    BigSyzygyReport r;
    r.k = k;
    r.formula = f;
    const FamilySpec x{'X', k}, y{'Y', k};
    r.x_actual = syzygy_trail(wrapped(x), 3 * k, treg).back();
    r.y_actual = syzygy_trail(wrapped(y), 3 * k, treg).back();
    r.x_expected = expected_big(x, treg, f);
    r.y_expected = expected_big(y, treg, f);
    r.x_match = r.x_actual == r.x_expected;
    r.y_match = r.y_actual == r.y_expected;
    return r;
}

bool verify_big_syzygy(std::size_t k, BigSyzygyFormula f) {
    ClassRegistry treg(tensor_of(algebra_A()));
    return verify_big_syzygy_report(k, treg, f).holds();
}

bool VerificationReport::passed() const {
    bool ok = structure_ok && indecomposable && iso_at_3k_plus_1 && noniso_at_3k && certificate.holds &&
              phi_lower_bound >= 3 * k && big_syzygy_computed_match && nonprojective_sweep &&
              distinguishing.value("argument_holds", false);
    if (exact_phi) ok = ok && exact_phi->value >= 3 * k;
    return ok;
}

json VerificationReport::to_json() const {
    json j = {{"k", k},
              {"passed", passed()},
              {"structure_ok", structure_ok},
              {"indecomposable", indecomposable},
              {"iso_at_3k_plus_1", {{"holds", iso_at_3k_plus_1}, {"witness_hash", witness_hash}}},
              {"noniso_at_3k", {{"holds", noniso_at_3k}, {"distinguishing", distinguishing}}},
              {"phi_lower_bound",
               {{"bound", phi_lower_bound},
                {"t", certificate.t},
                {"holds", certificate.holds},
                {"certified", certificate.certified}}},
              {"big_syzygy", {{"stated_formula", big_syzygy_match}, {"computed_formula", big_syzygy_computed_match}}},
              {"nonprojective_sweep", {{"holds", nonprojective_sweep}, {"max_t", sweep_depth}}},
              {"all_distinctions_certified", all_certified},
              {"stats",
               {{"dim_WX", dim_wx},
                {"dim_WY", dim_wy},
                {"max_syzygy_dim", max_syzygy_dim},
                {"registry_classes", registry_classes}}},
              {"seconds", seconds}};
    if (!certificate.failure.empty()) j["phi_lower_bound"]["failure"] = certificate.failure;
    if (exact_phi)
        j["exact_phi"] = {{"value", exact_phi->value},
                          {"exact", exact_phi->exact},
                          {"ranks", exact_phi->ranks},
                          {"closure_size", exact_phi->closure_size}};
    else j["exact_phi"] = nullptr;
    return j;
}

std::string VerificationReport::to_text() const {
    std::ostringstream os;
    auto flag = [](bool b) { return b ? "yes" : "NO"; };
    os << "k = " << k << (passed() ? "  PASS" : "  FAIL") << "\n";
    os << "X_" << k << ":\n" << x_diagram << "Y_" << k << ":\n" << y_diagram;
    auto row = [&](const std::string& label, const std::string& value) {
        os << "  " << label << ":" << std::string(label.size() < 36 ? 36 - label.size() : 1, ' ') << value << "\n";
    };
    const std::string up = std::to_string(3 * k + 1), at = std::to_string(3 * k);
    row("shapes match diagrams, Y = swap(X)", flag(structure_ok));
    row("WX, WY indecomposable (criterion)", flag(indecomposable));
    row("Omega^" + up + " WX = Omega^" + up + " WY", std::string(flag(iso_at_3k_plus_1)) + "  [" + witness_hash + "]");
    row("Omega^" + at + " WX != Omega^" + at + " WY", flag(noniso_at_3k));
    row("big syzygy, computed formula", flag(big_syzygy_computed_match));
    row("big syzygy, stated formula", big_syzygy_match ? "yes" : "no (discrepancy)");
    row("Omega^t WX non-projective, t <= " + std::to_string(sweep_depth), flag(nonprojective_sweep));
    os << "  phi(WX + WY) >= " << phi_lower_bound << (certificate.certified ? " (certified)" : " (uncertified)")
       << "\n";
    if (exact_phi) {
        os << "  phi(WX + WY) = " << exact_phi->value << (exact_phi->exact ? "" : " (horizon)") << ", ranks";
        for (auto r : exact_phi->ranks) os << " " << r;
        os << "\n";
    }
    os << "  dims: WX " << dim_wx << ", WY " << dim_wy << ", largest syzygy " << max_syzygy_dim << ", classes "
       << registry_classes << "\n";
    os << "  time:";
    for (auto& [name, s] : seconds) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", s);
        os << " " << name << " " << buf << "s";
    }
    os << "\n";
    return os.str();
}

VerificationReport verify_main(std::size_t k, const VerifyOptions& opt) {
    ClassRegistry treg(tensor_of(algebra_A()), opt.seed);
    return verify_main(k, treg, opt);
}

VerificationReport verify_main(std::size_t k, ClassRegistry& treg, const VerifyOptions& opt) {
    if (k < 1) throw std::invalid_argument("verification needs k >= 1");
    VerificationReport r;
    r.k = k;
    const auto start = clock::now();
    const FamilySpec xs{'X', k}, ys{'Y', k};

    auto t0 = clock::now();
    const TruncatedResolution x = make_family(xs), y = make_family(ys);
    r.x_diagram = render(x);
    r.y_diagram = render(y);
    const PeriodicComplex wx = wrap(x.complex()), wy = wrap(y.complex());
    Rng rng(opt.seed);
    r.structure_ok = shape_matches(xs, x) && shape_matches(ys, y) && periodic_iso(swap34(wx), wy, rng).isomorphic;
    r.indecomposable = check_indecomposability_criterion(x) && check_indecomposability_criterion(y);
    r.seconds["structure"] = since(t0);

    t0 = clock::now();
    const Module mx = periodic_to_module(wx), my = periodic_to_module(wy);
    r.dim_wx = mx.total_dim();
    r.dim_wy = my.total_dim();
    r.sweep_depth = 3 * k + opt.sweep_extra;
    const auto tx = syzygy_trail(mx, r.sweep_depth, treg);
    const auto ty = syzygy_trail(my, r.sweep_depth, treg);
    r.seconds["syzygies"] = since(t0);

    t0 = clock::now();
    r.big_syzygy_match = tx[3 * k] == expected_big(xs, treg, BigSyzygyFormula::Stated) &&
                         ty[3 * k] == expected_big(ys, treg, BigSyzygyFormula::Stated);
    r.big_syzygy_computed_match = tx[3 * k] == expected_big(xs, treg, BigSyzygyFormula::Computed) &&
                                  ty[3 * k] == expected_big(ys, treg, BigSyzygyFormula::Computed);
    r.seconds["big_syzygy"] = since(t0);

    t0 = clock::now();
    r.iso_at_3k_plus_1 = tx[3 * k + 1] == ty[3 * k + 1];
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a(summand_string(tx[3 * k + 1]))));
    r.witness_hash = hash;
    r.noniso_at_3k = !(tx[3 * k] == ty[3 * k]);

    json diff = json::array();
    std::set<std::size_t> ids;
    for (auto& [id, c] : tx[3 * k].classes) ids.insert(id);
    for (auto& [id, c] : ty[3 * k].classes) ids.insert(id);
    auto mult = [](const SummandVector& s, std::size_t id) {
        auto it = s.classes.find(id);
        return it == s.classes.end() ? 0LL : it->second;
    };
    for (auto id : ids)
        if (mult(tx[3 * k], id) != mult(ty[3 * k], id))
            diff.push_back({{"class", id}, {"name", treg.name(id)}, {"in_X", mult(tx[3 * k], id)},
                            {"in_Y", mult(ty[3 * k], id)}});

    // WZ_k^3 and WZ_k^4 differ on S3 in class [-1]; WZ_k^3 and WZ_{k-1}^3 on
    // the power of S3 + S4 at degree 3 + 3k, which lies in class [0].
    const Module z3 = wrapped({'Z', k, 3}), z4 = wrapped({'Z', k, 4}), z3prev = wrapped({'Z', k - 1, 3});
    const std::size_t s3_z3 = simple_mult(class_component(z3, 0), kS3);
    const std::size_t s3_z4 = simple_mult(class_component(z4, 0), kS3);
    auto pair_power = [](const Module& m) {
        auto s = simple_summand_multiplicities(class_component(m, degree_class(0)));
        return std::min(s.at(kS3), s.at(kS4));
    };
    const std::size_t pow_k = pair_power(z3), pow_prev = pair_power(z3prev);
    const std::size_t two_k = std::size_t{1} << k;
    r.distinguishing = {{"differing_classes", diff},
                        {"S3_in_class_-1", {{"WZ_k^3", s3_z3}, {"WZ_k^4", s3_z4}}},
                        {"S3+S4_power_in_class_0", {{"WZ_k^3", pow_k}, {"WZ_{k-1}^3", pow_prev}, {"2^k", two_k}}},
                        {"argument_holds", s3_z3 > 0 && s3_z4 == 0 && pow_k == two_k && pow_prev < two_k}};

    r.certificate = phi_lower_bound(mx, my, 3 * k + 1, treg);
    r.phi_lower_bound = r.certificate.holds ? r.certificate.bound : 0;
    r.seconds["certificate"] = since(t0);

    r.nonprojective_sweep = true;
    for (std::size_t t = 0; t <= r.sweep_depth; ++t) {
        if (tx[t].classes.empty() || ty[t].classes.empty()) r.nonprojective_sweep = false;
        r.max_syzygy_dim = std::max({r.max_syzygy_dim, summand_dim(tx[t], treg), summand_dim(ty[t], treg)});
    }

    if (opt.exact_phi) {
        t0 = clock::now();
        K0Vector both = tx[0].classes;
        k0_add(both, ty[0].classes);
        r.exact_phi = phi_of_classes(both, treg, opt.phi);
        r.seconds["exact_phi"] = since(t0);
    }
    r.all_certified = treg.all_distinctions_certified();
    r.registry_classes = treg.size();
    r.seconds["total"] = since(start);
    return r;
}

}  // namespace philab
