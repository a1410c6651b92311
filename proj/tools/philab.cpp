// philab: phi/psi, syzygies and the X_k/Y_k counterexample from the command line.
//
// Exit codes: 0 ok, 1 internal error, 2 bad input, 3 decomposition failure,
// 4 a verified claim was refuted.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "philab/builtin.hpp"
#include "philab/counterex.hpp"
#include "philab/field.hpp"
#include "philab/igusa.hpp"
#include "philab/serialize.hpp"
#include "philab/trunres.hpp"

using namespace philab;

namespace {

struct Config {
    std::string algebra = "A";
    std::string module;
    std::string family;
    std::string k = "1..3";
    std::size_t t = 1;
    std::uint64_t prime = 0;
    std::uint64_t seed = kDefaultSeed;
    std::size_t cutoff = 0;
    std::size_t horizon = 40;
    bool exact_phi = false;
    bool periodic = false;
    bool timings = false;
    std::string registry;
    std::string out;
    std::string format = "text";
};

struct Refuted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    json j;
    std::string text;
};

void emit(const Config& cfg, const Output& o) {
    const std::string body = cfg.format == "json" ? o.j.dump(2) + "\n" : o.text;
    if (cfg.out.empty()) std::cout << body;
    else write_file_atomic(cfg.out, body);
}

Module load_module(const AlgebraPtr& alg, const std::string& spec) {
    if (std::filesystem::is_regular_file(spec)) {
        std::ifstream in(spec);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ParseError(spec + ": " + e.what());
        }
        return module_from_json(j, alg);
    }
    return parse_module_literal(alg, spec);
}

std::pair<std::size_t, std::size_t> parse_k_range(const std::string& s) {
    static const std::regex re(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw CLI::ValidationError("--k", "expected N or N..M, got '" + s + "'");
    const std::size_t lo = std::stoul(m[1].str());
    const std::size_t hi = m[2].matched ? std::stoul(m[2].str()) : lo;
    if (lo < 1) throw CLI::ValidationError("--k", "k must be at least 1");
    if (hi < lo) throw CLI::ValidationError("--k", "empty range " + s);
    return {lo, hi};
}

std::unique_ptr<ClassRegistry> make_registry(const AlgebraPtr& alg, const Config& cfg) {
    auto reg = std::make_unique<ClassRegistry>(alg, cfg.seed);
    if (!cfg.registry.empty()) reg->attach_file(cfg.registry);
    return reg;
}

std::string class_label(const ClassRegistry& reg, std::size_t id) {
    const Module rep = reg.representative(id);
    std::string n = reg.name(id);
    if (n.empty() || n[0] == '[') n = part_name(rep);
    return n;
}

/// "(d1,..)" per degree class for tensor modules, the plain name otherwise.
std::string describe(const Module& m) {
    const TensorInfo* ti = m.algebra()->tensor();
    if (!ti) return part_name(m);
    std::string s;
    for (std::size_t c = 0; c < 3; ++c)
        s += (c ? " " : "") + class_name(c) + dims_string(class_component(m, c).dims());
    return s;
}

std::string vector_text(const SummandVector& v, const ClassRegistry& reg) {
    std::string s;
    for (auto& [id, c] : v.classes) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += std::to_string(c) + "*";
        s += class_label(reg, id);
    }
    for (std::size_t p = 0; p < v.projectives.size(); ++p)
        if (v.projectives[p]) {
            if (!s.empty()) s += " + ";
            if (v.projectives[p] != 1) s += std::to_string(v.projectives[p]) + "*";
            s += "P" + std::to_string(p + 1);
        }
    return s.empty() ? "0" : s;
}

json vector_json(const SummandVector& v, const ClassRegistry& reg) {
    json classes = json::array();
    for (auto& [id, c] : v.classes) {
        const Module rep = reg.representative(id);
        classes.push_back({{"class", id}, {"mult", c}, {"label", class_label(reg, id)}, {"dims", rep.dims()}});
    }
    return {{"classes", classes}, {"projectives", v.projectives}};
}

Output cmd_phi(const Config& cfg) {
    const AlgebraPtr alg = resolve_algebra(cfg.algebra);
    auto regp = make_registry(alg, cfg);
    ClassRegistry& reg = *regp;
    const Module m = load_module(alg, cfg.module);
    PhiOptions opt;
    opt.horizon = cfg.horizon;
    const PhiResult r = phi(m, reg, opt);
    Output o;
    o.j = {{"algebra", alg->id()},
           {"module", cfg.module},
           {"phi", r.value},
           {"exact", r.exact},
           {"closure_size", r.closure_size},
           {"ranks", r.ranks}};
    json trail = json::array();
    std::ostringstream ts;
    for (std::size_t t = 0; t < r.trail.size(); ++t) {
        SummandVector v;
        v.classes = r.trail[t];
        v.projectives.assign(alg->vertex_count(), 0);
        trail.push_back(vector_json(v, reg));
        ts << "  L^" << t << " [M] = " << vector_text(v, reg) << "\n";
    }
    o.j["trail"] = trail;
    std::ostringstream os;
    os << "phi(" << cfg.module << ") = " << r.value << (r.exact ? "" : "  (orbit did not close; horizon value)")
       << "\nranks:";
    for (auto x : r.ranks) os << " " << x;
    os << "\n" << ts.str();
    if (cfg.cutoff > 0) {
        const PsiResult p = psi(m, reg, cfg.cutoff, opt);
        o.j["psi"] = p.value ? json(*p.value) : json(nullptr);
        json pds = json::object();
        for (auto& [id, pd] : p.summand_pd) pds[class_label(reg, id)] = pd.to_string();
        o.j["summand_pd"] = pds;
        os << "psi(" << cfg.module << ") = " << (p.value ? std::to_string(*p.value) : "unresolved") << "\n";
        for (auto& [id, pd] : p.summand_pd) os << "  pd " << class_label(reg, id) << " = " << pd.to_string() << "\n";
    }
    o.text = os.str();
    return o;
}

Output cmd_counterexample(const Config& cfg) {
    const auto [lo, hi] = parse_k_range(cfg.k);
    VerifyOptions opt;
    opt.exact_phi = cfg.exact_phi;
    opt.seed = cfg.seed;
    opt.phi.horizon = cfg.horizon;
    const AlgebraPtr talg = tensor_of(algebra_A());
    Output o;
    o.j = json::array();
    std::string failures;
    for (std::size_t k = lo; k <= hi; ++k) {
        auto regp = make_registry(talg, cfg);
        ClassRegistry& reg = *regp;
        VerificationReport r = verify_main(k, reg, opt);
        if (!cfg.timings) r.seconds.clear();
        json j = r.to_json();
        if (!cfg.timings) j.erase("seconds");
        o.j.push_back(j);
        std::string text = r.to_text();
        if (!cfg.timings) text = std::regex_replace(text, std::regex("  time:.*\n"), "");
        o.text += text;
        if (!r.passed()) failures += "k = " + std::to_string(k) + ": " + j.dump() + "\n";
    }
    if (!failures.empty()) {
        emit(cfg, o);
        throw Refuted("verification failed\n" + failures);
    }
    return o;
}

Output syzygy_of_module(const Config& cfg, const Module& m, const std::string& label) {
    const AlgebraPtr& alg = m.algebra();
    const Module om = syzygy_power(m, cfg.t);
    Rng rng(cfg.seed);
    const Decomposition d = decompose(om, rng);
    Output o;
    o.j = {{"algebra", alg->id()}, {"input", label}, {"t", cfg.t}, {"dims", om.dims()}};
    std::ostringstream os;
    os << "Omega^" << cfg.t << " " << label << " = ";
    json parts = json::array();
    std::string sum;
    for (auto& s : d.summands) {
        parts.push_back({{"mult", s.multiplicity}, {"dims", s.module.dims()}, {"label", describe(s.module)}});
        sum += (sum.empty() ? "" : " + ") + (s.multiplicity > 1 ? std::to_string(s.multiplicity) + "*" : "") +
               describe(s.module);
    }
    os << (sum.empty() ? "0" : sum) << "\n";
    o.j["summands"] = parts;
    o.j["summand_count"] = d.count();
    o.text = os.str();
    return o;
}

Output cmd_syzygy(const Config& cfg) {
    if (cfg.module.empty() == cfg.family.empty())
        throw CLI::ValidationError("syzygy", "give exactly one of --module and --family");
    if (!cfg.module.empty()) {
        const AlgebraPtr alg = resolve_algebra(cfg.algebra);
        return syzygy_of_module(cfg, load_module(alg, cfg.module), cfg.module);
    }
    const FamilySpec spec = FamilySpec::parse(cfg.family);
    const TruncatedResolution t = make_family(spec);
    Output o;
    std::ostringstream os;
    if (cfg.periodic) {
        // Omega^t in the 3-periodic category, summands named when they are WZ's.
        const AlgebraPtr talg = tensor_of(algebra_A());
        auto regp = make_registry(talg, cfg);
        ClassRegistry& reg = *regp;
        const auto trail = syzygy_trail(periodic_to_module(wrap(t.complex())), cfg.t, reg);
        for (std::size_t j = 0; j <= spec.k + cfg.t / 3 + 1; ++j)
            for (std::size_t i = 1; i <= 4; ++i) register_wz(j, i, reg);
        const SummandVector& v = trail.back();
        std::size_t count = 0;
        for (auto& [id, c] : v.classes) count += static_cast<std::size_t>(c);
        for (auto p : v.projectives) count += static_cast<std::size_t>(p);
        o.j = {{"family", spec.name()}, {"t", cfg.t}, {"periodic", true}, {"summands", vector_json(v, reg)},
               {"summand_count", count}};
        os << "Omega^" << cfg.t << " W" << spec.name() << " = " << vector_text(v, reg) << "  (" << count
           << " indecomposable summand" << (count == 1 ? "" : "s") << ")\n";
        for (auto& [id, c] : v.classes)
            os << "  " << class_label(reg, id) << ": " << describe(reg.representative(id)) << "\n";
    } else {
        const auto parts = iterate_syzygy(t, cfg.t);
        o.j = {{"family", spec.name()}, {"t", cfg.t}, {"periodic", false}};
        json comps = json::array();
        os << "Omega^" << cfg.t << " " << spec.name() << ": " << parts.size() << " component"
           << (parts.size() == 1 ? "" : "s") << "\n";
        for (auto& c : parts) {
            comps.push_back(resolution_to_json(c));
            os << render(c) << "\n";
        }
        o.j["components"] = comps;
        o.j["summand_count"] = parts.size();
    }
    o.text = os.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"phi/psi and syzygy computations over bound quiver algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--prime", cfg.prime, "field characteristic (default 2^31-1, or PHILAB_PRIME)");
    app.add_option("--seed", cfg.seed, "seed for randomized steps");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", cfg.out, "write the report here instead of stdout");
    app.add_option("--registry", cfg.registry, "persistent class registry (JSON lines)");
    app.add_flag("--timings", cfg.timings, "include wall-clock times in reports");

    auto* phi_cmd = app.add_subcommand("phi", "phi (and psi with --cutoff) of a module");
    phi_cmd->add_option("--algebra", cfg.algebra, "A, A3CT, A_tensor_A3CT or a presentation file");
    phi_cmd->add_option("--module", cfg.module, "literal such as S3+S4 or P1^2, or a module JSON file")->required();
    phi_cmd->add_option("--cutoff", cfg.cutoff, "pd cutoff; enables psi");
    phi_cmd->add_option("--horizon", cfg.horizon, "rank sequence length if the orbit does not close");

    auto* ce_cmd = app.add_subcommand("counterexample", "verify phi(WX_k + WY_k) >= 3k");
    ce_cmd->add_option("--k", cfg.k, "k or range lo..hi, k >= 1");
    ce_cmd->add_flag("--exact-phi", cfg.exact_phi, "also compute phi(WX_k + WY_k)");
    ce_cmd->add_option("--horizon", cfg.horizon, "rank sequence length for --exact-phi");

    auto* syz_cmd = app.add_subcommand("syzygy", "Omega^t of a module or of a family complex");
    syz_cmd->add_option("--algebra", cfg.algebra, "A, A3CT, A_tensor_A3CT or a presentation file");
    syz_cmd->add_option("--module", cfg.module, "module literal or JSON file");
    syz_cmd->add_option("--family", cfg.family, "X<k>, Y<k> or Z<k>^<i>");
    syz_cmd->add_option("--t", cfg.t, "number of syzygies");
    syz_cmd->add_flag("--periodic", cfg.periodic, "wrap the family and work with 3-periodic complexes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        field::configure_from_env();
        if (cfg.prime) field::set_modulus(cfg.prime);
        Output o;
        if (*phi_cmd) o = cmd_phi(cfg);
        else if (*ce_cmd) o = cmd_counterexample(cfg);
        else o = cmd_syzygy(cfg);
        emit(cfg, o);
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidPlan& e) {
        std::cerr << "invalid plan: " << e.what() << "\n";
        return 2;
    } catch (const NonAdmissible& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DecompositionFailure& e) {
        std::cerr << "decomposition failure: " << e.what() << "\n";
        return 3;
    } catch (const Refuted& e) {
        std::cerr << e.what();
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
