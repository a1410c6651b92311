#include "philab/builtin.hpp"

#include <cctype>
#include <map>
#include <mutex>

namespace philab {

const char* const kPresentationA = R"(# The algebra A = KQ/rad^2 KQ.
name A
vertices 4
arrow x1 1 2
arrow x2 2 3
arrow x2' 2 4
arrow x3 3 1
arrow x4 4 1
rad2
)";

const char* const kPresentationA3CT = R"(# The cluster-tilted algebra of type A3: the oriented 3-cycle modulo rad^2.
name A3CT
vertices 3
arrow y1 1 3
arrow y2 2 1
arrow y3 3 2
rad2
)";

namespace {

template <class Make>
AlgebraPtr cached(std::map<std::uint64_t, AlgebraPtr>& cache, Make make) {
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto& slot = cache[field::modulus()];
    if (!slot) slot = make();
    return slot;
}

}  // namespace

AlgebraPtr algebra_A() {
    static std::map<std::uint64_t, AlgebraPtr> cache;
    return cached(cache, [] { return parse_presentation(kPresentationA, "A"); });
}

AlgebraPtr algebra_A3CT() {
    static std::map<std::uint64_t, AlgebraPtr> cache;
    return cached(cache, [] { return parse_presentation(kPresentationA3CT, "A3CT"); });
}

AlgebraPtr algebra_A_tensor() { return tensor_of(algebra_A()); }

AlgebraPtr resolve_algebra(const std::string& name) {
    if (name == "A") return algebra_A();
    if (name == "A3CT") return algebra_A3CT();
    if (name == "A_tensor_A3CT") return algebra_A_tensor();
    return load_presentation(name);
}

Module parse_module_literal(const AlgebraPtr& alg, std::string_view text) {
    std::vector<Module> parts;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto number = [&](const char* what) {
        skip();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw ParseError(std::string("module literal: expected ") + what);
        return std::stoul(std::string(text.substr(start, i - start)));
    };
    skip();
    if (i == text.size()) throw ParseError("empty module literal");
    for (;;) {
        skip();
        if (i >= text.size()) throw ParseError("module literal: dangling '+'");
        char kind = text[i++];
        if (kind != 'S' && kind != 'P') throw ParseError(std::string("module literal: unexpected '") + kind + "'");
        auto v = number("a vertex number");
        if (v < 1 || v > alg->vertex_count()) throw ParseError("module literal: vertex out of range");
        Module m = kind == 'S' ? simple(alg, v - 1) : projective(alg, v - 1);
        std::size_t mult = 1;
        skip();
        if (i < text.size() && text[i] == '^') {
            ++i;
            mult = number("an exponent");
        }
        for (std::size_t k = 0; k < mult; ++k) parts.push_back(m);
        skip();
        if (i == text.size()) break;
        if (text[i] != '+') throw ParseError(std::string("module literal: unexpected '") + text[i] + "'");
        ++i;
    }
    if (parts.empty()) return Module::zero(alg);
    return direct_sum(parts);
}

}  // namespace philab
