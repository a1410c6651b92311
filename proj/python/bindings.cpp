#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "philab/builtin.hpp"
#include "philab/counterex.hpp"
#include "philab/field.hpp"
#include "philab/igusa.hpp"
#include "philab/serialize.hpp"
#include "philab/trunres.hpp"

namespace py = pybind11;
using namespace philab;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) { return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

// pybind11 cannot hold shared_ptr<const T>, so algebras travel in a handle.
struct AlgebraHandle {
    AlgebraPtr ptr;
};

std::size_t vertex_index(const AlgebraHandle& a, std::size_t v) {
    if (v < 1 || v > a.ptr->vertex_count()) throw py::index_error("vertex out of range");
    return v - 1;
}

py::dict phi_dict(const PhiResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["exact"] = r.exact;
    d["ranks"] = r.ranks;
    d["closure_size"] = r.closure_size;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Igusa-Todorov phi/psi and syzygies over bound quiver algebras";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DecompositionFailure>(m, "DecompositionFailure");
    py::register_exception<InvalidPlan>(m, "InvalidPlan", PyExc_ValueError);
    py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);

    m.def("set_prime", &field::set_modulus, py::arg("p"));
    m.def("prime", &field::modulus);

    py::class_<AlgebraHandle>(m, "Algebra")
        .def_property_readonly("id", [](const AlgebraHandle& a) { return a.ptr->id(); })
        .def_property_readonly("vertex_count", [](const AlgebraHandle& a) { return a.ptr->vertex_count(); })
        .def_property_readonly("dimension", [](const AlgebraHandle& a) { return a.ptr->dimension(); })
        .def("__eq__", [](const AlgebraHandle& a, const AlgebraHandle& b) { return a.ptr == b.ptr; })
        .def("__repr__", [](const AlgebraHandle& a) { return "<Algebra " + a.ptr->id() + ">"; });
    m.def(
        "algebra", [](const std::string& name) { return AlgebraHandle{resolve_algebra(name)}; },
        py::arg("name_or_path"), "A, A3CT, A_tensor_A3CT or a presentation file");

    py::class_<Module>(m, "Module")
        .def_property_readonly("algebra", [](const Module& x) { return AlgebraHandle{x.algebra()}; })
        .def_property_readonly("dims", &Module::dims)
        .def_property_readonly("total_dim", &Module::total_dim)
        .def("is_zero", &Module::is_zero)
        .def("to_json", [](const Module& x) { return to_py(module_to_json(x)); })
        .def("__repr__", [](const Module& x) { return "<Module " + x.algebra()->id() + " " + dims_string(x.dims()) + ">"; });
    m.def(
        "module", [](const AlgebraHandle& a, const std::string& text) { return parse_module_literal(a.ptr, text); },
        py::arg("algebra"), py::arg("literal"));
    m.def("module_from_json",
          [](const py::object& o, const AlgebraHandle& a) { return module_from_json(from_py(o), a.ptr); });
    // Vertices are numbered from 1 here, as in "S1".
    m.def("simple", [](const AlgebraHandle& a, std::size_t v) { return simple(a.ptr, vertex_index(a, v)); }, py::arg("algebra"),
          py::arg("vertex"));
    m.def("projective", [](const AlgebraHandle& a, std::size_t v) { return projective(a.ptr, vertex_index(a, v)); },
          py::arg("algebra"), py::arg("vertex"));
    m.def("direct_sum", [](const std::vector<Module>& parts) { return direct_sum(parts); });
    m.def("syzygy", [](const Module& x, unsigned t) { return syzygy_power(x, t); }, py::arg("module"),
          py::arg("t") = 1);
    m.def("is_projective", &is_projective);
    m.def("hom_dim", &hom_dim);
    m.def(
        "decompose",
        [](const Module& x, std::uint64_t seed) {
            std::vector<std::pair<Module, std::size_t>> out;
            for (auto& s : decompose(x, seed).summands) out.emplace_back(s.module, s.multiplicity);
            return out;
        },
        py::arg("module"), py::arg("seed") = kDefaultSeed, "list of (indecomposable, multiplicity)");
    m.def("is_isomorphic", &is_isomorphic, py::arg("m"), py::arg("n"), py::arg("seed") = kDefaultSeed);

    py::class_<ClassRegistry>(m, "ClassRegistry")
        .def(py::init([](const AlgebraHandle& a, std::uint64_t seed) { return std::make_unique<ClassRegistry>(a.ptr, seed); }),
             py::arg("algebra"), py::arg("seed") = kDefaultSeed)
        .def("attach_file", &ClassRegistry::attach_file)
        .def("__len__", &ClassRegistry::size)
        .def("representative", &ClassRegistry::representative)
        .def("name", &ClassRegistry::name);

    m.def(
        "phi",
        [](const Module& x, ClassRegistry* reg, std::size_t horizon) {
            PhiOptions opt;
            opt.horizon = horizon;
            if (reg) return phi_dict(phi(x, *reg, opt));
            ClassRegistry local(x.algebra());
            return phi_dict(phi(x, local, opt));
        },
        py::arg("module"), py::arg("registry") = nullptr, py::arg("horizon") = 40);
    m.def(
        "psi",
        [](const Module& x, std::size_t cutoff) {
            ClassRegistry reg(x.algebra());
            PsiResult r = psi(x, reg, cutoff);
            py::dict d = phi_dict(r.phi);
            d["psi"] = r.value ? py::cast(*r.value) : py::none();
            return d;
        },
        py::arg("module"), py::arg("cutoff") = 50);
    m.def(
        "projective_dimension",
        [](const Module& x, std::size_t cutoff) {
            ClassRegistry reg(x.algebra());
            return projective_dimension(x, reg, cutoff).to_string();
        },
        py::arg("module"), py::arg("cutoff") = 50, "'3', 'inf', '>=51' or '-inf'");

    py::class_<PeriodicComplex>(m, "PeriodicComplex")
        .def_property_readonly("total_dim", &PeriodicComplex::total_dim)
        .def("to_module", [](const PeriodicComplex& p) { return periodic_to_module(p); })
        .def("syzygy", [](const PeriodicComplex& p) { return periodic_syzygy(p); })
        .def("to_json", [](const PeriodicComplex& p) { return to_py(periodic_to_json(p)); });
    m.def("periodic_from_module", &module_to_periodic);
    m.def("periodic_iso", [](const PeriodicComplex& p, const PeriodicComplex& q, std::uint64_t seed) {
        Rng rng(seed);
        return periodic_iso(p, q, rng).isomorphic;
    }, py::arg("p"), py::arg("q"), py::arg("seed") = kDefaultSeed);

    py::class_<TruncatedResolution>(m, "TruncatedResolution")
        .def_readonly("length", &TruncatedResolution::m)
        .def_property_readonly("total_dim", &TruncatedResolution::total_dim)
        .def("render", [](const TruncatedResolution& t) { return render(t); })
        .def("wrap", [](const TruncatedResolution& t) { return wrap(t.complex()); })
        .def("syzygy", [](const TruncatedResolution& t) { return formula_syzygy(t); })
        .def("components", [](const TruncatedResolution& t) { return components(t); })
        .def("iterate_syzygy", [](const TruncatedResolution& t, std::size_t s) { return iterate_syzygy(t, s); })
        .def("criterion_holds", [](const TruncatedResolution& t) { return check_indecomposability_criterion(t); })
        .def("to_json", [](const TruncatedResolution& t) { return to_py(resolution_to_json(t)); })
        .def("__repr__", [](const TruncatedResolution& t) { return render(t); });
    m.def("family", [](const std::string& name) { return make_family(FamilySpec::parse(name)); }, py::arg("name"),
          "X<k>, Y<k> or Z<k>^<i>");
    m.def(
        "resolution",
        [](const Module& base, std::size_t length, const py::object& plan) {
            SplitPlan p = plan.is_none() ? SplitPlan{} : plan_from_json(from_py(plan), base.algebra());
            return build(base, length, p);
        },
        py::arg("base"), py::arg("length"), py::arg("plan") = py::none());

    m.def("verify_small_syzygy", [](std::size_t k) { return verify_small_syzygy(k); });
    m.def(
        "verify_big_syzygy",
        [](std::size_t k, bool stated) {
            return verify_big_syzygy(k, stated ? BigSyzygyFormula::Stated : BigSyzygyFormula::Computed);
        },
        py::arg("k"), py::arg("stated") = true);
    m.def(
        "verify_main",
        [](std::size_t k, bool exact_phi, std::uint64_t seed) {
            VerifyOptions opt;
            opt.exact_phi = exact_phi;
            opt.seed = seed;
            VerificationReport r;
            {
                py::gil_scoped_release release;
                r = verify_main(k, opt);
            }
            return to_py(r.to_json());
        },
        py::arg("k"), py::arg("exact_phi") = false, py::arg("seed") = kDefaultSeed);
}
