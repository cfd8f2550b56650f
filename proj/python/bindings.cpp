#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qpmd/derive.hpp"
#include "qpmd/design.hpp"
#include "qpmd/io.hpp"
#include "qpmd/qcount.hpp"

namespace py = pybind11;
using namespace qpmd;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::str(to_string(v))); }
BigInt from_py(const py::int_& v) { return BigInt(py::cast<std::string>(py::str(static_cast<py::handle>(v)))); }

SteinerSystem steiner(const Design& d) { return SteinerSystem::from_design(d); }

}  // namespace

PYBIND11_MODULE(_qpmd, m) {
    m.doc() = "Subspace designs, q-matroids and derived designs over finite fields";

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<EnumerationLimitError>(m, "EnumerationLimitError", PyExc_RuntimeError);

    m.def("gaussian_binomial", [](unsigned n, unsigned k, unsigned q) { return to_py(gaussian_binomial(n, k, q)); },
          py::arg("n"), py::arg("k"), py::arg("q"));
    m.def("sts_admissible", &sts_admissible, py::arg("n"));

    py::class_<DesignParams>(m, "DesignParams")
        .def(py::init([](unsigned t, unsigned n, unsigned k, const py::int_& lambda, unsigned q) {
                 return DesignParams::make(t, n, k, from_py(lambda), q);
             }),
             py::arg("t"), py::arg("n"), py::arg("k"), py::arg("lambda_"), py::arg("q"))
        .def_readonly("t", &DesignParams::t)
        .def_readonly("n", &DesignParams::n)
        .def_readonly("k", &DesignParams::k)
        .def_readonly("q", &DesignParams::q)
        .def_property_readonly("lambda_", [](const DesignParams& p) { return to_py(p.lambda); })
        .def("admissible", [](const DesignParams& p) { return is_admissible(p).admissible; })
        .def("__eq__", [](const DesignParams& a, const DesignParams& b) { return a == b; })
        .def("__str__", &DesignParams::str)
        .def("__repr__", [](const DesignParams& p) { return "DesignParams('" + p.str() + "')"; });

    m.def("corollary_sts_params", [](unsigned n, unsigned q) {
        const auto c = corollary_sts_params(n, q);
        return py::make_tuple(std::vector<DesignParams>(c.sets.begin(), c.sets.end()), c.admissible);
    }, py::arg("n"), py::arg("q"));
    m.def("derived_params", [](const DesignParams& p, const std::string& kind) { return derived_params(p, parse_derived_kind(kind)); },
          py::arg("steiner"), py::arg("kind"));
    m.def("derived_block_count",
          [](const DesignParams& p, const std::string& kind) { return to_py(derived_block_count(p, parse_derived_kind(kind))); },
          py::arg("steiner"), py::arg("kind"));

    py::class_<Design>(m, "Design")
        .def_property_readonly("params", &Design::params)
        .def_property_readonly("block_count", &Design::block_count)
        .def_property_readonly("blocks", [](const Design& d) {
            std::vector<std::string> out;
            for (const auto& b : d.blocks()) out.push_back(format_subspace(b));
            return out;
        })
        .def("to_text", [](const Design& d) { return format_design(d); })
        .def("__len__", &Design::block_count)
        .def("__eq__", [](const Design& a, const Design& b) { return a == b; });

    m.def("parse_design", [](const std::string& text) {
        std::istringstream in(text);
        return read_design(in).design;
    }, py::arg("text"));
    m.def("spread", [](unsigned n, unsigned k, unsigned q) { return desarguesian_spread(n, k, field_of_order(q)).design(); },
          py::arg("n"), py::arg("k"), py::arg("q"));
    m.def("verify", [](const Design& d, unsigned jobs) {
        DesignVerification v;
        {
            py::gil_scoped_release release;
            v = verify_design(d, {100000, jobs});
        }
        return py::make_tuple(v.ok, v.failing ? py::object(py::str(format_subspace(*v.failing))) : py::object(py::none()), v.count);
    }, py::arg("design"), py::arg("jobs") = 0,
          "(ok, first failing t-space or None, its block count)");
    m.def("supplementary", [](const Design& d) { return supplementary_design(d); }, py::arg("design"));
    m.def("derive", [](const Design& d, const std::string& kind, unsigned jobs) {
        const SteinerSystem s = steiner(d);
        py::gil_scoped_release release;
        return derive_design(s, parse_derived_kind(kind), {100000, jobs});
    }, py::arg("steiner"), py::arg("kind"), py::arg("jobs") = 0);
    m.def("rank", [](const Design& d, const std::string& subspace) {
        const SteinerSystem s = steiner(d);
        return induced_rank(s, parse_subspace(subspace, d.spec(), d.params().n));
    }, py::arg("steiner"), py::arg("subspace"));
    m.def("automorphism_order", [](const Design& d, unsigned jobs) {
        py::gil_scoped_release release;
        return automorphism_group(d, {100000000, jobs}).order();
    }, py::arg("design"), py::arg("jobs") = 0);
}
