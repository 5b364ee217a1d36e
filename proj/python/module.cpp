#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wfree/cli.hpp"

namespace py = pybind11;
using namespace wfree;

namespace {

std::string frac(const Rat& q) { return to_string(q); }

PairTag pair(const std::string& kind, int n) { return PairTag{parse_pair(kind), n}; }

RatFun level(const std::string& s) {
    if (s.find('t') != std::string::npos) return parse_ratfun(s);
    return RatFun(parse_rat(s));
}

}  // namespace

PYBIND11_MODULE(_wfree, m) {
    py::register_exception<Error>(m, "WfreeError", PyExc_ValueError);

    py::class_<Report>(m, "Report")
        .def_readonly("suite", &Report::suite)
        .def_readonly("inputs", &Report::inputs)
        .def_property_readonly("passed", &Report::pass)
        .def_property_readonly("items",
                               [](const Report& r) {
                                   py::list out;
                                   for (auto& i : r.items)
                                       out.append(py::make_tuple(i.id, i.expected, i.computed, i.equal));
                                   return out;
                               })
        .def_property_readonly("per_degree",
                               [](const Report& r) {
                                   py::list out;
                                   for (auto& d : r.per_degree)
                                       out.append(py::make_tuple(d.degree, d.dim_left, d.dim_right, d.equal));
                                   return out;
                               })
        .def("to_json", [](const Report& r, const std::string& command) { return emit_report(r, command, "json"); },
             py::arg("command") = "python");

    m.def("run_command", [](const std::vector<std::string>& args) {
        std::ostringstream out, e;
        int code = run_command(args, out, e);
        return py::make_tuple(code, out.str(), e.str());
    });
    m.def("catalog_keys", &catalog_keys);
    m.def("dual_level", [](const std::string& kind, int n, const std::string& k1) {
        return frac(dual_level(pair(kind, n), parse_rat(k1)));
    });
    m.def("degeneracy_constants", [](const std::string& kind, int n) {
        auto [a, b] = degeneracy_constants(pair(kind, n));
        return py::make_tuple(frac(a), frac(b));
    });
    m.def("delta_conformal", [](const std::string& n, const std::string& e, const std::string& k1,
                                const std::string& k2, bool plus) {
        return frac(delta_conformal(parse_rat(n), parse_rat(e), parse_rat(k1), parse_rat(k2),
                                    plus ? DeltaSign::Plus : DeltaSign::Minus));
    }, py::arg("n"), py::arg("e"), py::arg("k1"), py::arg("k2"), py::arg("plus") = false);
    m.def("check_homomorphism", [](const std::string& key, const std::string& l1, const std::string& l2) {
        return check_homomorphism(realization_by_key(key, level(l1), level(l2)));
    }, py::arg("key"), py::arg("level") = "t", py::arg("level2") = "t^7");
    m.def("check_resolution", [](const std::string& k1, const std::string& k2, int max_degree, int terms) {
        return check_resolution(parse_rat(k1), parse_rat(k2), max_degree, terms);
    }, py::arg("k1"), py::arg("k2"), py::arg("max_degree") = 3, py::arg("terms") = 2);
    m.def("check_rank1_ff_duality", [](const std::string& K, int d) { return check_rank1_ff_duality(parse_rat(K), d); },
          py::arg("K"), py::arg("max_degree") = 6);
    m.def("check_gram_duality", [](const std::string& kind, int n) { return check_gram_duality(pair(kind, n)); });
    m.def("check_coset_duality", [](const std::string& kind, int n, const std::string& k1, int d) {
        return check_coset_duality(pair(kind, n), parse_rat(k1), d);
    }, py::arg("kind"), py::arg("n"), py::arg("k1"), py::arg("max_degree") = 3);
    m.def("check_ks", [](const std::string& kind, int n, const std::string& k2, bool drop_psi) {
        return check_ks(pair(kind, n), level(k2), drop_psi);
    }, py::arg("kind"), py::arg("n"), py::arg("k2") = "t", py::arg("drop_psi") = false);
    m.def("norm_degeneracy", [](const std::string& kind, int n) { return norm_degeneracy(pair(kind, n)); });
    m.def("character_oracle", [](const std::string& key, int d, int charge) {
        Realization r = realization_by_key(key, RatFun(Rat(3, 11)), RatFun(Rat(2, 13)));
        return character_oracle(*r.sys, d, charge);
    }, py::arg("key"), py::arg("max_degree"), py::arg("charge") = 0);
}
