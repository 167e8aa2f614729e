// Field elements cross the boundary as coordinate lists; structured objects as JSON text.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parab/flow.hpp"
#include "parab/samples.hpp"
#include "parab/serialize.hpp"
#include "parab/suites.hpp"

namespace py = pybind11;
using namespace parab;

namespace {

using Coords = std::vector<std::uint32_t>;

Fq elem(const Field& f, Coords c) {
    if (c.empty() || int(c.size()) > f.k()) throw ValidationError("expected 1.." + std::to_string(f.k()) + " coordinates");
    for (auto v : c)
        if (v >= f.p()) throw ValidationError("coordinate out of range");
    c.resize(f.k(), 0);
    return f.elem(f.encode(c));
}

std::vector<std::vector<Coords>> mat(const FqMat& m) {
    std::vector<std::vector<Coords>> out(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j).coords());
    return out;
}

std::vector<Coords> coeffs(const Poly& f) {
    std::vector<Coords> out;
    for (int i = 0; i <= f.deg(); ++i) out.push_back(f.coeff(i).coords());
    return out;
}

FrobLift lift(const Fq& l0, const Fq& l1) { return frobenius_lifts_4pts(wp2_from_witt(l0, l1)); }

}  // namespace

PYBIND11_MODULE(_parab, m) {
    m.doc() = "parabolic Higgs-de Rham computations over finite fields";
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ArithmeticError>(m, "ArithmeticError", PyExc_ArithmeticError);
    py::register_exception<NonPeriodicError>(m, "NonPeriodicError", PyExc_RuntimeError);

    m.def("field_modulus", [](std::uint32_t p, int k) { return Field::get(p, k).modulus(); }, py::arg("p"),
          py::arg("k") = 1);

    m.def("delta_closed_form",
          [](std::uint32_t p, Coords l0, Coords l1, int k) {
              const Field& f = Field::get(p, k);
              return mat(delta_closed_form(p, elem(f, l0), elem(f, l1)));
          },
          py::arg("p"), py::arg("lambda0"), py::arg("lambda1"), py::arg("k") = 1);

    m.def("boundary_delta",
          [](std::uint32_t p, Coords l0, Coords l1, int k) {
              const Field& f = Field::get(p, k);
              Fq a = elem(f, l0), b = elem(f, l1);
              return mat(boundary_delta(legendre_family(a.frob()), deligne_illusie(lift(a, b))));
          },
          py::arg("p"), py::arg("lambda0"), py::arg("lambda1"), py::arg("k") = 1);

    m.def("det_poly_lambda1",
          [](std::uint32_t p, Coords l0, int k) { return coeffs(det_poly_lambda1(p, elem(Field::get(p, k), l0))); },
          py::arg("p"), py::arg("lambda0"), py::arg("k") = 1);

    m.def("periodicity_roots",
          [](std::uint32_t p, Coords l0, int k, int max_ext_degree) {
              RootTable t = periodicity_roots(p, elem(Field::get(p, k), l0), max_ext_degree);
              py::list roots;
              for (const auto& r : t.roots)
                  roots.append(py::dict(py::arg("degree") = r.degree, py::arg("value") = r.value.coords(),
                                        py::arg("multiplicity") = r.multiplicity));
              return py::dict(py::arg("det") = coeffs(t.det), py::arg("roots") = roots,
                              py::arg("factors") = t.factors, py::arg("distinct_count") = t.distinct_count,
                              py::arg("total_multiplicity") = t.total_multiplicity);
          },
          py::arg("p"), py::arg("lambda0"), py::arg("k") = 1, py::arg("max_ext_degree") = 1);

    m.def("deligne_illusie",
          [](std::uint32_t p, Coords l0, Coords l1, int k) {
              const Field& f = Field::get(p, k);
              return to_json(deligne_illusie(lift(elem(f, l0), elem(f, l1))).h[0][1]).dump();
          },
          py::arg("p"), py::arg("lambda0"), py::arg("lambda1"), py::arg("k") = 1);

    m.def("hn_type",
          [](std::uint32_t p, Coords l0, Coords l1, int k) {
              const Field& f = Field::get(p, k);
              Fq a = elem(f, l0);
              return hn_type(legendre_family(a.frob()), deligne_illusie(lift(a, elem(f, l1))));
          },
          py::arg("p"), py::arg("lambda0"), py::arg("lambda1"), py::arg("k") = 1);

    m.def("flow_is_period_one",
          [](std::uint32_t p, Coords l0, Coords l1, int k) {
              const Field& f = Field::get(p, k);
              Fq a = elem(f, l0);
              return is_period_one(flow_step(legendre_family(a.frob()), lift(a, elem(f, l1))));
          },
          py::arg("p"), py::arg("lambda0"), py::arg("lambda1"), py::arg("k") = 1,
          "raises NonPeriodicError off the roots of det");

    m.def("random_higgs",
          [](std::uint32_t p, Coords l0, int rank, std::uint64_t seed, int k) {
              const Field& f = Field::get(p, k);
              Rng rng(seed);
              StandardCover sc = standard_cover_4pts(elem(f, l0));
              return to_json(random_nilpotent_higgs(rng, sc, rank, random_weights(rng, p, 4, rank))).dump();
          },
          py::arg("p"), py::arg("lambda0"), py::arg("rank"), py::arg("seed") = 1, py::arg("k") = 1,
          "nilpotent Higgs bundle on the four-point cover with the given lambda0");

    m.def("inverse_cartier",
          [](const std::string& higgs, Coords l0, Coords l1) {
              LambdaConn H = conn_from_json(json::parse(higgs));
              const Field& f = *H.bundle.cover.field;
              return to_json(inverse_cartier(H, lift(elem(f, l0), elem(f, l1)))).dump();
          },
          py::arg("higgs"), py::arg("lambda0"), py::arg("lambda1"),
          "the Higgs bundle must live on the cover with lambda0^p");

    m.def("cartier",
          [](const std::string& conn, Coords l0, Coords l1) {
              LambdaConn C = conn_from_json(json::parse(conn));
              const Field& f = *C.bundle.cover.field;
              return to_json(cartier(C, lift(elem(f, l0), elem(f, l1)))).dump();
          },
          py::arg("conn"), py::arg("lambda0"), py::arg("lambda1"));

    m.def("is_isomorphic",
          [](const std::string& a, const std::string& b) {
              return find_isomorphism(conn_from_json(json::parse(a)), conn_from_json(json::parse(b))).has_value();
          },
          py::arg("a"), py::arg("b"));

    m.def("normalize_conn", [](const std::string& s) { return to_json(conn_from_json(json::parse(s))).dump(); },
          py::arg("conn"), "parse, validate and re-serialize");

    m.def("suite_names", [] {
        std::vector<std::string> out;
        for (const auto& s : suites()) out.push_back(s.name);
        return out;
    });

    m.def("run_suite",
          [](const std::string& name, std::uint64_t seed, int instances, int algebra_instances) {
              SuiteOptions o;
              o.seed = seed;
              o.instances = instances;
              o.algebra_instances = algebra_instances;
              SuiteResult r = run_suite(name, o);
              return py::dict(py::arg("name") = r.name, py::arg("cases") = r.cases, py::arg("failures") = r.failures,
                              py::arg("notes") = r.notes, py::arg("ok") = r.ok());
          },
          py::arg("name"), py::arg("seed") = 1, py::arg("instances") = 20, py::arg("algebra_instances") = 100);
}
