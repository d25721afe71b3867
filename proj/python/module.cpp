#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "excalc/form.hpp"
#include "excalc/mesh.hpp"

namespace py = pybind11;
using namespace excalc;

PYBIND11_MODULE(_excalc, m) {
  m.doc() = "Exterior calculus on singular analytic varieties (C++ core)";

  py::register_exception<ExcalcError>(m, "ExcalcError");

  py::class_<ScalarField>(m, "ScalarField")
      .def(py::init([](const std::string& s) { return parseField(s); }))
      .def("__str__", &ScalarField::str)
      .def("__add__", [](const ScalarField& a, const ScalarField& b) { return a + b; })
      .def("__sub__", [](const ScalarField& a, const ScalarField& b) { return a - b; })
      .def("__mul__", [](const ScalarField& a, const ScalarField& b) { return a * b; })
      .def("conj", &ScalarField::conj)
      .def("is_zero", &ScalarField::isZero)
      .def("same_as", &ScalarField::sameAs)
      .def(
          "derivative",
          [](const ScalarField& f, const std::string& which, int i) {
            if (which == "z") return f.derivative(Var::z(i));
            if (which == "zbar") return f.derivative(Var::zbar(i));
            if (which == "sigma") return f.derivative(Var::sigma());
            throw ExcalcError("derivative: expected 'z', 'zbar' or 'sigma'");
          },
          py::arg("which"), py::arg("i") = 1)
      .def(
          "eval",
          [](const ScalarField& f, std::vector<std::complex<double>> z,
             double sigma) {
            EvalPoint p;
            p.z = std::move(z);
            p.sigma = sigma;
            return f.eval(p);
          },
          py::arg("z"), py::arg("sigma") = 0.0);

  py::class_<Form>(m, "Form")
      .def(py::init([](const std::string& s, int n) { return parseForm(s, n); }),
           py::arg("expr"), py::arg("n"))
      .def("__str__", &Form::str)
      .def("__add__", [](const Form& a, const Form& b) { return a + b; })
      .def("__sub__", [](const Form& a, const Form& b) { return a - b; })
      .def("wedge", &Form::wedge)
      .def("d", &Form::d)
      .def("degree", &Form::degree)
      .def("is_zero", &Form::isZero)
      .def(
          "pullback",
          [](const Form& w, std::vector<std::string> comps, int srcN) {
            std::vector<ScalarField> f;
            for (auto& c : comps) f.push_back(parseField(c));
            return w.pullback(f, srcN);
          },
          py::arg("components"), py::arg("src_n"))
      .def(
          "eval",
          [](const Form& w, std::vector<std::complex<double>> z,
             std::vector<std::vector<std::complex<double>>> realTangents,
             double sigma) {
            EvalPoint p;
            p.z = std::move(z);
            p.sigma = sigma;
            std::vector<Tangent> vs;
            for (auto& t : realTangents) vs.push_back(Tangent::real(t));
            return w.eval(p, vs);
          },
          py::arg("z"), py::arg("tangents"), py::arg("sigma") = 0.0);

  m.def(
      "integrate_circle",
      [](const Form& w, std::complex<double> center, double radius,
         double tol) {
        Chain c = linkOfPoint("z", center, radius, 16);
        return integrateOverChain(w, c, tol);
      },
      py::arg("form"), py::arg("center") = std::complex<double>(0, 0),
      py::arg("radius") = 1.0, py::arg("tol") = 1e-10,
      "Integrate a 1-form over the ccw circle |z - center| = radius");
}
