#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weilflow/errors.hpp"
#include "weilflow/report.hpp"

namespace py = pybind11;
using namespace weilflow;

namespace {

// Parsed and gated input, as the CLI prepares it.
struct Prepared {
  WeilDatum datum;
  OrdinarityVerdict verdict;
  FrobeniusModel model;
};

Prepared prepare(const std::string& doc, bool allow_non_ordinary, int max_dimension) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(doc);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadInput, std::string("input is not valid JSON: ") + e.what(), "input");
  }
  Prepared p;
  p.datum = parse_and_validate(parsed, ValidateOptions{max_dimension});
  p.verdict = check_ordinary(p.datum);
  if (!p.verdict.is_ordinary && !allow_non_ordinary) {
    throw Error(ErrorKind::NonOrdinary, "middle coefficient c_g = " + to_string(p.verdict.middle_coefficient) +
                                            " is divisible by p = " + std::to_string(p.datum.p),
                "ordinarity");
  }
  p.model = frobenius_model(p.datum);
  return p;
}

std::string validate_json(const std::string& doc, bool allow, int max_dimension) {
  const Prepared p = prepare(doc, allow, max_dimension);
  return dump_stable(validate_report(p.datum, p.model, p.verdict));
}

std::string zeta_json(const std::string& doc, bool allow, int max_dimension) {
  const Prepared p = prepare(doc, allow, max_dimension);
  const PjFamily fam = build_pj_family(p.model);
  return dump_stable(zeta_report(p.datum, p.model, fam, functional_equation_check(fam)));
}

std::string count_json(const std::string& doc, int range, bool allow, int max_dimension) {
  if (range < 1) throw Error(ErrorKind::BadInput, "range must be >= 1", "config");
  const Prepared p = prepare(doc, allow, max_dimension);
  const CountTable ct = count_table(p.model, range);
  return dump_stable(count_report(p.datum, ct, orbit_table(p.model, ct, range)));
}

std::string spectrum_json(const std::string& doc, double window, bool allow, int max_dimension) {
  if (!(window >= 0.0)) throw Error(ErrorKind::BadInput, "window must be >= 0", "config");
  const Prepared p = prepare(doc, allow, max_dimension);
  const PjFamily fam = build_pj_family(p.model);
  const ZeroLattice lat = zero_lattice(fam);
  SpectrumWindow sw{window, {}};
  for (int j = 0; j <= 2 * p.datum.g; ++j) sw.zeros.push_back(zeros_in_window(lat, j, window));
  return dump_stable(spectrum_report(p.datum, lat, fam, sw, functional_equation_check(fam)));
}

std::string verify_json(const std::string& doc, const std::vector<Bump>& bumps, double tolerance, std::int64_t nu_cap,
                        int threads, bool allow, int max_dimension) {
  const Prepared p = prepare(doc, allow, max_dimension);
  VerifyOptions opt;
  opt.tolerance = tolerance;
  opt.allow_non_ordinary = allow;
  opt.trace.nu_cap = nu_cap;
  opt.trace.threads = threads;
  const TestFunction alpha(bumps);
  return dump_stable(verify_report(verify(p.datum, alpha, opt), alpha, false));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Explicit-formula verification for ordinary abelian varieties over finite fields";

  static py::exception<Error> error_type(m, "WeilflowError");
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& e) {
      // args = (kind, stage, message)
      const py::tuple args = py::make_tuple(std::string(to_string(e.kind())), e.stage(), std::string(e.what()));
      PyErr_SetObject(error_type.ptr(), args.ptr());
    }
  });

  py::class_<Bump>(m, "Bump")
      .def(py::init<double, double, double>(), py::arg("center"), py::arg("width"), py::arg("amplitude") = 1.0)
      .def_readwrite("center", &Bump::center)
      .def_readwrite("width", &Bump::width)
      .def_readwrite("amplitude", &Bump::amplitude)
      .def("__call__", &Bump::operator(), py::arg("t"))
      .def("derivative", &Bump::derivative, py::arg("t"), py::arg("order"))
      .def("__eq__", [](const Bump& a, const Bump& b) { return a == b; })
      .def("__repr__", [](const Bump& b) {
        return "Bump(center=" + format_double(b.center) + ", width=" + format_double(b.width) +
               ", amplitude=" + format_double(b.amplitude) + ")";
      });

  m.def("parse_bump", &parse_bump_spec, py::arg("spec"));
  m.def(
      "phi", [](const std::vector<Bump>& bumps, Complex s) { return phi(TestFunction(bumps), s).value; },
      py::arg("bumps"), py::arg("s"));
  m.def(
      "tail_majorant", [](const std::vector<Bump>& bumps, double sigma, int order) {
        return tail_majorant(TestFunction(bumps), sigma, order).constant;
      },
      py::arg("bumps"), py::arg("sigma"), py::arg("order") = 2);

  m.def("validate_json", &validate_json, py::arg("doc"), py::arg("allow_non_ordinary") = false,
        py::arg("max_dimension") = 8);
  m.def("zeta_json", &zeta_json, py::arg("doc"), py::arg("allow_non_ordinary") = false, py::arg("max_dimension") = 8);
  m.def("count_json", &count_json, py::arg("doc"), py::arg("range") = 12, py::arg("allow_non_ordinary") = false,
        py::arg("max_dimension") = 8);
  m.def("spectrum_json", &spectrum_json, py::arg("doc"), py::arg("window") = 10.0,
        py::arg("allow_non_ordinary") = false, py::arg("max_dimension") = 8);
  m.def("verify_json", &verify_json, py::arg("doc"), py::arg("bumps"), py::arg("tolerance") = 1e-8,
        py::arg("nu_cap") = 10'000'000, py::arg("threads") = 1, py::arg("allow_non_ordinary") = false,
        py::arg("max_dimension") = 8, py::call_guard<py::gil_scoped_release>());
}
