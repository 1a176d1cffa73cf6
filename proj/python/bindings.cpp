// Python bindings: configurations and reports cross the boundary as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nullboot/cli.hpp"
#include "nullboot/oracle.hpp"

namespace py = pybind11;
using namespace nullboot;

namespace {

ProblemSpec named_problem(const std::string& name) {
  RunConfig c;
  c.problem = name;
  return problem_from_config(c);
}

Json energies_json(const EnergySeries& e) {
  Json out = Json::array();
  for (const auto& poly : e.orders) out.push_back(level_coeffs_json(poly));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact null-bootstrap engine for perturbed oscillators.";

  static py::exception<Error> engine_error(m, "EngineError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = engine_error;
      py::object inst = exc(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  m.def(
      "run",
      [](const std::string& config_text, const std::string& mode) {
        RunOutcome out;
        {
          RunConfig cfg = parse_config(config_text);
          py::gil_scoped_release release;
          out = run(cfg, mode_from_string(mode));
        }
        return py::make_tuple(out.report.dump(), out.exit_code);
      },
      py::arg("config"), py::arg("mode") = "solve",
      "Runs solve, verify or compare on a JSON configuration; returns (report JSON, exit code).");

  m.def(
      "render_latex",
      [](const std::string& config_text, const std::string& mode) {
        RunConfig cfg = parse_config(config_text);
        py::gil_scoped_release release;
        return nullboot::render_latex(run(cfg, mode_from_string(mode)));
      },
      py::arg("config"), py::arg("mode") = "solve");

  m.def(
      "energies",
      [](const std::string& problem, int max_order) {
        ProblemSpec spec = named_problem(problem);
        BootstrapConfig bc;
        bc.max_order = max_order;
        py::gil_scoped_release release;
        return energies_json(bootstrap(spec, bc).energies).dump();
      },
      py::arg("problem"), py::arg("max_order") = 2,
      "Bootstrap energies E^(i)(n) as JSON lists of coefficients in n.");

  m.def(
      "rs_energy",
      [](const std::string& problem, int order) { return level_coeffs_json(rs_energy(named_problem(problem), order)).dump(); },
      py::arg("problem"), py::arg("order"));

  m.def(
      "rs_ladder",
      [](const std::string& problem, int order) {
        auto [lo, up] = rs_ladder(named_problem(problem), order);
        return Json{{"lower", to_json(lo)}, {"raiser", to_json(up)}}.dump();
      },
      py::arg("problem"), py::arg("order"));

  m.def("verify_v_conjugation", [](const std::string& problem, int order) {
    return verify_v_conjugation(named_problem(problem), order);
  }, py::arg("problem"), py::arg("order"));
}
