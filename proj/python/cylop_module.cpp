#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cylop/commands.hpp"

namespace py = pybind11;
using namespace cylop;

namespace {

std::optional<Json> optional_json(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  return Json::parse(*s);
}

py::tuple result(const CommandResult& r) { return py::make_tuple(r.ok, r.json.dump(), r.text); }

}  // namespace

PYBIND11_MODULE(_cylop, m) {
  m.doc() = "Exact computations in cobar and cylinder operads of finite cooperads";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<LiftFailure>(m, "LiftFailure", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "cooperad_json",
      [](const std::string& spec, int cap) { return cooperad_to_json(load_truncated(spec, cap)).dump(); },
      py::arg("spec"), py::arg("cap") = -1);
  m.def(
      "validate", [](const std::string& spec, int cap) { return result(run_validate(load_truncated(spec, cap))); },
      py::arg("spec"), py::arg("cap") = -1);
  m.def(
      "cohomology",
      [](const std::string& spec, int n, bool weight0, int cap) {
        return result(run_cohomology(load_truncated(spec, cap), n, weight0));
      },
      py::arg("spec"), py::arg("n"), py::arg("weight0") = false, py::arg("cap") = -1);
  m.def(
      "lift",
      [](const std::string& spec, const std::optional<std::string>& derivation, std::uint64_t seed, int cap) {
        return result(run_lift(load_truncated(spec, cap), optional_json(derivation), seed));
      },
      py::arg("spec"), py::arg("derivation") = py::none(), py::arg("seed") = 1, py::arg("cap") = -1);
  m.def(
      "transport",
      [](const std::string& spec, const std::string& triple, const std::optional<std::string>& derivation,
         std::uint64_t seed, int cap) {
        return result(run_transport(load_truncated(spec, cap), Json::parse(triple), optional_json(derivation), seed));
      },
      py::arg("spec"), py::arg("triple"), py::arg("derivation") = py::none(), py::arg("seed") = 1,
      py::arg("cap") = -1);
  m.def(
      "mc_check",
      [](const std::string& spec, const std::string& element, int cap) {
        return result(run_mc_check(load_truncated(spec, cap), Json::parse(element)));
      },
      py::arg("spec"), py::arg("element"), py::arg("cap") = -1);
}
