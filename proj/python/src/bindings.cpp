#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdga/io.hpp"
#include "gdga/project.hpp"

namespace py = pybind11;
using namespace gdga;

namespace {

ProjectOverrides overrides(const std::optional<std::string>& backend, const std::optional<std::string>& mc,
                           const std::optional<std::string>& cutoff, const std::optional<std::string>& convention,
                           std::optional<int> kmax, const std::optional<std::string>& lambda0, std::optional<int> r_max) {
    ProjectOverrides o;
    o.backend_file = backend;
    o.mc_file = mc;
    if (cutoff) o.cutoff = parse_rational(*cutoff);
    if (convention) o.convention = parse_convention(*convention);
    o.kmax = kmax;
    if (lambda0) o.lambda0 = parse_rational(*lambda0);
    o.r_max = r_max;
    return o;
}

// Returns (exit code, JSON report, JSON certificate or "null").
std::tuple<int, std::string, std::string> run(const std::string& verb, const std::optional<std::string>& project,
                                              const std::optional<std::string>& backend,
                                              const std::optional<std::string>& mc,
                                              const std::optional<std::string>& cutoff,
                                              const std::optional<std::string>& convention, std::optional<int> kmax,
                                              const std::optional<std::string>& lambda0, std::optional<int> r_max,
                                              const std::optional<std::string>& certificate) {
    CommandResult r;
    {
        py::gil_scoped_release nogil;
        Project p = load_project(project, overrides(backend, mc, cutoff, convention, kmax, lambda0, r_max));
        if (verb == "validate") r = cmd_validate(p);
        else if (verb == "deform") r = cmd_deform(p);
        else if (verb == "solve-bounding-chain") r = cmd_solve(p);
        else if (verb == "obstruct") r = cmd_obstruct(p);
        else if (verb == "spectral") r = cmd_spectral(p);
        else if (verb == "pipeline") r = cmd_pipeline(p);
        else if (verb == "replay-certificate") {
            if (!certificate) throw std::invalid_argument("replay-certificate needs a certificate");
            r = cmd_replay(p, json::parse(*certificate));
        } else
            throw std::invalid_argument("unknown command: " + verb);
    }
    json j = r.to_json();
    j["command"] = verb;
    return {r.exit, canonical_dump(j), canonical_dump(r.certificate)};
}

}  // namespace

PYBIND11_MODULE(_gdga, m) {
    m.doc() = "gapped dg algebra toolkit";
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    m.def("run", &run, py::arg("verb"), py::arg("project") = py::none(), py::arg("backend") = py::none(),
          py::arg("mc") = py::none(), py::arg("cutoff") = py::none(), py::arg("convention") = py::none(),
          py::arg("kmax") = py::none(), py::arg("lambda0") = py::none(), py::arg("r_max") = py::none(),
          py::arg("certificate") = py::none());
    m.def("parse_rational", [](const std::string& s) { return to_string(parse_rational(s)); });
}
