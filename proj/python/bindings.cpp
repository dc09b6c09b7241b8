#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pfp/cli.hpp"
#include "pfp/report.hpp"
#include "pfp/suite.hpp"

namespace py = pybind11;

namespace {

template <typename T>
void take(const py::dict& d, const char* key, T& field)
{
    if (d.contains(key) && !d[key].is_none())
        field = d[key].cast<T>();
}

template <typename T>
void take(const py::dict& d, const char* key, std::optional<T>& field)
{
    if (d.contains(key) && !d[key].is_none())
        field = d[key].cast<T>();
}

pfp::RunConfig config_from_dict(const std::string& command, const py::dict& d)
{
    static const std::vector<std::string> known = {
        "group", "format", "seed", "mem_cap", "element", "p", "scan", "radius", "amplify", "restarts", "tol",
        "max_iter", "measure", "nmax", "mc_samples", "speed_n", "bits", "lengths", "words", "gram_radius", "hx",
        "h", "speed", "dim", "n", "trials", "family", "space_p", "suite"};
    for (const auto& item : d) {
        const auto key = item.first.cast<std::string>();
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw py::value_error("unknown option '" + key + "'");
    }
    pfp::RunConfig c;
    c.command = command;
    take(d, "group", c.group);
    take(d, "format", c.format);
    take(d, "seed", c.seed);
    take(d, "mem_cap", c.mem_cap);
    take(d, "element", c.element);
    take(d, "p", c.p);
    take(d, "scan", c.scan);
    take(d, "radius", c.radius);
    take(d, "amplify", c.amplify);
    take(d, "restarts", c.restarts);
    take(d, "tol", c.tol);
    take(d, "max_iter", c.max_iter);
    take(d, "measure", c.measure);
    take(d, "nmax", c.nmax);
    take(d, "mc_samples", c.mc_samples);
    take(d, "speed_n", c.speed_n);
    take(d, "bits", c.bits);
    take(d, "lengths", c.lengths);
    take(d, "words", c.words);
    take(d, "gram_radius", c.gram_radius);
    take(d, "hx", c.hx);
    take(d, "h", c.h);
    take(d, "speed", c.speed);
    take(d, "dim", c.dim);
    take(d, "n", c.n);
    take(d, "trials", c.trials);
    take(d, "family", c.family);
    take(d, "space_p", c.space_p);
    take(d, "suite", c.suite);
    return c;
}

py::tuple run(const std::string& command, const py::dict& options)
{
    const auto config = config_from_dict(command, options);
    std::ostringstream out;
    int status = 0;
    {
        py::gil_scoped_release release;
        status = pfp::run(config, out);
    }
    return py::make_tuple(status, out.str());
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Bindings for the pfp core library";
    m.attr("__version__") = PFP_VERSION;
    m.def("run", &run, py::arg("command"), py::arg("options") = py::dict(),
          "Runs a pf subcommand; returns (exit status, report text).");
    m.def("suite_names", &pfp::suite_names);
    m.def(
        "criteria",
        [](int k, double h, double speed, double hx, double p) {
            return pfp::report_json(pfp::criteria_report(k, h, speed, hx, p)).dump();
        },
        py::arg("k"), py::arg("h"), py::arg("speed"), py::arg("hx"), py::arg("p"));
    m.def(
        "xi_srw_closed_form", &pfp::xi_srw_closed_form, py::arg("rank"), py::arg("length"));
}
