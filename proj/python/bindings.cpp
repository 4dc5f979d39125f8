#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "walters/errors.hpp"
#include "walters/gibbs.hpp"
#include "walters/oracle.hpp"
#include "walters/report.hpp"
#include "walters/spec_io.hpp"
#include "walters/zerotemp.hpp"

namespace py = pybind11;
using namespace walters;

namespace {

Extension parse_extension(const std::string& s) {
  if (s == "last-run") return Extension::LastRun;
  if (s == "periodic") return Extension::Periodic;
  throw SpecError("python", "extension must be 'last-run' or 'periodic', got '" + s + "'");
}

std::vector<Word> to_words(const std::vector<std::string>& ws) {
  std::vector<Word> out;
  for (const auto& w : ws) out.emplace_back(w);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Thermodynamic quantities for Walters-class potentials on the 2-shift";

  static py::exception<Error> base(m, "WaltersError", PyExc_RuntimeError);
  static py::exception<Error> validation(m, "ValidationError", base.ptr());
  static py::exception<Error> numerical(m, "NumericalError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(e.kind() == ErrorKind::Validation ? validation : numerical, e.what());
    }
  });

  py::class_<WaltersPotential>(m, "Potential")
      .def_static("builtin", [](const std::string& name) { return builtin_potential(name).potential; },
                  py::arg("name"))
      .def_static("from_json",
                  [](const std::string& text) {
                    nlohmann::json j;
                    try {
                      j = nlohmann::json::parse(text);
                    } catch (const nlohmann::json::exception& e) {
                      throw SpecError("python", e.what());
                    }
                    return potential_from_json(j).potential;
                  },
                  py::arg("text"))
      .def("to_json", [](const WaltersPotential& f) { return potential_to_json(f).dump(); })
      .def("mirrored", &WaltersPotential::mirrored)
      .def_property_readonly("a", &WaltersPotential::a)
      .def_property_readonly("b", &WaltersPotential::b)
      .def_property_readonly("c", &WaltersPotential::c)
      .def_property_readonly("d", &WaltersPotential::d);

  m.def("builtin_names", &builtin_names);

  m.def("pressure",
        [](const WaltersPotential& f, double t) {
          const PressureSolution s = solve_pressure(f, t);
          py::dict d;
          d["t"] = s.t;
          d["pressure"] = s.pressure;
          d["epsilon"] = s.epsilon;
          d["iterations"] = s.iterations;
          d["residual"] = s.residual;
          return d;
        },
        py::arg("f"), py::arg("t"));

  m.def("h_values",
        [](const WaltersPotential& f, double t, int q_max) {
          const EigenValues h = h_values(f, t, {}, EigenOptions{.q_max = q_max});
          std::vector<double> alpha, beta;
          for (int q = 1; q <= q_max; ++q) {
            alpha.push_back(h.alpha(q).log());
            beta.push_back(h.beta(q).log());
          }
          py::dict d;
          d["log_alpha"] = alpha;
          d["log_beta"] = beta;
          d["log_beta_inf"] = h.beta_inf().log();
          d["max_residual"] = max_eigen_residual(h, q_max);
          return d;
        },
        py::arg("f"), py::arg("t"), py::arg("q_max") = 30, "logs of alpha_q, beta_q (q = 1..q_max) and beta_inf");

  m.def("gibbs",
        [](const WaltersPotential& f, double t) {
          const GibbsTable g = top_cylinders(f, t);
          py::dict d;
          d["log_mu0"] = g.mu0().log();
          d["log_mu1"] = g.mu1().log();
          d["log_s0"] = g.s0().log();
          d["log_s1"] = g.s1().log();
          d["ratio_log"] = g.ratio_log();
          return d;
        },
        py::arg("f"), py::arg("t"));

  m.def("cylinder_log",
        [](const WaltersPotential& f, double t, const std::vector<std::string>& words) {
          const GibbsTable g = top_cylinders(f, t);
          std::vector<double> out;
          for (const Word& w : to_words(words)) out.push_back(g.cylinder(w).log());
          return out;
        },
        py::arg("f"), py::arg("t"), py::arg("words"), "log mu_t[w] for each word");

  m.def("compute_A",
        [](const WaltersPotential& f) {
          const ZeroTempConstant A = compute_A(f);
          return py::make_tuple(A.value, to_string(A.kase));
        },
        py::arg("f"));

  m.def("beta_max", &beta_max, py::arg("f"));

  m.def("select_measure", [](const WaltersPotential& f) { return nlohmann::json(select_measure(f)).dump(); },
        py::arg("f"));

  m.def("limit_report",
        [](const WaltersPotential& f, int q_cap, const std::vector<double>& t_grid,
           const std::vector<std::string>& words) {
          const auto ws = to_words(words);
          return nlohmann::json(limit_report(f, q_cap, t_grid, ws)).dump();
        },
        py::arg("f"), py::arg("q_cap") = 10, py::arg("t_grid") = std::vector<double>{},
        py::arg("words") = std::vector<std::string>{});

  m.def("oracle",
        [](const WaltersPotential& f, double t, int k, const std::string& extension,
           const std::vector<std::string>& words) {
          OracleOptions opts;
          opts.extension = parse_extension(extension);
          std::optional<DepthKModel> built;
          {
            py::gil_scoped_release release;
            built.emplace(f, t, k, opts);
          }
          const DepthKModel& model = *built;
          std::vector<double> cyl;
          for (const Word& w : to_words(words)) cyl.push_back(model.cylinder(w).log());
          py::dict d;
          d["log_lambda"] = model.log_lambda();
          d["bracket_width"] = model.bracket_width();
          d["method"] = model.method() == OracleMethod::Power ? "power" : "reduced";
          d["cylinder_log"] = cyl;
          return d;
        },
        py::arg("f"), py::arg("t"), py::arg("k"), py::arg("extension") = "last-run",
        py::arg("words") = std::vector<std::string>{});
}
