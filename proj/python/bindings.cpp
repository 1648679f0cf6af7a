#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sqgain/analytic.hpp"
#include "sqgain/crosscheck.hpp"
#include "sqgain/detector.hpp"
#include "sqgain/error.hpp"
#include "sqgain/optimizer.hpp"
#include "sqgain/report.hpp"
#include "sqgain/version.hpp"

namespace py = pybind11;
using namespace sqgain;

namespace {

StateSpec spec_for(int ancilla, int k, double S_dB, double B) {
  return StateSpec::from_input(ancilla, k, squeeze_from_db(S_dB).y, B);
}

}  // namespace

PYBIND11_MODULE(_sqgain, m) {
  m.doc() = "Squeezing gain of photon-subtracted squeezed vacuum";
  m.attr("__version__") = kVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_ValueError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);

  py::class_<SqueezeParams>(m, "SqueezeParams")
      .def_readonly("s", &SqueezeParams::s)
      .def_readonly("y", &SqueezeParams::y)
      .def_readonly("S_dB", &SqueezeParams::S_dB)
      .def_readonly("mean_n", &SqueezeParams::mean_n);
  m.def("squeeze_from_db", &squeeze_from_db, py::arg("S_dB"));

  m.def(
      "variance",
      [](int ancilla, int k, double S_dB, double B) { return variance(spec_for(ancilla, k, S_dB, B)); },
      py::arg("ancilla"), py::arg("k"), py::arg("S_dB"), py::arg("B"));
  m.def(
      "probability",
      [](int ancilla, int k, double S_dB, double B) {
        return probability(spec_for(ancilla, k, S_dB, B));
      },
      py::arg("ancilla"), py::arg("k"), py::arg("S_dB"), py::arg("B"));
  m.def(
      "mean_photon",
      [](int ancilla, int k, double S_dB, double B) {
        return mean_photon(spec_for(ancilla, k, S_dB, B));
      },
      py::arg("ancilla"), py::arg("k"), py::arg("S_dB"), py::arg("B"));
  m.def(
      "coefficients",
      [](int ancilla, int k, double S_dB, double B, int n_max) {
        return state_coefficients(spec_for(ancilla, k, S_dB, B), n_max).coeffs;
      },
      py::arg("ancilla"), py::arg("k"), py::arg("S_dB"), py::arg("B"), py::arg("n_max") = 80);
  m.def(
      "variance_eta",
      [](int k, double S_dB, double B, double eta) {
        return variance_eta(k, spec_for(0, k, S_dB, B).y1, B, eta);
      },
      py::arg("k"), py::arg("S_dB"), py::arg("B"), py::arg("eta"));

  py::class_<BRange>(m, "BRange")
      .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &BRange::lo)
      .def_readwrite("hi", &BRange::hi);
  m.def("default_b_range", &default_b_range);

  py::class_<Branch>(m, "Branch")
      .def(py::init<int, int, double>(), py::arg("k") = 2, py::arg("ancilla") = 0,
           py::arg("eta") = 1.0)
      .def_readwrite("k", &Branch::k)
      .def_readwrite("ancilla", &Branch::ancilla)
      .def_readwrite("eta", &Branch::eta);

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("S_dB", &OptimizationResult::S_dB)
      .def_readonly("k", &OptimizationResult::k)
      .def_readonly("ancilla", &OptimizationResult::ancilla)
      .def_readonly("eta", &OptimizationResult::eta)
      .def_readonly("B_opt", &OptimizationResult::B_opt)
      .def_readonly("var_min", &OptimizationResult::var_min)
      .def_readonly("gain_dB", &OptimizationResult::gain_dB)
      .def_readonly("prob", &OptimizationResult::prob)
      .def_readonly("mean_n", &OptimizationResult::mean_n)
      .def_property_readonly("squeeze_out_dB", &OptimizationResult::squeeze_out_dB);

  m.def("minimize_over_B", &minimize_over_B, py::arg("S_dB"), py::arg("branch"),
        py::arg("range") = default_b_range());
  m.def("gain_width", &gain_width, py::arg("branch"), py::arg("range") = default_b_range(),
        py::arg("S_hi") = 15.0);
  m.def("max_gain", &max_gain, py::arg("branch"), py::arg("range") = default_b_range(),
        py::arg("S_lo") = 0.05, py::arg("S_hi") = 6.0);

  py::class_<OracleComparison>(m, "OracleComparison")
      .def_readonly("var_closed", &OracleComparison::var_closed)
      .def_readonly("var_oracle", &OracleComparison::var_oracle)
      .def_readonly("prob_closed", &OracleComparison::prob_closed)
      .def_readonly("prob_oracle", &OracleComparison::prob_oracle)
      .def_readonly("mean_closed", &OracleComparison::mean_closed)
      .def_readonly("mean_oracle", &OracleComparison::mean_oracle)
      .def_readonly("state_dev", &OracleComparison::state_dev)
      .def_readonly("input_tail", &OracleComparison::input_tail)
      .def_readonly("conditional_tail", &OracleComparison::conditional_tail)
      .def("within_tolerance", &OracleComparison::within_tolerance);
  m.def(
      "compare_with_oracle",
      [](double S_dB, double B, int k, int ancilla, double eta, int n_max) {
        return compare_with_oracle(OraclePoint{S_dB, B, k, ancilla, eta},
                                   TruncationConfig{n_max, TruncationConfig{}.tail_tol});
      },
      py::arg("S_dB"), py::arg("B"), py::arg("k"), py::arg("ancilla") = 0, py::arg("eta") = 1.0,
      py::arg("n_max") = 80);

  // Same entry point as the command-line tool; returns (exit code, stdout, stderr).
  m.def(
      "run",
      [](const std::string& command, std::vector<int> k, int ancilla, double eta,
         const std::string& s, const std::string& b_range, std::vector<double> b, int n_max) {
        RunConfig cfg;
        cfg.command = command;
        cfg.k_list = std::move(k);
        cfg.ancilla = ancilla;
        cfg.eta = eta;
        cfg.b_values = std::move(b);
        cfg.n_max = n_max;
        std::ostringstream out, err;
        int code = kExitOk;
        try {
          if (!s.empty()) cfg.s_range = parse_s_range(s);
          if (!b_range.empty()) cfg.b_range = parse_b_range(b_range);
          code = run_command(cfg, out, err);
        } catch (const UsageError& e) {
          err << "usage error: " << e.what() << "\n";
          code = kExitUsage;
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("command"), py::arg("k") = std::vector<int>{}, py::arg("ancilla") = 0,
      py::arg("eta") = 1.0, py::arg("s") = "", py::arg("b_range") = "",
      py::arg("b") = std::vector<double>{}, py::arg("n_max") = 80);
}
