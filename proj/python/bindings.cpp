#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nufactor/convolutions.hpp"
#include "nufactor/counts.hpp"
#include "nufactor/density.hpp"
#include "nufactor/divisors.hpp"
#include "nufactor/errors.hpp"
#include "nufactor/harness.hpp"
#include "nufactor/minorants.hpp"
#include "nufactor/params.hpp"
#include "nufactor/sieve.hpp"

namespace py = pybind11;
using namespace nufactor;

namespace {

EulerProductConfig euler(std::uint64_t prime_limit, double tol) {
  EulerProductConfig cfg;
  cfg.prime_limit = prime_limit;
  cfg.tail_tolerance = tol;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_nufactor, m) {
  m.doc() = "Exact omega counts and Hildebrand-Tenenbaum densities";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def("primes", [](std::uint64_t limit) { return build_prime_table(limit).primes; },
        py::arg("limit"));

  m.def(
      "pi_nu",
      [](std::uint64_t x, std::uint64_t y, bool multiplicity, unsigned threads) {
        py::gil_scoped_release release;
        const auto mode = multiplicity ? OmegaMode::with_multiplicity : OmegaMode::distinct;
        return pi_nu(x, y, mode, SieveOptions{std::uint64_t{1} << 20, threads}).counts_by_nu;
      },
      py::arg("x"), py::arg("y"), py::arg("multiplicity") = false, py::arg("threads") = 1,
      "Counts of n in (x, x+y] by omega(n) (or Omega(n)), indexed by nu.");

  m.def("rough_count", [](std::uint64_t x, unsigned v, std::uint64_t t) {
    return rough_count(x, v, t).count;
  });

  m.def("scale_L", &scale_L, py::arg("nu"), py::arg("log_x"));

  py::class_<SaddlePoint>(m, "SaddlePoint")
      .def_readonly("nu", &SaddlePoint::nu)
      .def_readonly("rho", &SaddlePoint::rho)
      .def_readonly("alpha", &SaddlePoint::alpha)
      .def_readonly("residual_r", &SaddlePoint::residual_r)
      .def_readonly("residual_a", &SaddlePoint::residual_a)
      .def_readonly("objective", &SaddlePoint::objective)
      .def_readonly("iterations", &SaddlePoint::iterations);

  m.def(
      "solve_saddle",
      [](unsigned nu, double log_x, std::uint64_t prime_limit, double tol) {
        return solve_saddle(nu, log_x, euler(prime_limit, tol));
      },
      py::arg("nu"), py::arg("log_x"), py::arg("prime_limit") = 10'000'000,
      py::arg("tol") = 1e-4);

  m.def(
      "log_density",
      [](unsigned nu, double log_x, const std::string& regime, std::uint64_t prime_limit,
         double tol) {
        const auto cfg = euler(prime_limit, tol);
        if (regime == "saddle") return density_ht(nu, log_x, cfg).log_delta;
        if (regime == "small") return density_small_nu(nu, log_x, cfg).log_delta;
        if (regime == "landau") return density_landau(nu, log_x).log_delta;
        throw ParameterError("regime must be saddle, small or landau");
      },
      py::arg("nu"), py::arg("log_x"), py::arg("regime") = "saddle",
      py::arg("prime_limit") = 10'000'000, py::arg("tol") = 1e-4);

  m.def(
      "log_big_g",
      [](double z, double s) { return big_g(z, s, EulerProductConfig{}); }, py::arg("z"),
      py::arg("s"));
  m.def(
      "log_euler_h", [](double s) { return euler_h(s, EulerProductConfig{}); }, py::arg("s"));
  m.def(
      "log_square_harmonic", [](unsigned k) { return square_harmonic(k, EulerProductConfig{}); },
      py::arg("k"));

  m.def("tau_k", py::overload_cast<std::uint64_t, unsigned>(&tau_k), py::arg("n"), py::arg("k"));

  m.def(
      "divisor_sum",
      [](std::uint64_t x, std::uint64_t y, unsigned k, const std::string& mode, double cap) {
        const auto r = short_divisor_sum(x, y, k, cap_mode_from_string(mode), cap,
                                         prime_table_for(x + y));
        py::dict d;
        d["total"] = r.total;
        d["terms"] = r.terms;
        d["log_total"] = r.log_total;
        d["paper_bound"] = r.paper_bound;
        d["within_bound"] = r.within_bound;
        return d;
      },
      py::arg("x"), py::arg("y"), py::arg("k"), py::arg("cap_mode") = "none",
      py::arg("cap") = 0.0);

  m.def(
      "minorant_prime",
      [](std::uint64_t x, std::uint64_t y, unsigned nu, std::optional<double> tau_cap,
         bool force) {
        MinorantCaps caps;
        caps.tau_cap = tau_cap;
        caps.force = force;
        const auto c = minorant_prime(x, y, nu, caps);
        return py::make_tuple(c.pairs, c.distinct);
      },
      py::arg("x"), py::arg("y"), py::arg("nu"), py::arg("tau_cap") = py::none(),
      py::arg("force") = false, "(pairs, distinct) for the M' minorant.");

  m.def("combinatorial_c", [](unsigned v) {
    const auto c = combinatorial_c(v);
    return py::make_tuple(c.value, c.bound_ok);
  });

  m.def(
      "f_v",
      [](unsigned v, std::uint64_t limit) { return f_v_table(v, limit).values; },
      py::arg("v"), py::arg("limit"), "F_v(0..limit); index 0 is unused.");

  m.def(
      "run",
      [](const std::string& config_text) {
        ExperimentConfig cfg;
        apply_config_text(cfg, config_text);
        std::ostringstream out;
        RunSummary s;
        {
          py::gil_scoped_release release;
          s = run_experiment(cfg, out);
        }
        return py::make_tuple(out.str(), s.exit_code());
      },
      py::arg("config"), "Runs an experiment from key = value text; returns (csv, exit code).");
}
