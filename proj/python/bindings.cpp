#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "abelmoments/group_oracle.hpp"
#include "abelmoments/hall_littlewood.hpp"
#include "abelmoments/inversion.hpp"
#include "abelmoments/json_io.hpp"
#include "abelmoments/simulator.hpp"
#include "abelmoments/verify.hpp"

namespace py = pybind11;
using namespace abelmoments;
using io::json;

// Rationals cross the boundary as "num/den" strings and structured values as
// JSON text; the Python package turns them into Fractions and dicts.

namespace {

Partition to_partition(const std::vector<int>& parts) { return Partition(parts); }

TruncationPolicy make_policy(const std::string& mode, int cap, const std::string& tolerance, int window,
                             int hard_cap, bool finite) {
  std::string chosen = mode.empty() ? (finite ? "exact" : "cap") : mode;
  if (chosen == "exact") return TruncationPolicy::exact();
  if (chosen == "cap") {
    if (cap < 0) throw DomainError("cap mode needs a cap");
    return TruncationPolicy::capped(cap);
  }
  if (chosen == "adaptive") return TruncationPolicy::adaptive_until(Rational::parse(tolerance), window, hard_cap);
  throw DomainError("unknown truncation mode '" + mode + "'");
}

std::string result_json(const InversionResult& r) { return io::to_json(r).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact moment inversion for random finite abelian p-groups";

  // Translators run newest first, so the most derived type is registered last.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "sur_count",
      [](const std::vector<int>& lambda, const std::vector<int>& mu, long p, bool brute) {
        const Partition l = to_partition(lambda), u = to_partition(mu);
        return (brute ? oracle::brute_sur_count(l, u, p) : hl::surjection_count(l, u, p)).get_str();
      },
      py::arg("lambda_"), py::arg("mu"), py::arg("p"), py::arg("brute") = false);

  m.def(
      "inversion_coefficient",
      [](const std::vector<int>& nu, const std::vector<int>& mu, const std::string& t) {
        return hl::inversion_coefficient(to_partition(nu), to_partition(mu), Rational::parse(t)).str();
      },
      py::arg("nu"), py::arg("mu"), py::arg("t"));

  m.def(
      "cancellation_sum",
      [](const std::vector<int>& lambda, const std::vector<int>& nu, const std::string& t) {
        return hl::cancellation_sum(to_partition(lambda), to_partition(nu), Rational::parse(t)).str();
      },
      py::arg("lambda_"), py::arg("nu"), py::arg("t"));

  m.def(
      "moments_from_distribution",
      [](const std::string& dist_json, std::optional<std::vector<std::vector<int>>> mus) {
        const Distribution dist = io::distribution_from_json(json::parse(dist_json));
        if (!mus) return io::to_json(moments_from_distribution(dist)).dump();
        std::vector<Partition> list;
        for (const auto& mu : *mus) list.push_back(to_partition(mu));
        return io::to_json(moments_from_distribution(dist, list)).dump();
      },
      py::arg("dist_json"), py::arg("mus") = py::none());

  m.def(
      "invert",
      [](const std::string& table_json, const std::vector<int>& nu, const std::string& mode, int cap,
         const std::string& tolerance, int window, int hard_cap) {
        const MomentTable table = io::moment_table_from_json(json::parse(table_json));
        return result_json(
            invert(table, to_partition(nu), make_policy(mode, cap, tolerance, window, hard_cap, table.finite())));
      },
      py::arg("table_json"), py::arg("nu"), py::arg("mode") = "", py::arg("cap") = -1,
      py::arg("tolerance") = "1/1000000000", py::arg("window") = 3, py::arg("hard_cap") = 200);

  m.def(
      "invert_fixed_level",
      [](const std::string& table_json, const std::vector<int>& nu, int level, const std::string& mode, int cap) {
        const MomentTable table = io::moment_table_from_json(json::parse(table_json));
        return result_json(invert_fixed_level(table, to_partition(nu), level,
                                              make_policy(mode, cap, "1/1000000000", 3, 200, table.finite())));
      },
      py::arg("table_json"), py::arg("nu"), py::arg("level"), py::arg("mode") = "", py::arg("cap") = -1);

  m.def(
      "invert_multi",
      [](const std::string& table_json, const std::vector<std::vector<int>>& nus, const std::string& mode, int cap) {
        const MultiMomentTable table = io::multi_moment_table_from_json(json::parse(table_json));
        PartitionTuple tuple;
        for (const auto& nu : nus) tuple.push_back(to_partition(nu));
        return result_json(invert_multi(table, tuple, make_policy(mode, cap, "1/1000000000", 3, 200, table.finite())));
      },
      py::arg("table_json"), py::arg("nus"), py::arg("mode") = "", py::arg("cap") = -1);

  m.def(
      "verify",
      [](const std::string& suite, int max_size, const std::string& t, const std::string& q, const std::string& u,
         long p) {
        verify::SuiteOptions options;
        options.max_size = max_size;
        options.t = Rational::parse(t);
        options.q = Rational::parse(q);
        options.u = Rational::parse(u);
        options.p = p;
        const verify::SuiteResult r = verify::run_suite(suite, options);
        return py::make_tuple(r.passed, r.total);
      },
      py::arg("suite"), py::arg("max_size") = 4, py::arg("t") = "1/2", py::arg("q") = "1/3", py::arg("u") = "2/7",
      py::arg("p") = 2);

  m.def("suite_names", &verify::suite_names);

  m.def(
      "simulate",
      [](const std::string& config_json, int probe_depth, const std::string& gap_tolerance) {
        const sim::SimConfig config = io::sim_config_from_json(json::parse(config_json));
        sim::ClosedLoopReport report;
        {
          py::gil_scoped_release release;
          report = sim::closed_loop_report(config, probe_depth, Rational::parse(gap_tolerance));
        }
        return io::to_json(report).dump();
      },
      py::arg("config_json"), py::arg("probe_depth") = 3, py::arg("gap_tolerance") = "1/50");

  m.def(
      "partitions",
      [](int max_size) {
        std::vector<std::vector<int>> out;
        for (const Partition& p : enumerate_up_to(max_size)) out.push_back(p.parts());
        return out;
      },
      py::arg("max_size"));

  m.def(
      "conjugate", [](const std::vector<int>& lambda) { return to_partition(lambda).conjugate().parts(); },
      py::arg("lambda_"));
}
