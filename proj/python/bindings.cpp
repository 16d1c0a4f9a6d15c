#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "stlab/cli.hpp"
#include "stlab/curve_family.hpp"
#include "stlab/errors.hpp"
#include "stlab/experiments.hpp"
#include "stlab/param_sets.hpp"
#include "stlab/point_count.hpp"
#include "stlab/st_stats.hpp"

namespace py = pybind11;
using namespace stlab;

namespace {

FamilyPoly family(const std::string& f, const std::string& g) {
  return FamilyPoly(parse_coefficients(f), parse_coefficients(g));
}

Interval interval(double alpha, double beta) { return Interval(alpha, beta); }

}  // namespace

PYBIND11_MODULE(_stlab, m) {
  m.doc() = "Sato-Tate statistics for one-parameter families of elliptic curves";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  static py::exception<DomainError> domain(m, "DomainError", base.ptr());
  static py::exception<HypothesisError> hypothesis(m, "HypothesisError", base.ptr());
  static py::exception<RefusedError> refused(m, "RefusedError", base.ptr());
  static py::exception<CacheError> cache(m, "CacheError", base.ptr());
  static py::exception<InternalError> internal(m, "InternalError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      py::set_error(domain, e.what());
    } catch (const HypothesisError& e) {
      py::set_error(hypothesis, e.what());
    } catch (const RefusedError& e) {
      py::set_error(refused, e.what());
    } catch (const CacheError& e) {
      py::set_error(cache, e.what());
    } catch (const InternalError& e) {
      py::set_error(internal, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<FamilyPoly>(m, "Family")
      .def(py::init(&family), py::arg("f"), py::arg("g"))
      .def_property_readonly("canonical", &FamilyPoly::canonical)
      .def_property_readonly("fingerprint", &FamilyPoly::fingerprint_hex)
      .def_property_readonly("deg_delta", &FamilyPoly::deg_delta)
      .def("nondeg", [](const FamilyPoly& f) { return std::string(to_string(check_nondeg_global(f).reason)); })
      .def("nondeg_mod_p",
           [](const FamilyPoly& f, std::uint64_t p) { return std::string(to_string(check_nondeg_mod_p(f, p).reason)); })
      .def("__repr__", [](const FamilyPoly& f) { return "Family(" + f.canonical() + ")"; });

  m.def("trace", [](const FamilyPoly& fam, std::uint64_t p, std::int64_t t) {
    const std::int64_t ts[] = {t};
    reduce_at(fam, t, p);
    return batch_traces(p, fam, ts).records.front().a;
  }, py::arg("family"), py::arg("p"), py::arg("t"));
  m.def("count_points_naive", [](std::uint64_t p, std::int64_t a, std::int64_t b) {
    return count_points_naive(CurveInstance(p, a, b));
  }, py::arg("p"), py::arg("a"), py::arg("b"));
  m.def("angle", py::overload_cast<std::int64_t, std::uint64_t>(&angle), py::arg("a"), py::arg("p"));
  m.def("mu_st", [](double a, double b) { return mu_st(Interval(a, b)); }, py::arg("alpha"), py::arg("beta"));
  m.def("sym", &sym, py::arg("n"), py::arg("theta"));
  m.def("star_discrepancy", [](std::vector<double> psis) { return star_discrepancy(AngleSample(std::move(psis))); });
  m.def("interval_discrepancy",
        [](std::vector<double> psis) { return interval_discrepancy(AngleSample(std::move(psis))); });
  m.def("order_sum", &order_sum, py::arg("x"), py::arg("lam"), py::arg("alpha"));
  m.def("divisor_window_count", &divisor_window_count, py::arg("x"), py::arg("y"));

  m.def("subgroup_angles", [](const FamilyPoly& fam, std::uint64_t p, std::uint64_t r) {
    const ParamSet s = subgroup(p, r);
    return vertical_sample(fam, p, s.elements, s.descriptor).psis;
  }, py::arg("family"), py::arg("p"), py::arg("r"));

  m.def("vertical_subgroup", [](const FamilyPoly& fam, std::uint64_t p, std::uint64_t r, double a, double b) {
    const VerticalReport rep = vertical_subgroup(fam, p, r, interval(a, b));
    py::dict d;
    d["count"] = rep.count;
    d["sample_size"] = rep.sample_size;
    d["expected"] = rep.expected;
    d["bracket"] = rep.theorem_bracket;
    d["ratio"] = rep.ratio;
    return d;
  }, py::arg("family"), py::arg("p"), py::arg("r"), py::arg("alpha") = 0.0, py::arg("beta") = 3.141592653589793);

  m.def("mixed_product", [](const FamilyPoly& fam, std::uint64_t x, std::vector<std::int64_t> u,
                            std::vector<std::int64_t> v, double a, double b, unsigned threads) {
    ExperimentOptions opts;
    opts.threads = threads;
    const MixedReport rep = mixed_product(fam, x, u, v, interval(a, b), opts);
    py::dict d;
    d["normalized_average"] = rep.normalized_average;
    d["total_count"] = rep.total_count;
    d["mu"] = rep.mu;
    d["bracket"] = rep.theorem_bracket;
    d["skipped_primes"] = rep.skipped_primes;
    return d;
  }, py::arg("family"), py::arg("x"), py::arg("u"), py::arg("v"), py::arg("alpha") = 0.0,
        py::arg("beta") = 3.141592653589793, py::arg("threads") = 1);

  m.def("charsum_max", [](const FamilyPoly& fam, std::uint64_t p, unsigned n_max) {
    std::vector<std::pair<double, double>> out;
    for (const auto& r : charsum_verify(fam, p, n_max)) out.emplace_back(r.max_abs, r.bound);
    return out;
  }, py::arg("family"), py::arg("p"), py::arg("n_max"));

  m.def("vaughan", [](const FamilyPoly& fam, std::uint64_t p, std::uint64_t limit, unsigned n, bool surrogate) {
    const VaughanReport r = vaughan_decompose(fam, p, limit, std::nullopt, std::nullopt, n, surrogate);
    py::dict d;
    d["direct_sum"] = r.direct_sum;
    d["sigma"] = std::vector<double>{r.sigma1, r.sigma2, r.sigma3, r.sigma4};
    d["chebyshev_psi"] = r.chebyshev_psi;
    d["bracket"] = r.lambda_bracket;
    return d;
  }, py::arg("family"), py::arg("p"), py::arg("L"), py::arg("n") = 1, py::arg("surrogate") = false);

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = 0;
    {
      py::gil_scoped_release release;
      code = run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
