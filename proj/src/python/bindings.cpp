#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crflat/construct.hpp"
#include "crflat/error.hpp"
#include "crflat/invariants.hpp"
#include "crflat/io.hpp"
#include "crflat/sampling.hpp"
#include "crflat/selftest.hpp"
#include "crflat/xcheck.hpp"

namespace py = pybind11;
using namespace crflat;

namespace {

using ExpTuple = std::tuple<int, int, int, int>;

Monomial to_monomial(const ExpTuple& e) {
  Monomial m{{std::get<0>(e), std::get<1>(e), std::get<2>(e), std::get<3>(e)}};
  for (int v : m.e)
    if (v < 0) throw Error(ErrorKind::ValidationError, "negative exponent");
  return m;
}

Series series_from_terms(const std::map<ExpTuple, Complex>& terms, int order) {
  Series s(order);
  for (const auto& [e, c] : terms) s.set_coeff(to_monomial(e), c);
  s.normalize();
  return s;
}

std::map<ExpTuple, Complex> series_terms(const Series& s) {
  std::map<ExpTuple, Complex> out;
  for (const auto& [m, c] : s.terms())
    out[{m.e[0], m.e[1], m.e[2], m.e[3]}] = c;
  return out;
}

HoloSeries holo_from_coeffs(const std::map<int, Complex>& coeffs) {
  HoloSeries h;
  for (const auto& [k, c] : coeffs) h.set_coeff(k, c);
  return h;
}

py::dict flags_dict(const InvariantFlags& f) {
  auto one = [](const CertifiedFlag& fl) {
    py::dict d;
    d["value"] = fl.value;
    d["order"] = fl.order;
    return d;
  };
  py::dict d;
  d["levi_rank_one"] = one(f.levi_rank_one);
  d["two_nondegenerate"] = one(f.two_nondegenerate);
  d["s1111_holds"] = one(f.s1111_holds);
  d["specclass_holds"] = one(f.specclass_holds);
  d["cr_flat_candidate"] = one(f.cr_flat_candidate);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "truncated-series construction and CR-flatness verification of "
            "rigid Levi-degenerate hypersurface germs in C^3";

  py::register_exception<Error>(m, "CrflatError");

  py::enum_<Var>(m, "Var")
      .value("z1", Var::z1)
      .value("z1b", Var::z1b)
      .value("z2", Var::z2)
      .value("z2b", Var::z2b);

  py::class_<Series>(m, "Series")
      .def(py::init([](const std::map<ExpTuple, Complex>& terms, int order) {
             return series_from_terms(terms, order);
           }),
           py::arg("terms") = std::map<ExpTuple, Complex>{},
           py::arg("order") = -1)
      .def_static("constant", [](Complex c, int order) {
        return Series::constant(c, order);
      }, py::arg("value"), py::arg("order") = -1)
      .def_static("variable", [](Var v, int order) {
        return Series::variable(v, order);
      }, py::arg("var"), py::arg("order") = -1)
      .def_property_readonly("order", &Series::order)
      .def("terms", &series_terms)
      .def("coeff", [](const Series& s, const ExpTuple& e) {
        return s.coeff(to_monomial(e));
      })
      .def("max_abs_coeff", &Series::max_abs_coeff)
      .def("truncated", &Series::truncated)
      .def("__add__", [](const Series& a, const Series& b) { return a + b; })
      .def("__sub__", [](const Series& a, const Series& b) { return a - b; })
      .def("__mul__", [](const Series& a, const Series& b) { return a * b; })
      .def("__mul__", [](const Series& a, Complex c) { return a * c; })
      .def("__rmul__", [](const Series& a, Complex c) { return c * a; })
      .def("__neg__", [](const Series& a) { return -a; })
      .def("conj", [](const Series& a) { return conj(a); })
      .def("diff", [](const Series& a, Var v) { return diff(a, v); })
      .def("antidiff", [](const Series& a, Var v) { return antidiff(a, v); })
      .def("invert", [](const Series& a) { return invert(a); })
      .def("sqrt_real", [](const Series& a) { return sqrt_real(a); })
      .def("eval", [](const Series& a, Complex z1, Complex z2) {
        return eval(a, {z1, std::conj(z1), z2, std::conj(z2)});
      }, py::arg("z1"), py::arg("z2"))
      .def("check_real", [](const Series& a) { return check_real(a); })
      .def("approx_equal", [](const Series& a, const Series& b, int up_to) {
        return approx_equal(a, b, up_to);
      }, py::arg("other"), py::arg("up_to") = -1)
      .def("max_coeff_distance", [](const Series& a, const Series& b, int up_to) {
        return max_coeff_distance(a, b, up_to);
      }, py::arg("other"), py::arg("up_to") = -1)
      .def("is_zero", [](const Series& a) { return is_zero(a); })
      .def("to_json", [](const Series& a) { return series_to_json(a); })
      .def_static("from_json", [](const std::string& text) {
        return series_from_json(text);
      })
      .def("__repr__", [](const Series& a) {
        return "<Series order=" + std::to_string(a.order()) + " terms=" +
               std::to_string(a.terms().size()) + ">";
      });

  py::class_<HypersurfaceGerm>(m, "HypersurfaceGerm")
      .def(py::init<Series>(), py::arg("F"))
      .def_property_readonly("order", &HypersurfaceGerm::order)
      .def_property_readonly("F", &HypersurfaceGerm::graphing_function);

  py::class_<RigidModelData>(m, "RigidModelData")
      .def(py::init<>())
      .def_readwrite("r", &RigidModelData::r)
      .def_readwrite("t", &RigidModelData::t)
      .def_readwrite("u", &RigidModelData::u)
      .def_readwrite("rev", &RigidModelData::rev);

  py::class_<InvariantReport>(m, "InvariantReport")
      .def_readonly("order_in", &InvariantReport::order_in)
      .def_readonly("S", &InvariantReport::S)
      .def_readonly("S0", &InvariantReport::S0)
      .def_readonly("ma", &InvariantReport::ma)
      .def_readonly("monge", &InvariantReport::monge)
      .def_readonly("s1", &InvariantReport::s1)
      .def_readonly("s1b", &InvariantReport::s1b)
      .def_readonly("specclass", &InvariantReport::specclass)
      .def_property_readonly("J", [](const InvariantReport& r) -> py::object {
        return r.J.ok() ? py::cast(*r.J.series) : py::none();
      })
      .def_property_readonly("W", [](const InvariantReport& r) -> py::object {
        return r.W.ok() ? py::cast(*r.W.series) : py::none();
      })
      .def_property_readonly("J_error", [](const InvariantReport& r) -> py::object {
        return r.J.error ? py::cast(std::string(to_string(*r.J.error)))
                         : py::none();
      })
      .def_property_readonly("W_error", [](const InvariantReport& r) -> py::object {
        return r.W.error ? py::cast(std::string(to_string(*r.W.error)))
                         : py::none();
      })
      .def_property_readonly("flags", [](const InvariantReport& r) {
        return flags_dict(r.flags);
      })
      .def("cr_flat", [](const InvariantReport& r) {
        return r.flags.cr_flat_candidate.value;
      })
      .def("to_json", [](const InvariantReport& r, bool embed) {
        return report_to_json(r, embed);
      }, py::arg("embed_series") = false);

  m.def("mtilde0", &mtilde0, py::arg("order"),
        "reference CR-flat model germ, truncated");
  m.def("ma_residual", &ma_residual);
  m.def("compute_S", &compute_S);
  m.def("compute_J", &compute_J);
  m.def("compute_W", &compute_W);
  m.def("monge_residual", &monge_residual);
  m.def("s1111_residuals", &s1111_residuals);
  m.def("specclass_residual", &specclass_residual);
  m.def("full_report", &full_report, py::arg("germ"));

  m.def("liouville_metric", [](const std::map<int, Complex>& rho, int order) {
    return liouville_metric(holo_from_coeffs(rho), order);
  }, py::arg("rho"), py::arg("order"));
  m.def("integrate_t", &integrate_t);
  m.def("solve_dbar_u", [](const Series& r, const std::map<int, Complex>& seed) {
    return solve_dbar_u(r, holo_from_coeffs(seed));
  }, py::arg("r"), py::arg("seed"));
  m.def("compute_rev", &compute_rev);
  m.def("assemble_F", &assemble_F);
  m.def("build_model_data",
        [](const std::map<int, Complex>& rho, const std::map<int, Complex>& seed,
           int order) {
          return build_model_data(holo_from_coeffs(rho), holo_from_coeffs(seed),
                                  order);
        },
        py::arg("rho"), py::arg("seed"), py::arg("order"));
  m.def("construct_germ",
        [](const std::map<int, Complex>& rho, const std::map<int, Complex>& seed,
           int order) {
          return construct_germ(holo_from_coeffs(rho), holo_from_coeffs(seed),
                                order);
        },
        py::arg("rho"), py::arg("seed"), py::arg("order"));
  m.def("rescale_z1",
        [](const HypersurfaceGerm& g, Complex w0) { return rescale_z1(g, w0); },
        py::arg("germ"), py::arg("w0"));

  m.def("liouville_equation_residual", &liouville_equation_residual);
  m.def("liouville_log_residual", &liouville_log_residual);
  m.def("dbar_residual", &dbar_residual);
  m.def("expanded_ma_residual", &expanded_ma_residual);

  m.def("fd_residual", [](const Series& F, const ExpTuple& deriv, double radius,
                          int n) {
    return fd_residual(F, to_monomial(deriv), radius, n);
  }, py::arg("F"), py::arg("deriv"), py::arg("radius"), py::arg("n"));
  m.def("cauchy_pompeiu_check",
        [](const Series& r, const Series& u, double radius, int n) {
          return cauchy_pompeiu_check(r, u, radius, n);
        },
        py::arg("r"), py::arg("u"), py::arg("radius"), py::arg("n"));
  m.def("eval_grid", [](const Series& F, double radius, int n, Var plane) {
    GridSample g = eval_grid(F, radius, n, plane);
    return g.values;
  }, py::arg("F"), py::arg("radius"), py::arg("n"), py::arg("plane") = Var::z2);

  m.def("run_selftest", [](int order, int draws, std::uint64_t seed) {
    py::list out;
    for (const auto& r : run_selftest(SelftestOptions{order, draws, seed})) {
      py::dict d;
      d["check"] = r.name;
      d["pass"] = r.pass;
      d["metrics"] = r.metrics;
      out.append(d);
    }
    return out;
  }, py::arg("order") = 12, py::arg("draws") = 5, py::arg("seed") = 12345);

  m.def("max_order", &max_order);
}
