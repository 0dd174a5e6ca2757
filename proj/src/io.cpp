#include "crflat/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace crflat {

using nlohmann::json;

namespace {

json complex_to_json(Complex c) {
  return json{{"re", c.real()}, {"im", c.imag()}};
}

json series_body(const Series& s) {
  json terms = json::array();
  for (const auto& [m, c] : s.terms()) {
    terms.push_back(json{{"exp", {m.e[0], m.e[1], m.e[2], m.e[3]}},
                         {"re", c.real()},
                         {"im", c.imag()}});
  }
  return json{{"format", "crflat-series-v1"},
              {"vars", {"z1", "z1b", "z2", "z2b"}},
              {"order", s.order()},
              {"terms", terms}};
}

Series series_from_body(const json& j) {
  if (!j.is_object() || j.value("format", "") != "crflat-series-v1")
    throw Error(ErrorKind::IoError, "not a crflat-series-v1 object");
  int order = j.at("order").get<int>();
  if (order < 0 || order > 64)
    throw Error(ErrorKind::IoError, "series order out of range");
  Series s(order);
  for (const auto& t : j.at("terms")) {
    const auto& e = t.at("exp");
    if (!e.is_array() || e.size() != 4)
      throw Error(ErrorKind::IoError, "term exponent must be a quadruple");
    Monomial m;
    for (int k = 0; k < 4; ++k) {
      int v = e[k].get<int>();
      if (v < 0) throw Error(ErrorKind::IoError, "negative exponent");
      m.e[k] = v;
    }
    if (m.degree() > order)
      throw Error(ErrorKind::IoError, "term degree exceeds declared order");
    s.set_coeff(m, Complex(t.at("re").get<double>(), t.at("im").get<double>()));
  }
  s.normalize();
  return s;
}

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorKind::IoError, std::string("malformed JSON in ") + what);
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

json holo_to_json(const HoloSeries& h) {
  json arr = json::array();
  for (const auto& [k, c] : h.coeffs())
    arr.push_back(json{{"exp", k}, {"re", c.real()}, {"im", c.imag()}});
  return arr;
}

HoloSeries holo_from_json(const json& arr, const char* what) {
  if (!arr.is_array())
    throw Error(ErrorKind::IoError, std::string(what) + " must be an array");
  HoloSeries h;
  for (const auto& t : arr) {
    int k = t.at("exp").get<int>();
    if (k < 0) throw Error(ErrorKind::IoError, "negative exponent");
    h.set_coeff(k, Complex(t.at("re").get<double>(), t.at("im").get<double>()));
  }
  return h;
}

}  // namespace

std::string series_to_json(const Series& s) {
  return series_body(s).dump(2) + "\n";
}

Series series_from_json(const std::string& text) {
  return series_from_body(parse(text, "series file"));
}

void write_series_file(const std::string& path, const Series& s) {
  spit(path, series_to_json(s));
}

Series read_series_file(const std::string& path) {
  return series_from_json(slurp(path));
}

ConstructConfig read_config_file(const std::string& path) {
  json j = parse(slurp(path), "config file");
  if (j.value("format", "") != "crflat-config-v1")
    throw Error(ErrorKind::IoError, "not a crflat-config-v1 file");
  ConstructConfig cfg;
  cfg.order = j.at("order").get<int>();
  cfg.rho = holo_from_json(j.at("rho"), "rho");
  cfg.seed = j.contains("u_seed") ? holo_from_json(j.at("u_seed"), "u_seed")
                                  : HoloSeries{};
  return cfg;
}

std::string config_to_json(const ConstructConfig& cfg) {
  json j{{"format", "crflat-config-v1"},
         {"order", cfg.order},
         {"rho", holo_to_json(cfg.rho)},
         {"u_seed", holo_to_json(cfg.seed)}};
  return j.dump(2) + "\n";
}

void write_config_file(const std::string& path, const ConstructConfig& cfg) {
  spit(path, config_to_json(cfg));
}

void write_sidecar_file(const std::string& path, const RigidModelData& data) {
  json j{{"format", "crflat-sidecar-v1"},
         {"order", data.r.order()},
         {"r", series_body(data.r)},
         {"t", series_body(data.t)},
         {"u", series_body(data.u)},
         {"rev", series_body(data.rev)}};
  spit(path, j.dump(2) + "\n");
}

RigidModelData read_sidecar_file(const std::string& path) {
  json j = parse(slurp(path), "sidecar file");
  if (j.value("format", "") != "crflat-sidecar-v1")
    throw Error(ErrorKind::IoError, "not a crflat-sidecar-v1 file");
  RigidModelData d;
  d.r = series_from_body(j.at("r"));
  d.t = series_from_body(j.at("t"));
  d.u = series_from_body(j.at("u"));
  d.rev = series_from_body(j.at("rev"));
  return d;
}

namespace {

json flag_to_json(const CertifiedFlag& f) {
  return json{{"value", f.value}, {"order", f.order}};
}

json outcome_magnitude(const SeriesOutcome& o) {
  if (o.ok()) return o.series->max_abs_coeff();
  return nullptr;
}

}  // namespace

std::string report_to_json(const InvariantReport& rep, bool embed_series) {
  const Tolerances& tol = tolerances();
  json j{{"format", "crflat-report-v1"},
         {"order_in", rep.order_in},
         {"S0", complex_to_json(rep.S0)},
         {"flags",
          {{"levi_rank_one", flag_to_json(rep.flags.levi_rank_one)},
           {"two_nondegenerate", flag_to_json(rep.flags.two_nondegenerate)},
           {"s1111_holds", flag_to_json(rep.flags.s1111_holds)},
           {"specclass_holds", flag_to_json(rep.flags.specclass_holds)},
           {"cr_flat_candidate", flag_to_json(rep.flags.cr_flat_candidate)}}},
         {"max_residual_magnitudes",
          {{"ma", rep.ma.max_abs_coeff()},
           {"monge", rep.monge.max_abs_coeff()},
           {"s1", rep.s1.max_abs_coeff()},
           {"s1b", rep.s1b.max_abs_coeff()},
           {"J", outcome_magnitude(rep.J)},
           {"W", outcome_magnitude(rep.W)},
           {"specclass", rep.specclass.max_abs_coeff()}}},
         {"tolerances", {{"cmp_rel", tol.cmp_rel}, {"div", tol.div}}}};
  json errors = json::object();
  if (rep.J.error) errors["J"] = to_string(*rep.J.error);
  if (rep.W.error) errors["W"] = to_string(*rep.W.error);
  if (!errors.empty()) j["errors"] = errors;
  if (embed_series) {
    json series{{"S", series_body(rep.S)},
                {"ma", series_body(rep.ma)},
                {"monge", series_body(rep.monge)},
                {"s1", series_body(rep.s1)},
                {"s1b", series_body(rep.s1b)},
                {"specclass", series_body(rep.specclass)}};
    if (rep.J.ok()) series["J"] = series_body(*rep.J.series);
    if (rep.W.ok()) series["W"] = series_body(*rep.W.series);
    j["series"] = series;
  }
  return j.dump(2) + "\n";
}

void write_report_file(const std::string& path, const InvariantReport& rep,
                       bool embed_series) {
  spit(path, report_to_json(rep, embed_series));
}

std::string grid_to_csv(const GridSample& g) {
  std::ostringstream out;
  out.precision(17);
  out << "x,y,re,im\n";
  for (int iy = 0; iy < g.n; ++iy) {
    double y = -g.radius + 2.0 * g.radius * iy / (g.n - 1);
    for (int ix = 0; ix < g.n; ++ix) {
      double x = -g.radius + 2.0 * g.radius * ix / (g.n - 1);
      Complex v = g.values[static_cast<size_t>(iy) * g.n + ix];
      out << x << ',' << y << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
  return out.str();
}

void write_grid_csv(const std::string& path, const GridSample& g) {
  spit(path, grid_to_csv(g));
}

}  // namespace crflat
