#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "crflat/construct.hpp"
#include "crflat/error.hpp"
#include "crflat/invariants.hpp"
#include "crflat/io.hpp"
#include "crflat/selftest.hpp"
#include "crflat/xcheck.hpp"

namespace {

using nlohmann::json;
using namespace crflat;

constexpr double kFdTol11 = 1e-5;   // stencil (1,1,0,0)
constexpr double kFdTol21 = 1e-4;   // stencil (2,1,0,0)
constexpr double kCauchyTol = 5e-3;

void validate_order(int order, int lo) {
  int hi = max_order();
  if (order < lo || order > hi)
    throw Error(ErrorKind::ValidationError,
                "order " + std::to_string(order) + " outside [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

int cmd_construct(const std::string& config_path, const std::string& out_path,
                  const std::string& sidecar_path) {
  ConstructConfig cfg = read_config_file(config_path);
  validate_order(cfg.order, 6);
  RigidModelData data = build_model_data(cfg.rho, cfg.seed, cfg.order);
  HypersurfaceGerm germ(assemble_F(data).graphing_function().truncated(cfg.order));
  write_series_file(out_path, germ.graphing_function());
  if (!sidecar_path.empty()) write_sidecar_file(sidecar_path, data);
  return 0;
}

int cmd_invariants(const std::string& in_path, const std::string& report_path,
                   bool embed_series) {
  Series F = read_series_file(in_path);
  validate_order(F.order(), 6);
  HypersurfaceGerm germ(F);
  InvariantReport rep = full_report(germ);
  write_report_file(report_path, rep, embed_series);
  return rep.flags.cr_flat_candidate.value ? 0 : 1;
}

int cmd_mtilde0(int order, const std::string& out_path) {
  validate_order(order, 2);
  write_series_file(out_path, mtilde0(order).graphing_function());
  return 0;
}

int cmd_check_fd(const std::string& in_path, double radius, int n) {
  Series F = read_series_file(in_path);
  struct Probe {
    Monomial deriv;
    double tol;
  };
  const Probe probes[] = {{Monomial{{1, 1, 0, 0}}, kFdTol11},
                          {Monomial{{2, 1, 0, 0}}, kFdTol21}};
  bool all_ok = true;
  for (const auto& p : probes) {
    double res = fd_residual(F, p.deriv, radius, n);
    bool ok = res <= p.tol;
    all_ok = all_ok && ok;
    json line{{"check", "fd"},
              {"deriv", {p.deriv.e[0], p.deriv.e[1], p.deriv.e[2], p.deriv.e[3]}},
              {"radius", radius},
              {"n", n},
              {"max_residual", res},
              {"tolerance", p.tol},
              {"pass", ok}};
    std::cout << line.dump() << "\n";
    if (!ok) std::cerr << "first failing check: fd\n";
  }
  return all_ok ? 0 : 1;
}

int cmd_check_cauchy(const std::string& in_path, double radius, int n) {
  RigidModelData data = read_sidecar_file(in_path);
  double res = cauchy_pompeiu_check(data.r, data.u, radius, n);
  bool ok = res <= kCauchyTol;
  json line{{"check", "cauchy-pompeiu"},
            {"radius", radius},
            {"n", n},
            {"max_residual", res},
            {"tolerance", kCauchyTol},
            {"pass", ok}};
  std::cout << line.dump() << "\n";
  if (!ok) std::cerr << "first failing check: cauchy-pompeiu\n";
  return ok ? 0 : 1;
}

int cmd_selftest(int order, int draws, std::uint64_t seed) {
  validate_order(order, 6);
  if (draws < 1 || draws > 64)
    throw Error(ErrorKind::ValidationError, "draws must lie in [1, 64]");
  SelftestOptions opt{order, draws, seed};
  std::vector<CheckResult> results = run_selftest(opt);
  bool all_ok = true;
  std::string first_fail;
  for (const auto& r : results) {
    json line{{"check", r.name}, {"pass", r.pass}, {"metrics", r.metrics}};
    if (!r.note.empty()) line["note"] = r.note;
    std::cout << line.dump() << "\n";
    if (!r.pass && first_fail.empty()) first_fail = r.name;
    all_ok = all_ok && r.pass;
  }
  if (!all_ok) std::cerr << "first failing check: " << first_fail << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construction and CR-flatness verification of rigid "
               "Levi-degenerate hypersurface germs in C^3"};
  app.require_subcommand(1);

  double tol_cmp = 0.0, tol_div = 0.0;
  app.add_option("--tol-cmp", tol_cmp,
                 "override the relative coefficient comparison tolerance");
  app.add_option("--tol-div", tol_div,
                 "override the divisibility (constant-term) tolerance");

  auto* construct = app.add_subcommand("construct",
      "build a CR-flat germ from a crflat-config-v1 file");
  std::string config_path, out_path, sidecar_path;
  construct->add_option("--config", config_path, "crflat-config-v1 input")
      ->required();
  construct->add_option("--out", out_path, "output crflat-series-v1 for F")
      ->required();
  construct->add_option("--sidecar", sidecar_path,
                        "also write r, t, u, rev as crflat-sidecar-v1");

  auto* invariants = app.add_subcommand("invariants",
      "compute the invariant report for a germ series file");
  std::string in_path, report_path;
  bool embed_series = false;
  invariants->add_option("--in", in_path, "crflat-series-v1 input")->required();
  invariants->add_option("--report", report_path, "crflat-report-v1 output")
      ->required();
  invariants->add_flag("--embed-series", embed_series,
                       "embed full residual series in the report");

  auto* mt = app.add_subcommand("mtilde0", "emit the reference model germ");
  int mt_order = 12;
  std::string mt_out;
  mt->add_option("--order", mt_order, "truncation order (>= 2)")->required();
  mt->add_option("--out", mt_out, "output crflat-series-v1")->required();

  auto* check = app.add_subcommand("check", "run a numerical cross-check");
  std::string check_kind, check_in;
  double check_radius = 0.3;
  int check_n = 0;
  check->add_option("--kind", check_kind, "fd | cauchy-pompeiu")->required();
  check->add_option("--in", check_in,
                    "series file (fd) or sidecar file (cauchy-pompeiu)")
      ->required();
  check->add_option("--radius", check_radius, "evaluation disk radius");
  check->add_option("--n", check_n, "grid resolution per axis")->required();

  auto* selftest = app.add_subcommand("selftest",
      "run the full verification battery");
  int st_order = 12, st_draws = 5;
  std::uint64_t st_seed = 12345;
  selftest->add_option("--order", st_order, "truncation order (default 12)");
  selftest->add_option("--draws", st_draws, "random admissible draws (default 5)");
  selftest->add_option("--seed", st_seed, "rng seed (default 12345)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (tol_cmp > 0.0) tolerances().cmp_rel = tol_cmp;
  if (tol_div > 0.0) tolerances().div = tol_div;

  try {
    if (*construct) return cmd_construct(config_path, out_path, sidecar_path);
    if (*invariants) return cmd_invariants(in_path, report_path, embed_series);
    if (*mt) return cmd_mtilde0(mt_order, mt_out);
    if (*check) {
      if (check_kind == "fd") return cmd_check_fd(check_in, check_radius, check_n);
      if (check_kind == "cauchy-pompeiu")
        return cmd_check_cauchy(check_in, check_radius, check_n);
      throw Error(ErrorKind::ValidationError,
                  "unknown check kind '" + check_kind + "'");
    }
    if (*selftest) return cmd_selftest(st_order, st_draws, st_seed);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::IoError ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
