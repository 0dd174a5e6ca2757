// Acceptance suite: every criterion asserts its stated tolerance and prints
// one PASS/FAIL line. Run via ctest (target acceptance_tests) or directly.
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "crflat/construct.hpp"
#include "crflat/error.hpp"
#include "crflat/invariants.hpp"
#include "crflat/io.hpp"
#include "crflat/sampling.hpp"
#include "crflat/xcheck.hpp"
#include "test_helpers.hpp"

using namespace crflat;
using namespace crflat::testing;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void verdict(int criterion, const char* label, bool ok) {
  std::printf("[criterion %2d] %-34s %s\n", criterion, label,
              ok ? "PASS" : "FAIL");
  std::fflush(stdout);
  CHECK_MESSAGE(ok, "criterion ", criterion, " (", label, ")");
}

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::current_path() / "crflat_acceptance_work";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args) {
  const char* bin = std::getenv("CRFLAT_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CRFLAT_BIN must point at the crflat binary");
  std::string cmd = std::string("'") + bin + "' " + args +
                    " > /dev/null 2>/dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool report_certifies_flat(const InvariantReport& rep, double tol) {
  return rep.J.ok() && rep.W.ok() &&
         rep.ma.max_abs_coeff() <= tol && rep.monge.max_abs_coeff() <= tol &&
         rep.s1.max_abs_coeff() <= tol && rep.s1b.max_abs_coeff() <= tol &&
         rep.J.series->max_abs_coeff() <= tol &&
         rep.W.series->max_abs_coeff() <= tol &&
         rep.flags.levi_rank_one.value && rep.flags.two_nondegenerate.value &&
         rep.flags.s1111_holds.value && rep.flags.specclass_holds.value &&
         rep.flags.cr_flat_candidate.value;
}

struct Draw {
  RigidModelData data;
  HypersurfaceGerm germ;
};

const std::vector<Draw>& fixed_draws() {
  static const std::vector<Draw> draws = [] {
    Sampler sampler(12345);  // the documented selftest seed
    std::vector<Draw> out;
    for (int k = 0; k < 5; ++k) {
      AdmissibleInput in = sampler.admissible_input(6);
      RigidModelData d = build_model_data(in.rho, in.seed, 12);
      HypersurfaceGerm g(assemble_F(d).graphing_function().truncated(12));
      out.push_back({std::move(d), std::move(g)});
    }
    return out;
  }();
  return draws;
}

}  // namespace

TEST_CASE("criterion 1: model flatness") {
  auto t0 = std::chrono::steady_clock::now();
  InvariantReport rep = full_report(mtilde0(12));
  bool ok = report_certifies_flat(rep, 1e-9) &&
            rep.J.series->order() == 6 && rep.W.series->order() == 7 &&
            std::abs(rep.S0 - Complex(1.0)) <= 1e-12;
  double elapsed = seconds_since(t0);
  ok = ok && elapsed <= 5.0;
  verdict(1, "model flatness (mtilde0(12))", ok);
  CHECK(elapsed <= 5.0);
}

TEST_CASE("criterion 2: constructive direction on 5 fixed draws") {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (const Draw& dr : fixed_draws()) {
    InvariantReport rep = full_report(dr.germ);
    ok = ok && report_certifies_flat(rep, 1e-9);
    ok = ok && expanded_ma_residual(dr.data).max_abs_coeff() <= 1e-9;
    ok = ok && (rep.S - 0.5 * dr.data.r).max_abs_coeff() <= 1e-9;
    ok = ok && u_equation_residual(dr.data).max_abs_coeff() <= 1e-9;
    ok = ok && v_equation_residual(dr.data).max_abs_coeff() <= 1e-9;
  }
  double elapsed = seconds_since(t0);
  ok = ok && elapsed <= 60.0;
  verdict(2, "constructive direction, 5 draws", ok);
  CHECK(elapsed <= 60.0);
}

TEST_CASE("criterion 3: closed-form pipeline identity") {
  HoloSeries rho{Complex(0.0), Complex(1.0)};
  HypersurfaceGerm g = construct_germ(rho, HoloSeries{}, 12);
  double dist = max_coeff_distance(g.graphing_function(),
                                   2.0 * mtilde0(12).graphing_function(), 12);
  verdict(3, "construct(z2, 0) = 2 mtilde0(12)", dist <= 1e-10);
}

TEST_CASE("criterion 4: Liouville log-form cross-check") {
  bool ok = true;
  for (const Draw& dr : fixed_draws()) {
    Series res = liouville_log_residual(dr.data.r).truncated(10);
    ok = ok && res.max_abs_coeff() <= 1e-8;
  }
  verdict(4, "4 R_22b - exp(2R) = 0 at order 10", ok);
}

TEST_CASE("criterion 5: dbar re-substitution") {
  bool ok = true;
  for (const Draw& dr : fixed_draws()) {
    Series res = dbar_residual(dr.data.r, dr.data.u);
    ok = ok && res.order() >= 11 && res.max_abs_coeff() <= 1e-12;
  }
  verdict(5, "u_2b - (r/2) conj(u) at order 11", ok);
}

TEST_CASE("criterion 6: Cauchy-Pompeiu quadrature") {
  // The z2 disk map with unit seed: the zero-seed pipeline has u = 0 and
  // no convergence ratio to measure, so the nontrivial dbar solution is
  // the one quadrature-checked.
  HoloSeries rho{Complex(0.0), Complex(1.0)};
  RigidModelData d = build_model_data(rho, HoloSeries{Complex(1.0)}, 12);
  double r64 = cauchy_pompeiu_check(d.r, d.u, 0.3, 64);
  double r32 = cauchy_pompeiu_check(d.r, d.u, 0.3, 32);
  bool ok = r64 <= 5e-3 && r32 / r64 >= 1.5;
  std::printf("    cauchy-pompeiu residuals: n=64 %.3e, n=32 %.3e, factor %.2f\n",
              r64, r32, r32 / r64);
  verdict(6, "quadrature residual and refinement", ok);
}

TEST_CASE("criterion 7: sensitivity, no false positives") {
  const double eps = 1e-2;
  Series base = mtilde0(12).graphing_function();

  Series fa = base + Series::monomial(mono(2, 2, 0, 0), eps, 12);
  InvariantReport repa = full_report(HypersurfaceGerm(fa));
  bool ok_a = repa.ma.max_abs_coeff() >= eps / 2.0;

  Series fb = base + Series::monomial(mono(2, 2, 1, 1), eps, 12);
  InvariantReport repb = full_report(HypersurfaceGerm(fb));
  // J's zero-certification must fail: here the full formula's S_111/S_1
  // division is indeterminate (S_1 != 0 with S_1(0) = 0), which is the
  // nonzero-J verdict at this order; a certified monge residual above 1e-6
  // would equally do.
  bool j_not_zero =
      repb.J.error.has_value() || (repb.J.ok() && !is_zero(*repb.J.series));
  bool ok_b = (j_not_zero || repb.monge.max_abs_coeff() > 1e-6) &&
              !repb.flags.cr_flat_candidate.value;

  fs::path pa = work_dir() / "perturb_ma.json";
  fs::path pb = work_dir() / "perturb_j.json";
  fs::path rep = work_dir() / "perturb_report.json";
  write_series_file(pa.string(), fa);
  write_series_file(pb.string(), fb);
  int code_a = run_cli("invariants --in '" + pa.string() + "' --report '" +
                       rep.string() + "'");
  int code_b = run_cli("invariants --in '" + pb.string() + "' --report '" +
                       rep.string() + "'");
  bool ok = ok_a && ok_b && code_a == 1 && code_b == 1;
  std::printf("    ma response %.3e, J %s, monge %.3e, exits %d/%d\n",
              repa.ma.max_abs_coeff(),
              repb.J.error ? to_string(*repb.J.error) : "computed",
              repb.monge.max_abs_coeff(), code_a, code_b);
  verdict(7, "perturbations detected, exits 1", ok);
}

TEST_CASE("criterion 8: degeneracy detection") {
  Series f1 = (z1() * z1b()) * (one() + z2() * z2b());
  InvariantReport rep1 = full_report(HypersurfaceGerm(f1.truncated(10)));
  bool ok = !rep1.flags.two_nondegenerate.value;

  Series f2 = z1() * z1b() + z2() * z2b();
  InvariantReport rep2 = full_report(HypersurfaceGerm(f2.truncated(10)));
  Series one_exact = Series::constant(1.0, rep2.ma.order());
  ok = ok && !rep2.flags.levi_rank_one.value &&
       max_coeff_distance(rep2.ma, one_exact) == 0.0;
  verdict(8, "two-degenerate and Levi-rank flags", ok);
}

TEST_CASE("criterion 9: finite-difference derivative oracle") {
  Series F = mtilde0(12).graphing_function();
  double r11 = fd_residual(F, mono(1, 1, 0, 0), 0.3, 16);
  double r21 = fd_residual(F, mono(2, 1, 0, 0), 0.3, 16);
  std::printf("    fd residuals: (1,1) %.3e, (2,1) %.3e\n", r11, r21);
  verdict(9, "fd stencils at radius 0.3, n 16", r11 <= 1e-5 && r21 <= 1e-4);
}

TEST_CASE("criterion 10: series-engine soundness") {
  auto t0 = std::chrono::steady_clock::now();
  Sampler s(54321);
  bool ok = true;
  for (int k = 0; k < 100; ++k) {
    int order = 4 + (k % 5);
    Series a = s.random_series(order, 25);
    Series b = s.random_series(order, 25);
    Series c = s.random_series(order, 25);

    ok = ok && approx_equal((a + b) + c, a + (b + c));
    ok = ok && approx_equal((a * b) * c, a * (b * c));
    ok = ok && approx_equal(a * b, b * a);
    ok = ok && approx_equal(a * (b + c), a * b + a * c);

    Series unit = a;
    unit.set_coeff(Monomial{}, s.ring(0.75, 1.5));
    Series inv = invert(unit);
    Series id = one(order);
    ok = ok && approx_equal(unit * inv, id) && approx_equal(inv * unit, id);

    Series pos = s.random_real_series(order, 25, 0.5, 2.0);
    Series root = sqrt_real(pos);
    ok = ok && approx_equal(root * root, pos) && check_real(root);

    ok = ok && approx_equal(crflat::conj(a * b),
                            crflat::conj(a) * crflat::conj(b));
    ok = ok && approx_equal(crflat::conj(crflat::conj(a)), a);

    Var v = static_cast<Var>(k % 4);
    ok = ok && approx_equal(diff(antidiff(a, v), v), a, a.order());
  }
  double elapsed = seconds_since(t0);
  ok = ok && elapsed <= 10.0;
  verdict(10, "ring/inverse/sqrt/conj/calculus suites", ok);
  CHECK(elapsed <= 10.0);
}
