#include "crflat/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crflat/construct.hpp"
#include "crflat/error.hpp"
#include "crflat/invariants.hpp"
#include "crflat/sampling.hpp"
#include "crflat/xcheck.hpp"

namespace crflat {

namespace {

bool flags_all_flat(const InvariantFlags& f) {
  return f.levi_rank_one.value && f.two_nondegenerate.value &&
         f.s1111_holds.value && f.specclass_holds.value &&
         f.cr_flat_candidate.value;
}

double outcome_max(const SeriesOutcome& o) {
  return o.ok() ? o.series->max_abs_coeff()
                : std::numeric_limits<double>::quiet_NaN();
}

CheckResult model_flatness(int order) {
  CheckResult res{"model_flatness"};
  InvariantReport rep = full_report(mtilde0(order));
  res.metrics["ma"] = rep.ma.max_abs_coeff();
  res.metrics["monge"] = rep.monge.max_abs_coeff();
  res.metrics["s1"] = rep.s1.max_abs_coeff();
  res.metrics["s1b"] = rep.s1b.max_abs_coeff();
  res.metrics["J"] = outcome_max(rep.J);
  res.metrics["W"] = outcome_max(rep.W);
  res.metrics["S0_err"] = std::abs(rep.S0 - Complex(1.0));
  res.pass = rep.J.ok() && rep.W.ok() && flags_all_flat(rep.flags) &&
             res.metrics["ma"] <= 1e-9 && res.metrics["monge"] <= 1e-9 &&
             res.metrics["s1"] <= 1e-9 && res.metrics["s1b"] <= 1e-9 &&
             res.metrics["J"] <= 1e-9 && res.metrics["W"] <= 1e-9 &&
             res.metrics["S0_err"] <= 1e-12;
  return res;
}

struct DrawSet {
  std::vector<RigidModelData> data;
  std::vector<HypersurfaceGerm> germs;
};

DrawSet make_draws(const SelftestOptions& opt) {
  Sampler sampler(opt.seed);
  DrawSet ds;
  for (int k = 0; k < opt.draws; ++k) {
    AdmissibleInput in = sampler.admissible_input(6);
    RigidModelData d = build_model_data(in.rho, in.seed, opt.order);
    ds.germs.push_back(
        HypersurfaceGerm(assemble_F(d).graphing_function().truncated(opt.order)));
    ds.data.push_back(std::move(d));
  }
  return ds;
}

CheckResult theorem_main_constructive(const DrawSet& ds) {
  CheckResult res{"theorem_main_constructive"};
  double worst_resid = 0.0, worst_s = 0.0, worst_expanded = 0.0,
         worst_ueq = 0.0, worst_veq = 0.0;
  bool flags_ok = true;
  for (size_t k = 0; k < ds.germs.size(); ++k) {
    InvariantReport rep = full_report(ds.germs[k]);
    flags_ok = flags_ok && rep.J.ok() && rep.W.ok() && flags_all_flat(rep.flags);
    for (double v : {rep.ma.max_abs_coeff(), rep.monge.max_abs_coeff(),
                     rep.s1.max_abs_coeff(), rep.s1b.max_abs_coeff(),
                     outcome_max(rep.J), outcome_max(rep.W)})
      worst_resid = std::max(worst_resid, v);
    Series s_minus_halfr = rep.S - 0.5 * ds.data[k].r;
    worst_s = std::max(worst_s, s_minus_halfr.max_abs_coeff());
    worst_expanded = std::max(
        worst_expanded, expanded_ma_residual(ds.data[k]).max_abs_coeff());
    worst_ueq =
        std::max(worst_ueq, u_equation_residual(ds.data[k]).max_abs_coeff());
    worst_veq =
        std::max(worst_veq, v_equation_residual(ds.data[k]).max_abs_coeff());
  }
  res.metrics["residuals"] = worst_resid;
  res.metrics["S_minus_r_half"] = worst_s;
  res.metrics["expanded_ma"] = worst_expanded;
  res.metrics["u_equation"] = worst_ueq;
  res.metrics["v_equation"] = worst_veq;
  res.pass = flags_ok && worst_resid <= 1e-9 && worst_s <= 1e-9 &&
             worst_expanded <= 1e-9 && worst_ueq <= 1e-9 && worst_veq <= 1e-9;
  return res;
}

CheckResult closed_form_identity(int order) {
  CheckResult res{"closed_form_identity"};
  HoloSeries rho{Complex(0.0), Complex(1.0)};  // rho = z2
  HypersurfaceGerm built = construct_germ(rho, HoloSeries{}, order);
  Series doubled = 2.0 * mtilde0(order).graphing_function();
  res.metrics["distance"] =
      max_coeff_distance(built.graphing_function(), doubled, order);
  res.pass = res.metrics["distance"] <= 1e-10;
  return res;
}

CheckResult liouville_log(const DrawSet& ds) {
  CheckResult res{"liouville_log"};
  double worst = 0.0;
  for (const auto& d : ds.data)
    worst = std::max(worst, liouville_log_residual(d.r).max_abs_coeff());
  res.metrics["residual"] = worst;
  res.pass = worst <= 1e-8;
  return res;
}

CheckResult dbar_resubstitution(const DrawSet& ds) {
  CheckResult res{"dbar_resubstitution"};
  double worst = 0.0;
  for (const auto& d : ds.data)
    worst = std::max(worst, dbar_residual(d.r, d.u).max_abs_coeff());
  res.metrics["residual"] = worst;
  res.pass = worst <= 1e-12;
  return res;
}

CheckResult cauchy_pompeiu(int order) {
  CheckResult res{"cauchy_pompeiu"};
  HoloSeries rho{Complex(0.0), Complex(1.0)};
  RigidModelData d = build_model_data(rho, HoloSeries{Complex(1.0)}, order);
  double r64 = cauchy_pompeiu_check(d.r, d.u, 0.3, 64);
  double r32 = cauchy_pompeiu_check(d.r, d.u, 0.3, 32);
  RigidModelData d0 = build_model_data(rho, HoloSeries{}, order);
  double rzero = cauchy_pompeiu_check(d0.r, d0.u, 0.3, 64);
  res.metrics["residual_n64"] = r64;
  res.metrics["residual_n32"] = r32;
  res.metrics["refinement_factor"] = r64 > 0.0 ? r32 / r64 : 1e9;
  res.metrics["residual_zero_seed"] = rzero;
  res.pass = r64 <= 5e-3 && res.metrics["refinement_factor"] >= 1.5 &&
             rzero <= 1e-12;
  return res;
}

CheckResult sensitivity(int order) {
  CheckResult res{"sensitivity"};
  const double eps = 1e-2;
  Series base = mtilde0(order).graphing_function();

  Series fa = base + Series::monomial(Monomial{{2, 2, 0, 0}}, eps, order);
  InvariantReport repa = full_report(HypersurfaceGerm(fa));
  res.metrics["ma_perturbed"] = repa.ma.max_abs_coeff();
  bool pass_a = repa.ma.max_abs_coeff() >= eps / 2.0 &&
                !repa.flags.cr_flat_candidate.value;

  Series fb = base + Series::monomial(Monomial{{2, 2, 1, 1}}, eps, order);
  InvariantReport repb = full_report(HypersurfaceGerm(fb));
  bool j_not_zero =
      repb.J.error.has_value() || (repb.J.ok() && !is_zero(*repb.J.series));
  bool monge_fires = repb.monge.max_abs_coeff() > 1e-6;
  res.metrics["J_indeterminate"] =
      repb.J.error == ErrorKind::IndeterminateTerm ? 1.0 : 0.0;
  res.metrics["monge_perturbed"] = repb.monge.max_abs_coeff();
  res.metrics["s1_perturbed"] = repb.s1.max_abs_coeff();
  bool pass_b = (j_not_zero || monge_fires) && !repb.flags.cr_flat_candidate.value;

  res.pass = pass_a && pass_b;
  if (!pass_a) res.note = "Monge-Ampere perturbation not detected";
  if (!pass_b) res.note = "J/Monge perturbation not detected";
  return res;
}

CheckResult degeneracy(int order) {
  CheckResult res{"degeneracy"};
  Series z1 = Series::variable(Var::z1);
  Series z1b = Series::variable(Var::z1b);
  Series z2 = Series::variable(Var::z2);
  Series z2b = Series::variable(Var::z2b);

  Series f1 = (z1 * z1b) * (Series::constant(1.0) + z2 * z2b);
  InvariantReport rep1 = full_report(HypersurfaceGerm(f1.truncated(order)));
  bool two_deg_detected = !rep1.flags.two_nondegenerate.value;
  res.metrics["S0_degenerate"] = std::abs(rep1.S0);

  Series f2 = z1 * z1b + z2 * z2b;
  InvariantReport rep2 = full_report(HypersurfaceGerm(f2.truncated(order)));
  Series one = Series::constant(1.0, rep2.ma.order());
  res.metrics["ma_quadric_vs_one"] = max_coeff_distance(rep2.ma, one);
  bool levi_detected =
      !rep2.flags.levi_rank_one.value && res.metrics["ma_quadric_vs_one"] == 0.0;

  res.pass = two_deg_detected && levi_detected;
  return res;
}

CheckResult fd_oracle(int order) {
  CheckResult res{"fd_oracle"};
  Series F = mtilde0(std::max(order, 12)).graphing_function();
  double r11 = fd_residual(F, Monomial{{1, 1, 0, 0}}, 0.3, 16);
  double r21 = fd_residual(F, Monomial{{2, 1, 0, 0}}, 0.3, 16);
  res.metrics["stencil_11"] = r11;
  res.metrics["stencil_21"] = r21;
  res.pass = r11 <= 1e-5 && r21 <= 1e-4;
  return res;
}

CheckResult series_properties(std::uint64_t seed) {
  CheckResult res{"series_properties"};
  Sampler sampler(seed + 1);
  double worst = 0.0;
  bool ok = true;
  for (int k = 0; k < 100; ++k) {
    int order = 4 + (k % 5);
    Series a = sampler.random_series(order, 25);
    Series b = sampler.random_series(order, 25);
    Series c = sampler.random_series(order, 25);

    ok = ok && approx_equal((a + b) + c, a + (b + c));
    ok = ok && approx_equal((a * b) * c, a * (b * c));
    ok = ok && approx_equal(a * b, b * a);
    ok = ok && approx_equal(a * (b + c), a * b + a * c);
    worst = std::max(worst, max_coeff_distance(a * (b + c), a * b + a * c));

    ok = ok && approx_equal(crflat::conj(a * b), crflat::conj(a) * crflat::conj(b));
    ok = ok && approx_equal(crflat::conj(crflat::conj(a)), a);

    Series unit = a;
    unit.set_coeff(Monomial{}, sampler.ring(0.75, 1.5));
    Series inv = invert(unit);
    Series one = Series::constant(1.0, order);
    ok = ok && approx_equal(unit * inv, one) && approx_equal(inv * unit, one);
    worst = std::max(worst, max_coeff_distance(unit * inv, one));

    Series pos = sampler.random_real_series(order, 25, 0.5, 2.0);
    Series root = sqrt_real(pos);
    ok = ok && approx_equal(root * root, pos) && check_real(root);
    worst = std::max(worst, max_coeff_distance(root * root, pos));

    Var v = static_cast<Var>(k % 4);
    ok = ok && approx_equal(diff(antidiff(a, v), v), a, a.order());
    Series da = diff(a, v);
    ok = ok && approx_equal(crflat::conj(diff(a, Var::z1)),
                            diff(crflat::conj(a), Var::z1b));
    (void)da;
  }
  res.metrics["worst_distance"] = worst;
  res.pass = ok;
  return res;
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(model_flatness(opt.order));
  DrawSet ds = make_draws(opt);
  out.push_back(theorem_main_constructive(ds));
  out.push_back(closed_form_identity(opt.order));
  out.push_back(liouville_log(ds));
  out.push_back(dbar_resubstitution(ds));
  out.push_back(cauchy_pompeiu(opt.order));
  out.push_back(sensitivity(opt.order));
  out.push_back(degeneracy(opt.order));
  out.push_back(fd_oracle(opt.order));
  out.push_back(series_properties(opt.seed));
  return out;
}

}  // namespace crflat
