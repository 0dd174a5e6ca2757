#include "crflat/construct.hpp"

#include <cmath>
#include <vector>

#include "crflat/error.hpp"

namespace crflat {

namespace {

bool z2_only(const Series& s) {
  return !s.depends_on(Var::z1) && !s.depends_on(Var::z1b);
}

void require_z2_only(const Series& s, const char* name) {
  if (!z2_only(s))
    throw Error(ErrorKind::InvariantViolation,
                std::string(name) + " must depend on z2, conj(z2) only");
}

}  // namespace

Series liouville_metric(const HoloSeries& rho, int order) {
  const Tolerances& tol = tolerances();
  if (std::abs(rho.at_zero()) >= 1.0 - tol.div)
    throw Error(ErrorKind::RhoNotInDisk,
                "|rho(0)| must be strictly below 1");
  HoloSeries drho = rho.derivative();
  if (std::abs(drho.at_zero()) <= tol.div)
    throw Error(ErrorKind::RhoCritical, "rho'(0) vanishes");

  Series p = rho.embed(order);
  Series dp = drho.embed(order);
  Series speed = sqrt_real(dp * conj(dp));              // |rho'|
  Series denom = Series::constant(1.0, order) - p * conj(p);
  return 2.0 * (speed * invert(denom));
}

Series integrate_t(const Series& r) {
  require_z2_only(r, "r");
  return antidiff(0.25 * (r * r), Var::z2b);
}

Series solve_dbar_u(const Series& r, const HoloSeries& seed) {
  require_z2_only(r, "r");
  if (!check_real(r))
    throw Error(ErrorKind::NotReal, "metric r must be real");
  const int N = r.order();
  if (!seed.coeffs().empty() && seed.coeffs().rbegin()->first > N)
    throw Error(ErrorKind::OrderMismatch,
                "seed carries exponents beyond the metric order");

  auto grid = [N](auto& m, int p, int q) -> auto& { return m[p * (N + 1) + q]; };
  std::vector<Complex> rc((N + 1) * (N + 1), Complex(0.0));
  for (const auto& [m, c] : r.terms()) grid(rc, m.e[2], m.e[3]) = c;

  // u_{j,k+1} = 1/(k+1) * sum_{m+q=j, n+p=k} (r_{m,n}/2) conj(u_{p,q});
  // the right side only involves total degree < j+k+1, so filling u by
  // total degree closes the recursion. The degree-0-in-conj(z2) row is the
  // free holomorphic seed.
  std::vector<Complex> uc((N + 1) * (N + 1), Complex(0.0));
  for (const auto& [k, c] : seed.coeffs()) grid(uc, k, 0) = c;
  for (int D = 1; D <= N; ++D) {
    for (int j = 0; j < D; ++j) {
      int k = D - 1 - j;  // filling u_{j,k+1}
      Complex acc(0.0);
      for (int m = 0; m <= j; ++m) {
        int q = j - m;
        for (int n = 0; n <= k; ++n) {
          int p = k - n;
          Complex rmn = grid(rc, m, n);
          if (rmn != Complex(0.0))
            acc += 0.5 * rmn * std::conj(grid(uc, p, q));
        }
      }
      grid(uc, j, k + 1) = acc / static_cast<double>(k + 1);
    }
  }

  Series u(N);
  for (int p = 0; p <= N; ++p)
    for (int q = 0; q <= N - p; ++q)
      if (grid(uc, p, q) != Complex(0.0))
        u.set_coeff(Monomial{{0, 0, p, q}}, grid(uc, p, q));
  u.normalize();
  return u;
}

Series compute_rev(const Series& r, const Series& u) {
  require_z2_only(r, "r");
  require_z2_only(u, "u");
  Series integrand = 0.125 * (r * u * conj(u));
  return antidiff(antidiff(integrand, Var::z2b), Var::z2);
}

namespace {

void validate_model_data(const RigidModelData& d) {
  require_z2_only(d.r, "r");
  require_z2_only(d.t, "t");
  require_z2_only(d.u, "u");
  require_z2_only(d.rev, "rev");
  if (!check_real(d.r) || !check_real(d.rev))
    throw Error(ErrorKind::InvariantViolation, "r and rev must be real");
  if (d.r.constant_term().real() <= tolerances().div)
    throw Error(ErrorKind::InvariantViolation, "r(0) must be positive");
  if (!approx_equal(diff(d.t, Var::z2b), 0.25 * (d.r * d.r)))
    throw Error(ErrorKind::InvariantViolation, "t_{2b} != r^2/4");
  if (!is_zero(dbar_residual(d.r, d.u)))
    throw Error(ErrorKind::InvariantViolation, "u_{2b} != (r/2) conj(u)");
  if (!is_zero(v_equation_residual(d)))
    throw Error(ErrorKind::InvariantViolation, "rev_{2,2b} != (r/8) |u|^2");
}

Series model_graph(const RigidModelData& d) {
  Series z1 = Series::variable(Var::z1);
  Series z1b = Series::variable(Var::z1b);
  Series F = d.r * (z1 * z1b) + d.t * (z1 * z1) + conj(d.t) * (z1b * z1b) +
             d.u * z1 + conj(d.u) * z1b + 2.0 * d.rev;
  return F;
}

}  // namespace

HypersurfaceGerm assemble_F(const RigidModelData& data) {
  validate_model_data(data);
  return HypersurfaceGerm(model_graph(data));
}

RigidModelData build_model_data(const HoloSeries& rho, const HoloSeries& seed,
                                int order) {
  RigidModelData d;
  d.r = liouville_metric(rho, order);
  d.t = integrate_t(d.r);
  d.u = solve_dbar_u(d.r, seed);
  d.rev = compute_rev(d.r, d.u);
  return d;
}

HypersurfaceGerm construct_germ(const HoloSeries& rho, const HoloSeries& seed,
                                int order) {
  HypersurfaceGerm g = assemble_F(build_model_data(rho, seed, order));
  return HypersurfaceGerm(g.graphing_function().truncated(order));
}

HypersurfaceGerm mtilde0(int N) {
  if (N < 2)
    throw Error(ErrorKind::ValidationError, "mtilde0 needs order >= 2");
  Series z1 = Series::variable(Var::z1);
  Series z1b = Series::variable(Var::z1b);
  Series z2 = Series::variable(Var::z2);
  Series z2b = Series::variable(Var::z2b);
  Series inv = invert(Series::constant(1.0) - z2 * z2b);
  Series F = (z1 * z1b) * inv + 0.5 * (z2b * (z1 * z1) * inv) +
             0.5 * (z2 * (z1b * z1b) * inv);
  return HypersurfaceGerm(F.truncated(N));
}

RigidModelData extract_model_data(const HypersurfaceGerm& g) {
  const Series& F = g.graphing_function();
  Series F11b = diff(diff(F, Var::z1), Var::z1b);
  if (F11b.depends_on(Var::z1) || F11b.depends_on(Var::z1b))
    throw Error(ErrorKind::NotInModelForm, "F_{1,1b} depends on z1");

  RigidModelData d;
  d.r = Series(g.order() - 2);
  d.t = Series(g.order() - 2);
  d.u = Series(g.order() - 1);
  d.rev = Series(g.order());
  for (const auto& [m, c] : F.terms()) {
    int a = m.e[0], b = m.e[1];
    Monomial z2part{{0, 0, m.e[2], m.e[3]}};
    if (a == 1 && b == 1)
      d.r.set_coeff(z2part, c);
    else if (a == 2 && b == 0)
      d.t.set_coeff(z2part, c);
    else if (a == 1 && b == 0)
      d.u.set_coeff(z2part, c);
    else if (a == 0 && b == 0)
      d.rev.set_coeff(z2part, 0.5 * c);
    else if (!((a == 0 && b == 2) || (a == 0 && b == 1)))
      throw Error(ErrorKind::NotInModelForm,
                  "graphing function has z1-degree above the model shape");
  }
  return d;
}

RigidModelData rescale_z1(const RigidModelData& data, Complex w0) {
  if (std::abs(w0) <= tolerances().div)
    throw Error(ErrorKind::ZeroScale, "rescaling needs w0 != 0");
  Complex s = std::sqrt(std::conj(w0));
  RigidModelData out;
  out.r = (4.0 * std::abs(w0)) * data.r;
  out.t = (4.0 * std::conj(w0)) * data.t;
  out.u = (2.0 * s) * data.u;
  out.rev = data.rev;
  return out;
}

HypersurfaceGerm rescale_z1(const HypersurfaceGerm& g, Complex w0) {
  RigidModelData d = rescale_z1(extract_model_data(g), w0);
  return HypersurfaceGerm(model_graph(d).truncated(g.order()));
}

Series liouville_equation_residual(const Series& r) {
  Series r2 = diff(r, Var::z2);
  Series r2b = diff(r, Var::z2b);
  Series r22b = diff(r2, Var::z2b);
  Series r_sq = r * r;
  return r * r22b - r2 * r2b - 0.25 * (r_sq * r_sq);
}

Series liouville_log_residual(const Series& r) {
  Series R = log_series(r);
  return 4.0 * diff(diff(R, Var::z2), Var::z2b) - exp_series(2.0 * R);
}

Series dbar_residual(const Series& r, const Series& u) {
  return diff(u, Var::z2b) - 0.5 * (r * conj(u));
}

Series u_equation_residual(const RigidModelData& d) {
  Series u22b = diff(diff(d.u, Var::z2), Var::z2b);
  Series t2b = diff(d.t, Var::z2b);
  Series ub2 = diff(conj(d.u), Var::z2);
  Series r2 = diff(d.r, Var::z2);
  Series u2b = diff(d.u, Var::z2b);
  return d.r * u22b - 2.0 * (t2b * ub2) - r2 * u2b;
}

Series v_equation_residual(const RigidModelData& d) {
  Series rev22b = diff(diff(d.rev, Var::z2), Var::z2b);
  return rev22b - 0.125 * (d.r * d.u * conj(d.u));
}

Series expanded_ma_residual(const RigidModelData& d) {
  Series z1 = Series::variable(Var::z1);
  Series z1b = Series::variable(Var::z1b);
  Series s = d.t * (z1 * z1) + d.u * z1 + d.rev;

  Series r2 = diff(d.r, Var::z2);
  Series r2b = diff(d.r, Var::z2b);
  Series r22b = diff(r2, Var::z2b);
  Series s22b = diff(diff(s, Var::z2), Var::z2b);
  Series s12b = diff(diff(s, Var::z1), Var::z2b);
  Series s12b_c = conj(s12b);

  return d.r * (r22b * (z1 * z1b) + s22b + conj(s22b)) -
         (r2 * r2b) * (z1 * z1b) - s12b * s12b_c -
         r2 * (s12b * z1) - r2b * (s12b_c * z1b);
}

}  // namespace crflat
