#include "crflat/invariants.hpp"

#include <cmath>

namespace crflat {

namespace {

void require_order(const HypersurfaceGerm& g, int min_order, const char* what) {
  if (g.order() < min_order)
    throw Error(ErrorKind::OrderExhausted, std::string(what) +
                    " needs germ order >= " + std::to_string(min_order));
}

// F_{2,1b} computed independently; for a real F it must agree with
// conj(F_{1,2b}), which catches conjugation bugs early.
Series checked_F21b(const Series& F, const Series& F12b) {
  Series F21b = diff(diff(F, Var::z2), Var::z1b);
  if (!approx_equal(F21b, conj(F12b)))
    throw Error(ErrorKind::InvariantViolation,
                "F_{2,1b} does not match conj(F_{1,2b})");
  return F21b;
}

}  // namespace

Series ma_residual(const HypersurfaceGerm& g) {
  require_order(g, 2, "ma_residual");
  const Series& F = g.graphing_function();
  Series F1 = diff(F, Var::z1);
  Series F11b = diff(F1, Var::z1b);
  Series F12b = diff(F1, Var::z2b);
  Series F22b = diff(diff(F, Var::z2), Var::z2b);
  Series F21b = checked_F21b(F, F12b);
  return F11b * F22b - F12b * F21b;
}

Series compute_S(const HypersurfaceGerm& g) {
  require_order(g, 3, "compute_S");
  const Series& F = g.graphing_function();
  Series F1 = diff(F, Var::z1);
  Series F11b = diff(F1, Var::z1b);
  Series F12b = diff(F1, Var::z2b);
  return diff(F12b * invert(F11b), Var::z1);
}

namespace {

struct JPieces {
  Series S, S1, Q, Q1, Q11;
};

JPieces j_pieces(const HypersurfaceGerm& g) {
  const Series& F = g.graphing_function();
  Series F1 = diff(F, Var::z1);
  Series F11b = diff(F1, Var::z1b);
  Series F111b = diff(diff(F1, Var::z1), Var::z1b);
  Series Q = F111b * invert(F11b);
  JPieces p;
  p.S = compute_S(g);
  p.S1 = diff(p.S, Var::z1);
  p.Q = Q;
  p.Q1 = diff(Q, Var::z1);
  p.Q11 = diff(p.Q1, Var::z1);
  return p;
}

Series reduced_J(const JPieces& p) {
  return (1.0 / 3.0) * (p.Q * p.Q1) - (2.0 / 27.0) * (p.Q * p.Q * p.Q) -
         (1.0 / 6.0) * p.Q11;
}

}  // namespace

Series compute_J(const HypersurfaceGerm& g) {
  require_order(g, 6, "compute_J");
  JPieces p = j_pieces(g);
  Complex S0 = p.S.constant_term();
  if (std::abs(S0) <= tolerances().div)
    throw Error(ErrorKind::TwoDegenerate, "S vanishes at the origin");
  int out_order = g.order() - 6;

  if (is_zero(p.S1)) return reduced_J(p).truncated(out_order);

  if (std::abs(p.S1.constant_term()) <= tolerances().div)
    throw Error(ErrorKind::IndeterminateTerm,
                "S_1 has zero constant term but is not identically zero; "
                "the S_111/S_1 term has no series meaning");

  Series invS = invert(p.S);
  Series invS2 = invS * invS;
  Series invS3 = invS2 * invS;
  Series S11 = diff(p.S1, Var::z1);
  Series S111 = diff(S11, Var::z1);
  Series J =
      (5.0 / 18.0) * (p.S1 * p.S1 * invS2 * p.Q) +
      (1.0 / 3.0) * (p.Q * p.Q1) -
      (1.0 / 9.0) * (p.S1 * invS * p.Q * p.Q) +
      (20.0 / 27.0) * (p.S1 * p.S1 * p.S1 * invS3) -
      (5.0 / 6.0) * (p.S1 * S11 * invS2) +
      (1.0 / 6.0) * (p.S1 * invS * p.Q1) -
      (1.0 / 6.0) * (S11 * invS * p.Q) -
      (2.0 / 27.0) * (p.Q * p.Q * p.Q) -
      (1.0 / 6.0) * p.Q11 +
      S111 * invert(p.S1);
  return J.truncated(out_order);
}

Series compute_W(const HypersurfaceGerm& g) {
  require_order(g, 5, "compute_W");
  const Series& F = g.graphing_function();
  Series F1 = diff(F, Var::z1);
  Series F11b = diff(F1, Var::z1b);
  Series F12b = diff(F1, Var::z2b);
  Series F21b = checked_F21b(F, F12b);

  Series S = compute_S(g);
  if (std::abs(S.constant_term()) <= tolerances().div)
    throw Error(ErrorKind::TwoDegenerate, "S vanishes at the origin");
  Series Sb = conj(S);
  Series S1 = diff(S, Var::z1);
  Series Sb1 = diff(Sb, Var::z1);
  Series Sb1b = diff(Sb, Var::z1b);
  Series Sb2 = diff(Sb, Var::z2);
  Series Sb11b = diff(Sb1, Var::z1b);
  Series Sb21b = diff(Sb2, Var::z1b);

  Series P = F21b * invert(F11b);
  Series invS = invert(S);
  Series invSb = invert(Sb);
  Series invSb2 = invSb * invSb;
  Series invSb3 = invSb2 * invSb;

  Series W = (2.0 / 3.0) * (Sb1 * invSb) + (2.0 / 3.0) * (S1 * invS) +
             (1.0 / 3.0) * (Sb1b * invSb3 * (P * Sb1 - Sb2)) -
             (1.0 / 3.0) * (invSb2 * (P * Sb11b - Sb21b));
  return W.truncated(g.order() - 5);
}

Series monge_residual(const HypersurfaceGerm& g) {
  require_order(g, 6, "monge_residual");
  const Series& F = g.graphing_function();
  Series F1 = diff(F, Var::z1);
  Series F11 = diff(F1, Var::z1);
  Series F111 = diff(F11, Var::z1);
  Series F1111 = diff(F111, Var::z1);
  Series F11b = diff(F1, Var::z1b);
  Series F111b = diff(F11, Var::z1b);
  Series F1111b = diff(F111, Var::z1b);
  Series F11111b = diff(F1111, Var::z1b);
  Series res = 9.0 * (F11111b * F11b * F11b) -
               45.0 * (F1111b * F111b * F11b) +
               40.0 * (F111b * F111b * F111b);
  return res.truncated(g.order() - 6);
}

std::pair<Series, Series> s1111_residuals(const HypersurfaceGerm& g) {
  require_order(g, 4, "s1111_residuals");
  Series S = compute_S(g);
  return {diff(S, Var::z1), diff(S, Var::z1b)};
}

Series specclass_residual(const HypersurfaceGerm& g) {
  require_order(g, 2, "specclass_residual");
  Series F11b = diff(diff(g.graphing_function(), Var::z1), Var::z1b);
  return F11b - F11b.z1_independent_part();
}

InvariantReport full_report(const HypersurfaceGerm& g) {
  require_order(g, 6, "full_report");
  const int N = g.order();
  InvariantReport rep;
  rep.order_in = N;

  rep.ma = ma_residual(g);
  rep.S = compute_S(g);
  rep.S0 = rep.S.constant_term();
  auto [s1, s1b] = s1111_residuals(g);
  rep.s1 = s1;
  rep.s1b = s1b;
  rep.monge = monge_residual(g);
  rep.specclass = specclass_residual(g);

  try {
    rep.J.series = compute_J(g);
  } catch (const Error& e) {
    rep.J.error = e.kind();
  }
  try {
    rep.W.series = compute_W(g);
  } catch (const Error& e) {
    rep.W.error = e.kind();
  }

  rep.flags.levi_rank_one = {is_zero(rep.ma), N - 2};
  rep.flags.two_nondegenerate = {std::abs(rep.S0) > tolerances().div, N - 3};
  rep.flags.s1111_holds = {is_zero(rep.s1) && is_zero(rep.s1b), N - 4};
  rep.flags.specclass_holds = {is_zero(rep.specclass), N - 2};
  bool j_zero = rep.J.ok() && is_zero(*rep.J.series);
  bool w_zero = rep.W.ok() && is_zero(*rep.W.series);
  rep.flags.cr_flat_candidate = {rep.flags.levi_rank_one.value &&
                                     rep.flags.two_nondegenerate.value &&
                                     j_zero && w_zero,
                                 N - 6};
  return rep;
}

}  // namespace crflat
