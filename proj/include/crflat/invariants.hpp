#pragma once

#include <optional>
#include <utility>

#include "crflat/error.hpp"
#include "crflat/germ.hpp"

namespace crflat {

/// Levi degeneracy residual F_{1,1b} F_{2,2b} - F_{1,2b} F_{2,1b} at order
/// g.order - 2. Identically zero (together with F_{1,1b}(0) > 0) certifies
/// Levi rank exactly one at the origin for the truncation.
Series ma_residual(const HypersurfaceGerm& g);

/// S = d/dz1 (F_{1,2b} / F_{1,1b}) at order g.order - 3. The germ is
/// 2-nondegenerate iff S does not vanish.
Series compute_S(const HypersurfaceGerm& g);

/// The rigid-case invariant J at order g.order - 6.
///
/// If S_1 vanishes identically at its certified order the reduced expression
/// (no division by S_1) is used; if S_1 has an invertible constant term the
/// full expression including the S_111/S_1 term is used. A S_1 that is
/// neither — zero constant term but nonzero higher coefficients — leaves the
/// series division undefined and raises IndeterminateTerm. Raises
/// TwoDegenerate when S(0) vanishes.
Series compute_J(const HypersurfaceGerm& g);

/// The rigid-case invariant W at order g.order - 5. Raises TwoDegenerate
/// when S(0) vanishes.
Series compute_W(const HypersurfaceGerm& g);

/// Fifth-order residual 9 F_{1111,1b} (F_{1,1b})^2
///   - 45 F_{111,1b} F_{11,1b} F_{1,1b} + 40 (F_{11,1b})^3
/// at order g.order - 6.
Series monge_residual(const HypersurfaceGerm& g);

/// (S_1, S_1b) at order g.order - 4.
std::pair<Series, Series> s1111_residuals(const HypersurfaceGerm& g);

/// F_{1,1b} minus its z1-independent part, at order g.order - 2. Zero iff
/// the germ has the special graph shape F = r(z2, z2b) |z1|^2 + s + conj(s)
/// with s quadratic in z1.
Series specclass_residual(const HypersurfaceGerm& g);

struct CertifiedFlag {
  bool value = false;
  int order = 0;  // truncation order at which the flag was certified
};

/// A series-valued report field that may instead carry the error that
/// prevented its computation.
struct SeriesOutcome {
  std::optional<Series> series;
  std::optional<ErrorKind> error;

  bool ok() const { return series.has_value(); }
  double max_abs() const { return series ? series->max_abs_coeff() : 0.0; }
};

struct InvariantFlags {
  CertifiedFlag levi_rank_one;
  CertifiedFlag two_nondegenerate;
  CertifiedFlag s1111_holds;
  CertifiedFlag specclass_holds;
  CertifiedFlag cr_flat_candidate;
};

/// All residual series, the invariants and the derived verdict flags for
/// one germ. Individual invariant computations that fail (degenerate S,
/// indeterminate S_1 division) are recorded as error markers; the report is
/// still produced.
struct InvariantReport {
  int order_in = 0;
  Series S;
  Complex S0{};
  SeriesOutcome J;
  SeriesOutcome W;
  Series ma;
  Series monge;
  Series s1;
  Series s1b;
  Series specclass;
  InvariantFlags flags;
};

/// Compute every invariant and residual for the germ. Requires order >= 6.
InvariantReport full_report(const HypersurfaceGerm& g);

}  // namespace crflat
