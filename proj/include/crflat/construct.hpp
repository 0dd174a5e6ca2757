#pragma once

#include "crflat/germ.hpp"
#include "crflat/series.hpp"

namespace crflat {

/// The quadruple (r, t, u, Re v) of z2/conj(z2) series that assembles a
/// rigid model germ
///   F = r |z1|^2 + t z1^2 + conj(t) conj(z1)^2
///       + u z1 + conj(u) conj(z1) + 2 Re v.
///
/// Invariants (checked by assemble_F):
///   r, rev real, r(0) > 0, all four depend on z2/conj(z2) only,
///   t_{2b} = r^2/4,  u_{2b} = (r/2) conj(u),  rev_{2,2b} = (r/8) u conj(u).
struct RigidModelData {
  Series r;
  Series t;
  Series u;
  Series rev;
};

/// Conformal metric of curvature -1 from a holomorphic disk map:
///   r = 2 |rho'| / (1 - |rho|^2)
/// as a series at the given order. Requires |rho(0)| < 1 and rho'(0) != 0.
Series liouville_metric(const HoloSeries& rho, int order);

/// t = term-by-term antiderivative of r^2/4 in conj(z2), zero integration
/// constant.
Series integrate_t(const Series& r);

/// Solve u_{2b} = (r/2) conj(u) by total-degree coefficient recursion; the
/// conj(z2)-free part of u equals the holomorphic seed.
Series solve_dbar_u(const Series& r, const HoloSeries& seed);

/// Re v = double antiderivative (conj(z2), then z2) of (r/8) u conj(u),
/// both integration constants zero.
Series compute_rev(const Series& r, const Series& u);

/// Assemble the graphing function from validated model data.
HypersurfaceGerm assemble_F(const RigidModelData& data);

/// Full pipeline: Liouville metric -> t-integration -> dbar solve ->
/// double antiderivative.
RigidModelData build_model_data(const HoloSeries& rho, const HoloSeries& seed,
                                int order);
HypersurfaceGerm construct_germ(const HoloSeries& rho, const HoloSeries& seed,
                                int order);

/// The reference germ
///   Re z3 = |z1|^2/(1-|z2|^2)
///         + conj(z2) z1^2 / (2 (1-|z2|^2)) + z2 conj(z1)^2 / (2 (1-|z2|^2))
/// truncated at order N (N >= 2).
HypersurfaceGerm mtilde0(int N);

/// Pull the (r, t, u, rev) components out of a germ whose graphing function
/// has the rigid model shape. Raises NotInModelForm otherwise.
RigidModelData extract_model_data(const HypersurfaceGerm& g);

/// Image of a model-form germ under z1 -> z1 / (2 sqrt(conj(w0))):
///   r -> 4 |w0| r,  t -> 4 conj(w0) t,  u -> 2 sqrt(conj(w0)) u,
/// rev unchanged. Carries a germ with t_{2b} = c r^2 into the normalization
/// t_{2b} = r^2/4 for the right w0.
HypersurfaceGerm rescale_z1(const HypersurfaceGerm& g, Complex w0);
RigidModelData rescale_z1(const RigidModelData& data, Complex w0);

// Residuals of the structural equations; all vanish for pipeline output.

/// r r_{2,2b} - r_2 r_{2b} - r^4/4.
Series liouville_equation_residual(const Series& r);

/// 4 R_{2,2b} - exp(2R) with R = log r (curvature -1 in the Laplacian
/// convention Delta = 4 d^2/dz2 dz2b).
Series liouville_log_residual(const Series& r);

/// u_{2b} - (r/2) conj(u).
Series dbar_residual(const Series& r, const Series& u);

/// r u_{2,2b} - 2 t_{2b} (conj u)_2 - r_2 u_{2b} (the z1-linear block of the
/// expanded Monge-Ampere identity).
Series u_equation_residual(const RigidModelData& data);

/// rev_{2,2b} - (r/8) u conj(u) (the z1-free block).
Series v_equation_residual(const RigidModelData& data);

/// The full expanded Monge-Ampere identity for the model shape, as a
/// 4-variable series:
///   r (r_{2,2b} |z1|^2 + s_{2,2b} + conj(s_{2,2b}))
///   - r_2 r_{2b} |z1|^2 - s_{1,2b} conj(s_{1,2b})
///   - r_2 s_{1,2b} z1 - r_{2b} conj(s_{1,2b}) conj(z1)
/// with s = t z1^2 + u z1 + rev. Strictly stronger than ma_residual for
/// assembled germs: it exercises every structural equation at once.
Series expanded_ma_residual(const RigidModelData& data);

}  // namespace crflat
