#pragma once

#include <vector>

#include "crflat/series.hpp"

namespace crflat {

/// Pointwise samples of a series on an n x n Cartesian grid in one complex
/// plane (the other variable pinned at 0).
struct GridSample {
  double radius = 0.0;
  int n = 0;
  Var plane = Var::z2;
  std::vector<Complex> values;  // row-major, y outer, x inner
};

/// Evaluate F on the inclusive grid [-radius, radius]^2 of the chosen plane.
/// radius <= 0.5, n >= 8.
GridSample eval_grid(const Series& F, double radius, int n, Var plane);

/// Compare the series derivative prescribed by the exponent multi-index
/// (a, b, c, d) against central finite differences of pointwise evaluation.
///
/// Probe points sweep the disk |z2| <= radius on an n x n grid (z1 = 0);
/// the stencil acts in the z1-plane for the (a, b) part and in the z2-plane
/// for the (c, d) part, with step h = radius / (4n). Returns the maximal
/// absolute deviation over the probes.
double fd_residual(const Series& F, const Monomial& deriv, double radius,
                   int n);

/// Verify the Cauchy-Pompeiu representation of a dbar solution u on the
/// disk of the given radius: the residual
///   u(z) + (1/2 pi i) II r conj(u) / (2 (zeta - z)) dzeta_bar ^ dzeta - w(z)
/// is evaluated with the area integral by midpoint rule on an n x n polar
/// grid of equal-area annuli (orientation fixed by dzeta_bar ^ dzeta =
/// 2i dA) and the boundary term
///   w(z) = (1/2 pi i) I u(zeta)/(zeta - z) dzeta
/// by trapezoidal quadrature on 4n boundary nodes. Returns the maximal
/// residual magnitude over the probe points (default: 8 points on the
/// circle of radius radius/2).
double cauchy_pompeiu_check(const Series& r, const Series& u, double radius,
                            int n, const std::vector<Complex>& probes = {});

}  // namespace crflat
