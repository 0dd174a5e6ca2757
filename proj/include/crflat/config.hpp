#pragma once

namespace crflat {

/// Numerical tolerances used throughout the library.
///
/// cmp_rel   — relative floor for coefficient comparisons: two coefficient
///             sets agree when every difference is below
///             cmp_rel * (1 + max compared magnitude).
/// div       — absolute threshold below which a constant term counts as
///             zero for division / invertibility purposes.
/// store_rel — relative threshold for dropping coefficients when a series
///             is brought to canonical form.
struct Tolerances {
  double cmp_rel = 1e-9;
  double div = 1e-12;
  double store_rel = 1e-15;
};

/// Process-wide tolerance set. The CLI overrides these via --tol-cmp and
/// --tol-div; library code reads them through this accessor.
Tolerances& tolerances();

/// Maximal truncation order any series may carry. Antidifferentiation and
/// exact-polynomial constructors are capped here. Initialized from the
/// CRFLAT_MAX_ORDER environment variable, default 24.
int max_order();

/// Override the cap (mainly for tests; clamped to [2, 64]).
void set_max_order(int n);

}  // namespace crflat
