#pragma once

#include "crflat/series.hpp"

namespace crflat {

/// A rigid hypersurface germ Re z3 = F(z1, conj(z1), z2, conj(z2)).
///
/// Construction enforces the normalizations every computation relies on:
/// F is real, F(0) = 0 and the z1*conj(z1) coefficient (the Levi form value
/// F_{1,1b}(0)) is real and positive.
class HypersurfaceGerm {
 public:
  explicit HypersurfaceGerm(Series F);

  const Series& graphing_function() const { return F_; }
  int order() const { return F_.order(); }

 private:
  Series F_;
};

}  // namespace crflat
