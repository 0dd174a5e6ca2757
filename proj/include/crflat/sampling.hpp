#pragma once

#include <cstdint>
#include <random>

#include "crflat/series.hpp"

namespace crflat {

/// A construction input: a holomorphic disk map and a dbar seed.
struct AdmissibleInput {
  HoloSeries rho;
  HoloSeries seed;
};

/// Deterministic random draws for property tests and the selftest. The
/// uniform deviate is derived from raw mt19937_64 output (not from
/// std::uniform_real_distribution, whose stream is implementation-defined),
/// so a fixed seed pins the draws everywhere.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform();                          // [0, 1)
  double uniform(double lo, double hi);
  Complex disk(double radius);               // uniform on |c| <= radius
  Complex ring(double r_min, double r_max);  // modulus uniform in [r_min, r_max]

  /// rho with |rho(0)| <= 0.5, |rho'(0)| in [0.5, 1], remaining
  /// coefficients in the 0.3-ball; seed coefficients in the unit ball.
  AdmissibleInput admissible_input(int degree = 6);

  /// Random series of the given order with `terms` random monomials.
  Series random_series(int order, int terms, double magnitude = 1.0);

  /// Random real series with constant term in [c_min, c_max].
  Series random_real_series(int order, int terms, double c_min, double c_max);

 private:
  std::mt19937_64 rng_;
  Monomial random_monomial(int order);
};

}  // namespace crflat
