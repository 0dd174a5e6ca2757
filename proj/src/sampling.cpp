#include "crflat/sampling.hpp"

#include <cmath>
#include <numbers>

namespace crflat {

double Sampler::uniform() {
  return (rng_() >> 11) * 0x1.0p-53;
}

double Sampler::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

Complex Sampler::disk(double radius) {
  double r = radius * std::sqrt(uniform());
  double th = 2.0 * std::numbers::pi * uniform();
  return r * Complex(std::cos(th), std::sin(th));
}

Complex Sampler::ring(double r_min, double r_max) {
  double r = uniform(r_min, r_max);
  double th = 2.0 * std::numbers::pi * uniform();
  return r * Complex(std::cos(th), std::sin(th));
}

AdmissibleInput Sampler::admissible_input(int degree) {
  AdmissibleInput in;
  in.rho.set_coeff(0, disk(0.5));
  in.rho.set_coeff(1, ring(0.5, 1.0));
  for (int k = 2; k <= degree; ++k) in.rho.set_coeff(k, disk(0.3));
  for (int k = 0; k <= degree; ++k) in.seed.set_coeff(k, disk(1.0));
  return in;
}

Monomial Sampler::random_monomial(int order) {
  // Exponents drawn uniformly, rejected until the degree fits.
  for (;;) {
    Monomial m;
    for (int v = 0; v < 4; ++v)
      m.e[v] = static_cast<int>(uniform() * (order + 1));
    if (m.degree() <= order) return m;
  }
}

Series Sampler::random_series(int order, int terms, double magnitude) {
  Series s(order);
  for (int k = 0; k < terms; ++k)
    s.set_coeff(random_monomial(order), disk(magnitude));
  s.normalize();
  return s;
}

Series Sampler::random_real_series(int order, int terms, double c_min,
                                   double c_max) {
  Series half = random_series(order, terms);
  Series s = 0.5 * (half + conj(half));
  s.set_coeff(Monomial{}, Complex(uniform(c_min, c_max)));
  s.normalize();
  return s;
}

}  // namespace crflat
