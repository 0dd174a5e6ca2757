#pragma once

#include <array>
#include <complex>
#include <map>

#include "crflat/config.hpp"
#include "crflat/monomial.hpp"

namespace crflat {

using Complex = std::complex<double>;

/// Truncated formal power series in z1, conj(z1), z2, conj(z2) with complex
/// coefficients.
///
/// Every series carries a truncation order: the maximal total degree up to
/// which its coefficients are asserted correct. Arithmetic propagates the
/// order conservatively (min for ring operations, -1 per derivative, +1 per
/// antiderivative capped at max_order()), and stored terms never exceed it.
/// Coefficients below store_rel * (1 + max magnitude) are dropped, so the
/// canonical form of zero is an empty term map.
class Series {
 public:
  using TermMap = std::map<Monomial, Complex, GradLexLess>;

  /// Zero series of the given order (default: exact, i.e. max_order()).
  Series() : order_(max_order()) {}
  explicit Series(int order);

  static Series constant(Complex c, int order = -1);
  static Series variable(Var v, int order = -1);
  static Series monomial(const Monomial& m, Complex c, int order = -1);

  int order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Complex coeff(const Monomial& m) const;
  Complex constant_term() const { return coeff(Monomial{}); }
  double max_abs_coeff() const;

  /// Largest total degree with a stored term (-1 for the zero series).
  int top_degree() const;

  /// Restriction to degrees <= new_order; the order shrinks to new_order if
  /// that is smaller than the current one (a truncation never raises the
  /// asserted order).
  Series truncated(int new_order) const;

  /// The part of the series whose monomials are independent of z1 and
  /// conj(z1) (exponents a = b = 0).
  Series z1_independent_part() const;

  bool depends_on(Var v) const;

  Series& set_coeff(const Monomial& m, Complex c);  // respects the order cap
  void normalize();

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(Complex c);

 private:
  TermMap terms_;
  int order_;

  friend Series operator*(const Series& a, const Series& b);
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator*(Complex c, Series a);
Series operator*(Series a, Complex c);
Series operator+(const Series& a, Complex c);
Series operator+(Complex c, const Series& a);
Series operator-(const Series& a, Complex c);
Series operator-(Complex c, const Series& a);

/// Multiplicative inverse, solved degree by degree. Requires a constant
/// term of magnitude above the division tolerance.
Series invert(const Series& a);

/// Square root of a real series with positive constant term; the result is
/// real with positive constant term and squares back to the input at its
/// order.
Series sqrt_real(const Series& a);

/// Coefficient-wise conjugation combined with the variable swap
/// z1 <-> conj(z1), z2 <-> conj(z2). An involutive ring anti-automorphism
/// (here: automorphism, since the ring is commutative) fixing real series.
Series conj(const Series& a);

/// Term-by-term partial derivative; consumes one order.
Series diff(const Series& a, Var v);

/// Term-by-term antiderivative with zero constant of integration: every
/// resulting monomial has positive exponent in v. Gains one order, capped
/// at max_order().
Series antidiff(const Series& a, Var v);

/// exp of a series; the constant term may be any complex number.
Series exp_series(const Series& a);

/// log of a series with real positive constant term.
Series log_series(const Series& a);

/// Evaluation at a point (p1, p1b, p2, p2b); p1b and p2b must equal the
/// conjugates of p1 and p2 (evaluation on the real locus). Horner scheme
/// nested over the four variables.
Complex eval(const Series& a, const std::array<Complex, 4>& point);

/// True iff conj(a) agrees with a within the comparison tolerance.
bool check_real(const Series& a);

/// Largest |a_m - b_m| over monomials of degree <= up_to (default: the
/// smaller of the two orders).
double max_coeff_distance(const Series& a, const Series& b, int up_to = -1);

/// Coefficient-wise comparison with the relative tolerance
/// cmp_rel * (1 + max compared magnitude), up to the given degree.
bool approx_equal(const Series& a, const Series& b, int up_to = -1);

/// All coefficients of degree <= up_to below the comparison tolerance.
bool is_zero(const Series& a, int up_to = -1);

/// Truncated series in z2 alone: the holomorphic input data of the
/// construction (the disk map rho and the dbar seed).
class HoloSeries {
 public:
  using CoeffMap = std::map<int, Complex>;

  HoloSeries() : order_(max_order()) {}
  explicit HoloSeries(int order);
  HoloSeries(std::initializer_list<Complex> coeffs);  // by ascending exponent

  static HoloSeries zero(int order = -1) { return HoloSeries(order < 0 ? max_order() : order); }

  int order() const { return order_; }
  const CoeffMap& coeffs() const { return coeffs_; }

  Complex coeff(int k) const;
  HoloSeries& set_coeff(int k, Complex c);

  Complex at_zero() const { return coeff(0); }

  /// d/dz2.
  HoloSeries derivative() const;

  /// Embed as a 4-variable series (z2-monomials only).
  Series embed(int order = -1) const;

 private:
  CoeffMap coeffs_;
  int order_;
};

}  // namespace crflat
