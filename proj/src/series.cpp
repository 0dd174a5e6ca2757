#include "crflat/series.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "crflat/error.hpp"

namespace crflat {

Tolerances& tolerances() {
  static Tolerances tol;
  return tol;
}

namespace {

int read_max_order_env() {
  if (const char* s = std::getenv("CRFLAT_MAX_ORDER")) {
    int n = std::atoi(s);
    if (n >= 2) return std::min(n, 64);
  }
  return 24;
}

std::atomic<int>& max_order_slot() {
  static std::atomic<int> slot{read_max_order_env()};
  return slot;
}

}  // namespace

int max_order() { return max_order_slot().load(); }

void set_max_order(int n) { max_order_slot().store(std::clamp(n, 2, 64)); }

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnitConstantTerm:     return "NonUnitConstantTerm";
    case ErrorKind::NonPositiveConstantTerm: return "NonPositiveConstantTerm";
    case ErrorKind::NotReal:                 return "NotReal";
    case ErrorKind::OrderExhausted:          return "OrderExhausted";
    case ErrorKind::NonConjugatePoint:       return "NonConjugatePoint";
    case ErrorKind::TwoDegenerate:           return "TwoDegenerate";
    case ErrorKind::IndeterminateTerm:       return "IndeterminateTerm";
    case ErrorKind::RhoNotInDisk:            return "RhoNotInDisk";
    case ErrorKind::RhoCritical:             return "RhoCritical";
    case ErrorKind::OrderMismatch:           return "OrderMismatch";
    case ErrorKind::ZeroScale:               return "ZeroScale";
    case ErrorKind::NotInModelForm:          return "NotInModelForm";
    case ErrorKind::InvariantViolation:      return "InvariantViolation";
    case ErrorKind::QuadratureDegenerate:    return "QuadratureDegenerate";
    case ErrorKind::ValidationError:         return "ValidationError";
    case ErrorKind::IoError:                 return "IoError";
  }
  return "UnknownError";
}

Series::Series(int order) : order_(std::clamp(order, 0, max_order())) {}

Series Series::constant(Complex c, int order) {
  Series s(order < 0 ? max_order() : order);
  s.set_coeff(Monomial{}, c);
  s.normalize();
  return s;
}

Series Series::variable(Var v, int order) {
  Monomial m;
  m.e[var_index(v)] = 1;
  return monomial(m, 1.0, order);
}

Series Series::monomial(const Monomial& m, Complex c, int order) {
  Series s(order < 0 ? max_order() : order);
  s.set_coeff(m, c);
  s.normalize();
  return s;
}

Complex Series::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

double Series::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [mon, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

int Series::top_degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

Series Series::truncated(int new_order) const {
  Series out(std::min(order_, new_order));
  for (const auto& [m, c] : terms_)
    if (m.degree() <= out.order_) out.terms_.emplace(m, c);
  return out;
}

Series Series::z1_independent_part() const {
  Series out(order_);
  for (const auto& [m, c] : terms_)
    if (m.e[0] == 0 && m.e[1] == 0) out.terms_.emplace(m, c);
  return out;
}

bool Series::depends_on(Var v) const {
  for (const auto& [m, c] : terms_)
    if (m[v] > 0) return true;
  return false;
}

Series& Series::set_coeff(const Monomial& m, Complex c) {
  if (m.degree() <= order_) {
    if (c == Complex(0.0))
      terms_.erase(m);
    else
      terms_[m] = c;
  }
  return *this;
}

void Series::normalize() {
  double floor = tolerances().store_rel * (1.0 + max_abs_coeff());
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.degree() > order_ || std::abs(it->second) < floor)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Series Series::operator-() const {
  Series out(order_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Series& Series::operator+=(const Series& o) {
  order_ = std::min(order_, o.order_);
  for (const auto& [m, c] : o.terms_) terms_[m] += c;
  normalize();
  return *this;
}

Series& Series::operator-=(const Series& o) {
  order_ = std::min(order_, o.order_);
  for (const auto& [m, c] : o.terms_) terms_[m] -= c;
  normalize();
  return *this;
}

Series& Series::operator*=(Complex c) {
  for (auto& [m, v] : terms_) v *= c;
  normalize();
  return *this;
}

Series operator+(Series a, const Series& b) { a += b; return a; }
Series operator-(Series a, const Series& b) { a -= b; return a; }
Series operator*(Complex c, Series a) { a *= c; return a; }
Series operator*(Series a, Complex c) { a *= c; return a; }
Series operator+(const Series& a, Complex c) { return a + Series::constant(c, a.order()); }
Series operator+(Complex c, const Series& a) { return a + c; }
Series operator-(const Series& a, Complex c) { return a - Series::constant(c, a.order()); }
Series operator-(Complex c, const Series& a) { return Series::constant(c, a.order()) - a; }

Series operator*(const Series& a, const Series& b) {
  Series out(std::min(a.order_, b.order_));
  for (const auto& [ma, ca] : a.terms_) {
    int da = ma.degree();
    if (da > out.order_) break;  // gradlex map: later terms only get larger
    for (const auto& [mb, cb] : b.terms_) {
      if (da + mb.degree() > out.order_) break;
      Monomial m{{ma.e[0] + mb.e[0], ma.e[1] + mb.e[1], ma.e[2] + mb.e[2],
                  ma.e[3] + mb.e[3]}};
      out.terms_[m] += ca * cb;
    }
  }
  out.normalize();
  return out;
}

namespace {

// Homogeneous slices of a term map, indexed by total degree.
std::vector<std::vector<std::pair<Monomial, Complex>>> by_degree(
    const Series& s, int order) {
  std::vector<std::vector<std::pair<Monomial, Complex>>> out(order + 1);
  for (const auto& [m, c] : s.terms()) {
    int d = m.degree();
    if (d <= order) out[d].emplace_back(m, c);
  }
  return out;
}

void accumulate_product(const std::vector<std::pair<Monomial, Complex>>& xs,
                        const std::vector<std::pair<Monomial, Complex>>& ys,
                        std::map<Monomial, Complex, GradLexLess>& acc) {
  for (const auto& [mx, cx] : xs)
    for (const auto& [my, cy] : ys) {
      Monomial m{{mx.e[0] + my.e[0], mx.e[1] + my.e[1], mx.e[2] + my.e[2],
                  mx.e[3] + my.e[3]}};
      acc[m] += cx * cy;
    }
}

}  // namespace

Series invert(const Series& a) {
  Complex a0 = a.constant_term();
  if (std::abs(a0) <= tolerances().div)
    throw Error(ErrorKind::NonUnitConstantTerm,
                "series has no invertible constant term");
  int N = a.order();
  auto av = by_degree(a, N);
  // b solved degree by degree from a*b = 1:
  //   b_k = -(1/a_0) * sum_{j=1..k} a_j * b_{k-j}
  std::vector<std::vector<std::pair<Monomial, Complex>>> bv(N + 1);
  Series out(N);
  Complex inv_a0 = 1.0 / a0;
  out.set_coeff(Monomial{}, inv_a0);
  bv[0].emplace_back(Monomial{}, inv_a0);
  for (int k = 1; k <= N; ++k) {
    std::map<Monomial, Complex, GradLexLess> acc;
    for (int j = 1; j <= k; ++j)
      accumulate_product(av[j], bv[k - j], acc);
    for (const auto& [m, c] : acc) {
      Complex v = -inv_a0 * c;
      out.set_coeff(m, v);
      bv[k].emplace_back(m, v);
    }
  }
  out.normalize();
  return out;
}

Series sqrt_real(const Series& a) {
  if (!check_real(a))
    throw Error(ErrorKind::NotReal, "sqrt_real of a non-real series");
  Complex a0 = a.constant_term();
  if (a0.real() <= tolerances().div)
    throw Error(ErrorKind::NonPositiveConstantTerm,
                "sqrt_real needs a positive constant term");
  int N = a.order();
  auto av = by_degree(a, N);
  // s_k = (a_k - sum_{j=1..k-1} s_j * s_{k-j}) / (2 s_0)
  std::vector<std::vector<std::pair<Monomial, Complex>>> sv(N + 1);
  Series out(N);
  double s0 = std::sqrt(a0.real());
  out.set_coeff(Monomial{}, s0);
  sv[0].emplace_back(Monomial{}, Complex(s0));
  for (int k = 1; k <= N; ++k) {
    std::map<Monomial, Complex, GradLexLess> acc;
    for (const auto& [m, c] : av[k]) acc[m] += c;
    std::map<Monomial, Complex, GradLexLess> cross;
    for (int j = 1; j <= k - 1; ++j)
      accumulate_product(sv[j], sv[k - j], cross);
    for (const auto& [m, c] : cross) acc[m] -= c;
    for (const auto& [m, c] : acc) {
      Complex v = c / (2.0 * s0);
      out.set_coeff(m, v);
      sv[k].emplace_back(m, v);
    }
  }
  // Reality can only be lost to roundoff; project back.
  out += conj(out);
  out *= 0.5;
  return out;
}

Series conj(const Series& a) {
  Series out(a.order());
  for (const auto& [m, c] : a.terms())
    out.set_coeff(m.conjugated(), std::conj(c));
  return out;
}

Series diff(const Series& a, Var v) {
  if (a.order() < 1)
    throw Error(ErrorKind::OrderExhausted, "cannot differentiate an order-0 series");
  int idx = var_index(v);
  Series out(a.order() - 1);
  for (const auto& [m, c] : a.terms()) {
    int k = m.e[idx];
    if (k == 0) continue;
    Monomial d = m;
    d.e[idx] = k - 1;
    if (d.degree() <= out.order()) out.set_coeff(d, c * static_cast<double>(k));
  }
  out.normalize();
  return out;
}

Series antidiff(const Series& a, Var v) {
  int idx = var_index(v);
  Series out(std::min(a.order() + 1, max_order()));
  for (const auto& [m, c] : a.terms()) {
    Monomial d = m;
    d.e[idx] += 1;
    if (d.degree() <= out.order())
      out.set_coeff(d, c / static_cast<double>(d.e[idx]));
  }
  out.normalize();
  return out;
}

Series exp_series(const Series& a) {
  Complex a0 = a.constant_term();
  Series x = a - Series::constant(a0, a.order());  // positive valuation
  Series out = Series::constant(1.0, a.order());
  Series power = Series::constant(1.0, a.order());
  double factorial = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    power = power * x;
    factorial *= k;
    if (power.empty()) break;
    out += (1.0 / factorial) * power;
  }
  out *= std::exp(a0);
  return out;
}

Series log_series(const Series& a) {
  Complex a0 = a.constant_term();
  if (std::abs(a0.imag()) > tolerances().div || a0.real() <= tolerances().div)
    throw Error(ErrorKind::NonPositiveConstantTerm,
                "log_series needs a real positive constant term");
  Series x = (1.0 / a0.real()) * a - Series::constant(1.0, a.order());
  Series out = Series::constant(std::log(a0.real()), a.order());
  Series power = Series::constant(1.0, a.order());
  for (int k = 1; k <= a.order(); ++k) {
    power = power * x;
    if (power.empty()) break;
    double sign = (k % 2 == 1) ? 1.0 : -1.0;
    out += (sign / k) * power;
  }
  return out;
}

namespace {

// Horner evaluation, nesting the variables in storage order. `items` is
// sorted gradlex; recursion regroups by the exponent of the current
// variable, which keeps the scheme exact for sparse supports.
Complex eval_rec(const std::vector<std::pair<Monomial, Complex>>& items,
                 int var, const std::array<Complex, 4>& p) {
  if (items.empty()) return 0.0;
  if (var == 4) {
    Complex s = 0.0;
    for (const auto& [m, c] : items) s += c;
    return s;
  }
  // Bucket by exponent of this variable.
  std::map<int, std::vector<std::pair<Monomial, Complex>>> groups;
  for (const auto& [m, c] : items) groups[m.e[var]].push_back({m, c});
  int top = groups.rbegin()->first;
  Complex acc = 0.0;
  for (int k = top; k >= 0; --k) {
    acc *= p[var];
    auto it = groups.find(k);
    if (it != groups.end()) acc += eval_rec(it->second, var + 1, p);
  }
  return acc;
}

}  // namespace

Complex eval(const Series& a, const std::array<Complex, 4>& point) {
  double tol1 = 1e-12 * (1.0 + std::abs(point[0]));
  double tol2 = 1e-12 * (1.0 + std::abs(point[2]));
  if (std::abs(point[1] - std::conj(point[0])) > tol1 ||
      std::abs(point[3] - std::conj(point[2])) > tol2)
    throw Error(ErrorKind::NonConjugatePoint,
                "conjugate entries do not match the point");
  std::vector<std::pair<Monomial, Complex>> items(a.terms().begin(),
                                                  a.terms().end());
  return eval_rec(items, 0, point);
}

bool check_real(const Series& a) { return approx_equal(a, conj(a), a.order()); }

double max_coeff_distance(const Series& a, const Series& b, int up_to) {
  if (up_to < 0) up_to = std::min(a.order(), b.order());
  double m = 0.0;
  for (const auto& [mon, c] : a.terms())
    if (mon.degree() <= up_to) m = std::max(m, std::abs(c - b.coeff(mon)));
  for (const auto& [mon, c] : b.terms())
    if (mon.degree() <= up_to) m = std::max(m, std::abs(c - a.coeff(mon)));
  return m;
}

namespace {

double max_mag_up_to(const Series& a, int up_to) {
  double m = 0.0;
  for (const auto& [mon, c] : a.terms())
    if (mon.degree() <= up_to) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

bool approx_equal(const Series& a, const Series& b, int up_to) {
  if (up_to < 0) up_to = std::min(a.order(), b.order());
  double scale = std::max(max_mag_up_to(a, up_to), max_mag_up_to(b, up_to));
  double tol = tolerances().cmp_rel * (1.0 + scale);
  return max_coeff_distance(a, b, up_to) <= tol;
}

bool is_zero(const Series& a, int up_to) {
  if (up_to < 0) up_to = a.order();
  double scale = max_mag_up_to(a, up_to);
  return scale <= tolerances().cmp_rel * (1.0 + scale);
}

HoloSeries::HoloSeries(int order) : order_(std::clamp(order, 0, max_order())) {}

HoloSeries::HoloSeries(std::initializer_list<Complex> coeffs)
    : order_(max_order()) {
  int k = 0;
  for (Complex c : coeffs) set_coeff(k++, c);
}

Complex HoloSeries::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

HoloSeries& HoloSeries::set_coeff(int k, Complex c) {
  if (k >= 0 && k <= order_) {
    if (c == Complex(0.0))
      coeffs_.erase(k);
    else
      coeffs_[k] = c;
  }
  return *this;
}

HoloSeries HoloSeries::derivative() const {
  HoloSeries out(order_ == 0 ? 0 : order_ - 1);
  for (const auto& [k, c] : coeffs_)
    if (k >= 1) out.set_coeff(k - 1, c * static_cast<double>(k));
  return out;
}

Series HoloSeries::embed(int order) const {
  Series out(order < 0 ? order_ : order);
  for (const auto& [k, c] : coeffs_) {
    Monomial m;
    m.e[var_index(Var::z2)] = k;
    out.set_coeff(m, c);
  }
  out.normalize();
  return out;
}

}  // namespace crflat
