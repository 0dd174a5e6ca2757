#pragma once

#include <array>
#include <cstdint>

namespace crflat {

/// The four series variables z1, conj(z1), z2, conj(z2), in storage order.
enum class Var : int { z1 = 0, z1b = 1, z2 = 2, z2b = 3 };

constexpr int var_index(Var v) { return static_cast<int>(v); }

/// Conjugation swaps z1 <-> z1b and z2 <-> z2b.
constexpr Var conj_var(Var v) {
  switch (v) {
    case Var::z1:  return Var::z1b;
    case Var::z1b: return Var::z1;
    case Var::z2:  return Var::z2b;
    case Var::z2b: return Var::z2;
  }
  return v;
}

/// Exponent quadruple (a, b, c, d) for z1^a z1b^b z2^c z2b^d.
struct Monomial {
  std::array<int, 4> e{0, 0, 0, 0};

  int degree() const { return e[0] + e[1] + e[2] + e[3]; }

  int operator[](Var v) const { return e[var_index(v)]; }

  Monomial conjugated() const { return Monomial{{e[1], e[0], e[3], e[2]}}; }

  bool operator==(const Monomial& o) const { return e == o.e; }
};

/// Graded lexicographic order: total degree first, then lexicographic on
/// (a, b, c, d). This is the canonical serialization order.
struct GradLexLess {
  bool operator()(const Monomial& x, const Monomial& y) const {
    int dx = x.degree(), dy = y.degree();
    if (dx != dy) return dx < dy;
    return x.e < y.e;
  }
};

}  // namespace crflat
