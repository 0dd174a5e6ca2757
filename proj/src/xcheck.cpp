#include "crflat/xcheck.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "crflat/construct.hpp"
#include "crflat/error.hpp"

namespace crflat {

namespace {

constexpr double kPi = std::numbers::pi;

// O(h^2) central stencils for the m-th derivative, offsets -2..2.
const std::map<int, std::vector<std::pair<int, double>>>& stencil_table() {
  static const std::map<int, std::vector<std::pair<int, double>>> table{
      {0, {{0, 1.0}}},
      {1, {{-1, -0.5}, {1, 0.5}}},
      {2, {{-1, 1.0}, {0, -2.0}, {1, 1.0}}},
      {3, {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}}},
      {4, {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}}},
  };
  return table;
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

Complex ipow(int k) {  // i^k for possibly negative-free k >= 0
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Discretization of (d/dz)^alpha (d/dzbar)^beta in one complex plane:
// a map from integer grid offsets (s, t) to the complex weight of
// F(center + (s + i t) h), already divided by the right power of h.
std::map<std::pair<int, int>, Complex> plane_stencil(int alpha, int beta,
                                                     double h) {
  std::map<std::pair<int, int>, Complex> out;
  int total = alpha + beta;
  if (total > 4)
    throw Error(ErrorKind::ValidationError,
                "finite-difference stencils support derivative order <= 4 per plane");
  double scale = std::pow(2.0, -total);
  for (int j = 0; j <= alpha; ++j)
    for (int k = 0; k <= beta; ++k) {
      // (d/dz)^a (d/dzbar)^b = 2^-(a+b) sum C(a,j) C(b,k) (-i)^(a-j) i^(b-k)
      //                        dx^(j+k) dy^(a+b-j-k)
      Complex w = scale * binom(alpha, j) * binom(beta, k) *
                  ipow(3 * (alpha - j)) * ipow(beta - k);
      int p = j + k;
      int q = total - p;
      const auto& sx = stencil_table().at(p);
      const auto& sy = stencil_table().at(q);
      double hp = std::pow(h, total);
      for (const auto& [s, cs] : sx)
        for (const auto& [t, ct] : sy) out[{s, t}] += w * cs * ct / hp;
    }
  // Prune numerically cancelled entries.
  for (auto it = out.begin(); it != out.end();) {
    if (std::abs(it->second) < 1e-14 / std::pow(h, total))
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

Complex eval_at(const Series& F, Complex p1, Complex p2) {
  return eval(F, {p1, std::conj(p1), p2, std::conj(p2)});
}

}  // namespace

GridSample eval_grid(const Series& F, double radius, int n, Var plane) {
  if (!(radius > 0.0) || radius > 0.5)
    throw Error(ErrorKind::ValidationError, "grid radius must lie in (0, 0.5]");
  if (n < 8)
    throw Error(ErrorKind::ValidationError, "grid resolution must be >= 8");
  if (plane != Var::z1 && plane != Var::z2)
    throw Error(ErrorKind::ValidationError, "grid plane must be z1 or z2");
  GridSample g{radius, n, plane, {}};
  g.values.reserve(static_cast<size_t>(n) * n);
  for (int iy = 0; iy < n; ++iy) {
    double y = -radius + 2.0 * radius * iy / (n - 1);
    for (int ix = 0; ix < n; ++ix) {
      double x = -radius + 2.0 * radius * ix / (n - 1);
      Complex z(x, y);
      g.values.push_back(plane == Var::z1 ? eval_at(F, z, 0.0)
                                          : eval_at(F, 0.0, z));
    }
  }
  return g;
}

double fd_residual(const Series& F, const Monomial& deriv, double radius,
                   int n) {
  if (!(radius > 0.0) || radius > 0.5)
    throw Error(ErrorKind::ValidationError, "fd radius must lie in (0, 0.5]");
  if (n < 8)
    throw Error(ErrorKind::ValidationError, "fd resolution must be >= 8");
  int total = deriv.degree();
  if (F.order() < total + 2)
    throw Error(ErrorKind::OrderExhausted,
                "series order too low for this stencil");

  Series dF = F;
  for (int v = 0; v < 4; ++v)
    for (int k = 0; k < deriv.e[v]; ++k) dF = diff(dF, static_cast<Var>(v));

  double h = radius / (4.0 * n);
  auto st1 = plane_stencil(deriv.e[0], deriv.e[1], h);
  auto st2 = plane_stencil(deriv.e[2], deriv.e[3], h);

  double worst = 0.0;
  for (int iy = 0; iy < n; ++iy) {
    double y = -radius + 2.0 * radius * iy / (n - 1);
    for (int ix = 0; ix < n; ++ix) {
      double x = -radius + 2.0 * radius * ix / (n - 1);
      Complex z2(x, y);
      if (std::abs(z2) > radius) continue;
      Complex fd(0.0);
      for (const auto& [o1, w1] : st1) {
        Complex p1(o1.first * h, o1.second * h);
        for (const auto& [o2, w2] : st2) {
          Complex p2 = z2 + Complex(o2.first * h, o2.second * h);
          fd += w1 * w2 * eval_at(F, p1, p2);
        }
      }
      Complex exact = eval_at(dF, 0.0, z2);
      worst = std::max(worst, std::abs(exact - fd));
    }
  }
  return worst;
}

double cauchy_pompeiu_check(const Series& r, const Series& u, double radius,
                            int n, const std::vector<Complex>& probes_in) {
  if (!(radius > 0.0) || radius > 0.4)
    throw Error(ErrorKind::ValidationError,
                "quadrature radius must lie in (0, 0.4]");
  if (n < 32)
    throw Error(ErrorKind::ValidationError,
                "quadrature resolution must be >= 32");
  if (!is_zero(dbar_residual(r, u)))
    throw Error(ErrorKind::InvariantViolation,
                "u does not satisfy the dbar equation for this r");

  std::vector<Complex> probes = probes_in;
  if (probes.empty()) {
    for (int k = 0; k < 8; ++k) {
      double th = 2.0 * kPi * k / 8.0;
      probes.push_back(0.5 * radius * Complex(std::cos(th), std::sin(th)));
    }
  }
  double outer_width = radius * (1.0 - std::sqrt((n - 1.0) / n));
  for (Complex z : probes)
    if (std::abs(z) > radius - 2.0 * outer_width)
      throw Error(ErrorKind::QuadratureDegenerate,
                  "probe point within two cells of the boundary");

  // Midpoint nodes of equal-area polar cells; each cell has area
  // pi radius^2 / n^2.
  double cell_area = kPi * radius * radius / (static_cast<double>(n) * n);
  std::vector<Complex> nodes;
  std::vector<Complex> g_at_nodes;  // r(zeta) conj(u(zeta)) / 2
  nodes.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    double rho = radius * std::sqrt((i + 0.5) / n);
    for (int j = 0; j < n; ++j) {
      double th = 2.0 * kPi * (j + 0.5) / n;
      Complex zeta = rho * Complex(std::cos(th), std::sin(th));
      nodes.push_back(zeta);
      g_at_nodes.push_back(0.5 * eval_at(r, 0.0, zeta) *
                           std::conj(eval_at(u, 0.0, zeta)));
    }
  }

  int nb = 4 * n;
  std::vector<Complex> bnodes, u_at_boundary;
  bnodes.reserve(nb);
  for (int j = 0; j < nb; ++j) {
    double th = 2.0 * kPi * j / nb;
    Complex zeta = radius * Complex(std::cos(th), std::sin(th));
    bnodes.push_back(zeta);
    u_at_boundary.push_back(eval_at(u, 0.0, zeta));
  }

  double worst = 0.0;
  for (Complex z : probes) {
    Complex area(0.0);
    for (size_t k = 0; k < nodes.size(); ++k)
      area += g_at_nodes[k] / (nodes[k] - z);
    area *= cell_area / kPi;  // (1/2 pi i) dzeta_bar ^ dzeta = (1/pi) dA

    Complex w(0.0);
    for (int j = 0; j < nb; ++j)
      w += u_at_boundary[j] * bnodes[j] / (bnodes[j] - z);
    w /= static_cast<double>(nb);

    Complex residual = eval_at(u, 0.0, z) + area - w;
    worst = std::max(worst, std::abs(residual));
  }
  return worst;
}

}  // namespace crflat
