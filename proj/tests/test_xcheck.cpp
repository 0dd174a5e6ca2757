#include <doctest.h>

#include <cmath>

#include "crflat/construct.hpp"
#include "crflat/error.hpp"
#include "crflat/sampling.hpp"
#include "crflat/xcheck.hpp"
#include "test_helpers.hpp"

using namespace crflat;
using namespace crflat::testing;

TEST_CASE("fd_residual: exact bilinear case and model stencils") {
  Series f = (z1() * z1b()).truncated(8);
  CHECK(fd_residual(f, mono(1, 1, 0, 0), 0.3, 8) <= 1e-10);

  Series F = mtilde0(12).graphing_function();
  CHECK(fd_residual(F, mono(1, 1, 0, 0), 0.3, 16) <= 1e-5);
  CHECK(fd_residual(F, mono(2, 1, 0, 0), 0.3, 16) <= 1e-4);

  // z2-plane derivatives go through the same machinery
  CHECK(fd_residual(F, mono(0, 0, 1, 1), 0.3, 12) <= 1e-4);

  CHECK_THROWS_AS((void)fd_residual(one(2), mono(1, 1, 0, 0), 0.3, 8), Error);
  CHECK_THROWS_AS((void)fd_residual(F, mono(1, 1, 0, 0), 0.9, 8), Error);
  CHECK_THROWS_AS((void)fd_residual(F, mono(1, 1, 0, 0), 0.3, 4), Error);
}

TEST_CASE("fd_residual: step refinement improves until series truncation") {
  Series F = mtilde0(12).graphing_function();
  // second-order stencils: quadrupling n (quartering h) must not make
  // things worse by more than roundoff amplification
  double coarse = fd_residual(F, mono(0, 0, 1, 1), 0.3, 8);
  double fine = fd_residual(F, mono(0, 0, 1, 1), 0.3, 32);
  CHECK(fine <= coarse + 1e-9);
}

TEST_CASE("eval_grid: constants, direct values, reality, csv-sized output") {
  GridSample g1 = eval_grid(one(4), 0.4, 8, Var::z2);
  for (Complex v : g1.values) CHECK(std::abs(v - Complex(1.0)) < 1e-15);

  GridSample g2 = eval_grid((z2() * z2b()).truncated(6), 0.5, 9, Var::z2);
  // corner x = 0.5, y = 0 is a grid node for odd n: value 0.25
  bool found = false;
  for (Complex v : g2.values) found = found || std::abs(v - Complex(0.25)) < 1e-12;
  CHECK(found);
  CHECK(g2.values.size() == 81);

  Sampler s(307);
  Series half = s.random_series(6, 15);
  Series realf = 0.5 * (half + conj(half));
  for (Complex v : eval_grid(realf, 0.3, 8, Var::z1).values)
    CHECK(std::abs(v.imag()) < 1e-12);

  CHECK_THROWS_AS((void)eval_grid(one(4), 0.6, 8, Var::z2), Error);
  CHECK_THROWS_AS((void)eval_grid(one(4), 0.3, 4, Var::z2), Error);
}

TEST_CASE("eval respects conjugation on grids") {
  Sampler s(311);
  Series f = s.random_series(6, 15);
  Series fc = conj(f);
  for (int k = 0; k < 10; ++k) {
    Complex p1 = s.disk(0.4), p2 = s.disk(0.4);
    Complex a = eval(f, {p1, std::conj(p1), p2, std::conj(p2)});
    Complex b = eval(fc, {p1, std::conj(p1), p2, std::conj(p2)});
    CHECK(std::abs(b - std::conj(a)) < 1e-12);
  }
}

TEST_CASE("cauchy_pompeiu_check: zero solution, pipeline, convergence") {
  HoloSeries rho{Complex(0.0), Complex(1.0)};

  RigidModelData d0 = build_model_data(rho, HoloSeries{}, 12);
  CHECK(cauchy_pompeiu_check(d0.r, d0.u, 0.3, 64) <= 1e-12);

  RigidModelData d = build_model_data(rho, HoloSeries{Complex(1.0)}, 12);
  double r64 = cauchy_pompeiu_check(d.r, d.u, 0.3, 64);
  double r32 = cauchy_pompeiu_check(d.r, d.u, 0.3, 32);
  CHECK(r64 <= 5e-3);
  CHECK(r32 / r64 >= 1.5);

  CHECK_THROWS_AS((void)cauchy_pompeiu_check(d.r, d.u, 0.45, 64), Error);
  CHECK_THROWS_AS((void)cauchy_pompeiu_check(d.r, d.u, 0.3, 16), Error);

  // a probe hugging the boundary is rejected
  try {
    (void)cauchy_pompeiu_check(d.r, d.u, 0.3, 64, {Complex(0.2999)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QuadratureDegenerate);
  }

  // u that does not solve the dbar equation is rejected up front
  try {
    (void)cauchy_pompeiu_check(d.r, Series::constant(1.0, 12), 0.3, 64);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvariantViolation);
  }
}
