#include "crflat/germ.hpp"

#include <cmath>

#include "crflat/error.hpp"

namespace crflat {

HypersurfaceGerm::HypersurfaceGerm(Series F) : F_(std::move(F)) {
  if (F_.order() < 2)
    throw Error(ErrorKind::ValidationError, "germ needs order >= 2");
  if (!check_real(F_))
    throw Error(ErrorKind::NotReal, "graphing function is not real");
  double scale = 1.0 + F_.max_abs_coeff();
  if (std::abs(F_.constant_term()) > tolerances().cmp_rel * scale)
    throw Error(ErrorKind::InvariantViolation, "graphing function has F(0) != 0");
  Complex levi = F_.coeff(Monomial{{1, 1, 0, 0}});
  if (std::abs(levi.imag()) > tolerances().cmp_rel * scale ||
      levi.real() <= tolerances().div)
    throw Error(ErrorKind::InvariantViolation,
                "Levi coefficient F_{1,1b}(0) must be real and positive");
  F_ = F_.truncated(F_.order());
}

}  // namespace crflat
