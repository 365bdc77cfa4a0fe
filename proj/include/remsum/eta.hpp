#pragma once

#include "remsum/exactnum.hpp"

namespace remsum {

/// Limit profile {x}({x} - 1) / (2x), with the value -1/2 at x = 0.
inline Scalar eta_tilde(const Scalar& x) {
  if (x.sign() == 0) return Scalar(Fraction(-1, 2));
  Scalar f = frac(x);
  return f * (f - Scalar(1)) / (Scalar(2) * x);
}

/// 1/2 - floor(x)(floor(x) + 1) / (2x^2) away from the integers.
inline Scalar eta_tilde_prime(const Scalar& x) {
  if (x.is_integer()) throw DomainError("eta_tilde is not differentiable at integers");
  Integer m = floor(x);
  return Scalar(Fraction(1, 2)) - Scalar(Integer(m * (m + 1))) / (Scalar(2) * x * x);
}

}  // namespace remsum
