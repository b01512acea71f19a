#pragma once

#include <array>
#include <complex>

#include "error.hpp"

namespace burnstab {

// Monic real cubic  x^3 + c2*x^2 + c1*x + c0.
struct CubicPoly {
  double c2{};
  double c1{};
  double c0{};
};

// c2^2 c1^2 - 4 c1^3 - 4 c2^3 c0 - 27 c0^2 + 18 c2 c1 c0.
// Positive: three distinct real roots. Negative: one real root and a
// conjugate pair. Zero: a repeated (necessarily real) root.
double discriminant(const CubicPoly& q) noexcept;

double evaluate(const CubicPoly& q, double x) noexcept;
std::complex<double> evaluate(const CubicPoly& q,
                              std::complex<double> x) noexcept;

enum class RootKind { three_real, one_real_pair };

struct RootSet {
  RootKind kind{};
  // three_real: all three entries valid, ascending (repeats allowed).
  // one_real_pair: only real_roots[0] valid; the pair is pair_re +- i*pair_im.
  std::array<double, 3> real_roots{};
  double pair_re{};
  double pair_im{};  // > 0 when kind == one_real_pair

  std::array<std::complex<double>, 3> all() const;
};

// Closed-form solve (trigonometric / Cardano by discriminant sign) with a
// Newton polish per root. A conjugate pair whose imaginary part falls below
// 1e-10*(1+|re|) is collapsed to a repeated real root, so the reported kind
// can disagree with sign(discriminant) only within rounding of the boundary.
RootSet solve(const CubicPoly& q);

// Sufficient conditions on x^3 + c2 x^2 + c1 x + d with c2 > 0, d > 0
// (c1 of either sign): c2*c1 <= 3d forces a conjugate root pair, and
// additionally c2*c1 < d puts that pair's real part in (0, +inf).
enum class PairImplication {
  none,
  conjugate_pair_exists,
  pair_has_positive_real_part,
};

struct PairCriteria {
  bool bc_le_3d{};  // c2*c1 <= 3*c0
  bool bc_lt_d{};   // c2*c1 < c0
  PairImplication implied{};
};

PairCriteria pair_criteria(const CubicPoly& q);  // rejects c2 <= 0 or c0 <= 0

}  // namespace burnstab
