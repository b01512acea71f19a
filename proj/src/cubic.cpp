#include "cubic.hpp"

#include <algorithm>
#include <cmath>

namespace burnstab {

namespace {

constexpr double kResidualTol = 1e-9;       // |P(root)| <= tol*(1+|root|^3)
constexpr double kImagCollapse = 1e-10;     // |im| < tol*(1+|re|) -> real
constexpr double kPi = 3.141592653589793238462643383279502884;

double residual_bound(double root_mag) {
  return kResidualTol * (1.0 + root_mag * root_mag * root_mag);
}

double derivative(const CubicPoly& q, double x) {
  return (3.0 * x + 2.0 * q.c2) * x + q.c1;
}

std::complex<double> derivative(const CubicPoly& q, std::complex<double> x) {
  return (3.0 * x + 2.0 * q.c2) * x + q.c1;
}

// Newton steps are kept only while they shrink the residual, so a root that
// is already converged (or sits on a repeated-root plateau where Newton is
// ill-conditioned) cannot be made worse.
double polish(const CubicPoly& q, double x) {
  for (int pass = 0; pass < 3; ++pass) {
    const double d = derivative(q, x);
    if (d == 0.0) break;
    const double x_new = x - evaluate(q, x) / d;
    if (!(std::abs(evaluate(q, x_new)) < std::abs(evaluate(q, x)))) break;
    x = x_new;
    if (std::abs(evaluate(q, x)) <= residual_bound(std::abs(x))) break;
  }
  return x;
}

std::complex<double> polish(const CubicPoly& q, std::complex<double> x) {
  for (int pass = 0; pass < 3; ++pass) {
    const std::complex<double> d = derivative(q, x);
    if (d == 0.0) break;
    const std::complex<double> x_new = x - evaluate(q, x) / d;
    if (!(std::abs(evaluate(q, x_new)) < std::abs(evaluate(q, x)))) break;
    x = x_new;
    if (std::abs(evaluate(q, x)) <= residual_bound(std::abs(x))) break;
  }
  return x;
}

RootSet three_real(double r0, double r1, double r2) {
  RootSet rs;
  rs.kind = RootKind::three_real;
  rs.real_roots = {r0, r1, r2};
  std::sort(rs.real_roots.begin(), rs.real_roots.end());
  return rs;
}

}  // namespace

double discriminant(const CubicPoly& q) noexcept {
  const double b = q.c2, c = q.c1, e = q.c0;
  return b * b * c * c - 4.0 * c * c * c - 4.0 * b * b * b * e -
         27.0 * e * e + 18.0 * b * c * e;
}

double evaluate(const CubicPoly& q, double x) noexcept {
  return ((x + q.c2) * x + q.c1) * x + q.c0;
}

std::complex<double> evaluate(const CubicPoly& q,
                              std::complex<double> x) noexcept {
  return ((x + q.c2) * x + q.c1) * x + q.c0;
}

std::array<std::complex<double>, 3> RootSet::all() const {
  if (kind == RootKind::three_real)
    return {std::complex<double>(real_roots[0]),
            std::complex<double>(real_roots[1]),
            std::complex<double>(real_roots[2])};
  return {std::complex<double>(real_roots[0]),
          std::complex<double>(pair_re, pair_im),
          std::complex<double>(pair_re, -pair_im)};
}

RootSet solve(const CubicPoly& q) {
  if (!std::isfinite(q.c2) || !std::isfinite(q.c1) || !std::isfinite(q.c0))
    throw error(errc::invalid_argument, "cubic coefficients must be finite");

  // Depressed form: x = t - c2/3, t^3 + p*t + r.
  const double shift = q.c2 / 3.0;
  const double p = q.c1 - q.c2 * q.c2 / 3.0;
  const double r =
      q.c2 * (2.0 * q.c2 * q.c2 / 27.0 - q.c1 / 3.0) + q.c0;
  const double disc = discriminant(q);

  if (disc > 0.0) {
    // Three distinct real roots; p < 0 up to rounding at the triple-root
    // corner, where everything collapses onto the shift.
    const double m = 2.0 * std::sqrt(std::max(0.0, -p) / 3.0);
    if (m == 0.0) {
      const double t = polish(q, -shift);
      return three_real(t, t, t);
    }
    double arg = 3.0 * r / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    RootSet rs = three_real(polish(q, m * std::cos(phi) - shift),
                            polish(q, m * std::cos(phi - 2.0 * kPi / 3.0) - shift),
                            polish(q, m * std::cos(phi + 2.0 * kPi / 3.0) - shift));
    return rs;
  }

  if (disc == 0.0) {
    if (p == 0.0) {
      const double t = -shift;
      return three_real(t, t, t);
    }
    const double d = std::cbrt(r / 2.0);  // repeated root (depressed)
    const double s = -2.0 * d;            // simple root
    const double rep = polish(q, d - shift);
    return three_real(rep, rep, polish(q, s - shift));
  }

  // disc < 0: one real root plus a conjugate pair (Cardano). Picking the
  // cube root of larger magnitude avoids cancellation in u + v.
  const double s = std::sqrt(std::max(0.0, r * r / 4.0 + p * p * p / 27.0));
  const double u3 = -r / 2.0 - std::copysign(s, r);
  const double u = std::cbrt(u3);
  const double v = (u == 0.0) ? 0.0 : -p / (3.0 * u);
  const double real_root = polish(q, u + v - shift);
  const double pair_re = -(u + v) / 2.0 - shift;
  const double pair_im = std::sqrt(3.0) / 2.0 * std::abs(u - v);

  std::complex<double> z = polish(q, {pair_re, pair_im});
  const double re = z.real();
  const double im = std::abs(z.imag());
  if (im < kImagCollapse * (1.0 + std::abs(re))) {
    // Rounding artifact at the repeated-root boundary: report real roots.
    return three_real(real_root, re, re);
  }

  RootSet rs;
  rs.kind = RootKind::one_real_pair;
  rs.real_roots[0] = real_root;
  rs.pair_re = re;
  rs.pair_im = im;
  return rs;
}

PairCriteria pair_criteria(const CubicPoly& q) {
  if (!(q.c2 > 0.0) || !(q.c0 > 0.0))
    throw error(errc::invalid_argument,
                "pair criteria require c2 > 0 and constant term > 0");
  PairCriteria pc;
  const double bc = q.c2 * q.c1;
  pc.bc_le_3d = bc <= 3.0 * q.c0;
  pc.bc_lt_d = bc < q.c0;
  if (pc.bc_le_3d && pc.bc_lt_d)
    pc.implied = PairImplication::pair_has_positive_real_part;
  else if (pc.bc_le_3d)
    pc.implied = PairImplication::conjugate_pair_exists;
  else
    pc.implied = PairImplication::none;
  return pc;
}

}  // namespace burnstab
