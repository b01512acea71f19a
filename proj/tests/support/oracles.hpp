#pragma once

// Independent numerical oracles used only by tests. Everything here goes
// through Eigen's general eigensolvers so the checks share no code with the
// closed-form implementations they verify.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <complex>

#include "cubic.hpp"
#include "feedback.hpp"
#include "stability.hpp"

namespace oracle {

using Complex = std::complex<double>;

// Roots of x^3 + c2 x^2 + c1 x + c0 as eigenvalues of the companion matrix.
inline std::array<Complex, 3> cubic_roots(const burnstab::CubicPoly& q) {
  Eigen::Matrix3d companion;
  companion << 0, 0, -q.c0,
               1, 0, -q.c1,
               0, 1, -q.c2;
  const Eigen::EigenSolver<Eigen::Matrix3d> solver(companion);
  return {solver.eigenvalues()(0), solver.eigenvalues()(1),
          solver.eigenvalues()(2)};
}

inline std::array<Complex, 3> matrix_eigenvalues(const burnstab::Jacobian3& j) {
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = j[r][c];
  const Eigen::EigenSolver<Eigen::Matrix3d> solver(m);
  return {solver.eigenvalues()(0), solver.eigenvalues()(1),
          solver.eigenvalues()(2)};
}

// Coefficients of det(lambda I - J) via trace, principal 2x2 minors and the
// determinant.
inline burnstab::CubicPoly char_coeffs_numeric(const burnstab::Jacobian3& j) {
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = j[r][c];
  const double c2 = -m.trace();
  double minors = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k)
      minors += m(i, i) * m(k, k) - m(i, k) * m(k, i);
  return {c2, minors, -m.determinant()};
}

inline std::array<Complex, 4> eigenvalues4(const burnstab::CMat4& m) {
  Eigen::Matrix4cd em;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) em(r, c) = m[r][c];
  const Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(em);
  return {solver.eigenvalues()(0), solver.eigenvalues()(1),
          solver.eigenvalues()(2), solver.eigenvalues()(3)};
}

// Worst pairing error over the best permutation (3 elements).
inline double pair_error(const std::array<Complex, 3>& a,
                         const std::array<Complex, 3>& b) {
  std::array<int, 3> perm = {0, 1, 2};
  double best = 1e300;
  std::sort(perm.begin(), perm.end());
  do {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline double pair_error4(const std::array<Complex, 4>& a,
                          const std::array<Complex, 4>& b) {
  std::array<int, 4> perm = {0, 1, 2, 3};
  double best = 1e300;
  do {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace oracle
