#include "feedback.hpp"

#include <algorithm>
#include <cmath>

namespace burnstab {

namespace {

using RVec3 = std::array<double, 3>;

double dot(const RVec3& a, const RVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double norm(const RVec3& a) { return std::sqrt(dot(a, a)); }

RVec3 cross(const RVec3& a, const RVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

RVec3 normalized(RVec3 a) {
  const double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

// Null vector of a rank-2 3x3 matrix via the largest cross product of rows.
RVec3 null_vector(const Jacobian3& m) {
  const RVec3 r0 = {m[0][0], m[0][1], m[0][2]};
  const RVec3 r1 = {m[1][0], m[1][1], m[1][2]};
  const RVec3 r2 = {m[2][0], m[2][1], m[2][2]};
  RVec3 best = cross(r0, r1);
  for (const RVec3& c : {cross(r0, r2), cross(r1, r2)}) {
    if (norm(c) > norm(best)) best = c;
  }
  if (norm(best) == 0.0)
    throw error(errc::degenerate_spectrum,
                "eigenvector construction met a rank-deficient pencil");
  RVec3 v = normalized(best);
  // Deterministic sign: largest-magnitude component positive.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[k])) k = i;
  if (v[k] < 0.0) {
    v = {-v[0], -v[1], -v[2]};
  }
  return v;
}

CMat3 mat_mul(const CMat3& a, const CMat3& b) {
  CMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      complexd s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      r[i][j] = s;
    }
  return r;
}

CMat3 to_complex(const Jacobian3& j) {
  CMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r[i][k] = j[i][k];
  return r;
}

}  // namespace

CVec3 mat_vec(const CMat3& m, const CVec3& v) {
  CVec3 r{};
  for (int i = 0; i < 3; ++i)
    r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

CMat3 adjoint(const CMat3& m) {
  CMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = std::conj(m[j][i]);
  return r;
}

std::array<double, 3> unstable_direction(const Params& p) {
  if (!(p.theta > 0.0))
    throw error(errc::not_reactive_regime,
                "unstable direction exists only for theta > 0");
  const RootSet roots = solve(characteristic(p));
  double lambda1 = roots.real_roots[0];
  if (roots.kind == RootKind::three_real)
    lambda1 = roots.real_roots[2];  // ascending order: the positive one is last
  Jacobian3 a = jacobian_at_equilibrium(p);
  for (int i = 0; i < 3; ++i) a[i][i] -= lambda1;
  return null_vector(a);
}

SchurForm schur_triangulate(const Params& p) {
  validate(p);
  if (!(p.theta > 0.0))
    throw error(errc::not_reactive_regime,
                "triangularization targets the reactive regime (theta > 0)");

  const RootSet roots = solve(characteristic(p));
  const auto eig = roots.all();

  // lambda1 = the unique positive real eigenvalue.
  const double lambda1 = roots.kind == RootKind::three_real
                             ? roots.real_roots[2]
                             : roots.real_roots[0];
  if (!(lambda1 > 0.0))
    throw error(errc::not_reactive_regime,
                "no positive real eigenvalue at the equilibrium");

  double scale = 0.0;
  for (const auto& z : eig) scale = std::max(scale, std::abs(z));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(eig[i] - eig[j]) < 1e-10 * (1.0 + scale))
        throw error(errc::degenerate_spectrum,
                    "eigenvalues coincide within 1e-10");

  const Jacobian3 jstar = jacobian_at_equilibrium(p);

  // Real unit eigenvector for lambda1, completed to a real orthonormal basis.
  Jacobian3 shifted = jstar;
  for (int i = 0; i < 3; ++i) shifted[i][i] -= lambda1;
  const RVec3 b0 = null_vector(shifted);
  int k = 0;  // axis least aligned with b0
  for (int i = 1; i < 3; ++i)
    if (std::abs(b0[i]) < std::abs(b0[k])) k = i;
  RVec3 e{};
  e[k] = 1.0;
  RVec3 b1 = {e[0] - b0[0] * b0[k], e[1] - b0[1] * b0[k], e[2] - b0[2] * b0[k]};
  b1 = normalized(b1);
  const RVec3 b2 = cross(b0, b1);

  // a = B^T J B has the block form [[lambda1, *, *], [0, M]].
  const std::array<RVec3, 3> basis = {b0, b1, b2};
  std::array<std::array<double, 3>, 3> a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const RVec3 jb = {dot({jstar[0][0], jstar[0][1], jstar[0][2]}, basis[j]),
                        dot({jstar[1][0], jstar[1][1], jstar[1][2]}, basis[j]),
                        dot({jstar[2][0], jstar[2][1], jstar[2][2]}, basis[j])};
      a[i][j] = dot(basis[i], jb);
    }

  // Triangularize the trailing 2x2 block by its own eigendecomposition:
  // V = [v, v_perp] with v a unit eigenvector for the leading eigenvalue
  // (descending real part, then imaginary part).
  const double m00 = a[1][1], m01 = a[1][2], m10 = a[2][1], m11 = a[2][2];
  const double tr = m00 + m11;
  const double quad_disc = tr * tr - 4.0 * (m00 * m11 - m01 * m10);
  complexd mu;
  if (quad_disc >= 0.0)
    mu = (tr + std::sqrt(quad_disc)) / 2.0;
  else
    mu = complexd(tr / 2.0, std::sqrt(-quad_disc) / 2.0);
  std::array<complexd, 2> v;
  {
    const std::array<complexd, 2> cand1 = {complexd(m01), mu - m00};
    const std::array<complexd, 2> cand2 = {mu - m11, complexd(m10)};
    const double n1 = std::abs(cand1[0]) + std::abs(cand1[1]);
    const double n2 = std::abs(cand2[0]) + std::abs(cand2[1]);
    v = (n1 >= n2) ? cand1 : cand2;
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    v = {v[0] / n, v[1] / n};
  }
  const std::array<complexd, 2> w = {-std::conj(v[1]), std::conj(v[0])};

  // Columns of the Schur basis: b0, V embedded in the (b1, b2) plane.
  CMat3 basis_cols{};  // basis_cols[i][j] = j-th basis vector, i-th component
  for (int i = 0; i < 3; ++i) {
    basis_cols[i][0] = b0[i];
    basis_cols[i][1] = b1[i] * v[0] + b2[i] * v[1];
    basis_cols[i][2] = b1[i] * w[0] + b2[i] * w[1];
  }

  SchurForm sf;
  sf.q = adjoint(basis_cols);  // J = q^H u q with u = q J q^H
  sf.u = mat_mul(sf.q, mat_mul(to_complex(jstar), adjoint(sf.q)));
  sf.u[1][0] = sf.u[2][0] = sf.u[2][1] = 0.0;
  return sf;
}

FeedbackGains design_gains(double lambda1, double margin) {
  if (!(lambda1 > 0.0) || !std::isfinite(lambda1))
    throw error(errc::invalid_argument, "lambda1 must be finite and > 0");
  if (!(margin > 0.0) || !std::isfinite(margin))
    throw error(errc::invalid_argument, "margin must be finite and > 0");
  FeedbackGains g;
  g.sigma = lambda1 * (1.0 + margin);
  const double s = g.sigma + lambda1;
  g.tau = (1.0 + margin) * s * s / (4.0 * g.sigma * lambda1);
  return g;
}

std::array<complexd, 4> closed_loop_spectrum(const SchurForm& sf,
                                             const FeedbackGains& g) {
  const double lambda1 = sf.lambda1();
  const complexd radicand =
      (g.sigma + lambda1) * (g.sigma + lambda1) - 4.0 * g.sigma * g.tau * lambda1;
  const complexd root = std::sqrt(radicand);
  return {sf.u[1][1], sf.u[2][2], (lambda1 - g.sigma + root) / 2.0,
          (lambda1 - g.sigma - root) / 2.0};
}

CMat4 closed_loop_matrix(const SchurForm& sf, const FeedbackGains& g) {
  CMat4 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = sf.u[i][j];
  m[0][3] = -g.tau * sf.lambda1();
  m[3][0] = g.sigma;
  m[3][3] = -g.sigma;
  return m;
}

AugmentedState augmented_equilibrium(const Params& p, const SchurForm& sf) {
  const Equilibrium e = equilibrium(p);
  const CVec3 xs = mat_vec(sf.q, {e.a_star, e.f_star, e.b_star});
  return {xs[0].real(), xs[1], xs[2], xs[0].real()};
}

AugmentedState to_augmented(const SchurForm& sf, const State& y, double omega) {
  const CVec3 x = mat_vec(sf.q, {y.a, y.f, y.b});
  return {x[0].real(), x[1], x[2], omega};
}

State from_transformed(const SchurForm& sf, const AugmentedState& x) {
  const CVec3 y = mat_vec(adjoint(sf.q), {complexd(x.x1), x.x2, x.x3});
  return {y[0].real(), y[1].real(), y[2].real()};
}

AugmentedState augmented_vector_field(const Params& p, const SchurForm& sf,
                                      const FeedbackGains& g,
                                      const AugmentedState& x) {
  const double xstar1 = augmented_equilibrium(p, sf).x1;
  const CVec3 x_mod = {complexd(x.x1 - g.tau * (x.omega - xstar1)), x.x2, x.x3};
  const CVec3 y_mod = mat_vec(adjoint(sf.q), x_mod);
  const CVec3 x_plain = {complexd(x.x1), x.x2, x.x3};
  const CVec3 y_plain = mat_vec(adjoint(sf.q), x_plain);

  const CVec3 rhs_mod = vector_field_eval<complexd>(p, y_mod);
  const CVec3 rhs_plain = vector_field_eval<complexd>(p, y_plain);
  const CVec3 x_dot_mod = mat_vec(sf.q, rhs_mod);
  const CVec3 x_dot_plain = mat_vec(sf.q, rhs_plain);

  return {x_dot_mod[0].real(), x_dot_plain[1], x_dot_plain[2],
          g.sigma * (x.x1 - x.omega)};
}

}  // namespace burnstab
