#pragma once

#include <array>
#include <complex>

#include "model.hpp"
#include "stability.hpp"

namespace burnstab {

using complexd = std::complex<double>;
using CVec3 = std::array<complexd, 3>;
using CMat3 = std::array<CVec3, 3>;  // row-major

CVec3 mat_vec(const CMat3& m, const CVec3& v);
CMat3 adjoint(const CMat3& m);

// Unitary triangularization of the equilibrium Jacobian J in the convention
//   J = q^H * u * q   (u = q * J * q^H),   x = q * y,
// with u upper triangular and diag(u) = (lambda1, lambda2, lambda3).
// lambda1 is the unique positive real eigenvalue of the reactive regime and
// row 0 of q is real, which keeps the transformed coordinate x1 real.
// lambda2/lambda3 are ordered by descending real part, then imaginary part.
struct SchurForm {
  CMat3 q{};
  CMat3 u{};

  std::array<complexd, 3> eigenvalues() const {
    return {u[0][0], u[1][1], u[2][2]};
  }
  double lambda1() const { return u[0][0].real(); }
};

// Requires theta > 0 (errc::not_reactive_regime) and a spectrum whose
// eigenvalues are separated by more than 1e-10 (errc::degenerate_spectrum).
SchurForm schur_triangulate(const Params& p);

// Real unit eigenvector of the equilibrium Jacobian for lambda1 (the
// direction along which the open-loop equilibrium is repelling).
std::array<double, 3> unstable_direction(const Params& p);

struct FeedbackGains {
  double sigma{};
  double tau{};
};

// sigma = lambda1*(1+margin), tau = (1+margin)*(sigma+lambda1)^2/(4 sigma lambda1);
// both stabilizing inequalities sigma > lambda1 and tau > (sigma+lambda1)^2/(4 sigma lambda1)
// then hold strictly for any margin > 0.
FeedbackGains design_gains(double lambda1, double margin);

// {lambda2, lambda3, (lambda1 - sigma +- sqrt((sigma+lambda1)^2 - 4 sigma tau lambda1))/2}.
std::array<complexd, 4> closed_loop_spectrum(const SchurForm& sf,
                                             const FeedbackGains& g);

// The 4x4 closed-loop matrix in (x1, x2, x3, omega) coordinates: upper-left
// block u, entry (0,3) = -tau*lambda1, bottom row (sigma, 0, 0, -sigma).
using CMat4 = std::array<std::array<complexd, 4>, 4>;
CMat4 closed_loop_matrix(const SchurForm& sf, const FeedbackGains& g);

// State of the augmented system: transformed coordinates plus the feedback
// variable omega. x1 and omega stay real along trajectories started from
// real model states because row 0 of q is real.
struct AugmentedState {
  double x1{};
  complexd x2{};
  complexd x3{};
  double omega{};
};

// x = q*y at the model equilibrium, omega = x1 there.
AugmentedState augmented_equilibrium(const Params& p, const SchurForm& sf);

// Transforms a model state into augmented coordinates (omega supplied by the
// caller) and back; from_transformed drops the vanishing imaginary parts.
AugmentedState to_augmented(const SchurForm& sf, const State& y, double omega);
State from_transformed(const SchurForm& sf, const AugmentedState& x);

// Closed-loop field: with X(x) = q * Y(q^H x),
//   dx1/dt = X1(x1 - tau*(omega - x1*), x2, x3)
//   dx2/dt = X2(x), dx3/dt = X3(x)
//   domega/dt = sigma*(x1 - omega),
// where x1* is the first transformed coordinate of the equilibrium.
AugmentedState augmented_vector_field(const Params& p, const SchurForm& sf,
                                      const FeedbackGains& g,
                                      const AugmentedState& x);

}  // namespace burnstab
