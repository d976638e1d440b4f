#pragma once

#include "dualfilt/model.hpp"
#include "dualfilt/types.hpp"

namespace dualfilt {

/// Jump covariation matrix of the chain at basis state i (0-based):
/// Q(e_i) = sum_j A(i,j) (e_j - e_i)(e_j - e_i)^T.
/// Symmetric PSD with zero row sums.
Mat jump_covariation(const Mat& A, int i);

/// mu-expectation of the jump covariation,
/// mu(Q) = diag(A^T mu) - A^T diag(mu) - diag(mu) A,
/// equal to sum_i mu_i Q(e_i).
Mat expected_covariation(const Mat& A, const Vec& mu);

/// Posterior covariance Sigma(pi) = diag(pi) - pi pi^T.
Mat covariance_of(const Vec& pi);

/// Running cost density at a basis state:
/// l(y, v, u; e_i) = 1/2 y^T Q(e_i) y + 1/2 (u + v^T e_i)^T R (u + v^T e_i).
double cost_density(const Vec& y, const Mat& v, const Vec& u, int state_index,
                    const FiniteModel& model);

/// cost_density taking the state as a basis vector; rejects non-basis input.
double cost_density(const Vec& y, const Mat& v, const Vec& u, const Vec& x,
                    const FiniteModel& model);

/// Control Lagrangian: the conditional expectation of the cost density,
/// L(y, v, u; mu) = 1/2 y^T mu(Q) y + 1/2 u^T R u + u^T R v^T mu
///                  + 1/2 mu^T diag(v R v^T).
double lagrangian(const Vec& y, const Mat& v, const Vec& u, const Vec& mu,
                  const FiniteModel& model);

/// Hamiltonian of the dual control problem:
/// H(y, v, u, p; mu) = p^T (-A y - H u - diag(H v^T) + v H^T mu) - L(y, v, u; mu).
double hamiltonian(const Vec& y, const Mat& v, const Vec& u, const Vec& p,
                   const Vec& mu, const FiniteModel& model);

struct HamiltonianPartials {
  Vec h_p;  // d
  Vec h_y;  // d
  Mat h_v;  // d x m
  Vec h_u;  // m
};

/// Partial derivatives of the Hamiltonian in each argument (each matches a
/// central finite difference of `hamiltonian`). h_u vanishes at the optimal
/// control.
HamiltonianPartials hamiltonian_partials(const Vec& y, const Mat& v,
                                         const Vec& u, const Vec& p,
                                         const Vec& mu,
                                         const FiniteModel& model);

/// Terminal value V(y; mu) = 1/2 sum_i |y_i - mu^T y|^2 mu_i
///                         = 1/2 y^T covariance_of(mu) y.
double terminal_value(const Vec& y, const Vec& mu);

}  // namespace dualfilt
