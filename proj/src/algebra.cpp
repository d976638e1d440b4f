#include "dualfilt/algebra.hpp"

#include <stdexcept>

namespace dualfilt {

Mat jump_covariation(const Mat& A, int i) {
  const int d = static_cast<int>(A.rows());
  if (i < 0 || i >= d)
    throw std::out_of_range("jump_covariation: state index out of range");
  Mat Q = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    if (j == i) continue;
    const double rate = A(i, j);
    // (e_j - e_i)(e_j - e_i)^T touches four entries only.
    Q(j, j) += rate;
    Q(i, i) += rate;
    Q(i, j) -= rate;
    Q(j, i) -= rate;
  }
  return Q;
}

Mat expected_covariation(const Mat& A, const Vec& mu) {
  const Vec mu_s = validated_simplex(mu);
  const Vec at_mu = A.transpose() * mu_s;
  Mat out = Mat(at_mu.asDiagonal());
  out.noalias() -= A.transpose() * Mat(mu_s.asDiagonal());
  out.noalias() -= Mat(mu_s.asDiagonal()) * A;
  return 0.5 * (out + out.transpose());
}

Mat covariance_of(const Vec& pi) {
  const Vec p = validated_simplex(pi);
  Mat out = Mat(p.asDiagonal());
  out.noalias() -= p * p.transpose();
  return out;
}

double cost_density(const Vec& y, const Mat& v, const Vec& u, int state_index,
                    const FiniteModel& model) {
  if (state_index < 0 || state_index >= model.d)
    throw std::out_of_range("cost_density: state index out of range");
  const Mat Q = jump_covariation(model.A, state_index);
  const Vec w = u + v.row(state_index).transpose();
  return 0.5 * y.dot(Q * y) + 0.5 * w.dot(model.R * w);
}

double cost_density(const Vec& y, const Mat& v, const Vec& u, const Vec& x,
                    const FiniteModel& model) {
  int index = -1;
  bool valid = true;
  for (int i = 0; i < x.size(); ++i) {
    if (x(i) == 1.0) {
      if (index >= 0) valid = false;
      index = i;
    } else if (x(i) != 0.0) {
      valid = false;
    }
  }
  if (!valid || index < 0)
    throw std::invalid_argument("cost_density: x is not a basis vector");
  return cost_density(y, v, u, index, model);
}

double lagrangian(const Vec& y, const Mat& v, const Vec& u, const Vec& mu,
                  const FiniteModel& model) {
  const Vec mu_s = validated_simplex(mu);
  const Mat muQ = expected_covariation(model.A, mu_s);
  const Vec Ru = model.R * u;
  double value = 0.5 * y.dot(muQ * y) + 0.5 * u.dot(Ru);
  value += (v.transpose() * mu_s).dot(Ru);
  value += 0.5 * mu_s.dot((v * model.R * v.transpose()).diagonal());
  return value;
}

double hamiltonian(const Vec& y, const Mat& v, const Vec& u, const Vec& p,
                   const Vec& mu, const FiniteModel& model) {
  const Vec mu_s = validated_simplex(mu);
  Vec flow = -(model.A * y) - model.H * u;
  flow -= (model.H * v.transpose()).diagonal();
  flow += v * (model.H.transpose() * mu_s);
  return p.dot(flow) - lagrangian(y, v, u, mu_s, model);
}

HamiltonianPartials hamiltonian_partials(const Vec& y, const Mat& v,
                                         const Vec& u, const Vec& p,
                                         const Vec& mu,
                                         const FiniteModel& model) {
  const Vec mu_s = validated_simplex(mu);
  HamiltonianPartials out;

  out.h_p = -(model.A * y) - model.H * u -
            (model.H * v.transpose()).diagonal() +
            v * (model.H.transpose() * mu_s);

  out.h_y = -(model.A.transpose() * p) -
            expected_covariation(model.A, mu_s) * y;

  out.h_v = -Mat(p.asDiagonal()) * model.H +
            p * (mu_s.transpose() * model.H) -
            mu_s * (u.transpose() * model.R) -
            Mat(mu_s.asDiagonal()) * v * model.R;

  out.h_u = -(model.H.transpose() * p + model.R * u +
              model.R * (v.transpose() * mu_s));
  return out;
}

double terminal_value(const Vec& y, const Vec& mu) {
  const Vec mu_s = validated_simplex(mu);
  const double mean = mu_s.dot(y);
  double value = 0.0;
  for (int i = 0; i < y.size(); ++i) {
    const double dev = y(i) - mean;
    value += dev * dev * mu_s(i);
  }
  return 0.5 * value;
}

}  // namespace dualfilt
