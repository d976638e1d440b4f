#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dualfilt/types.hpp"

namespace dualfilt {

/// One violated entry of the generator contract.
struct GeneratorViolation {
  int row;
  int col;  // -1 for a row-sum violation
  double value;
  std::string what;
};

/// Check that A is a valid rate matrix: every row sums to ~0 (|sum| <= 1e-10)
/// and off-diagonal entries are >= 0. Returns the empty list when valid.
std::vector<GeneratorViolation> validate_generator(const Mat& A);

/// Hidden Markov model on the basis states {e_1, ..., e_d} with additive
/// Gaussian observation noise. h(e_i) is row i of H.
struct FiniteModel {
  int d = 0;
  int m = 0;
  Mat A;       // d x d rate matrix, A(i,j) = jump rate i -> j
  Mat H;       // d x m observation matrix
  Mat R;       // m x m observation-noise covariance, SPD
  Vec prior;   // initial distribution on the simplex
  double T = 1.0;

  // Derived factors cached at construction.
  Mat R_inv;
  Mat R_chol;  // lower-triangular Cholesky factor of R

  FiniteModel() = default;
  FiniteModel(Mat A_in, Mat H_in, Mat R_in, Vec prior_in, double T_in);

  Vec obs_mean(const Vec& pi) const { return H.transpose() * pi; }
};

/// Linear-Gaussian model dX = AX dt + sigma dB, dZ = HX dt + dW. Note the
/// observation matrix is m x d here, transposed relative to FiniteModel;
/// conversions between the two conventions are always explicit.
struct LinearGaussianModel {
  int d = 0;
  int m = 0;
  Mat A;       // d x d drift matrix
  Mat H;       // m x d observation matrix
  Mat Q;       // d x d process-noise covariance (= sigma sigma^T), PSD
  Mat R;       // m x m observation-noise covariance, SPD
  Vec m0;      // prior mean
  Mat Sigma0;  // prior covariance, PSD
  double T = 1.0;

  Mat R_inv;
  Mat R_chol;
  Mat Q_sqrt;  // symmetric PSD square root, for sampling

  LinearGaussianModel() = default;
  LinearGaussianModel(Mat A_in, Mat H_in, Mat Q_in, Mat R_in, Vec m0_in,
                      Mat Sigma0_in, double T_in);
};

/// Scalar diffusion dX = a(X) dt + sigma(X) dB on a truncated interval, with
/// vector observation function h. Discretized onto a finite chain by
/// grid_generator; the boundary is reflecting.
struct Diffusion1dModel {
  std::function<double(double)> drift;
  std::function<double(double)> sigma;
  std::function<Vec(double)> obs;     // x -> R^m
  Mat R;                              // m x m, SPD
  std::function<double(double)> prior_density;
  double x_lo = -1.0;
  double x_hi = 1.0;
  double sigma_floor = 1e-6;          // ellipticity bound
  double T = 1.0;
  int m = 1;
  std::string descriptor;             // JSON source, when built from one

  /// Sample-based validation on n probe points (ellipticity, prior mass).
  void check(int n_probe = 257) const;
};

// --- JSON serialization -----------------------------------------------------
//
// Models round-trip through JSON documents whose fields carry exactly the
// member names above; matrices are row-major nested arrays. Diffusion
// callables are represented by small parametric descriptors (see README).

nlohmann::json to_json(const FiniteModel& model);
FiniteModel finite_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LinearGaussianModel& model);
LinearGaussianModel lg_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Diffusion1dModel& model);
Diffusion1dModel diffusion_model_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Mat& a);
Mat matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vec& v);
Vec vector_from_json(const nlohmann::json& j);

}  // namespace dualfilt
