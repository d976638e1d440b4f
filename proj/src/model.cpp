#include "dualfilt/model.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dualfilt {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

Mat spd_cholesky(const Mat& R, const char* name) {
  require(R.rows() == R.cols(), std::string(name) + " must be square");
  require((R - R.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + R.cwiseAbs().maxCoeff()),
          std::string(name) + " must be symmetric");
  Eigen::LLT<Mat> llt(0.5 * (R + R.transpose()));
  require(llt.info() == Eigen::Success,
          std::string(name) + " must be positive definite");
  return llt.matrixL();
}

void require_psd(const Mat& S, const char* name) {
  require(S.rows() == S.cols(), std::string(name) + " must be square");
  require((S - S.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + S.cwiseAbs().maxCoeff()),
          std::string(name) + " must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
  require(es.eigenvalues().minCoeff() >= -1e-10 * (1.0 + S.cwiseAbs().maxCoeff()),
          std::string(name) + " must be positive semidefinite");
}

Mat psd_sqrt(const Mat& S) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
  Vec ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace

std::vector<GeneratorViolation> validate_generator(const Mat& A) {
  std::vector<GeneratorViolation> violations;
  if (A.rows() != A.cols()) {
    violations.push_back({-1, -1, 0.0, "matrix is not square"});
    return violations;
  }
  const int d = static_cast<int>(A.rows());
  for (int i = 0; i < d; ++i) {
    const double row_sum = A.row(i).sum();
    if (std::abs(row_sum) > 1e-10) {
      std::ostringstream msg;
      msg << "row " << i << " sums to " << row_sum;
      violations.push_back({i, -1, row_sum, msg.str()});
    }
    for (int j = 0; j < d; ++j) {
      if (i != j && A(i, j) < 0.0) {
        std::ostringstream msg;
        msg << "negative off-diagonal rate at (" << i << "," << j << ")";
        violations.push_back({i, j, A(i, j), msg.str()});
      }
    }
  }
  return violations;
}

FiniteModel::FiniteModel(Mat A_in, Mat H_in, Mat R_in, Vec prior_in,
                         double T_in)
    : d(static_cast<int>(A_in.rows())),
      m(static_cast<int>(H_in.cols())),
      A(std::move(A_in)),
      H(std::move(H_in)),
      R(std::move(R_in)),
      prior(std::move(prior_in)),
      T(T_in) {
  const auto violations = validate_generator(A);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid generator:";
    for (const auto& v : violations) msg << " [" << v.what << "]";
    throw std::invalid_argument(msg.str());
  }
  require(H.rows() == d, "H must have d rows");
  require(R.rows() == m && R.cols() == m, "R must be m x m");
  require(prior.size() == d, "prior must have d entries");
  require(T > 0.0, "horizon must be positive");
  prior = validated_simplex(prior);
  R_chol = spd_cholesky(R, "R");
  R_inv = R.llt().solve(Mat::Identity(m, m));
}

LinearGaussianModel::LinearGaussianModel(Mat A_in, Mat H_in, Mat Q_in,
                                         Mat R_in, Vec m0_in, Mat Sigma0_in,
                                         double T_in)
    : d(static_cast<int>(A_in.rows())),
      m(static_cast<int>(H_in.rows())),
      A(std::move(A_in)),
      H(std::move(H_in)),
      Q(std::move(Q_in)),
      R(std::move(R_in)),
      m0(std::move(m0_in)),
      Sigma0(std::move(Sigma0_in)),
      T(T_in) {
  require(A.cols() == d, "A must be square");
  require(H.cols() == d, "H must be m x d");
  require(m0.size() == d, "m0 must have d entries");
  require(T > 0.0, "horizon must be positive");
  require_psd(Q, "Q");
  require_psd(Sigma0, "Sigma0");
  R_chol = spd_cholesky(R, "R");
  R_inv = R.llt().solve(Mat::Identity(m, m));
  Q_sqrt = psd_sqrt(Q);
}

void Diffusion1dModel::check(int n_probe) const {
  require(x_hi > x_lo, "domain must be a nondegenerate interval");
  require(T > 0.0, "horizon must be positive");
  require(sigma_floor > 0.0, "sigma_floor must be positive");
  require(static_cast<bool>(drift) && static_cast<bool>(sigma) &&
              static_cast<bool>(obs) && static_cast<bool>(prior_density),
          "all model callables must be set");
  const double h = (x_hi - x_lo) / (n_probe - 1);
  double mass = 0.0;
  for (int i = 0; i < n_probe; ++i) {
    const double x = x_lo + i * h;
    require(sigma(x) >= sigma_floor,
            "sigma drops below the ellipticity floor on the domain");
    const double p = prior_density(x);
    require(p >= 0.0, "prior density must be nonnegative");
    const double w = (i == 0 || i == n_probe - 1) ? 0.5 : 1.0;
    mass += w * p * h;
  }
  require(std::abs(mass - 1.0) < 5e-2,
          "prior density does not integrate to ~1 on the domain");
}

// --- JSON ------------------------------------------------------------------

nlohmann::json matrix_to_json(const Mat& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument("expected a nested array for a matrix");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Mat a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw std::invalid_argument("ragged matrix rows in JSON");
    for (int c = 0; c < cols; ++c) a(i, c) = j[i][c].get<double>();
  }
  return a;
}

nlohmann::json vector_to_json(const Vec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vec vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array");
  Vec v(j.size());
  for (int i = 0; i < static_cast<int>(j.size()); ++i)
    v(i) = j[i].get<double>();
  return v;
}

nlohmann::json to_json(const FiniteModel& model) {
  return nlohmann::json{{"d", model.d},
                        {"A", matrix_to_json(model.A)},
                        {"H", matrix_to_json(model.H)},
                        {"R", matrix_to_json(model.R)},
                        {"prior", vector_to_json(model.prior)},
                        {"T", model.T}};
}

FiniteModel finite_model_from_json(const nlohmann::json& j) {
  FiniteModel model(matrix_from_json(j.at("A")), matrix_from_json(j.at("H")),
                    matrix_from_json(j.at("R")), vector_from_json(j.at("prior")),
                    j.at("T").get<double>());
  if (j.contains("d") && j.at("d").get<int>() != model.d)
    throw std::invalid_argument("d field disagrees with the A matrix");
  return model;
}

nlohmann::json to_json(const LinearGaussianModel& model) {
  return nlohmann::json{{"A", matrix_to_json(model.A)},
                        {"H", matrix_to_json(model.H)},
                        {"Q", matrix_to_json(model.Q)},
                        {"R", matrix_to_json(model.R)},
                        {"m0", vector_to_json(model.m0)},
                        {"Sigma0", matrix_to_json(model.Sigma0)},
                        {"T", model.T}};
}

LinearGaussianModel lg_model_from_json(const nlohmann::json& j) {
  return LinearGaussianModel(
      matrix_from_json(j.at("A")), matrix_from_json(j.at("H")),
      matrix_from_json(j.at("Q")), matrix_from_json(j.at("R")),
      vector_from_json(j.at("m0")), matrix_from_json(j.at("Sigma0")),
      j.at("T").get<double>());
}

namespace {

std::function<double(double)> scalar_fn_from_json(const nlohmann::json& j,
                                                  const char* field) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "constant") {
    const double c = j.at("value").get<double>();
    return [c](double) { return c; };
  }
  if (type == "linear") {
    const double a = j.at("a").get<double>();
    return [a](double x) { return a * x; };
  }
  if (type == "affine") {
    const double a = j.at("a").get<double>();
    const double b = j.at("b").get<double>();
    return [a, b](double x) { return a * x + b; };
  }
  throw std::invalid_argument(std::string("unsupported descriptor for ") +
                              field + ": " + type);
}

}  // namespace

nlohmann::json to_json(const Diffusion1dModel& model) {
  if (model.descriptor.empty())
    throw std::invalid_argument(
        "diffusion model was built from callables; no JSON descriptor");
  return nlohmann::json::parse(model.descriptor);
}

Diffusion1dModel diffusion_model_from_json(const nlohmann::json& j) {
  Diffusion1dModel model;
  model.drift = scalar_fn_from_json(j.at("drift"), "drift");
  model.sigma = scalar_fn_from_json(j.at("sigma"), "sigma");

  const nlohmann::json& obs = j.at("obs");
  const std::string obs_type = obs.at("type").get<std::string>();
  if (obs_type == "linear") {
    Vec h = vector_from_json(obs.at("h"));
    model.m = static_cast<int>(h.size());
    model.obs = [h](double x) { return Vec(h * x); };
  } else {
    throw std::invalid_argument("unsupported obs descriptor: " + obs_type);
  }

  const nlohmann::json& prior = j.at("prior");
  const std::string prior_type = prior.at("type").get<std::string>();
  if (prior_type == "gaussian") {
    const double mean = prior.at("mean").get<double>();
    const double std = prior.at("std").get<double>();
    if (!(std > 0.0)) throw std::invalid_argument("prior std must be > 0");
    model.prior_density = [mean, std](double x) {
      const double z = (x - mean) / std;
      return std::exp(-0.5 * z * z) / (std * std::sqrt(2.0 * M_PI));
    };
  } else if (prior_type == "uniform") {
    const double lo = prior.at("lo").get<double>();
    const double hi = prior.at("hi").get<double>();
    if (!(hi > lo)) throw std::invalid_argument("uniform prior needs hi > lo");
    model.prior_density = [lo, hi](double x) {
      return (x >= lo && x <= hi) ? 1.0 / (hi - lo) : 0.0;
    };
  } else {
    throw std::invalid_argument("unsupported prior descriptor: " + prior_type);
  }

  model.R = matrix_from_json(j.at("R"));
  const nlohmann::json& domain = j.at("domain");
  model.x_lo = domain.at(0).get<double>();
  model.x_hi = domain.at(1).get<double>();
  model.T = j.at("T").get<double>();
  if (j.contains("sigma_floor"))
    model.sigma_floor = j.at("sigma_floor").get<double>();
  model.descriptor = j.dump();
  model.check();
  return model;
}

}  // namespace dualfilt
