#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dualfilt/filters.hpp"
#include "dualfilt/types.hpp"

namespace dualfilt {

/// Round-trip formatting for doubles ("%.17g"); every number we emit goes
/// through this so that reports are byte-stable across runs.
std::string format_double(double x);

/// Minimal CSV writer with headered columns.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

 private:
  struct Impl;
  Impl* impl_;
};

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

/// Trajectory exports: t, pi_1..pi_d (or m_1..m_d), row-major Sigma entries,
/// dI_1..dI_m (innovation increment over the preceding step, zeros in row 0).
void write_filter_csv(const std::string& path, const FilterTrajectory& traj);
void write_kalman_csv(const std::string& path, const KalmanTrajectory& traj);

/// Curve export: t plus one column per named series.
void write_curves_csv(const std::string& path,
                      const std::vector<std::string>& names, const Vec& t,
                      const std::vector<Vec>& series);

void ensure_directory(const std::string& dir);

}  // namespace dualfilt
