#pragma once

#include <filesystem>
#include <string>

#include "miqubo/model.hpp"
#include "miqubo/quadratize.hpp"

namespace miqubo {

enum class CovarianceFormat { Csv, Json };

/// CSV: n lines of n comma-separated numbers, no header.
/// JSON: {"n": <int>, "sigma": [[...], ...]}.
CovarianceMatrix load_covariance(const std::filesystem::path& path, CovarianceFormat format);

/// Observation table: optional header line, then one row per observation with
/// one column per sensor.
Eigen::MatrixXd load_samples_csv(const std::filesystem::path& path);

/// Sample covariance about the sample mean with 1/(N-1) normalization,
/// validated before it is returned.
CovarianceMatrix estimate_covariance(const Eigen::Ref<const Eigen::MatrixXd>& samples);

/// Writes the QUBO JSON interchange format: sorted keys, round-trip-exact
/// numbers, byte-stable for a given model.
void export_qubo(const QuboModel& q, const std::filesystem::path& path);

QuboModel import_qubo(const std::filesystem::path& path);

std::string qubo_to_json(const QuboModel& q);
QuboModel qubo_from_json(const std::string& text);

}  // namespace miqubo
