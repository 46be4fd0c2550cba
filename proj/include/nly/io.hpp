#pragma once

#include "nly/baselines.hpp"
#include "nly/eval.hpp"
#include "nly/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace nly {

// Thrown on unreadable/unwritable paths or malformed files; CLI exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Line-oriented text formats, all starting with a "nly/1 <kind>" header.
// Floating-point values are written as shortest round-trip decimals, so a
// write/read cycle reproduces every value bit-exactly. Class indices and
// instance indices are 0-based. Readers reject unknown versions and kinds.

void write_dataset(std::ostream& out, const Dataset& dataset);
Dataset read_dataset(std::istream& in);

void write_truth(std::ostream& out, const SyntheticTruth& truth);
SyntheticTruth read_truth(std::istream& in);

void write_model(std::ostream& out, const ModelParams& params);
ModelParams read_model(std::istream& in);

void write_linear_model(std::ostream& out, const LinearModel& model);
LinearModel read_linear_model(std::istream& in);

// Fit report: sweeps, convergence, ELBO trace, predicted labels, zeta, and
// optional verification-check lines.
void write_fit_report(std::ostream& out, const FitResult& result,
                      const std::vector<CheckResult>& checks = {});
FitResult read_fit_report(std::istream& in);

void write_experiment_report(std::ostream& out, const ExperimentReport& report);
ExperimentReport read_experiment_report(std::istream& in);

// File helpers; wrap the stream functions and translate failures to IoError.
template <typename T, void (*WriteFn)(std::ostream&, const T&)>
void write_file(const std::filesystem::path& path, const T& value);

Dataset load_dataset(const std::filesystem::path& path);
SyntheticTruth load_truth(const std::filesystem::path& path);
ModelParams load_model(const std::filesystem::path& path);
LinearModel load_linear_model(const std::filesystem::path& path);
FitResult load_fit_report(const std::filesystem::path& path);
ExperimentReport load_experiment_report(const std::filesystem::path& path);

void save_dataset(const std::filesystem::path& path, const Dataset& dataset);
void save_truth(const std::filesystem::path& path, const SyntheticTruth& truth);
void save_model(const std::filesystem::path& path, const ModelParams& params);
void save_linear_model(const std::filesystem::path& path, const LinearModel& model);
void save_fit_report(const std::filesystem::path& path, const FitResult& result,
                     const std::vector<CheckResult>& checks = {});
void save_experiment_report(const std::filesystem::path& path, const ExperimentReport& report);

// Lossless double <-> text (shortest round-trip form via to_chars).
std::string format_double(double value);
double parse_double(const std::string& token);

}  // namespace nly
