#pragma once

#include <map>
#include <string>
#include <vector>

namespace fpl::harness {

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
  int criterion = 0;
  std::string name;
  CheckStatus status = CheckStatus::Skip;
  std::string detail;
};

const char* status_word(CheckStatus s);

/// Thresholds shared by `analyze` and the acceptance runner.
namespace limits {
inline constexpr double kMeanCOE = 0.527, kMeanPOI = 0.386, kMeanGOE = 0.536;
inline constexpr double kMeanTol = 0.001;
inline constexpr double kThermalRTol = 0.02, kMblRTol = 0.02, kPrethermalRTol = 0.03;
inline constexpr double kRHistKld = 0.02;
inline constexpr double kPrethermalUU0 = 0.02;
inline constexpr double kThermalKldPt = 0.1;
inline constexpr double kAntiConc = 0.367879441, kAntiConcTol = 0.05, kMblAntiConc = 0.1;
inline constexpr double kEntropyMax = 3.0, kEntropyTol = 0.25, kEntropyStd = 0.15, kMblEntropy = 1.5;
inline constexpr double kUnitarity = 1e-9, kSliceDefect = 1e-8;
inline constexpr double kDigitalFinal = 0.05;
inline constexpr int kMovingWindow = 5;
}  // namespace limits

/// Rows of a header-first CSV, keyed by column name.
struct Table {
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
};
Table read_csv(const std::string& path);

/// Row of a cells/grid table at (W, omega), or nullptr.
const std::map<std::string, std::string>* find_cell(const Table& t, double w, double omega);

/// Parses a field; NaN for an empty field.
double field(const std::map<std::string, std::string>& row, const std::string& column);

/// Trailing moving average with the given window, starting at index window-1.
std::vector<double> moving_average(const std::vector<double>& v, int window);

/// Expected bias (K - 1) / (2 n) of the binned KLD estimator for the digital
/// baseline in a sweep directory: K histogram slots, n = seeds * 2^L samples.
/// Zero when run.json is missing or incomplete.
double kld_bias_floor(const std::string& dir);

/// Criterion checks that can be decided from a sweep output directory.
/// Criteria whose inputs are absent are reported as Skip.
std::vector<CheckResult> check_directory(const std::string& dir);

/// Reference-mean check (needs no files).
CheckResult check_reference_means();

}  // namespace fpl::harness
