#pragma once

#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fueterlab/corpus.hpp"
#include "fueterlab/perturbed.hpp"

namespace fueterlab {

struct SuiteConfig {
  std::string suite = "classical";  // classical | fractional | perturbed | all
  Point boxA = Point::Zero();
  Point boxB = Point::Ones();
  std::array<Complex, 4> alpha{0.5, 0.5, 0.5, 0.5};
  std::array<Complex, 4> beta{0.25, 0.25, 0.25, 0.25};
  // Unset perturbations fall back to the seeded set (real, pure, complex).
  std::optional<CQuat> u;
  std::optional<CQuat> v;
  std::vector<int> nodes{8, 12, 16};
  std::map<std::string, double> tolerances;  // identity name -> override
  unsigned seed = 20240;
  std::vector<std::string> corpus = corpusNames();
  int extraAnchors = 4;
  int innerNodes = 3;
  int jobs = 1;

  friend bool operator==(const SuiteConfig&, const SuiteConfig&) = default;
};

// Throws ConfigError naming the offending field.
void validate(const SuiteConfig& config);

// `key = value` lines, `#` starts a comment. Unknown keys and malformed values are ConfigErrors with the line number.
SuiteConfig parseConfig(const std::string& text, SuiteConfig base = {});
SuiteConfig loadConfig(const std::string& path, SuiteConfig base = {});

struct CheckRecord {
  std::string suite;
  std::string identity;
  std::string corpus;
  std::string variant;  // frame, perturbation and probe labels
  int nodes = 0;
  IdentityReport report;
  double seconds = 0.0;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct ConvergenceEntry {
  std::string suite;
  std::string identity;
  std::string corpus;
  std::string variant;
  std::vector<int> nodes;
  std::vector<double> residuals;
  std::vector<double> ratios;  // residual[k] / residual[k + 1]
  std::string flag;            // ok | no trend | insufficient ladder

  friend bool operator==(const ConvergenceEntry&, const ConvergenceEntry&) = default;
};

struct RunReport {
  SuiteConfig config;
  std::vector<CheckRecord> checks;
  std::vector<ConvergenceEntry> convergence;
  bool pass = false;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

// Refinement ratio >= 1.5 on the last step, or the finest residual at the roundoff floor.
std::string trendFlag(const std::vector<double>& residuals, double scale);

RunReport runSuite(const SuiteConfig& config);

enum class ReportFormat { Json, Csv, Text };
ReportFormat reportFormatFromString(const std::string& s);

// Wall-clock seconds are left out of JSON unless asked for, so reruns are byte-identical.
std::string toJson(const RunReport& report, bool withTimings = false);
RunReport fromJson(const std::string& text);
void writeReport(std::ostream& out, const RunReport& report, ReportFormat format, bool withTimings = false);
void emitReport(const RunReport& report, ReportFormat format, const std::string& path, bool withTimings = false);

// Command-line entry point; returns 0 on pass, 1 on a failed check, 2 on a configuration error.
int runVerifyCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fueterlab
