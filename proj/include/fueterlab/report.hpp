#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fueterlab/hypercomplex.hpp"

namespace fueterlab {

enum class CheckStatus { Pass, Fail, NotApplicable };

std::string to_string(CheckStatus status);
CheckStatus checkStatusFromString(const std::string& s);

struct GridMeta {
  int nodes = 0;
  double epsilon = 0.0;
  double fdStep = 0.0;
  int intervals = 0;
  friend bool operator==(const GridMeta&, const GridMeta&) = default;
};

struct IdentityReport {
  std::string identityName;
  double residualAbs = 0.0;
  double residualRel = 0.0;
  double scale = 0.0;
  double tolerance = 0.0;
  GridMeta gridMeta;
  std::vector<Point> probePoints;
  CheckStatus status = CheckStatus::Pass;
  std::string note;

  bool pass() const { return status == CheckStatus::Pass; }
  friend bool operator==(const IdentityReport&, const IdentityReport&) = default;
};

// Collects |lhs - rhs| over probe points. The relative residual divides by the largest side
// magnitude seen, or by a reference scale when one is given (used where one side is zero).
class ResidualAccumulator {
 public:
  void add(const CQuat& lhs, const CQuat& rhs, const Point& probe);
  IdentityReport finish(const std::string& name, double tolerance, const GridMeta& meta,
                        std::optional<double> referenceScale = std::nullopt) const;

 private:
  double abs_ = 0.0;
  double scale_ = 0.0;
  std::vector<Point> probes_;
};

IdentityReport notApplicable(const std::string& name, const std::string& reason);

}  // namespace fueterlab
