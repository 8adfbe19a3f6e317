#include "fueterlab/report.hpp"

#include <algorithm>

namespace fueterlab {

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "NotApplicable";
  }
  return "fail";
}

CheckStatus checkStatusFromString(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "NotApplicable") return CheckStatus::NotApplicable;
  return CheckStatus::Fail;
}

void ResidualAccumulator::add(const CQuat& lhs, const CQuat& rhs, const Point& probe) {
  abs_ = std::max(abs_, (lhs - rhs).magnitude());
  scale_ = std::max({scale_, lhs.magnitude(), rhs.magnitude()});
  probes_.push_back(probe);
}

IdentityReport ResidualAccumulator::finish(const std::string& name, double tolerance, const GridMeta& meta,
                                           std::optional<double> referenceScale) const {
  IdentityReport r;
  r.identityName = name;
  r.residualAbs = abs_;
  r.scale = referenceScale ? *referenceScale : scale_;
  r.residualRel = abs_ / std::max(r.scale, 1e-14);
  r.tolerance = tolerance;
  r.gridMeta = meta;
  r.probePoints = probes_;
  r.status = r.residualRel <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

IdentityReport notApplicable(const std::string& name, const std::string& reason) {
  IdentityReport r;
  r.identityName = name;
  r.status = CheckStatus::NotApplicable;
  r.note = reason;
  return r;
}

}  // namespace fueterlab
