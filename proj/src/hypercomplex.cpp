#include "fueterlab/hypercomplex.hpp"

#include <Eigen/LU>

namespace fueterlab {

StructuralSet StructuralSet::standard() {
  return validateStructuralSet({Quat::unit(0), Quat::unit(1), Quat::unit(2), Quat::unit(3)});
}

StructuralSet StructuralSet::conjugate() const {
  return validateStructuralSet({psi_[0].conjugate(), psi_[1].conjugate(), psi_[2].conjugate(), psi_[3].conjugate()});
}

StructuralSet validateStructuralSet(const std::array<Quat, 4>& candidate) {
  StructuralSet s;
  s.psi_ = candidate;
  for (int k = 0; k < 4; ++k) s.m_.col(k) = candidate[k].coeffs();
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const double g = scalarProduct(candidate[k], candidate[l]);
      if (std::abs(g - (k == l ? 1.0 : 0.0)) > 1e-10) {
        throw NotOrthonormal("<psi_" + std::to_string(k) + ", psi_" + std::to_string(l) + "> = " + std::to_string(g));
      }
    }
  }
  s.sgn_ = s.m_.determinant() > 0 ? 1 : -1;
  return s;
}

}  // namespace fueterlab
