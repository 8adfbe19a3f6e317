#pragma once

#include <string>
#include <vector>

#include "fueterlab/fueter.hpp"

namespace fueterlab {

inline constexpr const char* kCorpusVersion = "corpus-v1";

// zero, const, coord0, coord1, linear, quadratic, expsin, hyperholomorphic, complex
std::vector<std::string> corpusNames();
Field corpusField(const std::string& name, const Box4& box);
std::vector<Field> corpus(const std::vector<std::string>& names, const Box4& box);

// Degree <= 2 members.
std::vector<std::string> polynomialCorpusNames();

Field constantField(const CQuat& c, const Box4& box, const std::string& name = "const");
// (x_axis - origin)^power as a real scalar field
Field monomialField(int axis, double origin, int power, const Box4& box);

struct NamedFrame {
  std::string name;
  StructuralSet psi;
};

// standard, rotated (orientation +1), flipped (orientation -1)
std::vector<NamedFrame> frames();

// Box center followed by `extra` interior points drawn with the given seed.
std::vector<Point> anchorPoints(const Box4& box, unsigned seed, int extra = 4);

struct NamedPerturbation {
  std::string name;
  CQuat u, v;
};

// real scalar, pure quaternion, complex quaternion; drawn with the given seed
std::vector<NamedPerturbation> perturbations(unsigned seed);

}  // namespace fueterlab
