#pragma once

#include <stdexcept>
#include <string>

namespace fueterlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FUETERLAB_ERROR(Name)                                   \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

FUETERLAB_ERROR(ZeroDivisor);
FUETERLAB_ERROR(NotOrthonormal);
FUETERLAB_ERROR(DomainError);
FUETERLAB_ERROR(OrderOutOfRange);
FUETERLAB_ERROR(InvalidBox);
FUETERLAB_ERROR(SingularityOnGrid);
FUETERLAB_ERROR(BoundaryTooClose);
FUETERLAB_ERROR(SingularPoint);
FUETERLAB_ERROR(SingularPath);
FUETERLAB_ERROR(UndefinedOnBoundary);
FUETERLAB_ERROR(ConfigError);
FUETERLAB_ERROR(IOError);

#undef FUETERLAB_ERROR

}  // namespace fueterlab
