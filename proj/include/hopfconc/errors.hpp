#pragma once

#include <stdexcept>
#include <string>

namespace hopfconc {

// Exit-code classes used by the command line front end.
enum class ErrorClass {
  Parse = 1,
  Degenerate = 2,
  Resource = 3,
  Inconsistent = 4,
  MissingInput = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const noexcept { return cls_; }
  int exit_code() const noexcept { return static_cast<int>(cls_); }

 private:
  ErrorClass cls_;
};

#define HOPFCONC_DEFINE_ERROR(Name, Class)                                      \
  class Name : public Error {                                                   \
   public:                                                                      \
    explicit Name(const std::string& what) : Error(ErrorClass::Class, what) {} \
  };

HOPFCONC_DEFINE_ERROR(ParseError, Parse)
HOPFCONC_DEFINE_ERROR(MalformedDiagram, Parse)
HOPFCONC_DEFINE_ERROR(DegenerateDiagram, Degenerate)
HOPFCONC_DEFINE_ERROR(SameComponent, Degenerate)
HOPFCONC_DEFINE_ERROR(VariableMismatch, Degenerate)
HOPFCONC_DEFINE_ERROR(NotExactDivision, Degenerate)
HOPFCONC_DEFINE_ERROR(NotInKernel, Degenerate)
HOPFCONC_DEFINE_ERROR(SingularAtOmega, Degenerate)
HOPFCONC_DEFINE_ERROR(HermitianViolation, Degenerate)
HOPFCONC_DEFINE_ERROR(InvalidInput, Degenerate)
HOPFCONC_DEFINE_ERROR(BoundExceeded, Resource)
HOPFCONC_DEFINE_ERROR(Inconsistent, Inconsistent)
HOPFCONC_DEFINE_ERROR(FormRequired, MissingInput)

#undef HOPFCONC_DEFINE_ERROR

}  // namespace hopfconc
