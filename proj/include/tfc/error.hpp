#pragma once

#include <stdexcept>
#include <string>

namespace tfc {

// Base of every error the library throws. Search failures that are part of a
// normal outcome (a local search running out of budget) are returned as empty
// optionals instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TFC_DEFINE_ERROR(Name)                 \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

TFC_DEFINE_ERROR(InvalidGraph);
TFC_DEFINE_ERROR(EmptyGraph);
TFC_DEFINE_ERROR(InvalidVertex);
TFC_DEFINE_ERROR(InvalidColoring);
TFC_DEFINE_ERROR(InvalidParameter);
TFC_DEFINE_ERROR(OutOfDomain);
TFC_DEFINE_ERROR(NotTriangleFree);
TFC_DEFINE_ERROR(BaseColorerFailed);
TFC_DEFINE_ERROR(ListsTooSmall);
TFC_DEFINE_ERROR(EmptyList);
TFC_DEFINE_ERROR(SplitFailed);
TFC_DEFINE_ERROR(EdgeCapViolated);
TFC_DEFINE_ERROR(BudgetExceeded);
TFC_DEFINE_ERROR(ParseError);
TFC_DEFINE_ERROR(InvalidSpec);

#undef TFC_DEFINE_ERROR

}  // namespace tfc
