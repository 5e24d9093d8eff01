#pragma once

#include <stdexcept>
#include <string>

namespace flatrange {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FLATRANGE_DEFINE_ERROR(Name)          \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

FLATRANGE_DEFINE_ERROR(NotHermitian);
FLATRANGE_DEFINE_ERROR(NotNilpotent);
FLATRANGE_DEFINE_ERROR(NoConvergence);
FLATRANGE_DEFINE_ERROR(DegenerateRange);
FLATRANGE_DEFINE_ERROR(DependentVectors);
FLATRANGE_DEFINE_ERROR(BadModulus);
FLATRANGE_DEFINE_ERROR(ZeroRadius);
FLATRANGE_DEFINE_ERROR(BadParams);
FLATRANGE_DEFINE_ERROR(ZeroA1);
FLATRANGE_DEFINE_ERROR(DimensionError);

#undef FLATRANGE_DEFINE_ERROR

}  // namespace flatrange
