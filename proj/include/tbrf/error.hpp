#pragma once

#include <stdexcept>
#include <string>

namespace tbrf {

// Base of every domain error raised by the pipeline. `kind()` is the stable
// name written into the CLI's machine-readable error record.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TBRF_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  };

TBRF_DEFINE_ERROR(SchemaError)
TBRF_DEFINE_ERROR(GeometryError)
TBRF_DEFINE_ERROR(DetectError)
TBRF_DEFINE_ERROR(EmptyDocumentError)
TBRF_DEFINE_ERROR(DegenerateBoundaryError)
TBRF_DEFINE_ERROR(SingleClassError)
TBRF_DEFINE_ERROR(NonFiniteFeatureError)
TBRF_DEFINE_ERROR(DimensionMismatchError)
TBRF_DEFINE_ERROR(ClassTooSmallError)
TBRF_DEFINE_ERROR(CaptionNotOnPageError)
TBRF_DEFINE_ERROR(KeyMismatchError)
TBRF_DEFINE_ERROR(IoError)
TBRF_DEFINE_ERROR(ConfigError)

#undef TBRF_DEFINE_ERROR

}  // namespace tbrf
