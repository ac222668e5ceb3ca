#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

/// Base of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI to pick an exit status.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define DLAB_DEFINE_ERROR(Name, tag)                                    \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(tag, what) {}        \
  };

DLAB_DEFINE_ERROR(PreconditionError, "precondition")
DLAB_DEFINE_ERROR(ResolutionError, "resolution")
DLAB_DEFINE_ERROR(DefinitenessError, "definiteness")
DLAB_DEFINE_ERROR(ConvergenceError, "convergence")
DLAB_DEFINE_ERROR(GeometryError, "geometry")
DLAB_DEFINE_ERROR(DomainError, "domain")
DLAB_DEFINE_ERROR(NumericalError, "numerical")
DLAB_DEFINE_ERROR(FlowError, "flow")
DLAB_DEFINE_ERROR(ParseError, "parse")
DLAB_DEFINE_ERROR(IoError, "io")

#undef DLAB_DEFINE_ERROR

}  // namespace dlab
