#pragma once

#include <stdexcept>
#include <string>

namespace kstab {

enum class ErrorKind {
  Unbounded,
  NotSimple,
  NonPrimitiveNormal,
  Degenerate,
  Empty,
  DegenerateSimplex,
  OriginNotInterior,
  ScaleOverflow,
  EmptyPieceList,
  OutsideDomain,
  PointNotInterior,
  SingularMoment,
  WrongFamily,
  NoInteriorCrease,
  ParseError,
  UnknownName,
  InvalidHexagonParams,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Every library failure carries a kind so callers (and the CLI exit-code
/// mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kstab
