#include "kstab/error.hpp"

namespace kstab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::NonPrimitiveNormal: return "NonPrimitiveNormal";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::ScaleOverflow: return "ScaleOverflow";
    case ErrorKind::EmptyPieceList: return "EmptyPieceList";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::PointNotInterior: return "PointNotInterior";
    case ErrorKind::SingularMoment: return "SingularMoment";
    case ErrorKind::WrongFamily: return "WrongFamily";
    case ErrorKind::NoInteriorCrease: return "NoInteriorCrease";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::InvalidHexagonParams: return "InvalidHexagonParams";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace kstab
