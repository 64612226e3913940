#include "infolattice/error.hpp"

namespace infolattice {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::parse: return "parse error";
    case ErrorCode::normalization: return "normalization error";
    case ErrorCode::negative_mass: return "negative mass";
    case ErrorCode::duplicate_assignment: return "duplicate assignment";
    case ErrorCode::cardinality: return "cardinality violation";
    case ErrorCode::zero_mass: return "zero mass";
    case ErrorCode::out_of_support: return "realization outside support";
    case ErrorCode::out_of_range: return "out of range";
    case ErrorCode::io: return "i/o error";
    case ErrorCode::internal: return "internal error";
  }
  return "unknown error";
}

}  // namespace infolattice
