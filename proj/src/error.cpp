#include "termcut/error.hpp"

namespace termcut {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownMode: return "UnknownMode";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::TermAbsent: return "TermAbsent";
    case ErrorCode::DegenerateCollection: return "DegenerateCollection";
    case ErrorCode::EmptyRanking: return "EmptyRanking";
    case ErrorCode::NonPositiveFactor: return "NonPositiveFactor";
    case ErrorCode::InvalidTransfer: return "InvalidTransfer";
    case ErrorCode::InvalidAmount: return "InvalidAmount";
    case ErrorCode::UnsupportedProperty: return "UnsupportedProperty";
    case ErrorCode::DuplicateProfileId: return "DuplicateProfileId";
    case ErrorCode::NoRelevant: return "NoRelevant";
    case ErrorCode::InsufficientData: return "InsufficientData";
  }
  return "Unknown";
}

}  // namespace termcut
