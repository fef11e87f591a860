#include "forumcrawl/error.hpp"

namespace forumcrawl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ForeignNode: return "ForeignNode";
    case ErrorCode::UnsupportedSyntax: return "UnsupportedSyntax";
    case ErrorCode::NotUnique: return "NotUnique";
    case ErrorCode::MultiTarget: return "MultiTarget";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NoCommonClass: return "NoCommonClass";
    case ErrorCode::LiveResolveFailed: return "LiveResolveFailed";
    case ErrorCode::NotAMatch: return "NotAMatch";
    case ErrorCode::FetchFailed: return "FetchFailed";
    case ErrorCode::MissingUrl: return "MissingUrl";
    case ErrorCode::WrongPageState: return "WrongPageState";
    case ErrorCode::InvalidLabelForPage: return "InvalidLabelForPage";
    case ErrorCode::NothingToEscalate: return "NothingToEscalate";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::EscalationExhausted: return "EscalationExhausted";
    case ErrorCode::NoNextPage: return "NoNextPage";
    case ErrorCode::ScriptError: return "ScriptError";
    case ErrorCode::IncompleteSession: return "IncompleteSession";
    case ErrorCode::ZeroRange: return "ZeroRange";
    case ErrorCode::LoginFailed: return "LoginFailed";
    case ErrorCode::ProfileLocatorMissing: return "ProfileLocatorMissing";
    case ErrorCode::ExtractionEmpty: return "ExtractionEmpty";
    case ErrorCode::NoSpine: return "NoSpine";
    case ErrorCode::InvalidTransition: return "InvalidTransition";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::NetworkError: return "NetworkError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InjectionFailed: return "InjectionFailed";
    case ErrorCode::MaskFailed: return "MaskFailed";
    case ErrorCode::Busy: return "Busy";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    case ErrorCode::StoreError: return "StoreError";
  }
  return "Unknown";
}

}  // namespace forumcrawl
