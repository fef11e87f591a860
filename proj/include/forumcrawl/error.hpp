#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace forumcrawl {

enum class ErrorCode {
  // dom-core
  EmptyInput,
  ForeignNode,
  UnsupportedSyntax,
  // locator inference
  NotUnique,
  MultiTarget,
  ShapeMismatch,
  NoCommonClass,
  LiveResolveFailed,
  NotAMatch,
  FetchFailed,
  // training
  MissingUrl,
  WrongPageState,
  InvalidLabelForPage,
  NothingToEscalate,
  NoMatch,
  EscalationExhausted,
  NoNextPage,
  ScriptError,
  IncompleteSession,
  // pacing
  ZeroRange,
  // crawl
  LoginFailed,
  ProfileLocatorMissing,
  ExtractionEmpty,
  NoSpine,
  InvalidTransition,
  // fetch adapter
  Timeout,
  NetworkError,
  NotFound,
  InjectionFailed,
  MaskFailed,
  Busy,
  // datastore
  SchemaMismatch,
  InvalidDocument,
  StoreError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace forumcrawl
