#pragma once

#include <stdexcept>
#include <string>

namespace plsigma {

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& what) : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

struct NonMonotone : Error {
  explicit NonMonotone(const std::string& w) : Error("NonMonotone", w) {}
};
struct DuplicateX : Error {
  explicit DuplicateX(const std::string& w) : Error("DuplicateX", w) {}
};
struct EmptyBreakpointList : Error {
  explicit EmptyBreakpointList(const std::string& w) : Error("EmptyBreakpointList", w) {}
};
struct NonPositive : Error {
  explicit NonPositive(const std::string& w) : Error("NonPositive", w) {}
};
struct TranslationObservableUndefined : Error {
  explicit TranslationObservableUndefined(const std::string& w) : Error("TranslationObservableUndefined", w) {}
};
struct ZeroCharacter : Error {
  explicit ZeroCharacter(const std::string& w) : Error("ZeroCharacter", w) {}
};
struct InconsistentCharacter : Error {
  explicit InconsistentCharacter(const std::string& w) : Error("InconsistentCharacter", w) {}
};
struct ResourceBudgetExceeded : Error {
  explicit ResourceBudgetExceeded(const std::string& w) : Error("ResourceBudgetExceeded", w) {}
};
struct OverlappingSupports : Error {
  explicit OverlappingSupports(const std::string& w) : Error("OverlappingSupports", w) {}
};
struct UnknownEntry : Error {
  explicit UnknownEntry(const std::string& w) : Error("UnknownEntry", w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error("ParseError", w) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error("ValidationError", w) {}
};
struct HypothesisFailure : Error {
  std::string stage;
  HypothesisFailure(std::string st, const std::string& w) : Error("HypothesisFailure", st + ": " + w), stage(std::move(st)) {}
};
struct UnverifiedSubCertificate : Error {
  explicit UnverifiedSubCertificate(const std::string& w) : Error("UnverifiedSubCertificate", w) {}
};
struct BadShape : Error {
  explicit BadShape(const std::string& w) : Error("BadShape", w) {}
};
struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& w) : Error("PrecisionExhausted", w) {}
};

}  // namespace plsigma
